import type { ErrorBody, FoldedPanel, SessionState } from "./types";

/** Raised for every non-2xx response; carries the service's witness text so
 * the view can render it verbatim. */
export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly witness: string,
  ) {
    super(`service returned ${status}: ${witness}`);
    this.name = "ServiceError";
  }
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

/** Thin typed client over the JSON session API. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: Parameters<FetchLike>[1] = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const payload = (await res.json()) as T | ErrorBody;
    if (res.status < 200 || res.status >= 300) {
      const witness =
        payload && typeof payload === "object" && "error" in payload
          ? String((payload as ErrorBody).error)
          : JSON.stringify(payload);
      throw new ServiceError(res.status, witness);
    }
    return payload as T;
  }

  fixtures(): Promise<{ fixtures: string[] }> {
    return this.request("GET", "/api/fixtures");
  }

  createSession(fixture: string): Promise<SessionState> {
    return this.request("POST", "/api/sessions", { fixture });
  }

  state(sessionId: string): Promise<SessionState> {
    return this.request("GET", `/api/sessions/${sessionId}`);
  }

  mutate(sessionId: string, key: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/mutate`, { key });
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/undo`);
  }

  fold(sessionId: string): Promise<FoldedPanel> {
    return this.request("POST", `/api/sessions/${sessionId}/fold`);
  }
}
