import type { FetchLike } from "../src/api";

export interface Recorded {
  status: number;
  body: unknown;
}

export interface Call {
  url: string;
  method: string;
  body: unknown;
}

/** A fetch double that replays recorded service responses in order and
 * remembers every request it saw. */
export function scriptedFetch(script: Recorded[]): { fetch: FetchLike; calls: Call[] } {
  const queue = [...script];
  const calls: Call[] = [];
  const fetch: FetchLike = async (url, init) => {
    const next = queue.shift();
    if (!next) {
      throw new Error(`unexpected request beyond the script: ${url}`);
    }
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body === undefined ? undefined : JSON.parse(init.body),
    });
    return {
      status: next.status,
      json: async () => next.body,
    };
  };
  return { fetch, calls };
}
