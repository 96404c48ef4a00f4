import { ApiClient, ServiceError } from "./api";
import { computeLayout, type Layout } from "./layout";
import type { FoldedPanel, MatrixPanel, SessionState } from "./types";

/** Everything the view renders. Each field mirrors the latest service
 * response verbatim; no mutation math happens on the client. */
export interface ViewState {
  sessionId: string | null;
  fixture: string | null;
  layout: Layout | null;
  matrix: MatrixPanel | null;
  folded: FoldedPanel | null;
  variables: Record<string, string>;
  /** mutation keys applied so far, oldest first; the undo cursor is its length */
  history: string[];
  banner: string | null;
  busy: boolean;
  mutableKeys: string[];
}

export function emptyState(): ViewState {
  return {
    sessionId: null,
    fixture: null,
    layout: null,
    matrix: null,
    folded: null,
    variables: {},
    history: [],
    banner: null,
    busy: false,
    mutableKeys: [],
  };
}

/** Session controller: one in-flight request at a time, service-authoritative
 * state, non-blocking banners for 409s. */
export class Explorer {
  state: ViewState = emptyState();

  constructor(private readonly api: ApiClient) {}

  private applySession(s: SessionState): void {
    this.state.sessionId = s.session;
    this.state.fixture = s.fixture;
    this.state.layout = computeLayout(s.quiver.vertices, s.quiver.arrows, s.orbits);
    this.state.matrix = s.matrix;
    this.state.variables = s.variables;
    this.state.history = s.path;
    this.state.mutableKeys = s.matrix.cols;
    this.state.banner = null;
  }

  private async guarded<T>(op: () => Promise<T>, apply: (value: T) => void): Promise<void> {
    if (this.state.busy) {
      throw new Error("a request is already in flight");
    }
    this.state.busy = true;
    try {
      apply(await op());
    } catch (err) {
      if (err instanceof ServiceError) {
        // surfaced, not thrown: the witness becomes a banner over the
        // unchanged panels
        this.state.banner = `${err.status}: ${err.witness}`;
      } else {
        throw err;
      }
    } finally {
      this.state.busy = false;
    }
  }

  loadFixture(name: string): Promise<void> {
    return this.guarded(
      () => this.api.createSession(name),
      (s) => {
        this.state = emptyState();
        this.applySession(s);
      },
    );
  }

  private requireSession(): string {
    if (this.state.sessionId === null) {
      throw new Error("no session loaded");
    }
    return this.state.sessionId;
  }

  clickMutate(key: string): Promise<void> {
    const sid = this.requireSession();
    return this.guarded(
      () => this.api.mutate(sid, key),
      (s) => this.applySession(s),
    );
  }

  undo(): Promise<void> {
    const sid = this.requireSession();
    return this.guarded(
      () => this.api.undo(sid),
      (s) => this.applySession(s),
    );
  }

  fold(): Promise<void> {
    const sid = this.requireSession();
    return this.guarded(
      () => this.api.fold(sid),
      (f) => {
        this.state.folded = f;
        this.state.banner = null;
      },
    );
  }
}
