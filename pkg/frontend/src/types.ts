/** Wire types of the session service. The client treats every payload as
 * authoritative and never recomputes any of it. */

export interface VertexInfo {
  id: number;
  label: string;
  frozen: boolean;
}

export interface ArrowInfo {
  id: string;
  source: number;
  target: number;
  frozen: boolean;
}

export interface MatrixPanel {
  rows: string[];
  cols: string[];
  entries: number[][];
}

export interface FoldedPanel extends MatrixPanel {
  symmetrizer: number[];
}

export interface OrbitInfo {
  key: string;
  members: number[];
}

export interface SessionState {
  session: string;
  fixture: string;
  depth: number;
  path: string[];
  quiver: { vertices: VertexInfo[]; arrows: ArrowInfo[] };
  matrix: MatrixPanel;
  variables: Record<string, string>;
  orbits: OrbitInfo[];
}

export interface ErrorBody {
  error: string;
}
