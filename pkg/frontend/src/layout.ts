import type { ArrowInfo, OrbitInfo, VertexInfo } from "./types";

export interface NodeLayout {
  id: number;
  label: string;
  x: number;
  y: number;
  frozen: boolean;
  /** hue in degrees shared by every member of the same orbit */
  hue: number;
  orbitKey: string | null;
}

export interface EdgeLayout {
  id: string;
  source: number;
  target: number;
  frozen: boolean;
}

export interface Layout {
  nodes: NodeLayout[];
  edges: EdgeLayout[];
  width: number;
  height: number;
}

const COLUMN_GAP = 160;
const ROW_GAP = 90;
const MARGIN = 60;

/** Longest-path layer of each vertex in the arrow graph. Cycles are broken
 * by ignoring arrows into already-finished vertices along the id order, so
 * the result depends only on vertex ids and arrows — never on randomness. */
function layers(vertices: VertexInfo[], arrows: ArrowInfo[]): Map<number, number> {
  const out = new Map<number, number>();
  const ids = vertices.map((v) => v.id).sort((a, b) => a - b);
  const incoming = new Map<number, number[]>();
  for (const id of ids) incoming.set(id, []);
  for (const a of arrows) incoming.get(a.target)?.push(a.source);

  const visiting = new Set<number>();
  const layerOf = (id: number): number => {
    const known = out.get(id);
    if (known !== undefined) return known;
    if (visiting.has(id)) return 0; // cycle guard
    visiting.add(id);
    let layer = 0;
    for (const src of incoming.get(id) ?? []) {
      layer = Math.max(layer, layerOf(src) + 1);
    }
    visiting.delete(id);
    out.set(id, layer);
    return layer;
  };
  for (const id of ids) layerOf(id);
  return out;
}

/** Deterministic layered layout: column = longest-path layer, row = rank of
 * the vertex id within its column. Orbit members share one hue obtained from
 * the orbit's position in the (sorted) orbit list. */
export function computeLayout(
  vertices: VertexInfo[],
  arrows: ArrowInfo[],
  orbits: OrbitInfo[],
): Layout {
  const layerOf = layers(vertices, arrows);
  const byLayer = new Map<number, number[]>();
  for (const v of vertices) {
    const l = layerOf.get(v.id) ?? 0;
    const bucket = byLayer.get(l) ?? [];
    bucket.push(v.id);
    byLayer.set(l, bucket);
  }
  const rowOf = new Map<number, number>();
  for (const bucket of byLayer.values()) {
    bucket.sort((a, b) => a - b);
    bucket.forEach((id, row) => rowOf.set(id, row));
  }

  const sortedOrbits = [...orbits].sort((a, b) => a.key.localeCompare(b.key));
  const hueOf = new Map<number, { hue: number; key: string }>();
  sortedOrbits.forEach((o, idx) => {
    const hue = (idx * 137) % 360; // well-spread, id-determined hues
    for (const m of o.members) hueOf.set(m, { hue, key: o.key });
  });

  const nodes: NodeLayout[] = vertices.map((v) => {
    const orbit = hueOf.get(v.id);
    return {
      id: v.id,
      label: v.label,
      x: MARGIN + (layerOf.get(v.id) ?? 0) * COLUMN_GAP,
      y: MARGIN + (rowOf.get(v.id) ?? 0) * ROW_GAP,
      frozen: v.frozen,
      hue: orbit ? orbit.hue : 0,
      orbitKey: orbit ? orbit.key : null,
    };
  });
  const edges: EdgeLayout[] = arrows.map((a) => ({
    id: a.id,
    source: a.source,
    target: a.target,
    frozen: a.frozen,
  }));
  const width = Math.max(...nodes.map((n) => n.x), 0) + MARGIN;
  const height = Math.max(...nodes.map((n) => n.y), 0) + MARGIN;
  return { nodes, edges, width, height };
}
