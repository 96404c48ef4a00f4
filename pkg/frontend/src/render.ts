import type { Layout } from "./layout";
import type { ViewState } from "./state";
import type { MatrixPanel } from "./types";

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderMatrix(m: MatrixPanel, title: string): string {
  const head = m.cols.map((c) => `<th>${esc(c)}</th>`).join("");
  const body = m.rows
    .map((r, i) => {
      const cells = m.entries[i].map((x) => `<td>${x}</td>`).join("");
      return `<tr><th>${esc(r)}</th>${cells}</tr>`;
    })
    .join("");
  return (
    `<table class="matrix" data-title="${esc(title)}">` +
    `<thead><tr><th></th>${head}</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderVariables(vars: Record<string, string>): string {
  const rows = Object.entries(vars)
    .map(([k, v]) => `<dt>${esc(k)}</dt><dd>${esc(v)}</dd>`)
    .join("");
  return `<dl class="variables">${rows}</dl>`;
}

export function renderHistory(history: string[]): string {
  const items = history.map((k) => `<li>${esc(k)}</li>`).join("");
  return `<ol class="history" data-cursor="${history.length}">${items}</ol>`;
}

export function renderBanner(banner: string | null): string {
  return banner === null
    ? ""
    : `<div class="banner" role="alert">${esc(banner)}</div>`;
}

export function renderSvg(layout: Layout): string {
  const defs =
    '<defs><marker id="arr" viewBox="0 0 10 10" refX="9" refY="5" ' +
    'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>';
  const pos = new Map(layout.nodes.map((n) => [n.id, n]));
  const edges = layout.edges
    .map((e) => {
      const s = pos.get(e.source);
      const t = pos.get(e.target);
      if (!s || !t) return "";
      const dash = e.frozen ? ' stroke-dasharray="6 3"' : "";
      return (
        `<line data-arrow="${esc(e.id)}" x1="${s.x}" y1="${s.y}" ` +
        `x2="${t.x}" y2="${t.y}" stroke="#444" marker-end="url(#arr)"${dash}/>`
      );
    })
    .join("");
  const nodes = layout.nodes
    .map((n) => {
      const fill = `hsl(${n.hue} 60% 75%)`;
      const shape = n.frozen
        ? `<rect data-vertex="${n.id}" x="${n.x - 18}" y="${n.y - 18}" ` +
          `width="36" height="36" fill="${fill}" stroke="#222"/>`
        : `<circle data-vertex="${n.id}" cx="${n.x}" cy="${n.y}" r="20" ` +
          `fill="${fill}" stroke="#222"/>`;
      const label =
        `<text x="${n.x}" y="${n.y + 5}" text-anchor="middle">${esc(n.label)}</text>`;
      return shape + label;
    })
    .join("");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" ` +
    `height="${layout.height}">${defs}${edges}${nodes}</svg>`
  );
}

/** One self-contained render of the whole view, used by the page shell. */
export function renderView(state: ViewState): string {
  const parts: string[] = [renderBanner(state.banner)];
  if (state.layout) parts.push(renderSvg(state.layout));
  if (state.matrix) parts.push(renderMatrix(state.matrix, "exchange matrix"));
  if (state.folded) parts.push(renderMatrix(state.folded, "folded matrix"));
  parts.push(renderVariables(state.variables));
  parts.push(renderHistory(state.history));
  return parts.join("\n");
}
