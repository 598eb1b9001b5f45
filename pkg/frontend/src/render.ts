import { escapeHtml, pct } from "./format.js";
import { ExplorerView, PathEntry } from "./state.js";
import { ExpandResponse, Params, PredictResponse } from "./types.js";

// Pure HTML string builders; main.ts mounts them with innerHTML so the
// whole view layer stays testable without a DOM.

export function renderBadge(prediction: PredictResponse): string {
  if (prediction.source === "cluster") {
    return `<span class="badge badge-cluster">cluster · ${prediction.cluster_size} sessions</span>`;
  }
  const order = prediction.markov_order_used;
  return `<span class="badge badge-markov">markov fallback${
    order === null ? "" : ` · order ${order}`
  }</span>`;
}

export function renderParams(params: Params): string {
  return (
    `<span class="params">k=${params.k} · threshold=${params.threshold}` +
    ` · min support=${params.min_support} · top ${params.top_n}</span>`
  );
}

export function renderBars(prediction: PredictResponse): string {
  if (prediction.predictions.length === 0) {
    return `<p class="empty">no prediction available for this prefix</p>`;
  }
  const rows = prediction.predictions
    .map((e) => {
      const width = Math.max(1, Math.round(e.p * 100));
      return (
        `<div class="bar-row" data-page="${e.page}" role="button" ` +
        `title="step into ${escapeHtml(e.name)}">` +
        `<span class="bar-label">${e.page} ${escapeHtml(e.name)}</span>` +
        `<span class="bar-track"><span class="bar-fill" style="width:${width}%"></span></span>` +
        `<span class="bar-pct">${pct(e.p)}</span>` +
        `</div>`
      );
    })
    .join("");
  return `<div class="bars">${rows}</div>`;
}

export function renderBreadcrumb(path: PathEntry[]): string {
  const crumbs = path
    .map(
      (entry, i) =>
        `<span class="crumb" data-upto="${i + 1}">${entry.page} ${escapeHtml(entry.name)}</span>`
    )
    .join(`<span class="crumb-sep">›</span>`);
  return `<nav class="breadcrumb">${crumbs}</nav>`;
}

export function renderTree(node: ExpandResponse): string {
  const label =
    `<span class="tree-node" data-path="${node.prefix.join(",")}">` +
    `${node.prefix.join(",")} ${renderBadge(node)}</span>`;
  if (node.children.length === 0) return `<li>${label}</li>`;
  const children = node.children
    .map((child) => {
      const page = child.prefix[child.prefix.length - 1];
      const edge = node.predictions.find((e) => e.page === page);
      const edgeLabel = edge ? `<span class="edge">${pct(edge.p)}</span>` : "";
      return renderTree(child).replace("<li>", `<li>${edgeLabel}`);
    })
    .join("");
  return `<li>${label}<ul>${children}</ul></li>`;
}

export function renderView(view: ExplorerView): string {
  const tree = view.tree
    ? `<section class="tree"><h2>what-if tree</h2><ul>${renderTree(view.tree)}</ul></section>`
    : "";
  return (
    renderBreadcrumb(view.path) +
    `<div class="meta">${renderBadge(view.prediction)} ${renderParams(view.prediction.params)}</div>` +
    renderBars(view.prediction) +
    tree
  );
}
