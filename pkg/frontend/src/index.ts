export { ApiClient, ServiceError } from "./api";
export { computeLayout } from "./layout";
export type { Layout, NodeLayout, EdgeLayout } from "./layout";
export {
  renderBanner,
  renderHistory,
  renderMatrix,
  renderSvg,
  renderVariables,
  renderView,
} from "./render";
export { Explorer, emptyState } from "./state";
export type { ViewState } from "./state";
export type {
  ArrowInfo,
  FoldedPanel,
  MatrixPanel,
  OrbitInfo,
  SessionState,
  VertexInfo,
} from "./types";
export { mount } from "./main";
