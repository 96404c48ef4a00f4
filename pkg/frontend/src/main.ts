import { ApiClient } from "./api";
import { renderView } from "./render";
import { Explorer } from "./state";

/** Page shell: mounts the explorer into a container and wires clicks.
 * Clicking a vertex mutates at its key; the Undo button pops one step. */
export function mount(container: HTMLElement, baseUrl = ""): Explorer {
  const explorer = new Explorer(new ApiClient(baseUrl));

  const redraw = () => {
    container.innerHTML = renderView(explorer.state);
  };

  container.addEventListener("click", (ev) => {
    const el = ev.target as HTMLElement | null;
    if (!el || explorer.state.busy) return;
    const vertex = el.getAttribute("data-vertex");
    if (vertex !== null) {
      void explorer.clickMutate(vertex).then(redraw);
    } else if (el.classList.contains("undo")) {
      void explorer.undo().then(redraw);
    } else if (el.classList.contains("fold")) {
      void explorer.fold().then(redraw);
    }
  });

  return explorer;
}

export { ApiClient, Explorer, renderView };
