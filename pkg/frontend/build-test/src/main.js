import { ApiClient } from "./api.js";
import { ExplorerController } from "./state.js";
import { renderView } from "./render.js";
const api = new ApiClient("");
const controller = new ExplorerController(api);
const input = document.getElementById("prefix-input");
const goButton = document.getElementById("go");
const undoButton = document.getElementById("undo");
const treeButton = document.getElementById("tree");
const treeDepth = document.getElementById("tree-depth");
const treeTop = document.getElementById("tree-top");
const errorBox = document.getElementById("error");
const viewBox = document.getElementById("view");
function apply(outcome) {
    if (!outcome.ok) {
        if (!outcome.stale)
            errorBox.textContent = outcome.message;
        return;
    }
    errorBox.textContent = "";
    viewBox.innerHTML = renderView(outcome.view);
    input.value = outcome.view.path.map((e) => e.page).join(",");
    undoButton.disabled = !controller.canUndo;
}
goButton.addEventListener("click", async () => {
    apply(await controller.enterPrefix(input.value));
});
input.addEventListener("keydown", async (event) => {
    if (event.key === "Enter")
        apply(await controller.enterPrefix(input.value));
});
undoButton.addEventListener("click", () => apply(controller.undo()));
treeButton.addEventListener("click", async () => {
    apply(await controller.showTree(parseInt(treeDepth.value, 10), parseInt(treeTop.value, 10)));
});
// One delegated handler covers prediction bars (step into) and tree nodes
// (jump to that path).
viewBox.addEventListener("click", async (event) => {
    const target = event.target.closest("[data-page],[data-path],[data-upto]");
    if (!target)
        return;
    const page = target.getAttribute("data-page");
    if (page !== null) {
        apply(await controller.stepInto(parseInt(page, 10)));
        return;
    }
    const path = target.getAttribute("data-path");
    if (path !== null) {
        apply(await controller.enterPrefix(path));
        return;
    }
    const upto = target.getAttribute("data-upto");
    if (upto !== null && controller.current) {
        const pages = controller.current.path.slice(0, parseInt(upto, 10)).map((e) => e.page);
        apply(await controller.enterPrefix(pages.join(",")));
    }
});
controller
    .loadCatalog()
    .catch((err) => {
    errorBox.textContent = `could not load categories: ${String(err)}`;
});
