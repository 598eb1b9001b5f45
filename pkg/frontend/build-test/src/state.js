import { ApiError } from "./api.js";
import { parsePrefixText } from "./format.js";
function fail(message) {
    return { ok: false, message, stale: false };
}
function snapshot(view) {
    return JSON.parse(JSON.stringify(view));
}
/**
 * Holds the current path, the latest prediction and the undo history.
 *
 * Every API call gets a sequence number; a response that arrives after a
 * newer request has been issued is discarded, so the view always reflects
 * the latest action. The path only ever holds prefixes the API accepted,
 * and undo restores the exact prior view.
 */
export class ExplorerController {
    constructor(api, names = new Map()) {
        this.api = api;
        this.names = names;
        this.seq = 0;
        this.history = [];
        this.view = null;
    }
    get current() {
        return this.view;
    }
    get canUndo() {
        return this.history.length > 0;
    }
    nameOf(page) {
        return this.names.get(page) ?? `#${page}`;
    }
    async loadCatalog() {
        const body = await this.api.categories();
        this.names = new Map(body.categories.map((c) => [c.id, c.name]));
    }
    async enterPrefix(text) {
        const pages = parsePrefixText(text);
        if (pages === null) {
            return fail(text.trim().length === 0
                ? "enter at least one page"
                : `"${text.trim()}" is not a list of page ids`);
        }
        return this.show(pages);
    }
    /** Step into one of the currently displayed predictions. */
    async stepInto(page) {
        if (!this.view)
            return fail("no prediction yet");
        const shown = this.view.prediction.predictions.some((e) => e.page === page);
        if (!shown)
            return fail(`page ${page} is not among the displayed predictions`);
        return this.show([...this.view.path.map((e) => e.page), page]);
    }
    /** Fetch and attach a what-if tree under the current path. */
    async showTree(depth, top) {
        if (!this.view)
            return fail("no prediction yet");
        const mySeq = ++this.seq;
        const path = this.view.path.map((e) => e.page);
        let tree;
        try {
            tree = await this.api.expand(path, depth, top);
        }
        catch (err) {
            return this.failure(err);
        }
        if (mySeq !== this.seq)
            return { ok: false, message: "superseded", stale: true };
        this.view = { ...this.view, tree };
        return { ok: true, view: this.view };
    }
    undo() {
        const prior = this.history.pop();
        if (!prior)
            return fail("nothing to undo");
        this.seq++; // any in-flight response is now stale
        this.view = prior;
        return { ok: true, view: prior };
    }
    async show(pages) {
        const mySeq = ++this.seq;
        let prediction;
        try {
            prediction = await this.api.predict(pages);
        }
        catch (err) {
            return this.failure(err);
        }
        if (mySeq !== this.seq)
            return { ok: false, message: "superseded", stale: true };
        if (this.view)
            this.history.push(snapshot(this.view));
        this.view = {
            path: pages.map((page) => ({ page, name: this.nameOf(page) })),
            prediction,
            tree: null,
        };
        return { ok: true, view: this.view };
    }
    failure(err) {
        // 4xx from the API leaves the state untouched: inline message only.
        if (err instanceof ApiError)
            return fail(err.message);
        return fail(`service unreachable: ${String(err)}`);
    }
}
