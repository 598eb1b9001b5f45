export class ApiError extends Error {
    constructor(message, status) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    constructor(baseUrl = "", fetchFn = (url) => fetch(url)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async get(path) {
        const resp = await this.fetchFn(this.baseUrl + path);
        const body = (await resp.json());
        if (resp.status !== 200) {
            const message = typeof body?.error === "string" ? body.error : `request failed (${resp.status})`;
            throw new ApiError(message, resp.status);
        }
        return body;
    }
    categories() {
        return this.get("/api/v1/categories");
    }
    predict(prefix, top) {
        const query = top === undefined ? "" : `&top=${top}`;
        return this.get(`/api/v1/predict?prefix=${prefix.join(",")}${query}`);
    }
    expand(prefix, depth, top) {
        return this.get(`/api/v1/expand?prefix=${prefix.join(",")}&depth=${depth}&top=${top}`);
    }
}
