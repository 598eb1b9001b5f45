import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, FetchLike } from "../src/api.js";
import { ExplorerController } from "../src/state.js";
import { CATEGORIES, expectFail, prediction, stubFetch } from "./helpers.js";

// The published walkthrough, served by a stub API: after 1,3,4 the user is
// expected on pages 2/7/12; stepping into page 2 leads to 12/6/14.
const ROUTES = {
  categories: CATEGORIES,
  "1,3,4": prediction(
    [1, 3, 4],
    [
      [2, "news", 0.57],
      [7, "misc", 0.26],
      [12, "sports", 0.17],
    ]
  ),
  "1,3,4,2": prediction(
    [1, 3, 4, 2],
    [
      [12, "sports", 0.5],
      [6, "on-air", 0.29],
      [14, "bbs", 0.21],
    ]
  ),
};

function controller(routes: Record<string, unknown> = ROUTES) {
  return new ExplorerController(new ApiClient("", stubFetch(routes)));
}

test("enter prefix renders the API's ranked entries", async () => {
  const c = controller();
  await c.loadCatalog();
  const outcome = await c.enterPrefix("1,3,4");
  assert.ok(outcome.ok);
  const view = c.current!;
  assert.deepEqual(view.prediction.predictions.map((e) => e.page), [2, 7, 12]);
  assert.equal(view.prediction.source, "cluster");
  assert.deepEqual(
    view.path,
    [
      { page: 1, name: "frontpage" },
      { page: 3, name: "tech" },
      { page: 4, name: "local" },
    ]
  );
});

test("blank input asks for at least one page and changes nothing", async () => {
  const c = controller();
  const failure = expectFail(await c.enterPrefix("  "));
  assert.equal(failure.stale, false);
  assert.match(failure.message, /at least one page/);
  assert.equal(c.current, null);
});

test("API rejection shows the error and keeps the state", async () => {
  const c = controller();
  await c.enterPrefix("1,3,4");
  const before = JSON.stringify(c.current);
  const failure = expectFail(await c.enterPrefix("1,99")); // no stub route -> 400
  assert.equal(failure.stale, false);
  assert.match(failure.message, /no route/);
  assert.equal(JSON.stringify(c.current), before);
});

test("step into a displayed page re-queries and undo restores the prior view", async () => {
  const c = controller();
  await c.loadCatalog();
  await c.enterPrefix("1,3,4");
  const before = JSON.stringify(c.current);

  const stepped = await c.stepInto(2);
  assert.ok(stepped.ok);
  assert.deepEqual(c.current!.path.map((e) => e.page), [1, 3, 4, 2]);
  assert.deepEqual(c.current!.prediction.predictions.map((e) => e.page), [12, 6, 14]);
  assert.ok(c.canUndo);

  const undone = c.undo();
  assert.ok(undone.ok);
  assert.equal(JSON.stringify(c.current), before);
});

test("stepping into a page that is not displayed is rejected", async () => {
  const c = controller();
  await c.enterPrefix("1,3,4");
  const failure = expectFail(await c.stepInto(9));
  assert.match(failure.message, /not among/);
});

test("stale responses are discarded by sequence number", async () => {
  const resolvers: Array<(body: unknown) => void> = [];
  const slowFetch: FetchLike = (url) =>
    new Promise((resolve) => {
      resolvers.push((body) => resolve({ status: 200, json: async () => body }));
      void url;
    });
  const c = new ExplorerController(new ApiClient("", slowFetch));

  const first = c.enterPrefix("1,3,4");
  const second = c.enterPrefix("1,3,4,2");
  // Resolve out of order: the late first response must not win.
  resolvers[1](ROUTES["1,3,4,2"]);
  const secondOutcome = await second;
  assert.ok(secondOutcome.ok);
  resolvers[0](ROUTES["1,3,4"]);
  const firstFailure = expectFail(await first);
  assert.equal(firstFailure.stale, true);
  assert.deepEqual(c.current!.path.map((e) => e.page), [1, 3, 4, 2]);
});

test("what-if tree attaches under the current view", async () => {
  const tree = {
    ...ROUTES["1,3,4"],
    children: [{ ...ROUTES["1,3,4,2"], children: [] }],
  };
  const c = new ExplorerController(
    new ApiClient("", async (url) =>
      url.includes("/expand")
        ? { status: 200, json: async () => tree }
        : { status: 200, json: async () => ROUTES["1,3,4"] }
    )
  );
  await c.enterPrefix("1,3,4");
  const outcome = await c.showTree(1, 3);
  assert.ok(outcome.ok);
  assert.equal(c.current!.tree!.children.length, 1);
  assert.deepEqual(c.current!.tree!.children[0].prefix, [1, 3, 4, 2]);
});
