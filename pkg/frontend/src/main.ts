// Application wiring: search box, per-group Generalize buttons, strategy
// toggle, and the schema outline. One request is in flight at a time (the
// client queues), and every DOM update derives from the latest response.

import { ApiClient } from "./api.js";
import { initialView, viewFromResponse, withRenderedResults, ViewModel } from "./state.js";
import { renderGroups, renderSchema } from "./view.js";
import type { RenderedResult, Strategy } from "./types.js";

export interface App {
  whenIdle(): Promise<void>;
  view(): ViewModel;
}

export function mountApp(root: Document, api: ApiClient): App {
  const form = root.getElementById("search-form") as HTMLFormElement;
  const input = root.getElementById("search-input") as HTMLInputElement;
  const submit = root.getElementById("search-submit") as HTMLButtonElement;
  const strategySelect = root.getElementById("strategy-select") as HTMLSelectElement;
  const groupsHost = root.getElementById("groups") as HTMLElement;
  const statusHost = root.getElementById("status") as HTMLElement;
  const schemaHost = root.getElementById("schema-outline") as HTMLElement;

  let view = initialView(strategySelect.value as Strategy);
  let tail: Promise<void> = Promise.resolve();

  const update = (next: ViewModel): void => {
    view = next;
    renderGroups(groupsHost, view);
  };

  const report = (err: unknown): void => {
    statusHost.textContent = err instanceof Error ? err.message : String(err);
  };

  const track = (job: Promise<void>): void => {
    tail = tail.then(() => job).catch(() => undefined);
  };

  // empty input keeps the submit disabled
  const syncSubmit = (): void => {
    submit.disabled = input.value.trim() === "";
  };
  input.addEventListener("input", syncSubmit);
  syncSubmit();

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const keywords = input.value.trim();
    if (!keywords) {
      return;
    }
    statusHost.textContent = "";
    const strategy = strategySelect.value as Strategy;
    track(
      api
        .query(keywords, strategy)
        .then((res) => update(viewFromResponse(res, strategy)))
        .catch(report),
    );
  });

  groupsHost.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (!target.classList.contains("generalize") || !view.sessionId) {
      return;
    }
    const groupId = Number(target.dataset.groupId);
    const strategy = strategySelect.value as Strategy;
    track(
      api
        .feedback(view.sessionId, groupId, strategy)
        .then((res) => update(viewFromResponse(res, strategy)))
        .catch(report),
    );
  });

  strategySelect.addEventListener("change", () => {
    const strategy = strategySelect.value as Strategy;
    const current = view;
    if (!current.sessionId) {
      update({ ...current, strategy });
      return;
    }
    const ids = current.groups.flatMap((g) => g.results.map((r) => r.id));
    track(
      Promise.all(ids.map((id) => api.node(id, strategy, current.sessionId as string)))
        .then((rendered: RenderedResult[]) => {
          const byId = new Map(rendered.map((r) => [r.id, r]));
          update(withRenderedResults(current, strategy, byId));
        })
        .catch(report),
    );
  });

  track(
    api
      .schema()
      .then((schema) => renderSchema(schemaHost, schema.root))
      .catch(report),
  );

  return {
    whenIdle: () => tail.then(() => api.whenIdle()),
    view: () => view,
  };
}

declare global {
  interface Window {
    tsixApp?: App;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" && !("__TSIX_TEST__" in globalThis)) {
  window.addEventListener("DOMContentLoaded", () => {
    window.tsixApp = mountApp(document, new ApiClient(""));
  });
}
