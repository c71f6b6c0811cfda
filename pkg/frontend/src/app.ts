// Hash-routed single page shell. Routes:
//   #/              frame catalog (default)
//   #/search/<q>    ranked search results
//   #/node/<id>     node detail page
//
// Every view is addressable by URL and reloadable. Navigation between
// views happens through plain anchors whose hrefs the renderers build
// from node ids in API payloads.

import { ApiClient, ApiError } from "./api.js";
import {
  catalogView,
  errorView,
  loadingView,
  nodeView,
  notFoundView,
  searchView,
} from "./views.js";

const client = new ApiClient(
  document.documentElement.dataset.apiBase ?? "",
);

let inflight: AbortController | null = null;

async function render(): Promise<void> {
  const main = document.getElementById("app");
  if (!main) return;

  // latest navigation wins; drop any response still in flight
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;

  const hash = window.location.hash;
  main.innerHTML = loadingView();
  try {
    if (hash.startsWith("#/node/")) {
      const id = decodeURI(hash.slice("#/node/".length));
      try {
        main.innerHTML = nodeView(await client.node(id, controller.signal));
      } catch (error) {
        if (error instanceof ApiError && error.status === 404) {
          main.innerHTML = notFoundView(id);
          return;
        }
        throw error;
      }
    } else if (hash.startsWith("#/search/")) {
      const q = decodeURIComponent(hash.slice("#/search/".length));
      const input = document.getElementById("q") as HTMLInputElement | null;
      if (input) input.value = q;
      main.innerHTML = searchView(await client.search(q, {}, controller.signal));
    } else {
      main.innerHTML = catalogView(await client.frames(controller.signal));
    }
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") return;
    const message = error instanceof Error ? error.message : String(error);
    main.innerHTML = errorView(message);
  }
}

function wireSearchBox(): void {
  const form = document.getElementById("search-form");
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = document.getElementById("q") as HTMLInputElement | null;
    const q = input?.value.trim() ?? "";
    if (q) window.location.hash = `#/search/${encodeURIComponent(q)}`;
  });
}

window.addEventListener("hashchange", render);
window.addEventListener("DOMContentLoaded", () => {
  wireSearchBox();
  void render();
});
