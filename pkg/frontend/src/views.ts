// Pure HTML renderers for the explorer's three views. Each function maps
// one API payload to a markup string; no fetching, no DOM access, no
// client-side computation over the knowledge base.
//
// Every payload-derived datum is wrapped in an element with class "v"
// (a span, or an anchor for node links). Static chrome never uses that
// class, so tests can verify that all dynamic content traces back to an
// API response field.

import type {
  BindingValue,
  CatalogPayload,
  EntityDetail,
  FerDetail,
  FrameDetail,
  InstanceDetail,
  ElementDetail,
  Neighbor,
  NeighborMap,
  NodeDetail,
  SearchPayload,
  TaxonomyDetail,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

// one payload value, shown as text
function value(v: string | number): string {
  return `<span class="v">${escapeHtml(String(v))}</span>`;
}

// one payload node id, shown as a navigable link
export function nodeHref(id: string): string {
  return `#/node/${id}`;
}

function nodeLink(id: string, text: string): string {
  return `<a class="v" href="${escapeHtml(nodeHref(id))}">${escapeHtml(text)}</a>`;
}

function kindBadge(kind: string): string {
  return `<span class="v badge badge-${escapeHtml(kind)}">${escapeHtml(kind)}</span>`;
}

/* ------------------------------------------------------------------ */
/* search                                                              */
/* ------------------------------------------------------------------ */

export function searchView(payload: SearchPayload): string {
  const heading = `<h2>Results for ${value(payload.query)}</h2>`;
  if (payload.hits.length === 0) {
    return `<section class="search">${heading}<p class="empty">No results. Try a frame name, a lexical unit such as a verb, or an entity label.</p></section>`;
  }
  const items = payload.hits
    .map(
      (hit) =>
        `<li class="hit">${kindBadge(hit.kind)} ${nodeLink(hit.node, hit.node)}` +
        ` <span class="meta">${value(hit.matchType)} ${value(hit.score)}` +
        ` matched ${value(hit.matchedText)}</span></li>`,
    )
    .join("");
  return `<section class="search">${heading}<ol class="hits">${items}</ol></section>`;
}

/* ------------------------------------------------------------------ */
/* catalog                                                             */
/* ------------------------------------------------------------------ */

export function catalogView(payload: CatalogPayload): string {
  const rows = payload.frames
    .map(
      (row) =>
        `<tr class="frame-row"><td>${nodeLink(row.id, row.name)}</td>` +
        `<td>${value(row.fers)}</td><td>${value(row.fis)}</td></tr>`,
    )
    .join("");
  return (
    `<section class="catalog"><h2>Frames</h2>` +
    `<table><thead><tr><th>Frame</th><th>Restricted frames</th><th>Instances</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></section>`
  );
}

/* ------------------------------------------------------------------ */
/* node detail                                                         */
/* ------------------------------------------------------------------ */

function neighborItem(neighbor: Neighbor): string {
  return (
    `<li>${value(neighbor.direction)} ${kindBadge(neighbor.peer.kind)} ` +
    `${nodeLink(neighbor.peer.id, neighbor.peer.label)}</li>`
  );
}

function neighborsSection(neighbors: NeighborMap): string {
  const relations = Object.keys(neighbors);
  if (relations.length === 0) return "";
  const groups = relations
    .map(
      (relation) =>
        `<h4>${value(relation)}</h4>` +
        `<ul class="neighbors">${neighbors[relation].map(neighborItem).join("")}</ul>`,
    )
    .join("");
  return `<section class="connections"><h3>Connections</h3>${groups}</section>`;
}

function sourceRefList(refs: { source: string; id: string }[]): string {
  if (refs.length === 0) return "";
  const items = refs
    .map((ref) => `<li>${value(ref.source)} : ${value(ref.id)}</li>`)
    .join("");
  return `<section><h3>Source references</h3><ul class="refs">${items}</ul></section>`;
}

function frameBody(detail: FrameDetail): string {
  const elements = detail.elements
    .map(
      (element) =>
        `<li>${nodeLink(element.id, element.name)} ` +
        `<span class="coreness">${value(element.coreness)}</span></li>`,
    )
    .join("");
  const lus = detail.lexicalUnits
    .map((lu) => `<li>${value(lu.lemma)} / ${value(lu.pos)}</li>`)
    .join("");
  return (
    `<h2>${kindBadge(detail.kind)} ${value(detail.name)}</h2>` +
    `<p class="definition">${value(detail.definition)}</p>` +
    `<p>Language: ${value(detail.language)}</p>` +
    `<section><h3>Frame elements</h3><ul class="elements">${elements}</ul></section>` +
    `<section><h3>Lexical units</h3><ul class="lus">${lus}</ul></section>` +
    sourceRefList(detail.sourceRefs)
  );
}

function elementBody(detail: ElementDetail): string {
  return (
    `<h2>${kindBadge(detail.kind)} ${value(detail.name)}</h2>` +
    `<p>Coreness: ${value(detail.coreness)}</p>` +
    `<p>Belongs to ${nodeLink(detail.frame.id, detail.frame.label)}</p>`
  );
}

function taxonomyBody(detail: TaxonomyDetail): string {
  const lemmas = detail.lemmas
    .map((entry) => `<li>${value(entry.lemma)} rank ${value(entry.rank)}</li>`)
    .join("");
  const hypernyms = detail.hypernyms
    .map((parent) => `<li>${nodeLink(parent.id, parent.label)}</li>`)
    .join("");
  return (
    `<h2>${kindBadge(detail.kind)} ${value(detail.key)}</h2>` +
    `<p class="gloss">${value(detail.gloss)}</p>` +
    `<section><h3>Lemmas</h3><ul class="lemmas">${lemmas}</ul></section>` +
    (hypernyms
      ? `<section><h3>Hypernyms</h3><ul class="hypernyms">${hypernyms}</ul></section>`
      : "")
  );
}

function ferBody(detail: FerDetail): string {
  const restrictions = detail.restrictions
    .map(
      (r) =>
        `<li>${nodeLink(r.element.id, r.element.name)} must be a ` +
        `${nodeLink(r.type.id, r.type.label)}</li>`,
    )
    .join("");
  return (
    `<h2>${kindBadge(detail.kind)} ${value(detail.surfaceForm)}</h2>` +
    `<p>Restricts ${nodeLink(detail.frame.id, detail.frame.label)}</p>` +
    `<p>Language: ${value(detail.language)}, provenance: ${value(detail.provenance)}</p>` +
    `<section><h3>Restrictions</h3><ul class="restrictions">${restrictions}</ul></section>`
  );
}

function entityBody(detail: EntityDetail): string {
  const alts = detail.altLabels.map((label) => `<li>${value(label)}</li>`).join("");
  const types = detail.types
    .map((t) => `<li>${nodeLink(t.id, t.label)}</li>`)
    .join("");
  return (
    `<h2>${kindBadge(detail.kind)} ${value(detail.label)}</h2>` +
    (alts ? `<section><h3>Also known as</h3><ul class="alts">${alts}</ul></section>` : "") +
    (types ? `<section><h3>Types</h3><ul class="types">${types}</ul></section>` : "") +
    sourceRefList(detail.sourceRefs)
  );
}

function bindingValue(binding: BindingValue): string {
  if (binding.kind === "literal") {
    return `${value(binding.lexical)} <span class="datatype">${value(binding.datatype)}</span>`;
  }
  return `${kindBadge(binding.kind)} ${nodeLink(binding.id, binding.label)}`;
}

function instanceBody(detail: InstanceDetail): string {
  const bindings = detail.bindings
    .map(
      (b) =>
        `<li>${nodeLink(b.element.id, b.element.name)} is ${bindingValue(b.value)}</li>`,
    )
    .join("");
  const p = detail.provenance;
  return (
    `<h2>${kindBadge(detail.kind)} ${nodeLink(detail.frame.id, detail.frame.label)} instance</h2>` +
    `<section><h3>Bindings</h3><ul class="bindings">${bindings}</ul></section>` +
    `<section><h3>Provenance</h3><ul class="provenance">` +
    `<li>source ${value(p.source)}</li><li>subject ${value(p.subject)}</li>` +
    `<li>predicate ${value(p.predicate)}</li><li>object ${value(p.object)}</li>` +
    `</ul></section>`
  );
}

export function nodeView(detail: NodeDetail): string {
  let body: string;
  switch (detail.kind) {
    case "sf":
      body = frameBody(detail);
      break;
    case "fe":
      body = elementBody(detail);
      break;
    case "tx":
      body = taxonomyBody(detail);
      break;
    case "fer":
      body = ferBody(detail);
      break;
    case "en":
      body = entityBody(detail);
      break;
    case "fi":
      body = instanceBody(detail);
      break;
  }
  return `<article class="node" data-id="${escapeHtml(detail.id)}">${body}${neighborsSection(detail.neighbors)}</article>`;
}

/* ------------------------------------------------------------------ */
/* states                                                              */
/* ------------------------------------------------------------------ */

export function notFoundView(id: string): string {
  return `<section class="state"><h2>Not found</h2><p>No node with id ${value(id)}.</p></section>`;
}

export function errorView(message: string): string {
  return (
    `<section class="state error"><h2>Something went wrong</h2>` +
    `<p>${value(message)}</p><p><a href="">Retry</a></p></section>`
  );
}

export function loadingView(): string {
  return `<section class="state"><p>Loading...</p></section>`;
}
