// Shapes of the JSON payloads served under /api. See the backend's
// api module for the source of these contracts (X-API-Version: 1).

export type NodeKind = "sf" | "fe" | "tx" | "fer" | "fi" | "en";

export type NodeStub = {
  id: string;
  kind: NodeKind;
  label: string;
};

export type SearchHit = {
  node: string;
  kind: NodeKind;
  matchType: "frameName" | "lexicalUnit" | "fuzzyLabel";
  score: number;
  matchedText: string;
};

export type SearchPayload = {
  query: string;
  hits: SearchHit[];
};

export type CatalogRow = {
  id: string;
  name: string;
  fers: number;
  fis: number;
};

export type CatalogPayload = {
  frames: CatalogRow[];
};

export type Neighbor = {
  direction: "in" | "out";
  peer: NodeStub;
};

// relation name -> neighbors reachable over that relation
export type NeighborMap = Record<string, Neighbor[]>;

export type LiteralValue = {
  kind: "literal";
  lexical: string;
  datatype: string;
};

export type BindingValue = LiteralValue | NodeStub;

export type ElementRef = {
  id: string;
  name: string;
};

type DetailBase = {
  id: string;
  neighbors: NeighborMap;
};

export type FrameDetail = DetailBase & {
  kind: "sf";
  name: string;
  definition: string;
  language: string;
  elements: { id: string; name: string; coreness: string }[];
  lexicalUnits: { lemma: string; pos: string }[];
  sourceRefs: { source: string; id: string }[];
};

export type ElementDetail = DetailBase & {
  kind: "fe";
  name: string;
  coreness: string;
  frame: NodeStub;
};

export type TaxonomyDetail = DetailBase & {
  kind: "tx";
  key: string;
  gloss: string;
  lemmas: { lemma: string; rank: number }[];
  hypernyms: NodeStub[];
};

export type FerDetail = DetailBase & {
  kind: "fer";
  surfaceForm: string;
  language: string;
  provenance: string;
  frame: NodeStub;
  restrictions: { element: ElementRef; type: NodeStub }[];
};

export type EntityDetail = DetailBase & {
  kind: "en";
  label: string;
  altLabels: string[];
  types: NodeStub[];
  sourceRefs: { source: string; id: string }[];
};

export type InstanceDetail = DetailBase & {
  kind: "fi";
  frame: NodeStub;
  bindings: { element: ElementRef; value: BindingValue }[];
  provenance: { source: string; subject: string; predicate: string; object: string };
};

export type NodeDetail =
  | FrameDetail
  | ElementDetail
  | TaxonomyDetail
  | FerDetail
  | EntityDetail
  | InstanceDetail;

export type StatsPayload = {
  phase: string;
  nodes: Record<string, number>;
  edges: Record<string, number>;
  edgeTotal: number;
  triples?: number;
};

export type QueryValue =
  | { kind: "literal"; lexical: string; datatype: string }
  | { kind: "node"; id: string }
  | { kind: "iri"; iri: string };

export type QueryPayload = {
  variables: string[];
  rows: QueryValue[][];
};

export type ApiErrorBody = {
  error: { code: string; message: string };
};
