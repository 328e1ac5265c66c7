// Shapes of the HTTP API payloads, mirrored from the backend's JSON forms.

export type NodeLabel = 'PubMedID' | 'Gene' | 'Disease';

export interface ApiNode {
  id: string;
  label: NodeLabel;
  name: string;
}

export interface ApiTriple {
  head: ApiNode;
  relation: 'GENES_IN' | 'DISEASES_IN';
  tail: ApiNode;
  sentences: number[];
}

export interface CooccurrenceRow {
  gene: string;
  disease: string;
  support: number;
  articles: string[];
}

export interface QueryResultPayload {
  centers: ApiNode[];
  groups: Partial<Record<NodeLabel, ApiNode[]>>;
  triples: ApiTriple[];
  rows: CooccurrenceRow[];
}

export interface StatsPayload {
  triples: number;
  entities: number;
  pubmed_ids: number;
  genes: number;
  diseases: number;
}

export type CooccurrenceLevel = 'article' | 'sentence';
