// Wire types for the query service JSON API.

export type Strategy = "subtree" | "path" | "subtree-entity" | "path-entity";

export interface RenderedPath {
  ids: number[];
  labels: string[];
}

export interface RenderedResult {
  id: number;
  anchor: number;
  anchor_label: string;
  strategy: Strategy;
  node_count: number;
  fragment?: string;
  paths?: RenderedPath[];
}

export interface GroupStructure {
  label_path: string;
  xpath: string;
}

export interface Group {
  group_id: number;
  structure: GroupStructure;
  generalize_enabled: boolean;
  results: RenderedResult[];
}

export interface QueryResponse {
  session_id: string;
  keywords: string[];
  strategy: Strategy;
  groups: Group[];
  containment_flags: number[][];
}

export interface SchemaNode {
  snode_id: number;
  label: string;
  depth: number;
  children: SchemaNode[];
}

export interface SchemaResponse {
  root: SchemaNode;
  schema_nodes: number;
}
