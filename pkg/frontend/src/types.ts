// Wire formats served by the cadv HTTP API. The client renders these
// documents verbatim; it never computes geometry or metrics itself.

export type View = 'system' | 'package' | 'class';

export type CircleKind = 'package' | 'schema-bubble' | 'class' | 'element' | 'annotation';

export type CircleStyle = 'dashed-outline' | 'schema-color' | 'white-fill' | 'gray-fill';

export interface LayoutCircle {
  id: string;
  parent: number | null;
  kind: CircleKind;
  cx: number;
  cy: number;
  r: number;
  style: CircleStyle;
  schema: string | null;
  color: string;
  label: Record<string, string | number>;
}

export interface LayoutDocument {
  version: string;
  view: View;
  focus: string;
  metric: string;
  circles: LayoutCircle[];
}

export interface SchemaEntry {
  id: string;
  count: number;
  color: string;
}

export interface ProjectMeta {
  rootPath: string;
  fileCount: number;
  skippedCount: number;
  skipped: { path: string; reason: string }[];
  sourceMtime: string;
}

export interface ProjectInfo {
  meta: ProjectMeta;
  schemas: SchemaEntry[];
}

export interface SourceRef {
  class: string;
  path: string;
  line: number;
}

/** What the user is looking at; round-trips through the URL fragment. */
export interface ViewState {
  view: View;
  focus: string;
  hidden: string[];
}
