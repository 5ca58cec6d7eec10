/**
 * Mirrors of the JSON documents served under /api/v1.
 *
 * Everything here is data as received; the UI never computes analysis
 * results of its own, so these types have no methods.
 */

export interface SymmetryJson {
  x: string;
  y: string;
  reflected: boolean;
}

export interface MapJson {
  sym: SymmetryJson;
  t: [number, number];
}

export interface SpecJson {
  field: { a: string };
  expansion: { b: string; c: string };
  maps: MapJson[];
}

export type OutcomeKind = 'graph' | 'empty' | 'osc_violation' | 'too_complex';

export interface OutcomeJson {
  kind: OutcomeKind;
  /** osc_violation only: the two coinciding piece words (1-based map indices). */
  witness?: [number[], number[]];
  /** too_complex only: candidate count when the cap was hit. */
  candidates?: number;
}

export interface VertexJson {
  name: string;
  linear: [string, string, string, string];
  shift: [string, string];
}

export interface EdgeJson {
  src: string;
  dst: string;
  label: [number, number];
}

export interface InitialEdgeJson {
  dst: string;
  label: [number, number];
}

export interface GraphJson {
  m: number;
  vertices: VertexJson[];
  edges: EdgeJson[];
  initial: InitialEdgeJson[];
}

export interface TopologyJson {
  connected: boolean;
  has_jordan_curve: boolean;
  classes: string[];
  classification: string;
}

export interface BoundaryTermJson {
  k: number;
  src: string;
}

export interface DimensionJson {
  alpha: number;
  beta_global: number;
  spectral_radius: number;
  beta_per_vertex: number[];
  boundary_equations: { vertex: string; terms: BoundaryTermJson[] }[];
}

export interface StatsJson {
  compositions: number;
  pruned_far: number;
  explored: number;
}

export interface ExampleRecord {
  id: string;
  spec: SpecJson;
  outcome: OutcomeJson;
  neighbor_count: number | null;
  fli: number | null;
  graph: GraphJson | null;
  topology: TopologyJson | null;
  dimension: DimensionJson | null;
  stats: StatsJson;
  parent: string | null;
  created_at: string | null;
}

export interface ListPage {
  records: ExampleRecord[];
  next_cursor: string | null;
  total: number;
}

export type JobState = 'Pending' | 'Running' | 'Done' | 'Cancelled';

export interface JobSnapshot {
  id: string;
  state: JobState;
  config: SearchConfigJson;
  progress: { tried: number; found: number };
  result_ids: string[];
}

export interface FiltersJson {
  connected?: boolean;
  attractor_class?: string;
  min_types?: number;
  max_types?: number;
  min_fli?: number;
  max_fli?: number;
}

export interface SearchConfigJson {
  field: { a: string };
  expansion: { b: string; c: string };
  generators: SymmetryJson[];
  m_range: [number, number];
  translation_box: number;
  symmetry_word_length: number;
  budget: number;
  seed: number;
  caps?: { max_types: number; max_candidates: number };
  filters?: FiltersJson;
  rng?: string;
}

export const ATTRACTOR_CLASSES = [
  'TotallyDisconnectedOrEmpty',
  'Dendrite',
  'PCF',
  'CountableWeb',
  'UncountableCarpet',
] as const;
