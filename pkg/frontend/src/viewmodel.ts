import { renderUrl } from './api.js';
import type { ExampleRecord } from './types.js';

/**
 * Presentation shape of one stored example.  Every number is carried
 * over from the served record untouched; this module only rearranges.
 */
export interface ViewModelRecord {
  id: string;
  record: ExampleRecord;
  badge: string;
  classification: string | null;
  connected: boolean | null;
  alpha: number | null;
  betaGlobal: number | null;
  spectralRadius: number | null;
  fli: number | null;
  typeCount: number | null;
  /** Unordered piece contacts (k < j) read off the served initial labels. */
  contacts: [number, number][];
  /** "3-star" for a star shape, otherwise a plain contact count. */
  adjacencyShape: string | null;
  /** pruned_far / compositions from the served counters. */
  pruneRatio: number | null;
  thumbnailUrl: string;
  parent: string | null;
  createdAt: string | null;
}

export function toViewModel(record: ExampleRecord): ViewModelRecord {
  const contacts = contactPairs(record);
  return {
    id: record.id,
    record,
    badge: badgeFor(record),
    classification: record.topology ? record.topology.classification : null,
    connected: record.topology ? record.topology.connected : null,
    alpha: record.dimension ? record.dimension.alpha : null,
    betaGlobal: record.dimension ? record.dimension.beta_global : null,
    spectralRadius: record.dimension ? record.dimension.spectral_radius : null,
    fli: record.fli,
    typeCount: record.neighbor_count,
    contacts,
    adjacencyShape: shapeName(contacts),
    pruneRatio: pruneRatio(record),
    thumbnailUrl: renderUrl(record.id, { w: 160, h: 160, coloring: 'first' }),
    parent: record.parent,
    createdAt: record.created_at,
  };
}

function badgeFor(record: ExampleRecord): string {
  switch (record.outcome.kind) {
    case 'graph':
      return `${record.neighbor_count} types`;
    case 'empty':
      return 'disjoint';
    case 'osc_violation':
      return 'overlap';
    case 'too_complex':
      return 'capped';
  }
}

/**
 * The initial labels (k, j) with k < j are exactly the pairs of pieces
 * that touch; the mirrored j > k entries repeat them.
 */
export function contactPairs(record: ExampleRecord): [number, number][] {
  if (!record.graph) return [];
  const pairs: [number, number][] = [];
  for (const edge of record.graph.initial) {
    const [k, j] = edge.label;
    if (k < j) pairs.push([k, j]);
  }
  return pairs;
}

/** Name the contact graph when it has a recognizable shape. */
export function shapeName(pairs: [number, number][]): string | null {
  if (pairs.length === 0) return null;
  if (pairs.length === 1) return 'single contact';
  const degree = new Map<number, number>();
  for (const [k, j] of pairs) {
    degree.set(k, (degree.get(k) ?? 0) + 1);
    degree.set(j, (degree.get(j) ?? 0) + 1);
  }
  for (const [piece, d] of degree) {
    if (d === pairs.length && pairs.every(([k, j]) => k === piece || j === piece)) {
      return `${pairs.length}-star`;
    }
  }
  return `${pairs.length} contacts`;
}

function pruneRatio(record: ExampleRecord): number | null {
  const { compositions, pruned_far } = record.stats;
  if (!compositions) return null;
  return pruned_far / compositions;
}

/** Child ids per parent id, collected over a batch of records. */
export function lineageChildren(records: ExampleRecord[]): Map<string, string[]> {
  const children = new Map<string, string[]>();
  for (const record of records) {
    if (!record.parent) continue;
    const list = children.get(record.parent) ?? [];
    list.push(record.id);
    children.set(record.parent, list);
  }
  return children;
}
