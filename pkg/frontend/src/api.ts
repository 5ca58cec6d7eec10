import type {
  ExampleRecord,
  JobSnapshot,
  ListPage,
  SearchConfigJson,
  SpecJson,
} from './types.js';

/**
 * Error from the service, keeping the parsed payload so views can show
 * the server's own message (validation violations, "stuck", ...).
 */
export class ApiError extends Error {
  status: number;
  payload: unknown;

  constructor(status: number, payload: unknown) {
    super(describe(status, payload));
    this.status = status;
    this.payload = payload;
  }

  /** Violation list for 400 responses, empty otherwise. */
  violations(): string[] {
    const p = this.payload as { violations?: unknown };
    return Array.isArray(p?.violations) ? p.violations.map(String) : [];
  }
}

function describe(status: number, payload: unknown): string {
  const p = payload as { error?: string; violations?: string[] };
  if (p && typeof p.error === 'string') return p.error;
  if (p && Array.isArray(p.violations) && p.violations.length) return p.violations[0];
  return `service error ${status}`;
}

export interface GalleryQuery {
  sort?: 'created' | 'complexity';
  limit?: number;
  cursor?: string;
  connected?: boolean;
  attractor_class?: string;
  min_types?: number;
  max_types?: number;
  min_fli?: number;
  max_fli?: number;
}

let baseUrl = '';

/** Point the client at a service origin; '' means same origin. */
export function configureBase(url: string): void {
  baseUrl = url.replace(/\/$/, '');
}

export function apiBase(): string {
  return baseUrl;
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(baseUrl + path, init);
  const body = await parseBody(resp);
  if (!resp.ok) throw new ApiError(resp.status, body);
  return body as T;
}

async function parseBody(resp: Response): Promise<unknown> {
  const text = await resp.text();
  if (!text) return null;
  try {
    return JSON.parse(text);
  } catch {
    return text;
  }
}

export const api = {
  analyze: (spec: SpecJson): Promise<ExampleRecord> =>
    request('/api/v1/analyze', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(spec),
    }),

  listExamples: (query: GalleryQuery = {}): Promise<ListPage> => {
    const params = new URLSearchParams();
    if (query.sort) params.set('sort', query.sort);
    if (query.limit !== undefined) params.set('limit', String(query.limit));
    if (query.cursor) params.set('cursor', query.cursor);
    if (query.connected !== undefined) params.set('connected', String(query.connected));
    if (query.attractor_class) params.set('class', query.attractor_class);
    for (const key of ['min_types', 'max_types', 'min_fli', 'max_fli'] as const) {
      const value = query[key];
      if (value !== undefined) params.set(key, String(value));
    }
    const qs = params.toString();
    return request(`/api/v1/examples${qs ? `?${qs}` : ''}`);
  },

  getExample: (id: string): Promise<ExampleRecord> =>
    request(`/api/v1/examples/${encodeURIComponent(id)}`),

  mutateExample: (id: string): Promise<ExampleRecord> =>
    request(`/api/v1/examples/${encodeURIComponent(id)}/mutate`, { method: 'POST' }),

  startSearch: (config: SearchConfigJson): Promise<{ job_id: string; state: string }> =>
    request('/api/v1/search', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(config),
    }),

  jobStatus: (jobId: string): Promise<JobSnapshot> =>
    request(`/api/v1/search/${encodeURIComponent(jobId)}`),

  cancelJob: (jobId: string): Promise<JobSnapshot> =>
    request(`/api/v1/search/${encodeURIComponent(jobId)}/cancel`, { method: 'POST' }),

  fetchDot: (id: string): Promise<string> =>
    request(`/api/v1/examples/${encodeURIComponent(id)}/neighborgraph.dot`),
};

export interface RenderParams {
  w?: number;
  h?: number;
  depth?: number;
  window?: [number, number, number];
  coloring?: 'mono' | 'first' | 'second';
  format?: 'ppm' | 'png';
}

export function renderUrl(id: string, params: RenderParams = {}): string {
  const qs = new URLSearchParams();
  if (params.w !== undefined) qs.set('w', String(params.w));
  if (params.h !== undefined) qs.set('h', String(params.h));
  if (params.depth !== undefined) qs.set('depth', String(params.depth));
  if (params.window) qs.set('window', params.window.join(','));
  if (params.coloring) qs.set('coloring', params.coloring);
  qs.set('format', params.format ?? 'png');
  return `${baseUrl}/api/v1/examples/${encodeURIComponent(id)}/render?${qs}`;
}

export interface FetchedRender {
  /** Object URL (or direct URL when object URLs are unavailable). */
  url: string;
  /** Resolved view window cx, cy, half width from the response. */
  window: [number, number, number] | null;
}

/**
 * Fetch a render as a blob so the X-Render-Window header is visible;
 * the header carries the window the server actually used, which is
 * what turns a later drag rectangle into coordinates.
 */
export async function fetchRender(id: string, params: RenderParams = {}): Promise<FetchedRender> {
  const url = renderUrl(id, params);
  const resp = await fetch(url);
  if (!resp.ok) throw new ApiError(resp.status, await parseBody(resp));
  const header = resp.headers.get('x-render-window');
  let window: [number, number, number] | null = null;
  if (header) {
    const parts = header.split(',').map(Number);
    if (parts.length === 3 && parts.every(Number.isFinite)) {
      window = [parts[0], parts[1], parts[2]];
    }
  }
  const blob = await resp.blob();
  const objectUrl =
    typeof URL.createObjectURL === 'function' ? URL.createObjectURL(blob) : url;
  return { url: objectUrl, window };
}
