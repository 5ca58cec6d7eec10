import { vi } from 'vitest';

/**
 * Hand-rolled stand-ins for fetch responses so no test touches the
 * network or depends on a global Response implementation.
 */

export interface FakeResponse {
  ok: boolean;
  status: number;
  headers: { get(name: string): string | null };
  text(): Promise<string>;
  blob(): Promise<Blob>;
}

export function jsonResponse(
  body: unknown,
  status = 200,
  headers: Record<string, string> = {}
): FakeResponse {
  const lower: Record<string, string> = {};
  for (const [k, v] of Object.entries(headers)) lower[k.toLowerCase()] = v;
  const text = typeof body === 'string' ? body : JSON.stringify(body);
  return {
    ok: status >= 200 && status < 300,
    status,
    headers: { get: (name) => lower[name.toLowerCase()] ?? null },
    text: async () => text,
    blob: async () => new Blob([text]),
  };
}

export type FetchCall = { url: string; init?: RequestInit };

/**
 * Install a fetch stub that routes by substring match, recording every
 * call.  Routes are checked in order; unmatched URLs fail the test.
 */
export function stubFetch(
  routes: [string | RegExp, (url: string, init?: RequestInit) => FakeResponse | Promise<FakeResponse>][]
): FetchCall[] {
  const calls: FetchCall[] = [];
  vi.stubGlobal(
    'fetch',
    vi.fn(async (url: string, init?: RequestInit) => {
      calls.push({ url, init });
      for (const [pattern, handler] of routes) {
        const hit =
          typeof pattern === 'string' ? url.includes(pattern) : pattern.test(url);
        if (hit) return handler(url, init);
      }
      throw new Error(`unexpected fetch ${url}`);
    })
  );
  return calls;
}

/** Let queued promise callbacks and zero timers run. */
export async function flush(times = 4): Promise<void> {
  for (let i = 0; i < times; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
