import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiError, api, configureBase, fetchRender, renderUrl } from '../src/api.js';
import { jsonResponse, stubFetch } from './helpers.js';
import { fixtureRecord } from './fixtures.js';

afterEach(() => {
  vi.unstubAllGlobals();
  configureBase('');
});

describe('listExamples', () => {
  it('serializes filters with the service parameter names', async () => {
    const calls = stubFetch([
      ['/api/v1/examples', () => jsonResponse({ records: [], next_cursor: null, total: 0 })],
    ]);
    await api.listExamples({
      sort: 'complexity',
      limit: 24,
      connected: true,
      attractor_class: 'UncountableCarpet',
      min_types: 1,
      max_fli: 9,
    });
    const url = new URL(calls[0].url, 'http://unit.test');
    expect(url.pathname).toBe('/api/v1/examples');
    expect(url.searchParams.get('sort')).toBe('complexity');
    expect(url.searchParams.get('limit')).toBe('24');
    expect(url.searchParams.get('connected')).toBe('true');
    expect(url.searchParams.get('class')).toBe('UncountableCarpet');
    expect(url.searchParams.get('min_types')).toBe('1');
    expect(url.searchParams.get('max_fli')).toBe('9');
    expect(url.searchParams.has('max_types')).toBe(false);
  });

  it('passes the cursor through', async () => {
    const calls = stubFetch([
      ['/api/v1/examples', () => jsonResponse({ records: [], next_cursor: null, total: 3 })],
    ]);
    await api.listExamples({ cursor: '5:abcdef' });
    expect(calls[0].url).toContain('cursor=5%3Aabcdef');
  });
});

describe('errors', () => {
  it('keeps the violation list of a 400', async () => {
    stubFetch([
      ['/api/v1/analyze', () => jsonResponse({ violations: ['m > det M', 'other'] }, 400)],
    ]);
    const err = await api
      .analyze(fixtureRecord().spec)
      .then(() => null)
      .catch((e) => e as ApiError);
    expect(err).toBeInstanceOf(ApiError);
    expect(err!.status).toBe(400);
    expect(err!.violations()).toEqual(['m > det M', 'other']);
    expect(err!.message).toBe('m > det M');
  });

  it('uses the error field of structured failures', async () => {
    stubFetch([['/mutate', () => jsonResponse({ error: 'stuck' }, 422)]]);
    const err = await api
      .mutateExample('ab12')
      .then(() => null)
      .catch((e) => e as ApiError);
    expect(err!.message).toBe('stuck');
    expect(err!.violations()).toEqual([]);
  });
});

describe('mutateExample', () => {
  it('posts to the mutate endpoint', async () => {
    const child = { ...fixtureRecord(), id: 'f'.repeat(64), parent: fixtureRecord().id };
    const calls = stubFetch([['/mutate', () => jsonResponse(child)]]);
    const got = await api.mutateExample(fixtureRecord().id);
    expect(calls[0].url).toBe(`/api/v1/examples/${fixtureRecord().id}/mutate`);
    expect(calls[0].init?.method).toBe('POST');
    expect(got.parent).toBe(fixtureRecord().id);
  });
});

describe('renderUrl', () => {
  it('builds window parameters the service accepts', () => {
    const url = renderUrl('deadbeef', {
      w: 560,
      h: 560,
      window: [0.5, -0.25, 1.5],
      coloring: 'first',
    });
    expect(url).toContain('/api/v1/examples/deadbeef/render?');
    expect(url).toContain('w=560');
    expect(url).toContain(`window=${encodeURIComponent('0.5,-0.25,1.5')}`);
    expect(url).toContain('coloring=first');
    expect(url).toContain('format=png');
  });

  it('honors a configured base url', () => {
    configureBase('http://svc:8000/');
    expect(renderUrl('x')).toMatch(/^http:\/\/svc:8000\/api\/v1\//);
  });
});

describe('fetchRender', () => {
  it('reads the resolved window from the response header', async () => {
    stubFetch([
      ['/render', () => jsonResponse('img-bytes', 200, { 'X-Render-Window': '0.25,-1.5,2.0' })],
    ]);
    const result = await fetchRender('abcd', { w: 64, h: 64 });
    expect(result.window).toEqual([0.25, -1.5, 2.0]);
    expect(result.url).toContain('/render?');
  });

  it('tolerates a missing or malformed header', async () => {
    stubFetch([['/render', () => jsonResponse('img', 200, { 'X-Render-Window': 'garbage' })]]);
    const result = await fetchRender('abcd');
    expect(result.window).toBeNull();
  });

  it('raises ApiError on render failures', async () => {
    stubFetch([['/render', () => jsonResponse({ error: 'bad window' }, 400)]]);
    await expect(fetchRender('abcd')).rejects.toThrowError('bad window');
  });
});
