import { describe, expect, it } from 'vitest';

import { getJson, searchUrl, statsUrl } from '../src/api';

describe('searchUrl', () => {
  it('round-trips every parameter into the query string', () => {
    const url = new URL(searchUrl('http://localhost:8000', {
      q: 'beba bebe',
      k: 0.8,
      tcm: 0.4,
      seed: 123,
    }));
    expect(url.origin).toBe('http://localhost:8000');
    expect(url.pathname).toBe('/search');
    expect(url.searchParams.get('q')).toBe('beba bebe');
    expect(url.searchParams.get('k')).toBe('0.8');
    expect(url.searchParams.get('tcm')).toBe('0.4');
    expect(url.searchParams.get('seed')).toBe('123');
    expect(url.searchParams.has('limit')).toBe(false);
  });

  it('includes limit only when given', () => {
    const url = new URL(searchUrl('http://localhost:8000', {
      q: 'a', k: 0.5, tcm: 0.25, seed: 0, limit: 5,
    }));
    expect(url.searchParams.get('limit')).toBe('5');
  });

  it('tolerates a trailing slash on the base', () => {
    const url = searchUrl('http://api.example:9000/', { q: 'x', k: 1, tcm: 0.25, seed: 1 });
    expect(url.startsWith('http://api.example:9000/search?')).toBe(true);
  });
});

describe('statsUrl', () => {
  it('omits q for the full graph', () => {
    expect(statsUrl('http://localhost:8000')).toBe('http://localhost:8000/stats');
  });

  it('encodes the query', () => {
    const url = new URL(statsUrl('http://localhost:8000', 'beba bebe'));
    expect(url.pathname).toBe('/stats');
    expect(url.searchParams.get('q')).toBe('beba bebe');
  });
});

describe('getJson', () => {
  const respond = (ok: boolean, status: number, body: unknown) =>
    (async () => ({ ok, status, json: async () => body })) as unknown as typeof fetch;

  it('returns the parsed body on success', async () => {
    const body = await getJson<{ a: number }>('http://x/search', respond(true, 200, { a: 1 }));
    expect(body).toEqual({ a: 1 });
  });

  it('surfaces the server error text', async () => {
    const fetchFn = respond(false, 400, { error: 'k must be in (0, 1], got 2.0' });
    await expect(getJson('http://x/search', fetchFn)).rejects.toThrow('k must be in (0, 1], got 2.0');
  });

  it('falls back to the status code when the body has no error text', async () => {
    const fetchFn = respond(false, 502, 'gateway mumble');
    await expect(getJson('http://x/search', fetchFn)).rejects.toThrow('request failed (502)');
  });
});
