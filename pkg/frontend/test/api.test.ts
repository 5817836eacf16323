import { afterEach, describe, expect, it, vi } from 'vitest';

import { Api, ApiError } from '../src/api.js';
import { f1Router, installFetch, METRICS_04 } from './f1docs.js';

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('request shapes', () => {
  it('hits the documented endpoint paths', async () => {
    const stub = installFetch(f1Router);
    const api = new Api();

    await api.listDatasets();
    await api.metrics('f1', 0.4);
    await api.preview('f1', 0.4, 100);
    await api.inverse('f1', 'recall', 0.75);
    await api.optimize('f1', 'recall', ['precision>=0.25', 'fpr<=0.1']);

    expect(stub.calls).toEqual([
      '/api/datasets',
      '/api/datasets/f1/metrics?threshold=0.4',
      '/api/datasets/f1/preview?threshold=0.4&icons=100',
      '/api/datasets/f1/inverse?metric=recall&target=0.75',
      '/api/datasets/f1/optimize?maximize=recall&constraint=precision%3E%3D0.25&constraint=fpr%3C%3D0.1',
    ]);
  });

  it('prefixes a configured base URL', async () => {
    const stub = installFetch(f1Router);
    const api = new Api('http://service.test');
    await api.metrics('f1', 0.4);
    expect(stub.calls[0]).toBe('http://service.test/api/datasets/f1/metrics?threshold=0.4');
  });

  it('returns the parsed document', async () => {
    installFetch(f1Router);
    const api = new Api();
    const point = await api.metrics('f1', 0.4);
    expect(point).toEqual(METRICS_04);
  });
});

describe('error mapping', () => {
  it('turns structured error bodies into ApiError', async () => {
    installFetch(() => ({
      status: 409,
      body: { status: 409, code: 'infeasible', detail: 'no threshold satisfies precision>=0.99' },
    }));
    const api = new Api();
    const err = await api.inverse('f1', 'precision', 0.99).catch(e => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe('infeasible');
    expect(err.detail).toContain('precision>=0.99');
  });

  it('copes with non-JSON error bodies', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => new Response('<html>gateway</html>', { status: 502, statusText: 'Bad Gateway' })),
    );
    const api = new Api();
    const err = await api.metrics('f1', 0.4).catch(e => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(502);
    expect(err.code).toBe('error');
  });

  it('uploads dataset bodies via POST', async () => {
    const fetchMock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      expect(init?.method).toBe('POST');
      expect(String(input)).toBe('/api/datasets?name=my%20edits');
      return new Response(
        JSON.stringify({ id: 'abc', name: 'my edits', n_total: 3, n_damaging: 1, created_at: 'now' }),
        { status: 201 },
      );
    });
    vi.stubGlobal('fetch', fetchMock);
    const api = new Api();
    const handle = await api.uploadDataset('my edits', 'id,score,label\nr1,0.5,good\n');
    expect(handle.id).toBe('abc');
    expect(fetchMock).toHaveBeenCalledTimes(1);
  });
});
