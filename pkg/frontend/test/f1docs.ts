// Canned API documents for the bundled 1000-edit fixture dataset, captured
// from a live service, plus a fetch stub that routes requests to them.

import { vi } from 'vitest';
import type { PointDoc, PreviewDoc, QueryResultDoc } from '../src/api.js';

export const METRICS_04: PointDoc = {
  threshold: 0.4,
  counts: { tp: 20, fp: 60, tn: 910, fn: 10 },
  metrics: { recall: 0.6666666666666666, precision: 0.25, fpr: 0.061855670103092786 },
};

export const LEGEND = {
  TN: { color: 'blue', shape: 'circle', caption: 'correctly detected as good' },
  FP: { color: 'red', shape: 'circle', caption: 'wrongly detected as damaging' },
  TP: { color: 'red', shape: 'triangle', caption: 'correctly detected as damaging' },
  FN: { color: 'blue', shape: 'triangle', caption: 'wrongly detected as good' },
} as const;

export const PREVIEW_04: PreviewDoc = {
  n_icons: 100,
  allocation: { TN: 91, FP: 6, TP: 2, FN: 1 },
  fractions: { TN: 0.91, FP: 0.06, TP: 0.02, FN: 0.01 },
  threshold: 0.4,
  counts: { tp: 20, fp: 60, tn: 910, fn: 10 },
  legend: LEGEND,
};

export const INVERSE_RECALL_075: QueryResultDoc = {
  threshold: 0.3144444444444444,
  counts: { tp: 23, fp: 241, tn: 729, fn: 7 },
  metrics: { recall: 0.7666666666666667, precision: 0.08712121212121213, fpr: 0.24845360824742269 },
  objective_value: 0.7666666666666667,
};

export const OPTIMIZE_RECALL: QueryResultDoc = {
  threshold: 0.39,
  counts: { tp: 21, fp: 61, tn: 909, fn: 9 },
  metrics: { recall: 0.7, precision: 0.25609756097560976, fpr: 0.06288659793814433 },
  objective_value: 0.7,
};

export const INFEASIBLE_BODY = {
  status: 409,
  code: 'infeasible',
  detail:
    'no threshold satisfies precision>=0.99; closest candidate is threshold 0.05 ' +
    'with recall=1.000 precision=0.033 fpr=1.000',
};

export interface Route {
  status?: number;
  body: unknown;
  delayMs?: number;
}

export type Router = (url: string) => Route;

export interface FetchStub {
  calls: string[];
}

const sleep = (ms: number) => new Promise<void>(resolve => setTimeout(resolve, ms));

// Replace global fetch with a router over canned documents; returns the
// list of requested URLs for call-count assertions.
export function installFetch(router: Router): FetchStub {
  const calls: string[] = [];
  vi.stubGlobal(
    'fetch',
    vi.fn(async (input: RequestInfo | URL) => {
      const url = String(input);
      calls.push(url);
      const route = router(url);
      if (route.delayMs) await sleep(route.delayMs);
      return new Response(JSON.stringify(route.body), {
        status: route.status ?? 200,
        headers: { 'Content-Type': 'application/json' },
      });
    }),
  );
  return { calls };
}

// Default routing for the fixture dataset at the thresholds the tests use.
export function f1Router(url: string): Route {
  const u = new URL(url, 'http://service.test');
  const t = u.searchParams.get('threshold');
  if (u.pathname === '/api/datasets') {
    return {
      body: {
        datasets: [
          { id: 'f1', name: 'fixture', n_total: 1000, n_damaging: 30, created_at: '2026-01-01T00:00:00+00:00' },
        ],
      },
    };
  }
  if (u.pathname.endsWith('/metrics')) {
    return { body: { ...METRICS_04, threshold: Number(t) } };
  }
  if (u.pathname.endsWith('/preview')) {
    return { body: { ...PREVIEW_04, threshold: Number(t) } };
  }
  if (u.pathname.endsWith('/inverse')) {
    return { body: INVERSE_RECALL_075 };
  }
  if (u.pathname.endsWith('/optimize')) {
    return { body: OPTIMIZE_RECALL };
  }
  return { status: 404, body: { status: 404, code: 'dataset_not_found', detail: `no route ${u.pathname}` } };
}
