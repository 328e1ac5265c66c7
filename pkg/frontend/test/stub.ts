// A fetch stub routing URL paths to canned payloads, plus a call recorder.

import type { FetchFn } from '../src/api';

export interface StubRoute {
  match: (path: string) => boolean;
  payload: unknown;
  status?: number;
}

export interface StubFetch {
  fetchFn: FetchFn;
  calls: string[];
}

export function stubFetch(routes: StubRoute[]): StubFetch {
  const calls: string[] = [];
  const fetchFn: FetchFn = async (url: string) => {
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    calls.push(path);
    for (const route of routes) {
      if (route.match(path)) {
        return new Response(JSON.stringify(route.payload), {
          status: route.status ?? 200,
          headers: { 'Content-Type': 'application/json' },
        });
      }
    }
    return new Response(JSON.stringify({ error: `no stub for ${path}` }), { status: 404 });
  };
  return { fetchFn, calls };
}
