/** Shared test plumbing: fixture loading and a routed fetch stub.
 *
 * Fixtures are payloads captured from the real server (see
 * scripts/make_fixtures.py), so every assertion here is against genuine
 * API output, not hand-written approximations.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

export function fixture<T>(name: string): T {
  // vitest runs with the frontend directory as its root
  const path = join(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

export interface FetchCall {
  method: string;
  url: string;
  body: unknown;
}

export interface Route {
  method: string;
  match: RegExp;
  reply: (call: FetchCall) => { status?: number; body: unknown } | Promise<{ status?: number; body: unknown }>;
}

/** Install a fake fetch routed by method and URL; returns the call log. */
export function installFetch(routes: Route[]): FetchCall[] {
  const calls: FetchCall[] = [];
  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body === undefined ? undefined : JSON.parse(String(init.body));
    const call: FetchCall = { method, url, body };
    calls.push(call);
    const route = routes.find((r) => r.method === method && r.match.test(url));
    if (!route) {
      return asResponse(404, { error: `no route for ${method} ${url}` });
    }
    const { status = 200, body: payload } = await route.reply(call);
    // Clone per response so callers cannot share fixture objects.
    return asResponse(status, structuredClone(payload));
  }) as typeof fetch;
  return calls;
}

function asResponse(status: number, payload: unknown): Response {
  return {
    ok: status < 400,
    status,
    json: async () => payload,
  } as unknown as Response;
}

/** Let pending promise chains and timers settle. */
export async function flush(rounds = 8): Promise<void> {
  for (let k = 0; k < rounds; k++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
