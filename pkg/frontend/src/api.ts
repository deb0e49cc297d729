/** Typed client for the dualbloch HTTP API. */

import type { PlanesMap, SessionPayload, TraceDoc } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) message = body.error;
    } catch {
      // non-JSON error body; keep the status message
    }
    throw new ApiError(response.status, message);
  }
  return (await response.json()) as T;
}

function post<T>(path: string, body?: unknown): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: body === undefined ? "{}" : JSON.stringify(body),
  });
}

export function createSession(state?: string): Promise<SessionPayload> {
  return post("/sessions", state === undefined ? undefined : { state });
}

export function getSession(id: string): Promise<SessionPayload> {
  return request(`/sessions/${encodeURIComponent(id)}`);
}

export function applyRotation(
  id: string,
  generator: string,
  angle: number, // units of pi
): Promise<SessionPayload> {
  return post(`/sessions/${encodeURIComponent(id)}/apply`, { generator, angle });
}

export function undoRotation(id: string): Promise<SessionPayload> {
  return post(`/sessions/${encodeURIComponent(id)}/undo`);
}

export function getPlanes(): Promise<PlanesMap> {
  return request("/planes");
}

export function getCnotTrace(input: string): Promise<TraceDoc> {
  return request(`/gates/cnot/trace?input=${encodeURIComponent(input)}`);
}
