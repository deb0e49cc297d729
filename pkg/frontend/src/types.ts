/** Wire types for the dualbloch HTTP API, plus runtime guards.
 *
 * The server is the single source of truth; the client never computes
 * physics, it only checks that payloads have the documented shape.
 */

export type LayerKind = "separable" | "mes";
export type Classification = "separable" | "partial" | "maximal";
export type PlaneClass =
  | "eigen"
  | "within_separable"
  | "within_mes"
  | "to_mes"
  | "to_separable";

export interface SphereDoc {
  frame: number[][];
  arrow: number[] | null;
}

export interface LayerDoc {
  kind: LayerKind;
  spheres: SphereDoc[];
}

export interface SceneDoc {
  version: number;
  classification: Classification;
  weights: { r: number; r_tilde: number };
  layers: LayerDoc[];
}

export interface Measures {
  classification: Classification;
  r: number;
  r_tilde: number;
  concurrence: number;
  purity: number;
}

export interface HistoryEntry {
  generator: string;
  angle: number; // units of pi
}

export interface SessionPayload {
  id: string;
  state: string;
  scene: SceneDoc;
  measures: Measures;
  planes: Record<string, PlaneClass> | null;
  history: HistoryEntry[];
}

export interface TraceStepDoc {
  generator: string;
  angle: number; // units of pi
  note: string;
  state: string;
  scene: SceneDoc;
}

export interface TraceDoc {
  input: { state: string; scene: SceneDoc };
  steps: TraceStepDoc[];
  sequence_phase: { re: number; im: number };
  global_phase: { re: number; im: number };
}

export type PlanesMap = Record<string, string>;

function isVector(x: unknown, length: number): x is number[] {
  return (
    Array.isArray(x) &&
    x.length === length &&
    x.every((v) => typeof v === "number" && Number.isFinite(v))
  );
}

function isSphereDoc(x: unknown): x is SphereDoc {
  if (typeof x !== "object" || x === null) return false;
  const s = x as Record<string, unknown>;
  const frameOk =
    Array.isArray(s.frame) &&
    s.frame.length === 3 &&
    s.frame.every((row) => isVector(row, 3));
  const arrowOk = s.arrow === null || isVector(s.arrow, 3);
  return frameOk && arrowOk;
}

/** Structural check for a scene payload; the server enforces the math. */
export function isSceneDoc(x: unknown): x is SceneDoc {
  if (typeof x !== "object" || x === null) return false;
  const d = x as Record<string, unknown>;
  if (d.version !== 1) return false;
  if (
    d.classification !== "separable" &&
    d.classification !== "partial" &&
    d.classification !== "maximal"
  )
    return false;
  const w = d.weights as Record<string, unknown> | undefined;
  if (!w || typeof w.r !== "number" || typeof w.r_tilde !== "number") return false;
  if (!Array.isArray(d.layers) || d.layers.length < 1 || d.layers.length > 2)
    return false;
  return d.layers.every((layer) => {
    const l = layer as Record<string, unknown>;
    return (
      (l.kind === "separable" || l.kind === "mes") &&
      Array.isArray(l.spheres) &&
      l.spheres.length === 2 &&
      l.spheres.every(isSphereDoc)
    );
  });
}
