/** View state and the pure helpers behind the controls.
 *
 * The scene is stored as the server's exact payload plus its serialized
 * JSON text, so "the display shows what the server sent" is checkable
 * byte for byte.
 */

import type { Camera } from "./projection.js";
import { DEFAULT_CAMERA } from "./projection.js";
import type { HistoryEntry, SceneDoc, SessionPayload } from "./types.js";

export const GENERATOR_LABELS = [
  "XI", "YI", "ZI",
  "IX", "IY", "IZ",
  "XX", "XY", "XZ",
  "YX", "YY", "YZ",
  "ZX", "ZY", "ZZ",
] as const;

/** Preset angle choices, in units of pi. */
export const ANGLE_CHOICES = [0.5, -0.5, 0.25, -0.25] as const;

export interface ViewState {
  sessionId: string | null;
  scene: SceneDoc | null;
  sceneJson: string | null;
  measures: SessionPayload["measures"] | null;
  planes: SessionPayload["planes"];
  history: HistoryEntry[];
  camera: Camera;
  selectedGenerator: string;
  angle: number; // units of pi
  inFlight: boolean;
  status: string;
}

export function initialViewState(): ViewState {
  return {
    sessionId: null,
    scene: null,
    sceneJson: null,
    measures: null,
    planes: null,
    history: [],
    camera: { ...DEFAULT_CAMERA },
    selectedGenerator: "XY",
    angle: 0.5,
    inFlight: false,
    status: "",
  };
}

/** Fold a session payload into the view; the server's values verbatim. */
export function absorbPayload(state: ViewState, payload: SessionPayload): ViewState {
  return {
    ...state,
    sessionId: payload.id,
    scene: payload.scene,
    sceneJson: JSON.stringify(payload.scene),
    measures: payload.measures,
    planes: payload.planes,
    history: payload.history,
    status: "",
  };
}

/** Badge text for a plane class as reported by the server. */
export function badgeFor(planeClass: string | undefined): string {
  switch (planeClass) {
    case "eigen":
      return "eigen";
    case "within_separable":
    case "within_mes":
      return "local";
    case "to_mes":
      return "→ entangled";
    case "to_separable":
      return "→ separable";
    default:
      return "";
  }
}

/** Format an angle in units of pi for buttons and history rows. */
export function formatTurns(angle: number): string {
  const named: Record<string, string> = {
    "0.5": "+π/2",
    "-0.5": "−π/2",
    "0.25": "+π/4",
    "-0.25": "−π/4",
  };
  return named[String(angle)] ?? `${angle}π`;
}

/** Steps whose MES weight grew are the entangling ones. */
export function entanglingSteps(
  weights: { before: number; after: number }[],
  tolerance = 1e-9,
): boolean[] {
  return weights.map((w) => w.after - w.before > tolerance);
}
