/** Scene drawing as an SVG string, mirroring the server's renderer.
 *
 * Two panels, one per qubit.  A partial scene is drawn merged: the
 * separable layer as an inner shell at radius r carrying the arrow, the
 * MES layer as the outer sphere; each qubit-2 axis bends at the shell
 * where the two frames disagree.  Maximally entangled spheres carry a
 * center dot instead of an arrow.
 */

import type { Camera } from "./projection.js";
import { project } from "./projection.js";
import type { LayerDoc, SceneDoc, SphereDoc } from "./types.js";
import { isSceneDoc } from "./types.js";

const AXIS_NAMES = ["x", "y", "z"] as const;

function fmt(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function polyline(camera: Camera, radius: number, points: number[][], attrs: string): string {
  const coords = points
    .map((p) => {
      const [x, y] = project(camera, p, radius);
      return `${fmt(x)},${fmt(y)}`;
    })
    .join(" ");
  return `<polyline points="${coords}" fill="none" ${attrs}/>`;
}

function equator(camera: Camera, radius: number, scale: number): string {
  const points: number[][] = [];
  for (let k = 0; k <= 72; k++) {
    const a = (2 * Math.PI * k) / 72;
    points.push([scale * Math.cos(a), scale * Math.sin(a), 0]);
  }
  return polyline(camera, radius, points, 'stroke="#999999" stroke-width="1" stroke-dasharray="4 3"');
}

function column(frame: number[][], k: number): number[] {
  return [frame[0]?.[k] ?? 0, frame[1]?.[k] ?? 0, frame[2]?.[k] ?? 0];
}

function axes(
  camera: Camera,
  radius: number,
  innerFrame: number[][],
  outerFrame: number[][] | null,
  innerScale: number,
  sphereIndex: number,
): string[] {
  const parts: string[] = [];
  for (let k = 0; k < 3; k++) {
    const dIn = column(innerFrame, k);
    let path: number[][];
    let tip: number[];
    if (outerFrame === null) {
      tip = dIn;
      path = [[0, 0, 0], tip];
    } else {
      const knee = dIn.map((v) => innerScale * v);
      const dOut = column(outerFrame, k);
      tip = knee.map((v, i) => v + (1 - innerScale) * (dOut[i] ?? 0));
      path = [[0, 0, 0], knee, tip];
    }
    parts.push(polyline(camera, radius, path, 'stroke="#444444" stroke-width="1.4"'));
    const [lx, ly] = project(camera, tip.map((v) => v * 1.16), radius);
    parts.push(
      `<text x="${fmt(lx)}" y="${fmt(ly)}" font-size="13" fill="#222222" ` +
        `text-anchor="middle" dominant-baseline="middle">${AXIS_NAMES[k]}${sphereIndex}</text>`,
    );
  }
  return parts;
}

function arrowLine(camera: Camera, radius: number, arrow: number[], scale: number): string {
  const [x, y] = project(camera, arrow.map((v) => v * scale), radius);
  return (
    `<line x1="0" y1="0" x2="${fmt(x)}" y2="${fmt(y)}" ` +
    'stroke="#b03030" stroke-width="2.5" marker-end="url(#tip)"/>'
  );
}

function view(layer: LayerDoc, sphere: 1 | 2): SphereDoc {
  const v = layer.spheres[sphere - 1];
  if (!v) throw new Error("layer is missing a sphere");
  return v;
}

function panel(camera: Camera, radius: number, scene: SceneDoc, sphere: 1 | 2): string[] {
  const parts = [
    `<circle cx="0" cy="0" r="${fmt(radius)}" fill="none" stroke="#777777" stroke-width="1.5"/>`,
    equator(camera, radius, 1),
  ];
  if (scene.classification === "partial") {
    const sepLayer = scene.layers.find((l) => l.kind === "separable");
    const mesLayer = scene.layers.find((l) => l.kind === "mes");
    if (!sepLayer || !mesLayer) throw new Error("partial scene needs both layers");
    const sep = view(sepLayer, sphere);
    const mes = view(mesLayer, sphere);
    const innerScale = Math.max(scene.weights.r, 0.05);
    parts.push(
      `<circle cx="0" cy="0" r="${fmt(innerScale * radius)}" fill="none" ` +
        'stroke="#777777" stroke-width="1" stroke-dasharray="2 3"/>',
    );
    parts.push(...axes(camera, radius, sep.frame, mes.frame, innerScale, sphere));
    if (sep.arrow) parts.push(arrowLine(camera, radius, sep.arrow, innerScale));
    return parts;
  }
  const layer = scene.layers[0];
  if (!layer) throw new Error("scene has no layers");
  const v = view(layer, sphere);
  parts.push(...axes(camera, radius, v.frame, null, 1, sphere));
  if (v.arrow === null) {
    parts.push('<circle cx="0" cy="0" r="4" fill="#b03030"/>');
  } else {
    parts.push(arrowLine(camera, radius, v.arrow, 1));
  }
  return parts;
}

export function sceneToSvg(scene: SceneDoc, camera: Camera, size = 320): string {
  const width = 2 * size;
  const height = size + 40;
  const radius = 0.36 * size;
  const caption =
    `${scene.classification}  r=${scene.weights.r.toPrecision(6)}` +
    `  r~=${scene.weights.r_tilde.toPrecision(6)}`;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
    "<defs>" +
      '<marker id="tip" markerWidth="9" markerHeight="9" refX="7" refY="4.5" orient="auto">' +
      '<path d="M0,0 L9,4.5 L0,9 z" fill="#b03030"/>' +
      "</marker></defs>",
  ];
  for (const sphere of [1, 2] as const) {
    const cx = sphere === 1 ? size / 2 : size + size / 2;
    parts.push(`<g transform="translate(${cx},${size / 2})">`);
    parts.push(...panel(camera, radius, scene, sphere));
    parts.push("</g>");
    parts.push(
      `<text x="${cx}" y="${size + 8}" font-size="14" fill="#222222" ` +
        `text-anchor="middle">qubit ${sphere}</text>`,
    );
  }
  parts.push(
    `<text x="${size}" y="${size + 28}" font-size="13" fill="#555555" ` +
      `text-anchor="middle">${caption}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}

/** Draw a payload if it is well formed, a placeholder message if not. */
export function renderScene(payload: unknown, camera: Camera, size = 320): string {
  if (isSceneDoc(payload)) {
    try {
      return sceneToSvg(payload, camera, size);
    } catch (error) {
      return placeholder(String(error), size);
    }
  }
  return placeholder("malformed scene payload", size);
}

export function placeholder(message: string, size = 320): string {
  const width = 2 * size;
  const height = size + 40;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    `<rect width="${width}" height="${height}" fill="#f6f2f2"/>` +
    `<text x="${width / 2}" y="${height / 2}" font-size="14" fill="#902020" ` +
    `text-anchor="middle">${message}</text>` +
    "</svg>"
  );
}
