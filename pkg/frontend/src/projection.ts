/** Orthographic camera shared by every sphere drawing.
 *
 * Matches the server's SVG renderer: elevation and azimuth in degrees,
 * defaults (70, 110) putting z nearly vertical, x toward the lower left,
 * y to the right.  SVG y points down, hence the sign flip.
 */

export interface Camera {
  elevation: number;
  azimuth: number;
}

export const DEFAULT_CAMERA: Camera = { elevation: 70, azimuth: 110 };

export function project(
  camera: Camera,
  p: readonly number[],
  radius: number,
): [number, number] {
  const th = (camera.elevation * Math.PI) / 180;
  const ph = (camera.azimuth * Math.PI) / 180;
  const x = (p[0] ?? 0) * radius;
  const y = (p[1] ?? 0) * radius;
  const z = (p[2] ?? 0) * radius;
  const sx = x * Math.cos(ph) + y * Math.sin(ph);
  const sy =
    -x * Math.sin(ph) * Math.cos(th) + y * Math.cos(ph) * Math.cos(th) + z * Math.sin(th);
  return [sx, -sy];
}

/** Clamp elevation away from the poles so dragging never flips the view. */
export function dragCamera(camera: Camera, dx: number, dy: number): Camera {
  const azimuth = (((camera.azimuth + dx) % 360) + 360) % 360;
  const elevation = Math.min(175, Math.max(5, camera.elevation - dy));
  return { elevation, azimuth };
}
