"""Deterministic SVG rendering of dual-sphere scenes.

Output is a pure function of the scene and options: fixed element order,
fixed styling, coordinates rounded to two decimals.  The camera is an
orthographic projection fixed by elevation and azimuth angles (degrees);
the defaults (70, 110) put z nearly vertical, x toward the lower left,
y to the right.

A two-layer scene is drawn merged: an inner shell for one layer and the
outer sphere for the other.  Each qubit-2 axis runs along the inner
layer's frame up to the inner radius, then bends to follow the outer
layer's frame, so a handedness flip between the layers is visible as a
kink.  The default puts the separable layer inside (arrow on the inner
shell); ``merge_style="inner-mes"`` swaps the shells.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import EntanglementKind
from .scene import LayerKind, Scene, SceneLayer

__all__ = ["RenderOptions", "render_svg"]

_AXIS_NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class RenderOptions:
    elevation: float = 70.0
    azimuth: float = 110.0
    size: int = 320
    merge_style: str = "inner-separable"  # or "inner-mes"


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


class _Camera:
    def __init__(self, elevation: float, azimuth: float, radius: float):
        th = math.radians(elevation)
        ph = math.radians(azimuth)
        self._row_x = np.array([math.cos(ph), math.sin(ph), 0.0])
        self._row_y = np.array(
            [-math.sin(ph) * math.cos(th), math.cos(ph) * math.cos(th), math.sin(th)]
        )
        self.radius = radius

    def point(self, p) -> tuple[float, float]:
        v = np.asarray(p, dtype=float) * self.radius
        # SVG y axis points down.
        return float(self._row_x @ v), -float(self._row_y @ v)


def _polyline(cam: _Camera, points, **attrs) -> str:
    coords = " ".join(
        f"{_fmt(x)},{_fmt(y)}" for x, y in (cam.point(p) for p in points)
    )
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{coords}" fill="none"{extra}/>'


def _circle_path(cam: _Camera, scale: float, segments: int = 72) -> str:
    pts = [
        (scale * math.cos(2 * math.pi * k / segments),
         scale * math.sin(2 * math.pi * k / segments),
         0.0)
        for k in range(segments + 1)
    ]
    return _polyline(cam, pts, stroke="#999999", stroke_width="1",
                     stroke_dasharray="4 3")


def _axis_elements(
    cam: _Camera,
    inner_frame: np.ndarray,
    outer_frame: np.ndarray | None,
    inner_scale: float,
    sphere_index: int,
) -> list[str]:
    parts = []
    for k in range(3):
        d_in = inner_frame[:, k]
        if outer_frame is None:
            tip = d_in
            path = [(0.0, 0.0, 0.0), tuple(tip)]
        else:
            knee = inner_scale * d_in
            tip = knee + (1.0 - inner_scale) * outer_frame[:, k]
            path = [(0.0, 0.0, 0.0), tuple(knee), tuple(tip)]
        parts.append(
            _polyline(cam, path, stroke="#444444", stroke_width="1.4")
        )
        lx, ly = cam.point(np.asarray(tip) * 1.16)
        parts.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="13" fill="#222222" '
            f'text-anchor="middle" dominant-baseline="middle">'
            f"{_AXIS_NAMES[k]}{sphere_index}</text>"
        )
    return parts


def _sphere_panel(
    cam: _Camera,
    scene: Scene,
    sphere: int,
    merge_style: str,
) -> list[str]:
    r_px = cam.radius
    parts = [
        f'<circle cx="0" cy="0" r="{_fmt(r_px)}" fill="none" '
        f'stroke="#777777" stroke-width="1.5"/>',
        _circle_path(cam, 1.0),
    ]

    def view_of(layer: SceneLayer):
        return layer.sphere1 if sphere == 1 else layer.sphere2

    kind = scene.classification
    if kind is EntanglementKind.PARTIAL:
        sep = view_of(scene.layer(LayerKind.SEPARABLE))
        mes = view_of(scene.layer(LayerKind.MES))
        if merge_style == "inner-mes":
            inner_view, outer_view = mes, sep
            inner_scale = max(scene.r_tilde, 0.05)
            arrow_scale = 1.0
        else:
            inner_view, outer_view = sep, mes
            inner_scale = max(scene.r, 0.05)
            arrow_scale = inner_scale
        parts.append(
            f'<circle cx="0" cy="0" r="{_fmt(inner_scale * r_px)}" fill="none" '
            f'stroke="#777777" stroke-width="1" stroke-dasharray="2 3"/>'
        )
        parts.extend(
            _axis_elements(cam, inner_view.frame, outer_view.frame, inner_scale, sphere)
        )
        arrow = sep.arrow
        if arrow is not None:
            x, y = cam.point(np.asarray(arrow) * arrow_scale)
            parts.append(
                f'<line x1="0" y1="0" x2="{_fmt(x)}" y2="{_fmt(y)}" '
                f'stroke="#b03030" stroke-width="2.5" marker-end="url(#tip)"/>'
            )
        return parts

    layer = scene.layers[0]
    view = view_of(layer)
    parts.extend(_axis_elements(cam, view.frame, None, 1.0, sphere))
    if view.arrow is None:
        # No arrow on a maximally entangled sphere: a dot marks the center.
        parts.append('<circle cx="0" cy="0" r="4" fill="#b03030"/>')
    else:
        x, y = cam.point(view.arrow)
        parts.append(
            f'<line x1="0" y1="0" x2="{_fmt(x)}" y2="{_fmt(y)}" '
            f'stroke="#b03030" stroke-width="2.5" marker-end="url(#tip)"/>'
        )
    return parts


def render_svg(scene: Scene, options: RenderOptions = RenderOptions()) -> str:
    """Render a scene to a standalone SVG document string."""
    size = options.size
    width, height = 2 * size, size + 40
    cam = _Camera(options.elevation, options.azimuth, 0.36 * size)
    caption = (
        f"{scene.classification.value}"
        f"  r={scene.r:.6g}  r~={scene.r_tilde:.6g}"
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        "<defs>"
        '<marker id="tip" markerWidth="9" markerHeight="9" refX="7" refY="4.5" orient="auto">'
        '<path d="M0,0 L9,4.5 L0,9 z" fill="#b03030"/>'
        "</marker>"
        "</defs>",
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for sphere, cx in ((1, size // 2), (2, size + size // 2)):
        parts.append(f'<g transform="translate({cx},{size // 2})">')
        parts.extend(_sphere_panel(cam, scene, sphere, options.merge_style))
        parts.append("</g>")
        parts.append(
            f'<text x="{cx}" y="{size + 8}" font-size="14" fill="#222222" '
            f'text-anchor="middle">qubit {sphere}</text>'
        )
    parts.append(
        f'<text x="{size}" y="{size + 28}" font-size="13" fill="#555555" '
        f'text-anchor="middle">{caption}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
