"""Dual-sphere scene model: extraction, reconstruction, serialization.

A scene draws each qubit as a sphere with a body frame (the drawn
directions of its x, y, z axes) and, when the layer is separable, an
arrow.  Frames are 3x3 matrices whose COLUMNS are the drawn absolute
directions of the body axes.  With frame1 the identity, the qubit-2 frame
of a maximally entangled state equals the correlation matrix
T[i, j] = <sigma_i (x) sigma_j>, whose columns are where x2, y2, z2 point.

Scenes come in three shapes, matching the entanglement class:

- separable: one SeparableLayer, both arrows drawn in the same absolute
  direction, both frames proper rotations;
- maximal: one MesLayer, no arrows, frame1 = identity, det(frame2) = -1;
- partial: a SeparableLayer and a MesLayer, weighted r and r_tilde.

Reconstruction inverts extraction up to global phase.  For a partial
scene the relative phase between the layers is recovered from the overlap
of the two reconstructed layer states, which has modulus 1/sqrt(2) for
any consistent pair of layers.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .measures import EntanglementKind, classify
from .states import (
    TwoQubitState,
    bloch_of_qubit,
    bloch_vector,
    correlation_matrix,
    fidelity,
    product_state,
    qubit_from_bloch,
    reduced_density,
    schmidt,
)
from .tolerances import EPS_CLASS, EPS_EXACT, EPS_NUM

__all__ = [
    "SCENE_SCHEMA_VERSION",
    "LayerKind",
    "SphereView",
    "SceneLayer",
    "Scene",
    "InvalidSceneError",
    "SceneParseError",
    "minimal_rotation",
    "mes_state_from_frames",
    "scene_from_state",
    "state_from_scene",
    "scenes_equivalent",
    "validate_scene",
    "scene_to_doc",
    "scene_from_doc",
    "serialize_scene",
    "deserialize_scene",
]

SCENE_SCHEMA_VERSION = 1

_SQ2 = 1.0 / math.sqrt(2.0)
_PHI_PLUS = np.array([_SQ2, 0.0, 0.0, _SQ2], dtype=complex)
# Correlation frame of phi+; the anchor relating MES frames to rotations.
_D = np.diag([1.0, -1.0, 1.0])


class InvalidSceneError(ValueError):
    """Scene data violates a structural invariant beyond EPS_CLASS."""


class SceneParseError(ValueError):
    """Malformed scene document (bad JSON or schema violation)."""

    def __init__(self, message: str, position: int | None = None, path: str | None = None):
        loc = []
        if position is not None:
            loc.append(f"position {position}")
        if path is not None:
            loc.append(f"at {path}")
        super().__init__(message + (f" ({', '.join(loc)})" if loc else ""))
        self.position = position
        self.path = path


class LayerKind(enum.Enum):
    SEPARABLE = "separable"
    MES = "mes"


def _frozen_array(a, shape) -> np.ndarray:
    out = np.array(a, dtype=float).reshape(shape)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SphereView:
    """One sphere: a body frame and an optional arrow, both absolute."""

    frame: np.ndarray
    arrow: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "frame", _frozen_array(self.frame, (3, 3)))
        if self.arrow is not None:
            object.__setattr__(self, "arrow", _frozen_array(self.arrow, (3,)))

    def body_arrow(self) -> np.ndarray | None:
        """Arrow in body coordinates (frame transposed times arrow)."""
        if self.arrow is None:
            return None
        return self.frame.T @ self.arrow


@dataclass(frozen=True, eq=False)
class SceneLayer:
    kind: LayerKind
    sphere1: SphereView
    sphere2: SphereView


@dataclass(frozen=True, eq=False)
class Scene:
    """Layered dual-sphere picture with weights r (separable) and r_tilde (MES)."""

    layers: tuple[SceneLayer, ...]
    r: float
    r_tilde: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def classification(self) -> EntanglementKind:
        kinds = tuple(layer.kind for layer in self.layers)
        if kinds == (LayerKind.SEPARABLE,):
            return EntanglementKind.SEPARABLE
        if kinds == (LayerKind.MES,):
            return EntanglementKind.MAXIMAL
        if kinds == (LayerKind.SEPARABLE, LayerKind.MES):
            return EntanglementKind.PARTIAL
        raise InvalidSceneError(f"unsupported layer arrangement {kinds}")

    def layer(self, kind: LayerKind) -> SceneLayer:
        for layer in self.layers:
            if layer.kind is kind:
                return layer
        raise KeyError(kind)


def minimal_rotation(src, dst) -> np.ndarray:
    """Proper rotation carrying unit vector src to unit vector dst.

    Rotates in the plane spanned by the two vectors.  For (numerically)
    antiparallel inputs that plane is undefined; then the rotation is pi
    about the coordinate axis most perpendicular to dst, ties broken
    x before y before z.
    """
    u = np.asarray(src, dtype=float) / np.linalg.norm(src)
    v = np.asarray(dst, dtype=float) / np.linalg.norm(dst)
    c = float(np.dot(u, v))
    if c >= 1.0 - EPS_EXACT:
        return np.eye(3)
    if c <= -1.0 + EPS_EXACT:
        dots = np.abs(v)
        n = np.eye(3)[int(np.argmin(dots))]
        return 2.0 * np.outer(n, n) - np.eye(3)
    axis = np.cross(u, v)
    axis = axis / np.linalg.norm(axis)
    theta = math.acos(max(-1.0, min(1.0, c)))
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + math.sin(theta) * k + (1.0 - math.cos(theta)) * (k @ k)


def _quaternion_from_rotation(m: np.ndarray) -> np.ndarray:
    """Unit quaternion (w, x, y, z) of a proper rotation matrix."""
    t = m[0, 0] + m[1, 1] + m[2, 2]
    if t > max(m[0, 0], m[1, 1], m[2, 2]):
        s = 2.0 * math.sqrt(max(0.0, 1.0 + t))
        q = [s / 4.0, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s]
    elif m[0, 0] >= m[1, 1] and m[0, 0] >= m[2, 2]:
        s = 2.0 * math.sqrt(max(0.0, 1.0 + m[0, 0] - m[1, 1] - m[2, 2]))
        q = [(m[2, 1] - m[1, 2]) / s, s / 4.0, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s]
    elif m[1, 1] >= m[2, 2]:
        s = 2.0 * math.sqrt(max(0.0, 1.0 + m[1, 1] - m[0, 0] - m[2, 2]))
        q = [(m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, s / 4.0, (m[1, 2] + m[2, 1]) / s]
    else:
        s = 2.0 * math.sqrt(max(0.0, 1.0 + m[2, 2] - m[0, 0] - m[1, 1]))
        q = [(m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, s / 4.0]
    q = np.array(q)
    return q / np.linalg.norm(q)


def _su2_from_rotation(m: np.ndarray) -> np.ndarray:
    """SU(2) element u with u sigma_j u^dag = sum_i m[i, j] sigma_i.

    Of the two lifts +-u, returns the one whose first significant matrix
    entry (row-major scan) has positive real part, imaginary part breaking
    the tie for purely imaginary entries.  The choice is invisible after
    state canonicalization.
    """
    w, x, y, z = _quaternion_from_rotation(m)
    u = np.array([[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]], dtype=complex)
    for entry in u.flat:
        if abs(entry) > EPS_NUM:
            if entry.real < -EPS_EXACT or (abs(entry.real) <= EPS_EXACT and entry.imag < 0.0):
                u = -u
            break
    return u


def mes_state_from_frames(frame1: np.ndarray, frame2: np.ndarray) -> TwoQubitState:
    """Maximally entangled state whose correlation matrix is frame1^T frame2."""
    t = np.asarray(frame1, dtype=float).T @ np.asarray(frame2, dtype=float)
    u = _su2_from_rotation(t.T @ _D)
    return TwoQubitState(np.kron(np.eye(2, dtype=complex), u) @ _PHI_PLUS)


def _unit(v: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n <= EPS_CLASS:
        raise InvalidSceneError("arrow length is numerically zero")
    return v / n


def _separable_layer(a_vec: np.ndarray, b_vec: np.ndarray) -> SceneLayer:
    """Layer for the product of two single-qubit states (amplitude pairs)."""
    r1 = bloch_of_qubit(a_vec)
    r2_body = bloch_of_qubit(b_vec)
    shared = _unit(r1)
    frame2 = minimal_rotation(_unit(r2_body), shared)
    return SceneLayer(
        LayerKind.SEPARABLE,
        SphereView(np.eye(3), r1),
        SphereView(frame2, frame2 @ r2_body),
    )


def scene_from_state(psi: TwoQubitState) -> Scene:
    """Extract the canonical scene of a state.

    Separable states give one arrowed layer with frame2 chosen as the
    minimal rotation aligning the qubit-2 body Bloch vector with the
    qubit-1 arrow.  Maximally entangled states give one frame-only layer
    with frame2 = correlation matrix.  Anything else splits by Schmidt
    decomposition into a separable layer of weight r and an MES layer of
    weight r_tilde.
    """
    c = classify(psi)
    if c.kind is EntanglementKind.SEPARABLE:
        r1 = bloch_vector(reduced_density(psi, 1))
        r2 = bloch_vector(reduced_density(psi, 2))
        shared = _unit(r1)
        frame2 = minimal_rotation(_unit(r2), shared)
        layer = SceneLayer(
            LayerKind.SEPARABLE,
            SphereView(np.eye(3), r1),
            SphereView(frame2, frame2 @ r2),
        )
        return Scene((layer,), r=c.r, r_tilde=c.r_tilde)
    if c.kind is EntanglementKind.MAXIMAL:
        layer = SceneLayer(
            LayerKind.MES,
            SphereView(np.eye(3)),
            SphereView(correlation_matrix(psi)),
        )
        return Scene((layer,), r=c.r, r_tilde=c.r_tilde)
    form = schmidt(psi)
    sep = _separable_layer(form.a0, form.b0)
    mu = TwoQubitState(
        (np.kron(form.a0, form.b0) + np.kron(form.a1, form.b1)) * _SQ2
    )
    mes = SceneLayer(
        LayerKind.MES,
        SphereView(np.eye(3)),
        SphereView(correlation_matrix(mu)),
    )
    return Scene((sep, mes), r=c.r, r_tilde=c.r_tilde)


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidSceneError(message)


def validate_scene(scene: Scene, tol: float = EPS_CLASS) -> None:
    """Raise InvalidSceneError if any structural invariant fails beyond tol."""
    kind = scene.classification  # raises on bad layer arrangement
    _check(-tol <= scene.r <= 1.0 + tol, f"weight r={scene.r} outside [0, 1]")
    _check(-tol <= scene.r_tilde <= 1.0 + tol, f"weight r_tilde={scene.r_tilde} outside [0, 1]")
    _check(
        abs(scene.r**2 + scene.r_tilde**2 - 1.0) <= 10.0 * tol,
        "weights must satisfy r^2 + r_tilde^2 = 1",
    )
    if kind is EntanglementKind.SEPARABLE:
        _check(scene.r_tilde <= tol, "separable scene with nonzero r_tilde")
    if kind is EntanglementKind.MAXIMAL:
        _check(scene.r <= tol, "maximal scene with nonzero r")

    for layer in scene.layers:
        for idx, view in ((1, layer.sphere1), (2, layer.sphere2)):
            f = view.frame
            _check(
                float(np.linalg.norm(f.T @ f - np.eye(3))) <= tol,
                f"{layer.kind.value} layer: frame{idx} is not orthonormal",
            )
        det1 = float(np.linalg.det(layer.sphere1.frame))
        det2 = float(np.linalg.det(layer.sphere2.frame))
        if layer.kind is LayerKind.SEPARABLE:
            _check(abs(det1 - 1.0) <= tol, "separable layer: frame1 must be proper")
            _check(abs(det2 - 1.0) <= tol, "separable layer: frame2 must be proper")
            _check(
                layer.sphere1.arrow is not None and layer.sphere2.arrow is not None,
                "separable layer requires both arrows",
            )
            n1 = float(np.linalg.norm(layer.sphere1.arrow))
            n2 = float(np.linalg.norm(layer.sphere2.arrow))
            _check(tol < n1 <= 1.0 + tol, f"arrow1 length {n1} outside (0, 1]")
            _check(tol < n2 <= 1.0 + tol, f"arrow2 length {n2} outside (0, 1]")
            align = float(
                np.dot(layer.sphere1.arrow / n1, layer.sphere2.arrow / n2)
            )
            _check(align >= 1.0 - tol, "separable layer arrows must share a direction")
        else:
            _check(
                float(np.linalg.norm(layer.sphere1.frame - np.eye(3))) <= tol,
                "MES layer: frame1 must be the identity",
            )
            _check(abs(det2 + 1.0) <= tol, "MES layer: frame2 must have det -1")
            _check(
                layer.sphere1.arrow is None and layer.sphere2.arrow is None,
                "MES layer must not carry arrows",
            )


def _product_from_layer(layer: SceneLayer) -> TwoQubitState:
    v1 = _unit(layer.sphere1.body_arrow())
    v2 = _unit(layer.sphere2.body_arrow())
    return product_state(qubit_from_bloch(v1), qubit_from_bloch(v2))


def state_from_scene(scene: Scene) -> TwoQubitState:
    """Reconstruct the state a scene depicts (global phase is canonical)."""
    validate_scene(scene)
    kind = scene.classification
    if kind is EntanglementKind.SEPARABLE:
        return _product_from_layer(scene.layers[0])
    if kind is EntanglementKind.MAXIMAL:
        layer = scene.layers[0]
        return mes_state_from_frames(layer.sphere1.frame, layer.sphere2.frame)
    sep_layer = scene.layer(LayerKind.SEPARABLE)
    mes_layer = scene.layer(LayerKind.MES)
    p = _product_from_layer(sep_layer)
    mu = mes_state_from_frames(mes_layer.sphere1.frame, mes_layer.sphere2.frame)
    overlap = complex(np.vdot(p.amps, mu.amps))
    _check(
        abs(abs(overlap) - _SQ2) <= EPS_CLASS,
        "separable and MES layers are inconsistent",
    )
    phase = overlap / abs(overlap)
    partner = math.sqrt(2.0) * np.conj(phase) * mu.amps - p.amps
    r = max(0.0, min(1.0, scene.r))
    alpha = math.sqrt((1.0 + r) / 2.0)
    beta = math.sqrt((1.0 - r) / 2.0)
    return TwoQubitState(alpha * p.amps + beta * partner)


def scenes_equivalent(a: Scene, b: Scene, tol: float = EPS_NUM) -> bool:
    """True when both scenes reconstruct to the same state within tol."""
    return fidelity(state_from_scene(a), state_from_scene(b)) >= 1.0 - tol


def _frame_rows(frame: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in frame]


def scene_to_doc(scene: Scene) -> dict:
    """JSON-ready document (schema version 1); floats stay lossless."""
    return {
        "version": SCENE_SCHEMA_VERSION,
        "classification": scene.classification.value,
        "weights": {"r": float(scene.r), "r_tilde": float(scene.r_tilde)},
        "layers": [
            {
                "kind": layer.kind.value,
                "spheres": [
                    {
                        "frame": _frame_rows(view.frame),
                        "arrow": None
                        if view.arrow is None
                        else [float(x) for x in view.arrow],
                    }
                    for view in (layer.sphere1, layer.sphere2)
                ],
            }
            for layer in scene.layers
        ],
    }


def _json_vector(values) -> str:
    return "[" + ", ".join(json.dumps(v) for v in values) + "]"


def serialize_scene(scene: Scene) -> str:
    """Canonical JSON text: fixed key order, one vector per bracket pair.

    Numbers use the shortest lossless encoding, so deserializing and
    re-serializing a canonical document is byte-identical.
    """
    doc = scene_to_doc(scene)
    w = doc["weights"]
    lines = [
        "{",
        f'  "version": {doc["version"]},',
        f'  "classification": {json.dumps(doc["classification"])},',
        f'  "weights": {{"r": {json.dumps(w["r"])}, "r_tilde": {json.dumps(w["r_tilde"])}}},',
        '  "layers": [',
    ]
    for li, layer in enumerate(doc["layers"]):
        lines.append("    {")
        lines.append(f'      "kind": {json.dumps(layer["kind"])},')
        lines.append('      "spheres": [')
        for si, sphere in enumerate(layer["spheres"]):
            frame = ", ".join(_json_vector(row) for row in sphere["frame"])
            arrow = "null" if sphere["arrow"] is None else _json_vector(sphere["arrow"])
            lines.append("        {")
            lines.append(f'          "frame": [{frame}],')
            lines.append(f'          "arrow": {arrow}')
            lines.append("        }" + ("," if si == 0 else ""))
        lines.append("      ]")
        lines.append("    }" + ("," if li + 1 < len(doc["layers"]) else ""))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _require(doc: dict, key: str, kind, path: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SceneParseError(f"missing field {key!r}", path=path)
    value = doc[key]
    if kind is not None and (isinstance(value, bool) or not isinstance(value, kind)):
        raise SceneParseError(f"field {key!r} has wrong type", path=path)
    return value


def _parse_vector(data, length: int, path: str) -> np.ndarray:
    if (
        not isinstance(data, list)
        or len(data) != length
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in data)
    ):
        raise SceneParseError(f"expected a list of {length} numbers", path=path)
    return np.array(data, dtype=float)


def deserialize_scene(text: str) -> Scene:
    """Parse scene JSON; SceneParseError for malformed documents,
    InvalidSceneError when the parsed scene violates invariants."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from None
    return scene_from_doc(doc)


def scene_from_doc(doc) -> Scene:
    """Build and validate a Scene from a parsed JSON document."""
    version = _require(doc, "version", int, "$")
    if version != SCENE_SCHEMA_VERSION:
        raise SceneParseError(f"unsupported schema version {version}", path="$.version")
    classification = _require(doc, "classification", str, "$")
    if classification not in {k.value for k in EntanglementKind}:
        raise SceneParseError(
            f"unknown classification {classification!r}", path="$.classification"
        )
    weights = _require(doc, "weights", dict, "$")
    r = _require(weights, "r", (int, float), "$.weights")
    r_tilde = _require(weights, "r_tilde", (int, float), "$.weights")
    layers_doc = _require(doc, "layers", list, "$")
    layers = []
    for i, layer_doc in enumerate(layers_doc):
        path = f"$.layers[{i}]"
        kind_text = _require(layer_doc, "kind", str, path)
        if kind_text not in {k.value for k in LayerKind}:
            raise SceneParseError(f"unknown layer kind {kind_text!r}", path=path)
        spheres_doc = _require(layer_doc, "spheres", list, path)
        if len(spheres_doc) != 2:
            raise SceneParseError("layer must have exactly 2 spheres", path=path)
        views = []
        for j, sphere_doc in enumerate(spheres_doc):
            spath = f"{path}.spheres[{j}]"
            frame_doc = _require(sphere_doc, "frame", list, spath)
            if len(frame_doc) != 3:
                raise SceneParseError("frame must have 3 rows", path=spath)
            rows = [_parse_vector(row, 3, f"{spath}.frame[{k}]") for k, row in enumerate(frame_doc)]
            arrow_doc = _require(sphere_doc, "arrow", None, spath)
            arrow = (
                None
                if arrow_doc is None
                else _parse_vector(arrow_doc, 3, f"{spath}.arrow")
            )
            views.append(SphereView(np.array(rows), arrow))
        layers.append(SceneLayer(LayerKind(kind_text), views[0], views[1]))
    scene = Scene(tuple(layers), r=float(r), r_tilde=float(r_tilde))
    if scene.classification.value != classification:
        raise InvalidSceneError(
            f"declared classification {classification!r} does not match layers"
        )
    validate_scene(scene)
    return scene
