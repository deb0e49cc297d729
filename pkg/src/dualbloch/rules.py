"""Graphical rotation rules on dual-sphere scenes.

Every generator owns a wedge plane: a local generator rotates the other
two axes of its own sphere into each other, a double generator wedges the
first qubit's axis with the second qubit's axis.  apply_rule performs a
quarter turn purely on scene geometry (frames and arrows); it never
touches amplitudes.  The test suite closes the diagram against matrix
simulation for every stabilizer state, generator, and direction.

Rules operate on the 60 stabilizer states, whose scenes have exact
signed-permutation frames and axis-aligned arrows.  Scene geometry is
snapped to integers on entry, so long rule chains accumulate no error.

Moves:

- eigen: the generator's expectation has modulus 1; only the phase moves,
  the scene does not.
- local: the drawn plane axes rotate into each other; sphere-1 moves are
  followed by a rigid counter-rotation of the whole picture to keep
  frame1 at the identity.
- separable-to-separable: with one qubit's axis aligned to its arrow, the
  double rotation degrades to a local one on the other sphere, the angle
  multiplied by the aligned eigenvalue (+-1).
- MES-to-separable: arrows appear against the cross product of the drawn
  wedge axes; the second wedge axis inverts, restoring a proper frame.
- separable-to-MES: sphere 2 is rigidly re-seated so its wedge axis meets
  the cross product of the first wedge axis and the arrow, then the wedge
  axis inverts and the arrows withdraw.

A direction of -1 negates the first wedge operand; negating the second
instead gives the same result (asserted in tests).
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .measures import EntanglementKind, classify
from .scene import (
    LayerKind,
    Scene,
    SceneLayer,
    SphereView,
    validate_scene,
)
from .states import (
    GENERATORS,
    LOCAL_GENERATORS,
    Generator,
    TwoQubitState,
    apply,
    expectation,
    format_state,
    rotation_unitary,
)
from .tolerances import EPS_NUM

__all__ = [
    "AxisRef",
    "Plane",
    "plane_of",
    "PLANE_TABLE",
    "PlaneClass",
    "NotStabilizerError",
    "UnsupportedConfigurationError",
    "is_stabilizer_state",
    "eigenplanes",
    "classify_plane",
    "plane_census",
    "apply_rule",
    "StabilizerGraph",
    "enumerate_stabilizers",
    "graph_to_doc",
    "graph_to_edge_list",
]

_AXIS_NAMES = ("x", "y", "z")


class NotStabilizerError(ValueError):
    """Rule or census invoked outside the 60-state stabilizer set."""


class UnsupportedConfigurationError(ValueError):
    """Scene geometry matches no graphical rule."""


@dataclass(frozen=True)
class AxisRef:
    """A body axis of one sphere, with an orientation sign."""

    sphere: int
    axis: int
    sign: int = 1

    @property
    def label(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}{_AXIS_NAMES[self.axis]}{self.sphere}"


@dataclass(frozen=True)
class Plane:
    """Oriented wedge plane: rotate first toward second."""

    first: AxisRef
    second: AxisRef

    @property
    def label(self) -> str:
        return f"{self.first.label}^{self.second.label}"


def _plane_for(gen: Generator) -> Plane:
    if gen.second == "I":
        a = "XYZ".index(gen.first)
        return Plane(AxisRef(1, (a + 1) % 3), AxisRef(1, (a + 2) % 3))
    if gen.first == "I":
        b = "XYZ".index(gen.second)
        return Plane(AxisRef(2, (b + 1) % 3), AxisRef(2, (b + 2) % 3))
    a = "XYZ".index(gen.first)
    b = "XYZ".index(gen.second)
    return Plane(AxisRef(1, a), AxisRef(2, b))


PLANE_TABLE: dict[str, Plane] = {g.label: _plane_for(g) for g in GENERATORS}


def plane_of(gen: Generator) -> Plane:
    """The oriented wedge plane a generator rotates in."""
    return PLANE_TABLE[gen.label]


class PlaneClass(enum.Enum):
    EIGEN = "eigen"
    WITHIN_SEPARABLE = "within_separable"
    WITHIN_MES = "within_mes"
    TO_MES = "to_mes"
    TO_SEPARABLE = "to_separable"


def is_stabilizer_state(psi: TwoQubitState, tol: float = EPS_NUM) -> bool:
    """True when every generator expectation is within tol of -1, 0, or 1."""
    for gen in GENERATORS:
        e = expectation(psi, gen)
        if abs(e - round(e)) > tol:
            return False
    return True


def _require_stabilizer(psi: TwoQubitState) -> None:
    if not is_stabilizer_state(psi):
        raise NotStabilizerError(
            f"state {format_state(psi, digits=6)} is outside the stabilizer set"
        )


def eigenplanes(psi: TwoQubitState) -> tuple[Generator, ...]:
    """Generators whose expectation has modulus 1 (always exactly three)."""
    _require_stabilizer(psi)
    return tuple(
        g for g in GENERATORS if abs(abs(expectation(psi, g)) - 1.0) <= EPS_NUM
    )


def classify_plane(psi: TwoQubitState, gen: Generator) -> PlaneClass:
    """Effect of a quarter turn in this generator's plane on the state class."""
    _require_stabilizer(psi)
    if abs(abs(expectation(psi, gen)) - 1.0) <= EPS_NUM:
        return PlaneClass.EIGEN
    before = classify(psi).kind
    after = classify(apply(rotation_unitary(gen, math.pi / 2.0), psi)).kind
    table = {
        (EntanglementKind.SEPARABLE, EntanglementKind.SEPARABLE): PlaneClass.WITHIN_SEPARABLE,
        (EntanglementKind.SEPARABLE, EntanglementKind.MAXIMAL): PlaneClass.TO_MES,
        (EntanglementKind.MAXIMAL, EntanglementKind.MAXIMAL): PlaneClass.WITHIN_MES,
        (EntanglementKind.MAXIMAL, EntanglementKind.SEPARABLE): PlaneClass.TO_SEPARABLE,
    }
    try:
        return table[(before, after)]
    except KeyError:
        raise UnsupportedConfigurationError(
            f"quarter turn in {gen.label} left the stabilizer set"
        ) from None


def plane_census(psi: TwoQubitState) -> dict[PlaneClass, int]:
    """Count the 15 generator planes of a stabilizer state by class."""
    counts = {cls: 0 for cls in PlaneClass}
    for gen in GENERATORS:
        counts[classify_plane(psi, gen)] += 1
    return counts


def _snap_ints(values: np.ndarray, what: str) -> np.ndarray:
    snapped = np.round(np.asarray(values, dtype=float)) + 0.0
    if float(np.max(np.abs(values - snapped))) > EPS_NUM:
        raise NotStabilizerError(f"{what} is not axis-aligned integer geometry")
    return snapped


def _snap_scene(scene: Scene) -> Scene:
    """Snap a stabilizer scene to exact integer geometry.

    Raises NotStabilizerError for partial scenes or any frame or arrow
    that is not a signed permutation / unit axis vector within EPS_NUM.
    """
    validate_scene(scene)
    if scene.classification is EntanglementKind.PARTIAL:
        raise NotStabilizerError("partially entangled scenes have no graphical rule")
    layer = scene.layers[0]
    views = []
    for idx, view in ((1, layer.sphere1), (2, layer.sphere2)):
        frame = _snap_ints(view.frame, f"frame{idx}")
        if not np.array_equal(frame.T @ frame, np.eye(3)):
            raise NotStabilizerError(f"frame{idx} is not a signed permutation")
        arrow = None
        if view.arrow is not None:
            arrow = _snap_ints(view.arrow, f"arrow{idx}")
            if float(np.sum(np.abs(arrow))) != 1.0:
                raise NotStabilizerError(f"arrow{idx} is not a unit axis vector")
        views.append(SphereView(frame, arrow))
    if layer.kind is LayerKind.SEPARABLE:
        weights = dict(r=1.0, r_tilde=0.0)
    else:
        weights = dict(r=0.0, r_tilde=1.0)
    return Scene((SceneLayer(layer.kind, views[0], views[1]),), **weights)


def _quarter_turn(u: np.ndarray, v: np.ndarray, s: int) -> np.ndarray:
    """Rotation by s * pi/2 carrying u toward v in their oriented plane."""
    return (
        np.eye(3)
        + s * (np.outer(v, u) - np.outer(u, v))
        - (np.outer(u, u) + np.outer(v, v))
    )


def _replace_views(layer: SceneLayer, view1: SphereView, view2: SphereView) -> Scene:
    weights = (
        dict(r=1.0, r_tilde=0.0)
        if layer.kind is LayerKind.SEPARABLE
        else dict(r=0.0, r_tilde=1.0)
    )
    return Scene((SceneLayer(layer.kind, view1, view2),), **weights)


def _local_turn(scene: Scene, sphere: int, axis: int, s: int) -> Scene:
    """Quarter turn of one sphere's drawn axes about its body axis.

    The rotation happens in the drawn plane of the other two body axes;
    arrows never move with it.  After a sphere-1 turn the whole picture is
    rigidly counter-rotated so frame1 returns to the identity.
    """
    layer = scene.layers[0]
    view = layer.sphere1 if sphere == 1 else layer.sphere2
    a, b = (axis + 1) % 3, (axis + 2) % 3
    u, v = view.frame[:, a], view.frame[:, b]
    rot = _quarter_turn(u, v, s)
    if sphere == 2:
        return _replace_views(
            layer,
            layer.sphere1,
            SphereView(rot @ layer.sphere2.frame, layer.sphere2.arrow),
        )
    # Physical turn of sphere 1, then rigid rot.T on everything drawn.
    undo = rot.T
    new1 = SphereView(
        undo @ rot @ layer.sphere1.frame,
        None if layer.sphere1.arrow is None else undo @ layer.sphere1.arrow,
    )
    new2 = SphereView(
        undo @ layer.sphere2.frame,
        None if layer.sphere2.arrow is None else undo @ layer.sphere2.arrow,
    )
    return _replace_views(layer, new1, new2)


def _invert_column(frame: np.ndarray, col: int) -> np.ndarray:
    out = frame.copy()
    out[:, col] = -out[:, col]
    return out


def _mes_to_separable(
    scene: Scene, a: int, b: int, u_sign: int, v_sign: int
) -> Scene:
    layer = scene.layers[0]
    u = u_sign * layer.sphere1.frame[:, a]
    v = v_sign * layer.sphere2.frame[:, b]
    arrow = -np.cross(u, v)
    frame2 = _invert_column(layer.sphere2.frame, b)
    return Scene(
        (
            SceneLayer(
                LayerKind.SEPARABLE,
                SphereView(layer.sphere1.frame, arrow),
                SphereView(frame2, arrow),
            ),
        ),
        r=1.0,
        r_tilde=0.0,
    )


@lru_cache(maxsize=1)
def _proper_signed_permutations() -> tuple[np.ndarray, ...]:
    frames = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            f = np.zeros((3, 3))
            for col, (row, sign) in enumerate(zip(perm, signs)):
                f[row, col] = sign
            if round(float(np.linalg.det(f))) == 1:
                f.setflags(write=False)
                frames.append(f)
    return tuple(frames)


def _separable_to_mes(
    scene: Scene, a: int, b: int, u_sign: int, v_sign: int
) -> Scene:
    layer = scene.layers[0]
    u = u_sign * layer.sphere1.frame[:, a]
    shared = layer.sphere1.arrow
    body2 = layer.sphere2.frame.T @ layer.sphere2.arrow
    # Signed wedge operand v must reach u x arrow, so column b of the
    # seated frame is that cross product divided by the operand sign.
    target = v_sign * np.cross(u, shared)
    matches = [
        f
        for f in _proper_signed_permutations()
        if np.array_equal(f @ body2, shared) and np.array_equal(f[:, b], target)
    ]
    if len(matches) != 1:
        raise UnsupportedConfigurationError(
            f"expected exactly one frame seating, found {len(matches)}"
        )
    frame2 = _invert_column(matches[0], b)
    return Scene(
        (
            SceneLayer(
                LayerKind.MES,
                SphereView(layer.sphere1.frame),
                SphereView(frame2),
            ),
        ),
        r=0.0,
        r_tilde=1.0,
    )


def _apply_rule_signed(
    scene: Scene, gen: Generator, u_sign: int, v_sign: int
) -> Scene:
    """Rule dispatch with the direction sign on a chosen wedge operand."""
    snapped = _snap_scene(scene)
    layer = snapped.layers[0]
    separable = layer.kind is LayerKind.SEPARABLE
    direction = u_sign * v_sign

    if gen.is_local:
        if gen.second == "I":
            sphere, axis = 1, "XYZ".index(gen.first)
        else:
            sphere, axis = 2, "XYZ".index(gen.second)
        if separable:
            view = layer.sphere1 if sphere == 1 else layer.sphere2
            aligned = float(view.body_arrow() @ np.eye(3)[axis])
            if abs(aligned) == 1.0:
                return snapped  # eigen: phase only
        return _local_turn(snapped, sphere, axis, direction)

    a = "XYZ".index(gen.first)
    b = "XYZ".index(gen.second)
    if not separable:
        u = layer.sphere1.frame[:, a]
        v = layer.sphere2.frame[:, b]
        if abs(float(u @ v)) == 1.0:
            return snapped  # eigen
        return _mes_to_separable(snapped, a, b, u_sign, v_sign)

    s1 = float(layer.sphere1.body_arrow() @ np.eye(3)[a])
    s2 = float(layer.sphere2.body_arrow() @ np.eye(3)[b])
    if abs(s1) == 1.0 and abs(s2) == 1.0:
        return snapped  # eigen
    if abs(s1) == 1.0:
        return _local_turn(snapped, 2, b, int(s1) * direction)
    if abs(s2) == 1.0:
        return _local_turn(snapped, 1, a, int(s2) * direction)
    if s1 == 0.0 and s2 == 0.0:
        return _separable_to_mes(snapped, a, b, u_sign, v_sign)
    raise UnsupportedConfigurationError(
        f"arrow alignment ({s1}, {s2}) matches no rule for {gen.label}"
    )


def apply_rule(scene: Scene, gen: Generator, direction: int = 1) -> Scene:
    """Quarter turn in the generator's plane, by graphical rules alone.

    direction +1 rotates with the plane orientation, -1 against it (the
    sign rides on the first wedge operand).  The input must depict one of
    the 60 stabilizer states; the result is a new snapped scene.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return _apply_rule_signed(scene, gen, direction, 1)


@dataclass(frozen=True)
class StabilizerEdge:
    source: int
    target: int
    generator: Generator
    direction: int


@dataclass(frozen=True)
class StabilizerGraph:
    """Closure of uu under quarter turns in all 15 generator planes."""

    states: tuple[TwoQubitState, ...]
    kinds: tuple[EntanglementKind, ...]
    edges: tuple[StabilizerEdge, ...]

    def index_of(self, psi: TwoQubitState) -> int:
        return {s.key(): i for i, s in enumerate(self.states)}[psi.key()]


@lru_cache(maxsize=1)
def enumerate_stabilizers() -> StabilizerGraph:
    """Breadth-first closure from uu; deterministic node order."""
    start = TwoQubitState([1, 0, 0, 0])
    order: dict[tuple, int] = {start.key(): 0}
    states = [start]
    edges = []
    cursor = 0
    while cursor < len(states):
        current = states[cursor]
        for gen in GENERATORS:
            for direction in (1, -1):
                u = rotation_unitary(gen, direction * math.pi / 2.0)
                nxt = apply(u, current)
                key = nxt.key()
                if key not in order:
                    order[key] = len(states)
                    states.append(nxt)
                edges.append(StabilizerEdge(cursor, order[key], gen, direction))
        cursor += 1
    kinds = tuple(classify(s).kind for s in states)
    return StabilizerGraph(tuple(states), kinds, tuple(edges))


def graph_to_doc(graph: StabilizerGraph) -> dict:
    """JSON-ready document: nodes with state text and class, directed edges."""
    return {
        "nodes": [
            {"id": i, "state": format_state(s), "kind": k.value}
            for i, (s, k) in enumerate(zip(graph.states, graph.kinds))
        ],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "generator": e.generator.label,
                "direction": e.direction,
            }
            for e in graph.edges
        ],
    }


def graph_to_edge_list(graph: StabilizerGraph) -> str:
    """Tab-separated edge lines: source, target, generator, direction."""
    lines = [
        f"{e.source}\t{e.target}\t{e.generator.label}\t{e.direction:+d}"
        for e in graph.edges
    ]
    return "\n".join(lines) + "\n"
