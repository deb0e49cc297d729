"""Gate decomposition into generator rotations, with scene traces.

A CNOT (first qubit controls, second flips) factors into five quarter
turns plus a global phase of exp(-i pi/4):

    YI:-0.5; XX:-0.5; IX:0.5; XI:0.5; YI:0.5

listed in application order, angles in units of pi.  Composing the five
rotation unitaries in that order and multiplying by the phase reproduces
the CNOT matrix to machine precision.

Sequence text uses the same ``GEN:angle`` form, semicolon separated,
angles in units of pi unless radians are requested.  Arbitrary generators
and angles are accepted; traces store each intermediate state in
canonical form together with its scene, keeping the accumulated global
phase separate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scene import Scene, scene_from_state
from .states import Generator, TwoQubitState, apply, rotation_unitary

__all__ = [
    "RotationStep",
    "TraceStep",
    "GateTrace",
    "cnot_sequence",
    "CNOT_MATRIX",
    "compose",
    "trace",
    "parse_sequence",
    "format_sequence",
]

CNOT_MATRIX = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class RotationStep:
    """One rotation: generator, angle in radians, and a short reading."""

    generator: Generator
    angle: float
    note: str = ""


def cnot_sequence() -> tuple[tuple[RotationStep, ...], complex]:
    """The five-step CNOT decomposition and its global phase."""
    half = math.pi / 2.0
    steps = (
        RotationStep(Generator("Y", "I"), -half, "control sphere: x toward z"),
        RotationStep(Generator("X", "X"), -half, "double turn in x1^x2"),
        RotationStep(Generator("I", "X"), half, "target sphere: y toward z"),
        RotationStep(Generator("X", "I"), half, "control sphere: y toward z"),
        RotationStep(Generator("Y", "I"), half, "control sphere: z toward x"),
    )
    return steps, complex(math.cos(math.pi / 4.0), -math.sin(math.pi / 4.0))


def compose(steps) -> np.ndarray:
    """Matrix product of the step unitaries, first step applied first."""
    u = np.eye(4, dtype=complex)
    for step in steps:
        u = rotation_unitary(step.generator, step.angle) @ u
    return u


@dataclass(frozen=True)
class TraceStep:
    step: RotationStep
    state: TwoQubitState
    scene: Scene


@dataclass(frozen=True)
class GateTrace:
    """Stepwise replay: canonical states plus the factored-out phase.

    compose(steps) applied to the input equals global_phase times the
    final canonical state.
    """

    input: TwoQubitState
    steps: tuple[TraceStep, ...]
    global_phase: complex


def trace(input_state: TwoQubitState, steps) -> GateTrace:
    """Apply steps one by one, recording state and scene after each."""
    current = input_state
    phase = complex(1.0)
    out = []
    for step in steps:
        raw = rotation_unitary(step.generator, step.angle) @ current.amps
        current = TwoQubitState(raw)
        phase *= complex(np.vdot(current.amps, raw))
        out.append(TraceStep(step, current, scene_from_state(current)))
    return GateTrace(input_state, tuple(out), phase)


def parse_sequence(text: str, radians: bool = False) -> tuple[RotationStep, ...]:
    """Parse ``GEN:angle`` items separated by semicolons.

    Angles are in units of pi unless radians is true.  Empty items
    (trailing semicolons, blank lines) are ignored.
    """
    steps = []
    for k, item in enumerate(text.replace("\n", ";").split(";")):
        item = item.strip()
        if not item:
            continue
        head, sep, tail = item.partition(":")
        if not sep:
            raise ValueError(f"step {k}: expected GEN:angle, got {item!r}")
        try:
            gen = Generator.parse(head)
        except ValueError as exc:
            raise ValueError(f"step {k}: {exc}") from None
        try:
            value = float(tail.strip())
        except ValueError:
            raise ValueError(f"step {k}: bad angle {tail.strip()!r}") from None
        angle = value if radians else value * math.pi
        steps.append(RotationStep(gen, angle))
    return tuple(steps)


def format_sequence(steps) -> str:
    """Render steps as ``GEN:angle`` text, angles in units of pi."""
    return "; ".join(
        f"{s.generator.label}:{_format_turns(s.angle / math.pi)}" for s in steps
    )


def _format_turns(x: float) -> str:
    rounded = round(x, 12)
    if rounded == int(rounded):
        return str(int(rounded))
    return repr(rounded)
