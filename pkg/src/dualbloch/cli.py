"""Command line interface.

Angles are in units of pi (0.5 means a quarter turn) unless --radians is
given.  Exit codes: 0 success, 1 usage error, 2 computation error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from .gates import cnot_sequence, trace
from .measures import classify, concurrence, purity
from .render import RenderOptions, render_svg
from .rules import (
    GENERATORS,
    NotStabilizerError,
    UnsupportedConfigurationError,
    apply_rule,
    enumerate_stabilizers,
    graph_to_doc,
    graph_to_edge_list,
)
from .scene import (
    InvalidSceneError,
    SceneParseError,
    scene_from_state,
    serialize_scene,
    state_from_scene,
)
from .states import (
    BASIS_LABELS,
    Generator,
    NonUnitaryError,
    StateParseError,
    apply,
    fidelity,
    format_complex,
    format_state,
    parse_state,
    rotation_unitary,
)
from .tolerances import EPS_NUM

__all__ = ["main"]

_DEFAULT_PORT = 8000


class _UsageError(Exception):
    pass


def _state_arg(text: str):
    try:
        return parse_state(text)
    except StateParseError as exc:
        raise _UsageError(str(exc)) from None


def _generator_arg(text: str) -> Generator:
    try:
        return Generator.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _angle_arg(text: str, radians: bool) -> float:
    try:
        value = float(text)
    except ValueError:
        raise _UsageError(f"bad angle {text!r}") from None
    return value if radians else value * math.pi


def _cmd_state(args) -> int:
    psi = _state_arg(args.state)
    if args.action == "parse":
        print(format_state(psi))
        return 0
    for label, amp in zip(BASIS_LABELS, psi.amps):
        print(f"{label}: {format_complex(amp, digits=6)}")
    c = classify(psi)
    print(f"class={c.kind.value}, r={c.r:.6g}, r_tilde={c.r_tilde:.6g}")
    return 0


def _cmd_rotate(args) -> int:
    psi = _state_arg(args.state)
    gen = _generator_arg(args.generator)
    theta = _angle_arg(args.angle, args.radians)
    print(format_state(apply(rotation_unitary(gen, theta), psi), digits=6))
    return 0


def _cmd_measure(args) -> int:
    psi = _state_arg(args.state)
    c = classify(psi)
    print(
        f"r={c.r:.6g}, r_tilde={c.r_tilde:.6g}, "
        f"concurrence={concurrence(psi):.6g}, class={c.kind.value}"
    )
    return 0


def _render_options(args) -> RenderOptions:
    return RenderOptions(
        elevation=args.elevation, azimuth=args.azimuth, merge_style=args.merge_style
    )


def _cmd_scene(args) -> int:
    psi = _state_arg(args.state)
    scene = scene_from_state(psi)
    if args.svg:
        sys.stdout.write(render_svg(scene, _render_options(args)))
    else:
        sys.stdout.write(serialize_scene(scene))
    return 0


def _cmd_stabilizers(args) -> int:
    graph = enumerate_stabilizers()
    if args.graph:
        import json

        print(json.dumps(graph_to_doc(graph), indent=2))
    elif args.edges:
        sys.stdout.write(graph_to_edge_list(graph))
    else:
        n_sep = sum(1 for k in graph.kinds if k.value == "separable")
        n_mes = len(graph.states) - n_sep
        print(f"{len(graph.states)} states: {n_sep} separable, {n_mes} maximally entangled")
    return 0


def _cmd_cnot_trace(args) -> int:
    psi = _state_arg(args.input)
    steps, phase = cnot_sequence()
    result = trace(psi, steps)
    print(f"input: {format_state(psi, digits=6)}")
    for k, ts in enumerate(result.steps, start=1):
        turns = ts.step.angle / math.pi
        print(
            f"{k}. {ts.step.generator.label}:{turns:g}  {ts.step.note}"
            f" -> {format_state(ts.state, digits=6)}"
        )
    print(f"sequence phase: {format_complex(phase, digits=6)}")
    if args.svg_dir:
        out = Path(args.svg_dir)
        out.mkdir(parents=True, exist_ok=True)
        options = RenderOptions()
        files = [(out / "step-0-input.svg", scene_from_state(psi))]
        for k, ts in enumerate(result.steps, start=1):
            files.append((out / f"step-{k}-{ts.step.generator.label}.svg", ts.scene))
        for path, scene in files:
            path.write_text(render_svg(scene, options), encoding="utf-8")
        print(f"wrote {len(files)} SVG files to {out}")
    return 0


def _cmd_rules_verify(args) -> int:
    graph = enumerate_stabilizers()
    cases = 0
    failures = 0
    worst = 1.0
    for psi in graph.states:
        scene = scene_from_state(psi)
        for gen in GENERATORS:
            for direction in (1, -1):
                cases += 1
                graphical = apply_rule(scene, gen, direction)
                matrix = apply(rotation_unitary(gen, direction * math.pi / 2.0), psi)
                f = fidelity(state_from_scene(graphical), matrix)
                worst = min(worst, f)
                if f < 1.0 - EPS_NUM:
                    failures += 1
    print(
        f"{cases - failures}/{cases} rule applications scene-equivalent to matrix "
        f"simulation (worst fidelity {worst:.15f})"
    )
    if failures:
        print(f"error: {failures} mismatching applications", file=sys.stderr)
        return 2
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    port = args.port
    if port is None:
        env = os.environ.get("DUALBLOCH_PORT")
        port = int(env) if env else _DEFAULT_PORT
    app = create_app(journal_path=args.journal, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return 0


class _Parser(argparse.ArgumentParser):
    # Usage problems exit 1; argparse's default of 2 is reserved for
    # computation failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dualbloch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="parse or pretty-print a state")
    p_state.add_argument("action", choices=("show", "parse"))
    p_state.add_argument("state", help="state alias or comma-separated amplitudes")
    p_state.set_defaults(func=_cmd_state)

    p_rot = sub.add_parser("rotate", help="apply one generator rotation")
    p_rot.add_argument("state")
    p_rot.add_argument("generator", help="two Pauli letters, e.g. IX or XY")
    p_rot.add_argument("angle", help="angle in units of pi (0.5 = quarter turn)")
    p_rot.add_argument("--radians", action="store_true", help="angle is in radians")
    p_rot.set_defaults(func=_cmd_rotate)

    p_meas = sub.add_parser("measure", help="entanglement measures of a state")
    p_meas.add_argument("state")
    p_meas.set_defaults(func=_cmd_measure)

    p_scene = sub.add_parser("scene", help="emit the scene of a state")
    p_scene.add_argument("state")
    fmt = p_scene.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="scene JSON (default)")
    fmt.add_argument("--svg", action="store_true", help="render SVG instead")
    p_scene.add_argument("--elevation", type=float, default=70.0)
    p_scene.add_argument("--azimuth", type=float, default=110.0)
    p_scene.add_argument(
        "--merge-style", choices=("inner-separable", "inner-mes"),
        default="inner-separable",
    )
    p_scene.set_defaults(func=_cmd_scene)

    p_stab = sub.add_parser("stabilizers", help="the 60-state closure")
    out = p_stab.add_mutually_exclusive_group()
    out.add_argument("--census", action="store_true", help="one-line summary (default)")
    out.add_argument("--graph", action="store_true", help="full graph as JSON")
    out.add_argument("--edges", action="store_true", help="tab-separated edge list")
    p_stab.set_defaults(func=_cmd_stabilizers)

    p_trace = sub.add_parser("cnot-trace", help="replay the CNOT decomposition")
    p_trace.add_argument("input", help="input state alias or amplitudes")
    p_trace.add_argument("--svg-dir", help="write one SVG per step into this directory")
    p_trace.set_defaults(func=_cmd_cnot_trace)

    p_rules = sub.add_parser("rules", help="rule engine checks")
    p_rules.add_argument("action", choices=("verify",))
    p_rules.set_defaults(func=_cmd_rules_verify)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument(
        "--port", type=int, default=None,
        help="default: DUALBLOCH_PORT environment variable, else 8000",
    )
    p_serve.add_argument("--journal", help="append one JSON line per applied step")
    p_serve.add_argument("--ui-dir", help="also serve this directory of static files")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (
        NonUnitaryError,
        NotStabilizerError,
        UnsupportedConfigurationError,
        InvalidSceneError,
        SceneParseError,
        StateParseError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
