"""Acceptance gate: the package's headline behaviors, one verdict line each.

Every test prints a single "[PASS]"/"[FAIL]" line through the captured
stream (so it lands in terminal output and logs), then asserts.  The
tolerances here are the product contract; do not loosen them.
"""
from __future__ import annotations

import math
import time

import numpy as np

from conftest import SEED, mes_stabilizer_states

from dualbloch import (
    CNOT_MATRIX,
    GENERATORS,
    EntanglementKind,
    Generator,
    TwoQubitState,
    apply,
    apply_rule,
    bloch_vector,
    classify,
    cnot_sequence,
    compose,
    concurrence,
    correlation_matrix,
    enumerate_stabilizers,
    fidelity,
    haar_qubit_unitary,
    haar_state,
    named_state,
    plane_census,
    PlaneClass,
    product_state,
    purity,
    random_maximal_state,
    random_product_state,
    reduced_density,
    rotation_unitary,
    scene_from_state,
    state_from_scene,
    trace,
)
from dualbloch.scene import LayerKind

SQ2 = 1.0 / math.sqrt(2.0)


def _verdict(capsys, name: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_quarter_turn_golden_vector(capsys):
    """Singlet + (I, X) quarter turn gives (1, -i, i, -1)/2 in under 1 ms."""

    def run_once() -> float:
        u = rotation_unitary(Generator("I", "X"), math.pi / 2.0)
        got = apply(u, named_state("psi-"))
        want = TwoQubitState(np.array([1, -1j, 1j, -1], dtype=complex) / 2.0)
        return float(np.max(np.abs(got.amps - want.amps)))

    err = run_once()  # warm up caches before timing
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        err = run_once()
        best = min(best, time.perf_counter() - t0)
    ok = err <= 1e-12 and best < 1e-3
    _verdict(
        capsys,
        "golden quarter turn",
        ok,
        f"max amplitude error {err:.3e} (tol 1e-12), {best * 1e3:.3f} ms (limit 1 ms)",
    )


def test_cnot_five_step_decomposition(capsys):
    """Five quarter turns plus exp(-i pi/4) reproduce CNOT; traces land right."""
    steps, phase = cnot_sequence()
    matrix_err = float(np.max(np.abs(phase * compose(steps) - CNOT_MATRIX)))

    plus_up = product_state(np.array([SQ2, SQ2]), np.array([1.0, 0.0]))
    cases = [
        (named_state("uu"), named_state("uu")),
        (named_state("du"), named_state("dd")),
        (plus_up, named_state("phi+")),
    ]
    worst = min(
        fidelity(trace(start, steps).steps[-1].state, want) for start, want in cases
    )
    ok = matrix_err <= 1e-12 and worst >= 1.0 - 1e-12
    _verdict(
        capsys,
        "CNOT decomposition",
        ok,
        f"matrix error {matrix_err:.3e} (tol 1e-12), "
        f"worst trace fidelity {worst:.15f} (floor 1-1e-12)",
    )


def test_stabilizer_enumeration(capsys):
    """Closure from |uu> has 60 states (36 + 24), the four named MES and
    all 24 reference MES patterns included, in under 5 s."""
    enumerate_stabilizers.cache_clear()
    t0 = time.perf_counter()
    graph = enumerate_stabilizers()
    elapsed = time.perf_counter() - t0

    kinds = list(graph.kinds)
    n_total = len(graph.states)
    n_sep = kinds.count(EntanglementKind.SEPARABLE)
    n_mes = kinds.count(EntanglementKind.MAXIMAL)

    member_keys = {s.key() for s in graph.states}
    bells_in = all(
        named_state(name).key() in member_keys
        for name in ("phi+", "phi-", "psi+", "psi-")
    )
    mes_keys = {
        s.key() for s, k in zip(graph.states, kinds) if k is EntanglementKind.MAXIMAL
    }
    patterns_in = {s.key() for s in mes_stabilizer_states()} == mes_keys

    ok = (
        (n_total, n_sep, n_mes) == (60, 36, 24)
        and bells_in
        and patterns_in
        and elapsed < 5.0
    )
    _verdict(
        capsys,
        "stabilizer enumeration",
        ok,
        f"{n_total} states ({n_sep} separable, {n_mes} MES), "
        f"named MES present: {bells_in}, all 24 patterns present: {patterns_in}, "
        f"{elapsed:.2f} s (limit 5 s)",
    )


def test_plane_census_on_every_node(capsys):
    """Separable nodes: 3 eigen / 8 within / 4 entangling.  MES nodes:
    3 eigen / 6 within / 6 disentangling.  All 60 must match."""
    sep_want = {
        PlaneClass.EIGEN: 3,
        PlaneClass.WITHIN_SEPARABLE: 8,
        PlaneClass.TO_MES: 4,
        PlaneClass.WITHIN_MES: 0,
        PlaneClass.TO_SEPARABLE: 0,
    }
    mes_want = {
        PlaneClass.EIGEN: 3,
        PlaneClass.WITHIN_SEPARABLE: 0,
        PlaneClass.TO_MES: 0,
        PlaneClass.WITHIN_MES: 6,
        PlaneClass.TO_SEPARABLE: 6,
    }
    graph = enumerate_stabilizers()
    passed = sum(
        plane_census(psi)
        == (sep_want if kind is EntanglementKind.SEPARABLE else mes_want)
        for psi, kind in zip(graph.states, graph.kinds)
    )
    ok = passed == 60
    _verdict(capsys, "plane censuses", ok, f"{passed}/60 nodes match the two censuses")


def test_rules_match_matrix_on_all_1800_applications(capsys):
    """Every graphical rule application agrees with matrix simulation."""
    graph = enumerate_stabilizers()
    t0 = time.perf_counter()
    worst = 1.0
    count = 0
    for psi in graph.states:
        scene = scene_from_state(psi)
        for gen in GENERATORS:
            for direction in (1, -1):
                graphical = state_from_scene(apply_rule(scene, gen, direction))
                matrix = apply(rotation_unitary(gen, direction * math.pi / 2.0), psi)
                worst = min(worst, fidelity(graphical, matrix))
                count += 1
    elapsed = time.perf_counter() - t0
    ok = count == 1800 and worst >= 1.0 - 1e-9 and elapsed < 30.0
    _verdict(
        capsys,
        "rule/matrix agreement",
        ok,
        f"{count} applications, worst fidelity {worst:.15f} (floor 1-1e-9), "
        f"{elapsed:.2f} s (limit 30 s)",
    )


def test_entanglement_measures(capsys):
    """concurrence(P) = sqrt(2)/2; purity and weight identities hold on
    10^4 random states within 1e-9."""
    p_err = abs(concurrence(named_state("p")) - math.sqrt(2.0) / 2.0)

    rng = np.random.default_rng(SEED)
    purity_err = 0.0
    weight_err = 0.0
    for _ in range(10_000):
        psi = haar_state(rng)
        rho = reduced_density(psi, 1)
        r = float(np.linalg.norm(bloch_vector(rho)))
        purity_err = max(purity_err, abs(purity(rho) - (1.0 + r * r) / 2.0))
        c = classify(psi)
        weight_err = max(weight_err, abs(c.r**2 + c.r_tilde**2 - 1.0))
    ok = p_err <= 1e-6 and purity_err <= 1e-9 and weight_err <= 1e-9
    _verdict(
        capsys,
        "entanglement measures",
        ok,
        f"|concurrence(P) - sqrt(2)/2| = {p_err:.2e} (tol 1e-6); over 10^4 states "
        f"max purity-radius defect {purity_err:.2e}, "
        f"max weight-identity defect {weight_err:.2e} (tol 1e-9)",
    )


def test_correlation_frame_geometry(capsys):
    """MES correlation matrices are improper rotations, product-state ones
    are rank 1, and the four named MES give their signature frames."""
    rng = np.random.default_rng(SEED)

    orth_err = 0.0
    det_err = 0.0
    phi_plus = named_state("phi+").amps
    for _ in range(1_000):
        u = np.kron(haar_qubit_unitary(rng), haar_qubit_unitary(rng))
        t = correlation_matrix(TwoQubitState(u @ phi_plus))
        orth_err = max(orth_err, float(np.max(np.abs(t.T @ t - np.eye(3)))))
        det_err = max(det_err, abs(float(np.linalg.det(t)) + 1.0))

    rank_err = 0.0
    for _ in range(1_000):
        t = correlation_matrix(random_product_state(rng))
        rank_err = max(rank_err, float(np.linalg.svd(t, compute_uv=False)[1]))

    bell_frames = {
        "psi-": -np.eye(3),
        "psi+": np.diag([1.0, 1.0, -1.0]),
        "phi-": np.diag([-1.0, 1.0, 1.0]),
        "phi+": np.diag([1.0, -1.0, 1.0]),
    }
    bell_err = max(
        float(
            np.max(
                np.abs(
                    scene_from_state(named_state(name)).layers[0].sphere2.frame - want
                )
            )
        )
        for name, want in bell_frames.items()
    )

    ok = orth_err <= 1e-9 and det_err <= 1e-9 and rank_err <= 1e-9 and bell_err <= 1e-12
    _verdict(
        capsys,
        "correlation-frame geometry",
        ok,
        f"10^3 MES: orthogonality defect {orth_err:.2e}, |det + 1| {det_err:.2e}; "
        f"10^3 products: second singular value {rank_err:.2e} (tol 1e-9); "
        f"named-MES frame error {bell_err:.2e} (tol 1e-12)",
    )


def test_scene_roundtrip_ten_thousand_states(capsys):
    """state -> scene -> state keeps fidelity >= 1 - 1e-9 across all three
    entanglement classes."""
    rng = np.random.default_rng(SEED)
    samples = (
        [random_product_state(rng) for _ in range(3_333)]
        + [random_maximal_state(rng) for _ in range(3_333)]
        + [haar_state(rng) for _ in range(3_334)]
    )
    worst = min(
        fidelity(state_from_scene(scene_from_state(psi)), psi) for psi in samples
    )
    ok = worst >= 1.0 - 1e-9
    _verdict(
        capsys,
        "scene roundtrip",
        ok,
        f"10^4 states, worst fidelity {worst:.15f} (floor 1-1e-9)",
    )


def test_full_turn_sweep_waypoints(capsys):
    """Sweeping (Y, X) on |uu> in eighth-turn steps walks
    |uu> -> MES -> |dd> -> MES -> |uu> with concurrence 0, s, 1, s, 0
    (s = sqrt(2)/2), each value within 1e-9."""
    gen = Generator("Y", "X")
    want_c = [0.0, SQ2, 1.0, SQ2, 0.0, SQ2, 1.0, SQ2, 0.0]
    waypoints = {0: "uu", 2: "phi-", 4: "dd", 6: "phi+", 8: "uu"}

    c_err = 0.0
    waypoint_worst = 1.0
    start = named_state("uu")
    for k in range(9):
        psi = apply(rotation_unitary(gen, k * math.pi / 4.0), start)
        c_err = max(c_err, abs(concurrence(psi) - want_c[k]))
        if k in waypoints:
            waypoint_worst = min(
                waypoint_worst, fidelity(psi, named_state(waypoints[k]))
            )
    ok = c_err <= 1e-9 and waypoint_worst >= 1.0 - 1e-9
    _verdict(
        capsys,
        "full-turn sweep",
        ok,
        f"max concurrence error {c_err:.2e} (tol 1e-9), "
        f"worst waypoint fidelity {waypoint_worst:.15f}",
    )
