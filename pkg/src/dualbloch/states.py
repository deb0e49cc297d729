"""Exact linear algebra for pure two-qubit states.

Amplitudes live in the basis (uu, ud, du, dd): index 2*q1 + q2 with 0 = up.
Every ``TwoQubitState`` is stored canonically: unit norm, and the first
amplitude whose modulus exceeds ``EPS_EXACT`` is real and positive.  The
canonical form is idempotent bit for bit, so equality of states is a plain
array comparison.

Angles passed to :func:`rotation_unitary` are radians.  The rotation
convention is ``R(G, theta) = cos(theta/2) I + i sin(theta/2) G`` for a
two-qubit Pauli product ``G``; with this sign, rotating ``psi-`` in the
``IX`` generator by ``+pi/2`` yields the state proportional to
``(1, -i, i, -1)/2``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tolerances import EPS_EXACT, EPS_NUM

__all__ = [
    "BASIS_LABELS",
    "PAULI_LABELS",
    "Generator",
    "GENERATORS",
    "LOCAL_GENERATORS",
    "DOUBLE_GENERATORS",
    "NonUnitaryError",
    "StateParseError",
    "TwoQubitState",
    "pauli_matrix",
    "generator_matrix",
    "rotation_unitary",
    "apply",
    "expectation",
    "product_state",
    "reduced_density",
    "bloch_vector",
    "correlation_matrix",
    "SchmidtForm",
    "schmidt",
    "fidelity",
    "bloch_of_qubit",
    "qubit_from_bloch",
    "named_state",
    "NAMED_STATES",
    "parse_state",
    "format_state",
    "format_complex",
    "haar_qubit_unitary",
    "haar_state",
    "random_product_state",
    "random_maximal_state",
]

BASIS_LABELS = ("uu", "ud", "du", "dd")
PAULI_LABELS = ("I", "X", "Y", "Z")

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


class NonUnitaryError(ValueError):
    """A matrix expected to be unitary is not, beyond EPS_NUM."""


class StateParseError(ValueError):
    """Malformed state text."""


@dataclass(frozen=True)
class Generator:
    """A two-qubit Pauli product sigma_first (x) sigma_second, not II."""

    first: str
    second: str

    def __post_init__(self) -> None:
        if self.first not in PAULI_LABELS or self.second not in PAULI_LABELS:
            raise ValueError(f"bad Pauli labels: {self.first!r}, {self.second!r}")
        if self.first == "I" and self.second == "I":
            raise ValueError("II is not a generator")

    @property
    def label(self) -> str:
        return self.first + self.second

    @property
    def is_local(self) -> bool:
        return self.first == "I" or self.second == "I"

    @classmethod
    def parse(cls, text: str) -> "Generator":
        t = text.strip().upper()
        if len(t) != 2:
            raise ValueError(f"generator must be two Pauli letters, got {text!r}")
        return cls(t[0], t[1])

    def __str__(self) -> str:
        return self.label


# Canonical ordering: locals on qubit 1, locals on qubit 2, then doubles.
GENERATORS: tuple[Generator, ...] = tuple(
    [Generator(p, "I") for p in "XYZ"]
    + [Generator("I", p) for p in "XYZ"]
    + [Generator(p, q) for p in "XYZ" for q in "XYZ"]
)
LOCAL_GENERATORS: tuple[Generator, ...] = tuple(g for g in GENERATORS if g.is_local)
DOUBLE_GENERATORS: tuple[Generator, ...] = tuple(g for g in GENERATORS if not g.is_local)


def pauli_matrix(label: str) -> np.ndarray:
    """Return a copy of the 2x2 Pauli matrix for label in I, X, Y, Z."""
    return _PAULI[label].copy()


@lru_cache(maxsize=None)
def _generator_matrix_cached(label: str) -> np.ndarray:
    g = np.kron(_PAULI[label[0]], _PAULI[label[1]])
    g.setflags(write=False)
    return g


def generator_matrix(gen: Generator) -> np.ndarray:
    """The 4x4 matrix sigma_first (x) sigma_second."""
    return _generator_matrix_cached(gen.label)


def rotation_unitary(gen: Generator, theta: float) -> np.ndarray:
    """exp(i theta/2 G) = cos(theta/2) I + i sin(theta/2) G, theta in radians."""
    half = 0.5 * theta
    return math.cos(half) * np.eye(4, dtype=complex) + (
        1j * math.sin(half)
    ) * generator_matrix(gen)


def _canonical_amps(amps: np.ndarray) -> np.ndarray:
    a = np.array(amps, dtype=complex).reshape(4)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("amplitudes must be finite")
    n = float(np.linalg.norm(a))
    if n <= EPS_EXACT:
        raise ValueError("state vector has zero norm")
    if abs(n - 1.0) > 1e-15:
        a = a / n
    k = int(np.argmax(np.abs(a) > EPS_EXACT))
    piv = a[k]
    if piv.imag != 0.0 or piv.real <= 0.0:
        a = a / (piv / abs(piv))
        # Kill the residual imaginary part so re-canonicalizing is a no-op.
        a[k] = abs(a[k])
    return a


class TwoQubitState:
    """Canonical unit-norm pure state of two qubits.

    Construction normalizes and gauges the global phase; two states built
    from proportional amplitude vectors compare equal bit for bit.
    """

    __slots__ = ("_amps",)

    def __init__(self, amps) -> None:
        a = _canonical_amps(np.asarray(amps, dtype=complex))
        a.setflags(write=False)
        self._amps = a

    @property
    def amps(self) -> np.ndarray:
        """Read-only length-4 complex array in (uu, ud, du, dd) order."""
        return self._amps

    def key(self, decimals: int = 12) -> tuple:
        """Rounded hashable fingerprint; identical for numerically equal states."""
        r = np.round(self._amps.real, decimals) + 0.0
        i = np.round(self._amps.imag, decimals) + 0.0
        return tuple(float(x) for x in r) + tuple(float(x) for x in i)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoQubitState):
            return NotImplemented
        return bool(np.array_equal(self._amps, other._amps))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"TwoQubitState({format_state(self, digits=6)!r})"


def apply(unitary: np.ndarray, psi: TwoQubitState) -> TwoQubitState:
    """Apply a 4x4 unitary; raises NonUnitaryError if U'U deviates from I."""
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {u.shape}")
    defect = float(np.linalg.norm(u.conj().T @ u - np.eye(4)))
    if defect > EPS_NUM:
        raise NonUnitaryError(f"matrix is not unitary (defect {defect:.3e})")
    return TwoQubitState(u @ psi.amps)


def expectation(psi: TwoQubitState, gen: Generator) -> float:
    """Real expectation value <psi| G |psi>."""
    return float(np.vdot(psi.amps, generator_matrix(gen) @ psi.amps).real)


def product_state(q1, q2) -> TwoQubitState:
    """Tensor product of two single-qubit amplitude pairs."""
    a = np.asarray(q1, dtype=complex).reshape(2)
    b = np.asarray(q2, dtype=complex).reshape(2)
    return TwoQubitState(np.kron(a, b))


def reduced_density(psi: TwoQubitState, qubit: int) -> np.ndarray:
    """2x2 reduced density matrix of qubit 1 or 2 (partial trace of the other)."""
    m = psi.amps.reshape(2, 2)
    if qubit == 1:
        return m @ m.conj().T
    if qubit == 2:
        return m.T @ m.conj()
    raise ValueError("qubit must be 1 or 2")


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (x, y, z) of a 2x2 density matrix."""
    r = np.asarray(rho, dtype=complex)
    return np.array(
        [float(np.trace(r @ _PAULI[p]).real) for p in ("X", "Y", "Z")]
    )


def correlation_matrix(psi: TwoQubitState) -> np.ndarray:
    """3x3 matrix T with T[i, j] = <sigma_i (x) sigma_j>, rows indexing qubit 1."""
    t = np.empty((3, 3))
    for i, p in enumerate("XYZ"):
        for j, q in enumerate("XYZ"):
            t[i, j] = expectation(psi, Generator(p, q))
    return t


@dataclass(frozen=True)
class SchmidtForm:
    """psi = alpha a0 (x) b0 + beta a1 (x) b1 with alpha >= beta >= 0.

    Both local bases are orthonormal.  Phases are gauged so each a-vector's
    first significant component is real positive, the compensating phase
    being absorbed into the paired b-vector.
    """

    alpha: float
    beta: float
    a0: np.ndarray
    a1: np.ndarray
    b0: np.ndarray
    b1: np.ndarray


def _phase_fixed(v: np.ndarray) -> tuple[np.ndarray, complex]:
    """Rotate v so its first significant component is real positive.

    Returns (fixed vector, removed phase u) with v == u * fixed.
    """
    k = int(np.argmax(np.abs(v) > EPS_EXACT))
    piv = v[k]
    u = piv / abs(piv)
    w = v / u
    w[k] = abs(w[k])
    return w, u


def _qubit_perp(v: np.ndarray) -> np.ndarray:
    """A unit vector orthogonal to the single-qubit vector v."""
    return np.array([-np.conj(v[1]), np.conj(v[0])], dtype=complex)


def schmidt(psi: TwoQubitState) -> SchmidtForm:
    """Schmidt decomposition with a deterministic degenerate tie-break.

    When alpha and beta agree within EPS_NUM the singular-vector pairing is
    arbitrary, so the qubit-1 basis is rebuilt from the reduced density
    matrix and the two (vector, weight) pairs are ordered by lexicographic
    comparison of the phase-gauged qubit-1 components.
    """
    m = psi.amps.reshape(2, 2)
    u, s, vh = np.linalg.svd(m)
    alpha, beta = float(s[0]), float(s[1])
    if alpha - beta <= EPS_NUM:
        rho1 = m @ m.conj().T
        w, vecs = np.linalg.eigh(rho1)
        pairs = []
        for col, weight in ((1, w[1]), (0, w[0])):
            vec, _ = _phase_fixed(vecs[:, col])
            key = tuple(np.round([vec[0].real, vec[0].imag, vec[1].real, vec[1].imag], 12))
            pairs.append((key, vec, float(max(weight, 0.0))))
        pairs.sort(key=lambda p: p[0])
        a_vecs = [p[1] for p in pairs]
        # Weights are equal within EPS_NUM; keep alpha >= beta exact.
        alpha = math.sqrt(max(pairs[0][2], pairs[1][2]))
        beta = math.sqrt(min(pairs[0][2], pairs[1][2]))
        sings = (alpha, beta)
        b_vecs = [np.conj(a_vecs[k]) @ m / sings[k] for k in range(2)]
    else:
        a_vecs = [u[:, 0].copy(), u[:, 1].copy()]
        b_vecs = [vh[0].copy(), vh[1].copy()]

    out_a, out_b = [], []
    for k in range(2):
        fixed_a, phase = _phase_fixed(a_vecs[k])
        out_a.append(fixed_a)
        out_b.append(b_vecs[k] * phase)
    if beta <= EPS_EXACT:
        # Product state: the second pair is pure gauge, pick it orthonormal.
        out_b[1], _ = _phase_fixed(_qubit_perp(out_b[0]))
        out_a[1], _ = _phase_fixed(_qubit_perp(out_a[0]))
    return SchmidtForm(alpha, beta, out_a[0], out_a[1], out_b[0], out_b[1])


def fidelity(psi: TwoQubitState, phi: TwoQubitState) -> float:
    """|<psi|phi>|^2, insensitive to global phase."""
    return float(abs(np.vdot(psi.amps, phi.amps)) ** 2)


def bloch_of_qubit(q) -> np.ndarray:
    """Bloch vector of a single-qubit amplitude pair (not necessarily unit)."""
    v = np.asarray(q, dtype=complex).reshape(2)
    p, r = v[0], v[1]
    return np.array(
        [
            2.0 * (np.conj(p) * r).real,
            2.0 * (np.conj(p) * r).imag,
            (abs(p) ** 2 - abs(r) ** 2),
        ]
    )


def qubit_from_bloch(v) -> np.ndarray:
    """Unit single-qubit state with the given unit Bloch vector, gauged
    so the up-component is real non-negative."""
    x, y, z = (float(c) for c in np.asarray(v, dtype=float).reshape(3))
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.atan2(y, x)
    return np.array(
        [math.cos(theta / 2.0), math.sin(theta / 2.0) * complex(math.cos(phi), math.sin(phi))],
        dtype=complex,
    )


_SQ2 = 1.0 / math.sqrt(2.0)

NAMED_STATES: dict[str, tuple[complex, complex, complex, complex]] = {
    "uu": (1, 0, 0, 0),
    "ud": (0, 1, 0, 0),
    "du": (0, 0, 1, 0),
    "dd": (0, 0, 0, 1),
    "psi+": (0, _SQ2, _SQ2, 0),
    "psi-": (0, _SQ2, -_SQ2, 0),
    "phi+": (_SQ2, 0, 0, _SQ2),
    "phi-": (_SQ2, 0, 0, -_SQ2),
    # Partially entangled reference state cos(pi/8) uu - sin(pi/8) dd.
    "p": (math.cos(math.pi / 8.0), 0, 0, -math.sin(math.pi / 8.0)),
}


def named_state(alias: str) -> TwoQubitState:
    """Look up a named state (case-insensitive): uu, ud, du, dd, psi+/-, phi+/-, P."""
    key = alias.strip().lower()
    if key not in NAMED_STATES:
        raise StateParseError(f"unknown state alias {alias!r}")
    return TwoQubitState(NAMED_STATES[key])


_BARE_I = re.compile(r"(?<![0-9.])j")


def _parse_complex(token: str, position: int) -> complex:
    t = token.strip().lower().replace(" ", "")
    if not t:
        raise StateParseError(f"empty amplitude at position {position}")
    t = _BARE_I.sub("1j", t.replace("i", "j"))
    try:
        return complex(t)
    except ValueError:
        raise StateParseError(
            f"bad amplitude {token.strip()!r} at position {position}"
        ) from None


def parse_state(text: str) -> TwoQubitState:
    """Parse state text: a named alias or four comma-separated complex literals.

    Literals use ``i`` for the imaginary unit: ``1``, ``-0.5i``, ``1+2i``,
    ``1e-3-2e-4i``.  The amplitudes are normalized and phase-gauged.
    """
    raw = text.strip()
    if raw.lower() in NAMED_STATES:
        return named_state(raw)
    parts = raw.split(",")
    if len(parts) != 4:
        raise StateParseError(
            f"expected a state alias or 4 comma-separated amplitudes, got {len(parts)}"
        )
    amps = [_parse_complex(p, k) for k, p in enumerate(parts)]
    try:
        return TwoQubitState(amps)
    except ValueError as exc:
        raise StateParseError(str(exc)) from None


def _format_float(x: float, digits: int | None) -> str:
    if digits is None:
        s = repr(float(x))
    else:
        s = f"{float(x):.{digits}g}"
    return s


def format_complex(z: complex, digits: int | None = None) -> str:
    """Render a complex number in the text-format style ``a``, ``bi``, ``a+bi``."""
    re_, im = float(z.real), float(z.imag)
    if digits is not None:
        # Display rounding: amplitudes are bounded by 1, so flushing at
        # 12 decimals removes float noise without touching shown digits;
        # +0.0 folds away negative zero.
        re_ = float(f"{round(re_, 12) + 0.0:.{digits}g}") + 0.0
        im = float(f"{round(im, 12) + 0.0:.{digits}g}") + 0.0
    if im == 0.0:
        return _format_float(re_, digits)
    if im == 1.0:
        imag = "i"
    elif im == -1.0:
        imag = "-i"
    else:
        imag = _format_float(im, digits) + "i"
    if re_ == 0.0:
        return imag
    sign = "+" if not imag.startswith("-") else ""
    return _format_float(re_, digits) + sign + imag


def format_state(psi: TwoQubitState, digits: int | None = None) -> str:
    """Comma-separated amplitude text; full precision when digits is None."""
    return ",".join(format_complex(z, digits) for z in psi.amps)


def haar_qubit_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) matrix via a uniform unit quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]], dtype=complex
    )


def haar_state(rng: np.random.Generator) -> TwoQubitState:
    """Haar-random pure two-qubit state."""
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return TwoQubitState(v)


def random_product_state(rng: np.random.Generator) -> TwoQubitState:
    """Random product state from two independent Haar single-qubit states."""
    q1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    q2 = rng.normal(size=2) + 1j * rng.normal(size=2)
    return product_state(q1, q2)


def random_maximal_state(rng: np.random.Generator) -> TwoQubitState:
    """Random maximally entangled state: Haar local unitaries applied to phi+."""
    u = haar_qubit_unitary(rng)
    v = haar_qubit_unitary(rng)
    phi_plus = np.array([_SQ2, 0, 0, _SQ2], dtype=complex)
    return TwoQubitState(np.kron(u, v) @ phi_plus)
