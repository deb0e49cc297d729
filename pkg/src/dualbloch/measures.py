"""Entanglement measures for pure two-qubit states.

All measures reduce to the Schmidt weights alpha >= beta: the Bloch radius
of either reduced density matrix is r = alpha^2 - beta^2, the concurrence
is r~ = 2 alpha beta, and r^2 + r~^2 = 1.  Purity of a reduced state is
(1 + r^2) / 2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .states import TwoQubitState, reduced_density, schmidt
from .tolerances import EPS_CLASS

__all__ = [
    "EntanglementKind",
    "Classification",
    "purity",
    "concurrence",
    "classify",
]


class EntanglementKind(enum.Enum):
    SEPARABLE = "separable"
    PARTIAL = "partial"
    MAXIMAL = "maximal"


@dataclass(frozen=True)
class Classification:
    """Entanglement class with the weight pair (r, r_tilde)."""

    kind: EntanglementKind
    r: float
    r_tilde: float


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2) of a density matrix."""
    r = np.asarray(rho, dtype=complex)
    return float(np.trace(r @ r).real)


def concurrence(psi: TwoQubitState) -> float:
    """sqrt(2 (1 - Tr rho1^2)); 0 for product states, 1 for maximal."""
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity(reduced_density(psi, 1)))))


def classify(psi: TwoQubitState) -> Classification:
    """Classify by Schmidt weights with the EPS_CLASS threshold.

    r_tilde < EPS_CLASS is separable, r < EPS_CLASS is maximal, anything
    else is partial.
    """
    form = schmidt(psi)
    r = form.alpha**2 - form.beta**2
    r_tilde = 2.0 * form.alpha * form.beta
    if r_tilde < EPS_CLASS:
        kind = EntanglementKind.SEPARABLE
    elif r < EPS_CLASS:
        kind = EntanglementKind.MAXIMAL
    else:
        kind = EntanglementKind.PARTIAL
    return Classification(kind, float(r), float(r_tilde))
