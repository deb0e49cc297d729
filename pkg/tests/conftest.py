"""Shared fixtures and reference data for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

from dualbloch import TwoQubitState

SEED = 20260816


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


# The 24 maximally entangled stabilizer states, as unnormalized amplitude
# patterns over (uu, ud, du, dd).  Entries are exact up to normalization.
MES_STABILIZER_AMPS: tuple[tuple[complex, ...], ...] = (
    (0, 1, -1, 0),
    (0, 1, 1, 0),
    (1, -1, -1j, -1j),
    (1, -1, 1j, 1j),
    (1, -1j, -1, -1j),
    (1, -1j, 1, 1j),
    (1, 0, 0, -1),
    (1, 0, 0, 1),
    (1, 1, 1j, -1j),
    (1, 1, -1j, 1j),
    (1, 1j, -1, 1j),
    (1, 1j, 1, -1j),
    (0, 1, -1j, 0),
    (0, 1, 1j, 0),
    (1, -1, 1, 1),
    (1, -1, -1, -1),
    (1, -1j, -1j, 1),
    (1, -1j, 1j, -1),
    (1, 0, 0, -1j),
    (1, 0, 0, 1j),
    (1, 1, -1, 1),
    (1, 1, 1, -1),
    (1, 1j, -1j, -1),
    (1, 1j, 1j, 1),
)


def mes_stabilizer_states() -> tuple[TwoQubitState, ...]:
    return tuple(TwoQubitState(np.array(a, dtype=complex)) for a in MES_STABILIZER_AMPS)
