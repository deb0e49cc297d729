"""Shared numeric tolerances.

Three regimes: EPS_EXACT for identities that hold to machine precision
(golden vectors, algebraic gate identities), EPS_NUM for accumulated
floating-point error in composed numerics, EPS_CLASS for classification
thresholds where nearby states must land in a stable class.
"""
from __future__ import annotations

EPS_EXACT = 1e-12
EPS_NUM = 1e-9
EPS_CLASS = 1e-6
