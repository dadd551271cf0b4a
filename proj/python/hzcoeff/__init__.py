"""Fourier coefficients of meromorphic Hilbert modular forms.

Thin wrapper around the compiled core. The heavy lifting (exact quadratic
field arithmetic, Bessel tails, torus oracle, certificates) lives in C++;
values cross the boundary as decimal/rational strings so nothing is lost
to floating point.
"""

from ._hzcoeff import (
    certificate,
    coefficient,
    factorize,
    lift,
    run,
    weilrep_check,
)

__all__ = [
    "certificate",
    "coefficient",
    "factorize",
    "lift",
    "run",
    "weilrep_check",
]
