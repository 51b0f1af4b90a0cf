"""
Jacobi and associated Laguerre polynomials with complex parameters.

Both families are evaluated from their explicit finite sums built out of
Pochhammer products.  The sums are polynomial in the parameters, so they stay
finite for every complex (a, b) or alpha, including the combinations where
the three-term recurrence divides by zero (e.g. a + b = -7).

All evaluators accept scalar or array arguments ``z`` and return a Python
``complex`` for scalar input and a complex ``ndarray`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Literal, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegreeCapExceeded

DEGREE_CAP = 32

__all__ = [
    "DEGREE_CAP",
    "ComplexPoly",
    "pochhammer",
    "jacobi_p",
    "laguerre_l",
    "jacobi_poly",
    "laguerre_poly",
    "poly_derivative_value",
]


def pochhammer(a: complex, k: int) -> complex:
    """Rising factorial a (a+1) ... (a+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = complex(1.0)
    for i in range(k):
        out *= a + i
    return out


def _check_degree(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds cap {cap}")


def _finish(z, value):
    if np.ndim(z) == 0:
        return complex(value)
    return value


def _jacobi_weights(n: int, a: complex, b: complex) -> list[complex]:
    # C(n+a, n-s) * C(n+b, s) written with Pochhammer symbols
    return [
        pochhammer(a + s + 1, n - s) / factorial(n - s) * pochhammer(b + n - s + 1, s) / factorial(s)
        for s in range(n + 1)
    ]


def jacobi_p(n: int, a: complex, b: complex, z, *, cap: int = DEGREE_CAP):
    """
    Jacobi polynomial P_n^{(a,b)}(z).

    Uses

        P_n^{(a,b)}(z) = sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s)

    with generalized binomials, which is total in the complex parameters.
    """
    _check_degree(n, cap)
    zz = np.asarray(z, dtype=complex)
    if n == 0:
        return _finish(z, np.ones_like(zz))
    lo = (zz - 1.0) / 2.0
    hi = (zz + 1.0) / 2.0
    total = np.zeros_like(zz)
    for s, w in enumerate(_jacobi_weights(n, a, b)):
        total = total + w * lo**s * hi ** (n - s)
    return _finish(z, total)


def laguerre_l(n: int, alpha: complex, z, *, cap: int = DEGREE_CAP):
    """Associated Laguerre polynomial L_n^alpha(z) from its binomial sum."""
    _check_degree(n, cap)
    zz = np.asarray(z, dtype=complex)
    total = np.zeros_like(zz)
    for j in range(n + 1):
        c = (-1) ** j * pochhammer(alpha + j + 1, n - j) / factorial(n - j) / factorial(j)
        total = total + c * zz**j
    return _finish(z, total)


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial with complex coefficients stored in ascending powers."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs:
            coeffs = (0j,)
        # trailing zeros are dropped so that ``degree`` is the true degree
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        value = npoly.polyval(np.asarray(z, dtype=complex), np.asarray(self.coefficients))
        return _finish(z, value)

    def derivative(self) -> "ComplexPoly":
        return ComplexPoly(tuple(npoly.polyder(np.asarray(self.coefficients))))

    @classmethod
    def from_sequence(cls, coeffs: Sequence[complex]) -> "ComplexPoly":
        return cls(tuple(coeffs))


def jacobi_poly(n: int, a: complex, b: complex, *, cap: int = DEGREE_CAP) -> ComplexPoly:
    """Coefficients of P_n^{(a,b)} obtained by expanding the same finite sum."""
    _check_degree(n, cap)
    lo = np.array([-0.5, 0.5], dtype=complex)
    hi = np.array([0.5, 0.5], dtype=complex)
    total = np.zeros(n + 1, dtype=complex)
    for s, w in enumerate(_jacobi_weights(n, a, b)):
        term = npoly.polymul(npoly.polypow(lo, s), npoly.polypow(hi, n - s))
        total[: len(term)] += w * term
    return ComplexPoly(tuple(total))


def laguerre_poly(n: int, alpha: complex, *, cap: int = DEGREE_CAP) -> ComplexPoly:
    _check_degree(n, cap)
    return ComplexPoly(
        tuple(
            (-1) ** j * pochhammer(alpha + j + 1, n - j) / factorial(n - j) / factorial(j)
            for j in range(n + 1)
        )
    )


def poly_derivative_value(
    kind: Literal["jacobi", "laguerre"],
    n: int,
    params: Sequence[complex],
    z,
    *,
    cap: int = DEGREE_CAP,
):
    """
    Derivative d/dz of a Jacobi or Laguerre polynomial.

    ``params`` is ``(a, b)`` for Jacobi and ``(alpha,)`` for Laguerre.  The
    index-shift identities are used:

        d/dz P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}
        d/dz L_n^alpha   = -L_{n-1}^{alpha+1}
    """
    _check_degree(n, cap)
    if kind == "jacobi":
        a, b = params
        if n == 0:
            return _finish(z, np.zeros_like(np.asarray(z, dtype=complex)))
        return _finish(z, 0.5 * (n + a + b + 1) * np.asarray(jacobi_p(n - 1, a + 1, b + 1, z, cap=cap)))
    if kind == "laguerre":
        (alpha,) = params
        if n == 0:
            return _finish(z, np.zeros_like(np.asarray(z, dtype=complex)))
        return _finish(z, -np.asarray(laguerre_l(n - 1, alpha + 1, z, cap=cap)))
    raise ValueError(f"unknown polynomial kind {kind!r}")
