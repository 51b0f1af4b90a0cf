"""
Modified inner product and pseudo-norm for energy-dependent potentials.

For two levels m != n the orthogonality integral is

    int [1 - (V~_{E_m} - V~_{E_n}) / (E_m - E_n)] f_m(x) g_n(x) dx

and the pseudo-norm is its m -> n limit with the difference quotient replaced
by dV~/dE.  The pairing depends on the symmetry used:

* PT (both Scarf families): V~ = V, f_m(x) = conj(psi_m(-x)), g_n = psi_n.
* pseudo-Hermitian (Morse): V~ = conj(V), f_m = conj(psi_m),
  g_n(x) = psi_n(x + i theta_n), the imaginary shift of the right-hand state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import model
from .errors import PreconditionError, QuadratureNotConverged, ZeroNorm
from .model import BoundState, ModelSpec
from .quadrature import QuadratureSpec, gauss_legendre_fixed, integrate

__all__ = [
    "NormReport",
    "NormalizedState",
    "eta_apply",
    "pairing_left",
    "norm_integrand",
    "inner_integrand",
    "modified_inner_product",
    "pseudo_norm",
    "pseudo_norm_of",
    "normalize",
    "gram_matrix",
    "gram_values",
]

_LEAK_RTOL = 1e-8


@dataclass(frozen=True)
class NormReport:
    value: complex
    error_estimate: float
    converged: bool
    method: str = "de"

    @property
    def imaginary_leakage(self) -> float:
        return abs(self.value.imag)

    @property
    def sign(self) -> str:
        return "+" if self.value.real >= 0 else "-"

    @property
    def is_real(self) -> bool:
        return self.imaginary_leakage <= _LEAK_RTOL * max(1.0, abs(self.value.real))

    def as_dict(self) -> dict:
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "error_estimate": self.error_estimate,
            "imaginary_leakage": self.imaginary_leakage,
            "sign": self.sign,
            "converged": self.converged,
            "method": self.method,
        }


Evaluator = Callable[[np.ndarray], np.ndarray]


def _state(spec: ModelSpec, n: BoundState | int) -> BoundState:
    return n if isinstance(n, BoundState) else model.bound_state(spec, int(n))


def eta_apply(spec: ModelSpec, state: BoundState | int, x, psi: Evaluator | None = None):
    """
    Right-hand factor of the inner product.

    Identity for the PT families; for the Morse family the state is evaluated
    at x + i theta_n with theta_n taken from its own energy.
    """
    st = _state(spec, state)
    if psi is None:
        psi = lambda z: model.wavefunction(spec, st, z)  # noqa: E731
    if not spec.pseudo_hermitian:
        return psi(x)
    theta = model.pseudo_theta(spec, st.energy)
    if theta == 0:
        return psi(x)
    return psi(np.asarray(x, dtype=float) + 1j * theta)


def pairing_left(spec: ModelSpec, state: BoundState | int, x, psi: Evaluator | None = None):
    """Left-hand factor: conj(psi_m(-x)) under PT, conj(psi_m(x)) otherwise."""
    st = _state(spec, state)
    if psi is None:
        psi = lambda z: model.wavefunction(spec, st, z)  # noqa: E731
    x = np.asarray(x, dtype=float)
    if spec.pseudo_hermitian:
        return np.conj(psi(x))
    return np.conj(psi(-x))


def _vt(spec: ModelSpec, E: float, x):
    v = model.potential(spec, E, x)
    return np.conj(v) if spec.pseudo_hermitian else v


def _dvt(spec: ModelSpec, E: float, x):
    dv = model.dpotential_dE(spec, E, x)
    return np.conj(dv) if spec.pseudo_hermitian else dv


def norm_integrand(
    spec: ModelSpec,
    state: BoundState | int,
    psi: Evaluator | None = None,
) -> Evaluator:
    """Vectorized pseudo-norm integrand x -> [1 - dV~/dE] f_n(x) g_n(x)."""
    st = _state(spec, state)

    def f(x):
        return (
            (1.0 - _dvt(spec, st.energy, x))
            * pairing_left(spec, st, x, psi)
            * eta_apply(spec, st, x, psi)
        )

    return f


def inner_integrand(spec: ModelSpec, m: BoundState | int, n: BoundState | int) -> Evaluator:
    sm, sn = _state(spec, m), _state(spec, n)
    if sm.energy == sn.energy:
        raise PreconditionError("the modified inner product needs distinct energies")
    gap = sm.energy - sn.energy

    def f(x):
        weight = 1.0 - (_vt(spec, sm.energy, x) - _vt(spec, sn.energy, x)) / gap
        return weight * pairing_left(spec, sm, x) * eta_apply(spec, sn, x)

    return f


def _run(spec: ModelSpec, f: Evaluator, quad: QuadratureSpec | None) -> NormReport:
    quad = quad or QuadratureSpec()
    a, b = spec.domain
    res = integrate(f, a, b, quad, scale=1.0 / spec.alpha)
    return NormReport(res.value, res.error, res.converged, res.method)


def modified_inner_product(
    spec: ModelSpec, m: BoundState | int, n: BoundState | int, quad: QuadratureSpec | None = None
) -> NormReport:
    """Orthogonality integral for m != n; zero up to quadrature error for exact states."""
    sm, sn = _state(spec, m), _state(spec, n)
    if sm.n == sn.n:
        raise PreconditionError("use pseudo_norm for m == n")
    return _run(spec, inner_integrand(spec, sm, sn), quad)


def pseudo_norm(spec: ModelSpec, n: BoundState | int, quad: QuadratureSpec | None = None) -> NormReport:
    """Pseudo-norm N(psi_n); real but of either sign."""
    return _run(spec, norm_integrand(spec, n), quad)


def pseudo_norm_of(
    spec: ModelSpec, n: BoundState | int, psi: Evaluator, quad: QuadratureSpec | None = None
) -> NormReport:
    """Pseudo-norm of an arbitrary evaluator living at level n's energy."""
    return _run(spec, norm_integrand(spec, n, psi), quad)


@dataclass(frozen=True)
class NormalizedState:
    """psi_n divided by N(psi_n) (or by sqrt(N) when ``sqrt`` is set)."""

    spec: ModelSpec
    state: BoundState
    norm: NormReport
    sqrt: bool = False

    @property
    def factor(self) -> complex:
        N = self.norm.value.real
        return 1.0 / np.sqrt(complex(N)) if self.sqrt else 1.0 / N

    def __call__(self, x):
        return self.factor * np.asarray(model.wavefunction(self.spec, self.state, x))


def normalize(
    spec: ModelSpec,
    n: BoundState | int,
    quad: QuadratureSpec | None = None,
    *,
    sqrt: bool = False,
) -> NormalizedState:
    """
    Scale psi_n by 1/N(psi_n).

    ``sqrt=True`` divides by sqrt(N) instead, the convention that makes the
    rescaled pseudo-norm equal to +-1.
    """
    st = _state(spec, n)
    report = pseudo_norm(spec, st, quad)
    if not report.converged:
        raise QuadratureNotConverged("pseudo-norm did not converge", report.value, report.error_estimate)
    if abs(report.value.real) <= 1e-12:
        raise ZeroNorm(f"pseudo-norm of level {st.n} vanishes")
    return NormalizedState(spec, st, report, sqrt)


def gram_matrix(spec: ModelSpec, quad: QuadratureSpec | None = None) -> list[list[NormReport]]:
    """All pairwise products of the admissible levels; diagonal = pseudo-norms."""
    levels = model.admissible_levels(spec)
    if not levels:
        raise PreconditionError("no admissible levels")
    out = []
    for sm in levels:
        row = []
        for sn in levels:
            if sm.n == sn.n:
                row.append(pseudo_norm(spec, sm, quad))
            else:
                row.append(modified_inner_product(spec, sm, sn, quad))
        out.append(row)
    return out


def gram_values(matrix: list[list[NormReport]]) -> np.ndarray:
    return np.array([[r.value for r in row] for row in matrix], dtype=complex)


def reference_norm(spec: ModelSpec, n: BoundState | int, *, panels: int = 8, nodes: int = 400) -> tuple[complex, float]:
    """Pseudo-norm from a fixed composite Gauss-Legendre rule (second quadrature path)."""
    a, b = spec.domain
    return gauss_legendre_fixed(norm_integrand(spec, n), a, b, panels=panels, nodes=nodes, scale=1.0 / spec.alpha)
