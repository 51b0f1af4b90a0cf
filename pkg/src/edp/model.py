"""
Potential families with an energy-dependent coupling B(E).

Three families are supported, all written for the stationary equation

    psi''(x) + [E - V_E(x)] psi(x) = 0

with Dirichlet conditions at the ends of the domain:

* hyperbolic Scarf on the real line,
* trigonometric Scarf on (-pi/(2 alpha), pi/(2 alpha)),
* Morse type on the real line.

The energy enters the potential only through B(E), so the closed-form
energies do not depend on B while the eigenfunctions and the admissibility of
each level do.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import specialfn
from .errors import (
    DerivativeUndefined,
    DomainError,
    InadmissibleLevel,
    NegativeDiscriminant,
    NotPTForm,
    UnsupportedComplexAbscissa,
    ZeroRealPart,
)

__all__ = [
    "EnergyDependence",
    "ImaginaryLinear",
    "ImaginarySqrtShift",
    "AffinePlusImaginaryLinear",
    "YekkenPower",
    "Custom",
    "Family",
    "LevelReason",
    "ModelSpec",
    "BoundState",
    "SymmetryReport",
    "potential",
    "dpotential_dE",
    "energy",
    "enumerate_levels",
    "admissible_levels",
    "bound_state",
    "wavefunction",
    "wavefunction_derivative",
    "pt_symmetry_error",
    "pseudo_theta",
    "pseudo_hermiticity_error",
    "unbroken_pt_condition",
    "yekken_spec",
    "symmetry_report",
]


# --------------------------------------------------------------------------- #
# Energy dependence B(E)
# --------------------------------------------------------------------------- #


class EnergyDependence:
    """Coupling B as a function of the (real) energy, with its derivative."""

    name = "abstract"

    def evaluate(self, E: float) -> complex:
        raise NotImplementedError

    def derivative(self, E: float) -> complex:
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def __call__(self, E: float) -> complex:
        return self.evaluate(E)


@dataclass(frozen=True)
class ImaginaryLinear(EnergyDependence):
    """B(E) = i k E."""

    k: float
    name = "imaginary_linear"

    def evaluate(self, E):
        return 1j * self.k * E

    def derivative(self, E):
        return 1j * self.k

    def params(self):
        return {"k": self.k}


@dataclass(frozen=True)
class ImaginarySqrtShift(EnergyDependence):
    """B(E) = i b sqrt(E + 1); the shift keeps the ground state (E = 0) regular."""

    b: float
    name = "imaginary_sqrt_shift"

    def evaluate(self, E):
        return 1j * self.b * cmath.sqrt(E + 1.0)

    def derivative(self, E):
        if E <= -1.0:
            raise DerivativeUndefined(f"dB/dE undefined for E={E} <= -1")
        return 1j * self.b / (2.0 * math.sqrt(E + 1.0))

    def params(self):
        return {"b": self.b}


@dataclass(frozen=True)
class AffinePlusImaginaryLinear(EnergyDependence):
    """B(E) = re + i k E (re = 1 in the Morse example)."""

    k: float
    re: float = 1.0
    name = "affine_plus_imaginary_linear"

    def evaluate(self, E):
        return self.re + 1j * self.k * E

    def derivative(self, E):
        return 1j * self.k

    def params(self):
        return {"k": self.k, "re": self.re}


@dataclass(frozen=True)
class YekkenPower(EnergyDependence):
    """B(E) = i E^(nu/2) sqrt(gamma lambda)."""

    gamma: float
    nu: float
    lam: float
    name = "yekken_power"

    def _root(self) -> float:
        return math.sqrt(self.gamma * self.lam)

    def evaluate(self, E):
        return 1j * complex(E) ** (self.nu / 2.0) * self._root()

    def derivative(self, E):
        p = self.nu / 2.0
        if p == 0:
            return 0j
        if E == 0 and p < 1:
            raise DerivativeUndefined("dB/dE diverges at E=0 for nu < 2")
        return 1j * p * complex(E) ** (p - 1.0) * self._root()

    def params(self):
        return {"gamma": self.gamma, "nu": self.nu, "lambda": self.lam}


@dataclass(frozen=True)
class Custom(EnergyDependence):
    """User-supplied B(E) and dB/dE."""

    func: Callable[[float], complex]
    dfunc: Callable[[float], complex]
    name = "custom"

    def evaluate(self, E):
        return complex(self.func(E))

    def derivative(self, E):
        return complex(self.dfunc(E))


# --------------------------------------------------------------------------- #
# Specs and states
# --------------------------------------------------------------------------- #


class Family(str, Enum):
    HYPERBOLIC_SCARF = "hyperbolic_scarf"
    TRIG_SCARF = "trig_scarf"
    MORSE = "morse"


class LevelReason(str, Enum):
    LEVEL_CAP = "LevelCap"
    TRIG_REAL_PART_BOUND = "TrigRealPartBound"
    MORSE_POSITIVE_REAL_PART = "MorsePositiveRealPart"


@dataclass(frozen=True)
class ModelSpec:
    """
    One potential family with fixed A, alpha and coupling B(E).

    ``level_cap`` bounds the number of levels that are ever enumerated; it
    only matters for the trigonometric family, whose spectrum is unbounded.
    """

    family: Family
    A: float
    alpha: float
    B: EnergyDependence
    level_cap: int = specialfn.DEGREE_CAP

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.level_cap < 1:
            raise ValueError("level_cap must be at least 1")

    @property
    def domain(self) -> tuple[float, float]:
        if self.family is Family.TRIG_SCARF:
            half = math.pi / (2.0 * self.alpha)
            return (-half, half)
        return (-math.inf, math.inf)

    @property
    def is_bounded(self) -> bool:
        return self.family is Family.TRIG_SCARF

    @property
    def pseudo_hermitian(self) -> bool:
        """True when inner products use the imaginary-shift map instead of PT."""
        return self.family is Family.MORSE


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    b_at_energy: complex
    admissible: bool = True
    reason: LevelReason | None = None


@dataclass
class SymmetryReport:
    pt_symmetric: bool
    pt_error: float
    pseudo_hermitian: bool
    pseudo_error: float
    theta: dict[int, float] = field(default_factory=dict)
    unbroken_pt: dict[int, bool | None] = field(default_factory=dict)


# --------------------------------------------------------------------------- #
# Potential
# --------------------------------------------------------------------------- #


def _is_complex_abscissa(x) -> bool:
    arr = np.asarray(x)
    return np.iscomplexobj(arr) and bool(np.any(arr.imag != 0))


def _check_abscissa(spec: ModelSpec, x, allow_complex: bool = True):
    if _is_complex_abscissa(x):
        if spec.family is not Family.MORSE or not allow_complex:
            raise UnsupportedComplexAbscissa(
                f"complex abscissae are only supported for the Morse family, not {spec.family.value}"
            )
        return np.asarray(x, dtype=complex)
    xr = np.asarray(np.real(x), dtype=float)
    if np.any(np.isnan(xr)):
        raise DomainError("abscissa is NaN")
    lo, hi = spec.domain
    if spec.is_bounded and (np.any(xr <= lo) or np.any(xr >= hi)):
        raise DomainError(f"abscissa outside open domain ({lo}, {hi})")
    return xr


def _out(x, value):
    if np.ndim(x) == 0:
        return complex(value)
    return value


def _shape_terms(spec: ModelSpec, x):
    """x-dependent pieces (f2, f1) so that V = c0 + B^2 f2 + B f1 + const*f2."""
    a = spec.alpha
    if spec.family is Family.HYPERBOLIC_SCARF:
        sech = 1.0 / np.cosh(a * x)
        return sech**2, np.tanh(a * x) * sech
    if spec.family is Family.TRIG_SCARF:
        sec = 1.0 / np.cos(a * x)
        return sec**2, np.tan(a * x) * sec
    u = np.exp(-a * x)
    return u**2, u


def _potential_b(spec: ModelSpec, b: complex, x):
    A, a = spec.A, spec.alpha
    f2, f1 = _shape_terms(spec, x)
    if spec.family is Family.HYPERBOLIC_SCARF:
        return A**2 + (b**2 - A**2 - A * a) * f2 + b * (2 * A + a) * f1
    if spec.family is Family.TRIG_SCARF:
        return -(A**2) + (b**2 + A**2 - A * a) * f2 - b * (2 * A - a) * f1
    return A**2 + b**2 * f2 - 2.0 * b * (A + a / 2.0) * f1


def potential(spec: ModelSpec, E: float, x):
    """Complex potential V_E(x), with B evaluated at energy E."""
    xx = _check_abscissa(spec, x)
    return _out(x, _potential_b(spec, spec.B.evaluate(E), xx))


def dpotential_dE(spec: ModelSpec, E: float, x):
    """dV_E(x)/dE through the chain rule dV/dB * dB/dE."""
    xx = _check_abscissa(spec, x)
    A, a = spec.A, spec.alpha
    b = spec.B.evaluate(E)
    db = spec.B.derivative(E)
    f2, f1 = _shape_terms(spec, xx)
    if spec.family is Family.HYPERBOLIC_SCARF:
        dv_db = 2.0 * b * f2 + (2 * A + a) * f1
    elif spec.family is Family.TRIG_SCARF:
        dv_db = 2.0 * b * f2 - (2 * A - a) * f1
    else:
        dv_db = 2.0 * b * f2 - 2.0 * (A + a / 2.0) * f1
    return _out(x, db * dv_db)


# --------------------------------------------------------------------------- #
# Spectrum
# --------------------------------------------------------------------------- #


def energy(spec: ModelSpec, n: int) -> float:
    A, a = spec.A, spec.alpha
    if n < 0:
        raise ValueError("level index must be nonnegative")
    if spec.family is Family.TRIG_SCARF:
        return float(-(A**2) + (A + a * n) ** 2)
    return float(A**2 - (A - a * n) ** 2)


def _candidate(spec: ModelSpec, n: int) -> BoundState:
    E = energy(spec, n)
    if spec.family is Family.TRIG_SCARF:
        if n >= spec.level_cap:
            return BoundState(n, E, spec.B.evaluate(E), False, LevelReason.LEVEL_CAP)
        b = spec.B.evaluate(E)
        if not abs(b.real) < spec.A:
            return BoundState(n, E, b, False, LevelReason.TRIG_REAL_PART_BOUND)
        return BoundState(n, E, b)
    # hyperbolic and Morse: 0 <= n < A/alpha
    if not n * spec.alpha < spec.A or n >= spec.level_cap:
        try:
            b = spec.B.evaluate(E)
        except (ValueError, ArithmeticError):
            b = complex("nan")
        return BoundState(n, E, b, False, LevelReason.LEVEL_CAP)
    b = spec.B.evaluate(E)
    if spec.family is Family.MORSE and not b.real > 0:
        return BoundState(n, E, b, False, LevelReason.MORSE_POSITIVE_REAL_PART)
    return BoundState(n, E, b)


def enumerate_levels(spec: ModelSpec) -> list[BoundState]:
    """
    Every candidate level, each judged on its own, with a reason tag on the
    inadmissible ones.

    Enumeration ends at the level cap (hyperbolic/Morse: n >= A/alpha) or, for
    the trigonometric family, at the first level violating |Re B(E_n)| < A.
    The terminating candidate is included so its reason is visible.
    """
    out: list[BoundState] = []
    n = 0
    while True:
        state = _candidate(spec, n)
        out.append(state)
        if state.reason is LevelReason.LEVEL_CAP:
            break
        if state.reason is LevelReason.TRIG_REAL_PART_BOUND:
            break
        n += 1
    return out


def admissible_levels(spec: ModelSpec) -> list[BoundState]:
    """Admissible levels in ascending order (the contiguous run starting at n = 0)."""
    out = []
    for state in enumerate_levels(spec):
        if not state.admissible:
            break
        out.append(state)
    return out


def bound_state(spec: ModelSpec, n: int) -> BoundState:
    """The admissible state with index n, or InadmissibleLevel."""
    state = _candidate(spec, n)
    if not state.admissible:
        raise InadmissibleLevel(f"level {n} is not admissible ({state.reason.value})")
    return state


def _resolve(spec: ModelSpec, state: BoundState | int) -> BoundState:
    if isinstance(state, BoundState):
        return state
    return bound_state(spec, int(state))


# --------------------------------------------------------------------------- #
# Wavefunctions
# --------------------------------------------------------------------------- #


def _hyp_parts(spec: ModelSpec, st: BoundState, x):
    A, a, b = spec.A, spec.alpha, st.b_at_energy
    sh = np.sinh(a * x)
    env = np.exp(-(b / a) * np.arctan(sh)) * (1.0 / np.cosh(a * x)) ** (A / a)
    pa = -0.5 - A / a + 1j * b / a
    pb = -0.5 - A / a - 1j * b / a
    return env, (pa, pb), -1j * sh


def _trig_parts(spec: ModelSpec, st: BoundState, x):
    A, a, b = spec.A, spec.alpha, st.b_at_energy
    # 1 -/+ sin(ax) in a cancellation-free form near the endpoints
    one_minus = 2.0 * np.sin(np.pi / 4 - a * x / 2) ** 2
    one_plus = 2.0 * np.sin(np.pi / 4 + a * x / 2) ** 2
    env = np.exp((A - b) / (2 * a) * np.log(one_minus) + (A + b) / (2 * a) * np.log(one_plus))
    pa = -0.5 + A / a - b / a
    pb = -0.5 + A / a + b / a
    return env, (pa, pb), np.sin(a * x), one_minus, one_plus


def _morse_parts(spec: ModelSpec, st: BoundState, x):
    A, a, b, n = spec.A, spec.alpha, st.b_at_energy, st.n
    u = np.exp(-a * x)
    expo = -(A - a * n) * x - (b / a) * u
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        env = np.where(np.real(expo) < -745.0, 0.0, np.exp(np.where(np.real(expo) < -745.0, 0.0, expo)))
    return env, 2.0 * A / a - 2 * n, 2.0 * b / a * u, u


def wavefunction(spec: ModelSpec, state: BoundState | int, x):
    """Unnormalized closed-form eigenfunction psi_n(x)."""
    st = _resolve(spec, state)
    xx = _check_abscissa(spec, x)
    n = st.n
    if spec.family is Family.HYPERBOLIC_SCARF:
        env, (pa, pb), z = _hyp_parts(spec, st, xx)
        val = env * specialfn.jacobi_p(n, pa, pb, z)
    elif spec.family is Family.TRIG_SCARF:
        env, (pa, pb), z, _, _ = _trig_parts(spec, st, xx)
        val = env * specialfn.jacobi_p(n, pa, pb, z)
    else:
        env, lag_alpha, w, _ = _morse_parts(spec, st, xx)
        with np.errstate(over="ignore", invalid="ignore"):
            val = env * specialfn.laguerre_l(n, lag_alpha, w)
        val = np.where(env == 0, 0.0, val)
    return _out(x, np.asarray(val, dtype=complex))


def wavefunction_derivative(spec: ModelSpec, state: BoundState | int, x):
    """Analytic d psi_n/dx assembled from the polynomial derivative identities."""
    st = _resolve(spec, state)
    xx = _check_abscissa(spec, x)
    n, A, a, b = st.n, spec.A, spec.alpha, st.b_at_energy
    if spec.family is Family.HYPERBOLIC_SCARF:
        env, (pa, pb), z = _hyp_parts(spec, st, xx)
        p = specialfn.jacobi_p(n, pa, pb, z)
        dp = specialfn.poly_derivative_value("jacobi", n, (pa, pb), z)
        sech = 1.0 / np.cosh(a * xx)
        log_env_prime = -b * sech - A * np.tanh(a * xx)
        val = env * (log_env_prime * p + dp * (-1j * a * np.cosh(a * xx)))
    elif spec.family is Family.TRIG_SCARF:
        env, (pa, pb), s, om, op = _trig_parts(spec, st, xx)
        p = specialfn.jacobi_p(n, pa, pb, s)
        dp = specialfn.poly_derivative_value("jacobi", n, (pa, pb), s)
        ds = a * np.cos(a * xx)
        log_env_prime = -(A - b) / (2 * a) * ds / om + (A + b) / (2 * a) * ds / op
        val = env * (log_env_prime * p + dp * ds)
    else:
        env, lag_alpha, w, u = _morse_parts(spec, st, xx)
        with np.errstate(over="ignore", invalid="ignore"):
            p = specialfn.laguerre_l(n, lag_alpha, w)
            dp = specialfn.poly_derivative_value("laguerre", n, (lag_alpha,), w)
            val = env * ((-(A - a * n) + b * u) * p + dp * (-2.0 * b * u))
        val = np.where(env == 0, 0.0, val)
    return _out(x, np.asarray(val, dtype=complex))


# --------------------------------------------------------------------------- #
# Symmetries
# --------------------------------------------------------------------------- #


def pt_symmetry_error(spec: ModelSpec, E: float, grid) -> float:
    """max |conj(V_E(-x)) - V_E(x)| over a grid symmetric about zero."""
    x = np.asarray(grid, dtype=float)
    v = potential(spec, E, x)
    v_ref = potential(spec, E, -x)
    return float(np.max(np.abs(np.conj(v_ref) - v)))


def pseudo_theta(spec: ModelSpec, E: float) -> float:
    """Imaginary shift theta with V_E(x + i theta) = conj(V_E(x)) (Morse family)."""
    b = spec.B.evaluate(E)
    if b.real == 0:
        raise ZeroRealPart(f"Re B(E) vanishes at E={E}")
    return 2.0 / spec.alpha * math.atan(b.imag / b.real)


def pseudo_hermiticity_error(spec: ModelSpec, E: float, grid, theta: float | None = None) -> float:
    if spec.family is not Family.MORSE:
        raise UnsupportedComplexAbscissa("the imaginary-shift check needs the Morse family")
    if theta is None:
        theta = pseudo_theta(spec, E)
    x = np.asarray(grid, dtype=float)
    shifted = potential(spec, E, x + 1j * theta) if theta != 0 else potential(spec, E, x)
    return float(np.max(np.abs(shifted - np.conj(potential(spec, E, x)))))


def unbroken_pt_condition(spec: ModelSpec, n: int, *, rtol: float = 1e-12, imag_tol: float = 1e-14) -> bool:
    """
    Unbroken-PT test for the hyperbolic family with purely imaginary B.

    Holds iff |Im B|(2A + alpha) < (Im B)^2 + (A + alpha/2)^2.  The difference
    of the two sides is (|Im B| - (A + alpha/2))^2, so the test reduces to
    |Im B| != A + alpha/2; couplings within a relative ``rtol`` of that
    critical value are reported as broken.
    """
    if spec.family is not Family.HYPERBOLIC_SCARF:
        raise NotPTForm("condition is defined for the hyperbolic Scarf family")
    A, a = spec.A, spec.alpha
    b = spec.B.evaluate(energy(spec, n))
    if abs(b.real) > imag_tol * max(1.0, abs(b)):
        raise NotPTForm(f"B(E_{n}) = {b} is not purely imaginary")
    critical = A + a / 2.0
    return bool(abs(abs(b.imag) - critical) > rtol * max(1.0, abs(critical)))


def yekken_spec(lam: float, gamma: float, nu: float, alpha: float = 1.0) -> ModelSpec:
    """Hyperbolic spec whose potential is the generalized sech^2 well of Yekken et al."""
    disc = alpha**2 + 4.0 * lam
    if disc < 0:
        raise NegativeDiscriminant(f"alpha^2 + 4 lambda = {disc} < 0")
    if gamma * lam < 0:
        raise NegativeDiscriminant(f"gamma * lambda = {gamma * lam} < 0")
    A = -alpha / 2.0 + 0.5 * math.sqrt(disc)
    return ModelSpec(Family.HYPERBOLIC_SCARF, A, alpha, YekkenPower(gamma, nu, lam))


def symmetry_report(spec: ModelSpec, grid, *, pt_tol: float = 1e-12, pseudo_tol: float = 1e-11) -> SymmetryReport:
    grid = np.asarray(grid, dtype=float)
    levels = admissible_levels(spec)
    pt_err = 0.0
    pseudo_err = 0.0
    thetas: dict[int, float] = {}
    unbroken: dict[int, bool | None] = {}
    sym = np.unique(np.concatenate([-grid, grid]))
    for st in levels:
        pt_err = max(pt_err, pt_symmetry_error(spec, st.energy, sym))
        if spec.family is Family.MORSE and st.b_at_energy.real != 0:
            th = pseudo_theta(spec, st.energy)
            thetas[st.n] = th
            pseudo_err = max(pseudo_err, pseudo_hermiticity_error(spec, st.energy, grid, th))
        if spec.family is Family.HYPERBOLIC_SCARF:
            try:
                unbroken[st.n] = unbroken_pt_condition(spec, st.n)
            except NotPTForm:
                unbroken[st.n] = None
    return SymmetryReport(
        pt_symmetric=pt_err < pt_tol,
        pt_error=pt_err,
        pseudo_hermitian=spec.family is Family.MORSE and len(thetas) == len(levels) and pseudo_err < pseudo_tol,
        pseudo_error=pseudo_err,
        theta=thetas,
        unbroken_pt=unbroken,
    )
