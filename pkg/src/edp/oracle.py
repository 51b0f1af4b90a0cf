"""
Verification paths that do not reuse the closed-form spectra.

* A shooting eigensolver for psi'' = (V_E(x) - E) psi.  Energy dependence is
  automatic: V is rebuilt with the trial E at every evaluation, so no
  self-consistency loop is needed.
* A pointwise residual of the modified continuity equation.
* A second quadrature path for the pseudo-norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import inner, model
from .errors import MaxIterations, NoSignChange, PreconditionError
from .model import Family, ModelSpec
from .wronskian import derivative

__all__ = [
    "ShootingResult",
    "shoot_eigenvalue",
    "matching_function",
    "ContinuityTerms",
    "continuity_terms",
    "continuity_residual",
    "reference_pseudo_norm",
]

STEP = 1e-3  # in units of 1/alpha
INFINITE_START = 20.0
MORSE_WALL = 40.0  # left start where |B| e^{-alpha x} / alpha reaches this value
TRIG_OFFSET = 1e-2
SCAN_POINTS = 9
MATCH_TOL = 1e-8  # |normalized matching Wronskian| accepted as a root


# --------------------------------------------------------------------------- #
# Fixed-step Gauss-Legendre collocation (4 stages, order 8) for y' = M(x) y
# --------------------------------------------------------------------------- #


@lru_cache(maxsize=1)
def _gauss_tableau():
    s = 4
    nodes, weights = np.polynomial.legendre.leggauss(s)
    c = 0.5 * (nodes + 1.0)
    b = 0.5 * weights
    # a_ij = int_0^{c_i} l_j(t) dt with l_j the Lagrange basis on c
    A = np.empty((s, s))
    for j in range(s):
        others = np.delete(c, j)
        basis = np.poly1d(np.poly(others)) / np.prod(c[j] - others)
        prim = basis.integ()
        A[:, j] = prim(c) - prim(0.0)
    return c, b, A


def _tree_product(T: np.ndarray) -> np.ndarray:
    """T[-1] @ ... @ T[0] by pairwise reduction."""
    while T.shape[0] > 1:
        if T.shape[0] % 2:
            T = np.concatenate([T, np.eye(2, dtype=complex)[None]], axis=0)
        T = T[1::2] @ T[0::2]
    return T[0]


def propagate(q: Callable[[np.ndarray], np.ndarray], x0: float, x1: float, y0, step: float) -> np.ndarray:
    """
    Carry y = (psi, psi') from x0 to x1 for psi'' = q(x) psi.

    The step is shortened so that an integer number of steps lands on x1.
    """
    c, b, A = _gauss_tableau()
    n = max(1, int(math.ceil(abs(x1 - x0) / step)))
    h = (x1 - x0) / n
    starts = x0 + h * np.arange(n)
    qs = np.asarray(q(starts[:, None] + h * c[None, :]), dtype=complex)  # (n, 4)
    s = len(c)
    # M_j = [[0, 1], [q_j, 0]]; assemble I - h (A kron M) as (n, 8, 8)
    M = np.zeros((n, s, 2, 2), dtype=complex)
    M[:, :, 0, 1] = 1.0
    M[:, :, 1, 0] = qs
    big = -h * A[None, :, :, None, None] * M[:, None, :, :, :]  # (n, i, j, 2, 2)
    big = big.transpose(0, 1, 3, 2, 4).reshape(n, 2 * s, 2 * s)
    big += np.eye(2 * s)[None]
    rhs = np.tile(np.eye(2, dtype=complex), (s, 1))  # (8, 2)
    Z = np.linalg.solve(big, np.broadcast_to(rhs, (n, 2 * s, 2))).reshape(n, s, 2, 2)
    T = np.eye(2, dtype=complex)[None] + h * np.einsum("i,nikl,nilm->nkm", b, M, Z)
    return _tree_product(T) @ np.asarray(y0, dtype=complex)


# --------------------------------------------------------------------------- #
# Shooting
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ShootingResult:
    n: int
    energy: float
    closed_form: float
    residual: float
    iterations: int
    bracket: tuple[float, float]
    method: str = "brentq"

    @property
    def error(self) -> float:
        return abs(self.energy - self.closed_form)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "energy": self.energy,
            "closed_form": self.closed_form,
            "abs_error": self.error,
            "residual": self.residual,
            "iterations": self.iterations,
            "bracket": list(self.bracket),
            "method": self.method,
        }


def _boundary_data(spec: ModelSpec, E: float, b_scale: float | None = None):
    """
    Start points, initial vectors and the matching point for energy E.

    For the Morse family the left start depends on |B|; passing ``b_scale``
    pins it so the start does not move while E is varied.
    """
    a = spec.alpha
    if spec.family is Family.TRIG_SCARF:
        b = spec.B.evaluate(E)
        edge = math.pi / (2 * a)
        d = TRIG_OFFSET / a
        # psi ~ dist^p at each wall with p from the local exponent of the closed form
        p_left = (spec.A + b) / a
        p_right = (spec.A - b) / a
        return (-edge + d, [1.0, p_left / d]), (edge - d, [1.0, -p_right / d]), 0.0
    right = (INFINITE_START / a, [0.0, -1.0])
    if spec.family is Family.MORSE:
        mag = abs(spec.B.evaluate(E)) if b_scale is None else b_scale
        x_left = -math.log(MORSE_WALL * a / mag) / a if mag > 0 else -INFINITE_START / a
        return (x_left, [0.0, 1.0]), right, 0.0
    return (-INFINITE_START / a, [0.0, 1.0]), right, 0.0


def matching_function(spec: ModelSpec, E: float, b_scale: float | None = None) -> complex:
    """Normalized Wronskian of the left and right solutions at the matching point."""
    (xl, yl0), (xr, yr0), xm = _boundary_data(spec, E, b_scale)
    q = lambda x: model.potential(spec, E, x) - E  # noqa: E731
    h = STEP / spec.alpha
    yl = propagate(q, xl, xm, yl0, h)
    yr = propagate(q, xr, xm, yr0, h)
    w = yl[0] * yr[1] - yl[1] * yr[0]
    return complex(w / (np.linalg.norm(yl) * np.linalg.norm(yr)))


def _golden_min(f, lo, hi, tol, maxiter):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = f(c), f(d)
    for it in range(1, maxiter + 1):
        if abs(hi - lo) < tol:
            return 0.5 * (lo + hi), it
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = f(d)
    raise MaxIterations(f"golden-section search did not reach width {tol} in {maxiter} steps")


def shoot_eigenvalue(
    spec: ModelSpec,
    n: int,
    bracket: tuple[float, float] | None = None,
    *,
    xtol: float = 1e-12,
    maxiter: int = 200,
    fallback: bool = True,
) -> ShootingResult:
    """
    Recover E_n by shooting from both ends and matching at the centre.

    The sign-carrying functional is Re(w(E) conj(w_hi - w_lo)): the complex
    matching Wronskian projected on its own secant direction over the bracket,
    which is linear in E - E_n near a simple root.  When the phase of w turns
    too far across the bracket for that projection to change sign, the
    bracket is scanned and narrowed around the smallest |w| first; golden
    section on |w|^2 is the last resort.
    """
    closed = model.energy(spec, n)
    if bracket is None:
        half = 0.5 * spec.alpha**2
        bracket = (closed - half, closed + half)
    lo, hi = bracket
    b_scale = max(abs(spec.B.evaluate(lo)), abs(spec.B.evaluate(hi))) if spec.family is Family.MORSE else None

    def match(E):
        return matching_function(spec, E, b_scale)

    def projected_root(a, b, w_a, w_b):
        direction = (w_b - w_a).conjugate()
        if (w_a * direction).real * (w_b * direction).real >= 0:
            return None
        try:
            E, info = brentq(
                lambda e: (match(e) * direction).real,
                a,
                b,
                xtol=xtol,
                rtol=4 * np.finfo(float).eps,
                maxiter=maxiter,
                full_output=True,
            )
        except RuntimeError as exc:
            raise MaxIterations(str(exc)) from exc
        return E, info.iterations

    def accept(found):
        # a zero of the projection is only an eigenvalue if w itself vanishes there
        if found is None:
            return None
        resid = abs(match(found[0]))
        return (*found, resid) if resid <= MATCH_TOL else None

    w_lo, w_hi = match(lo), match(hi)
    found = accept(projected_root(lo, hi, w_lo, w_hi))
    sub = (lo, hi)
    method = "brentq"
    if found is None:
        # the phase of w turns across a wide bracket; narrow it around min |w|
        grid = np.linspace(lo, hi, SCAN_POINTS)
        ws = [w_lo] + [match(e) for e in grid[1:-1]] + [w_hi]
        i = int(np.clip(np.argmin(np.abs(ws)), 1, SCAN_POINTS - 2))
        sub = (grid[i - 1], grid[i + 1])
        found = accept(projected_root(sub[0], sub[1], ws[i - 1], ws[i + 1]))
    if found is None and fallback:
        found = accept(_golden_min(lambda e: abs(match(e)) ** 2, sub[0], sub[1], xtol, maxiter))
        method = "golden"
    if found is None:
        raise NoSignChange(f"no zero of the matching Wronskian found in [{lo}, {hi}]")
    E, iters, resid = found
    return ShootingResult(n, float(E), closed, resid, iters, (lo, hi), method)


# --------------------------------------------------------------------------- #
# Modified continuity equation
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ContinuityTerms:
    dP_dt: complex
    source: complex
    dJ_dx: complex
    P: complex
    J: complex

    @property
    def residual(self) -> complex:
        return self.dP_dt + self.source + self.dJ_dx

    @property
    def scale(self) -> float:
        return max(abs(self.dP_dt), abs(self.source), abs(self.dJ_dx), abs(self.P), abs(self.J))

    @property
    def relative(self) -> float:
        s = self.scale
        return abs(self.residual) / s if s > 0 else 0.0


def _vt(spec: ModelSpec, E: float, x):
    v = model.potential(spec, E, x)
    return np.conj(v) if spec.pseudo_hermitian else v


def continuity_terms(
    spec: ModelSpec,
    m: int,
    n: int,
    x: float,
    t: float,
    *,
    psi_n: Callable | None = None,
) -> ContinuityTerms:
    """
    Terms of dP/dt + i (V~_n - V~_m) P + dJ/dx at (x, t).

    With f the time-dependent left partner of state m and g = eta applied to
    state n, P = f g and J = -i (f g' - f' g).  ``psi_n`` replaces the
    closed-form psi_n (used to check that the residual detects a wrong state);
    its derivative is then taken numerically.
    """
    sm, sn = model.bound_state(spec, m), model.bound_state(spec, n)
    Em, En = sm.energy, sn.energy
    phase = complex(np.exp(1j * (Em - En) * t))

    f = lambda z: inner.pairing_left(spec, sm, z)  # noqa: E731
    g = lambda z: inner.eta_apply(spec, sn, z, psi_n)  # noqa: E731
    if spec.pseudo_hermitian:
        df = lambda z: np.conj(model.wavefunction_derivative(spec, sm, z))  # noqa: E731
    else:
        df = lambda z: -np.conj(model.wavefunction_derivative(spec, sm, -np.asarray(z)))  # noqa: E731
    if psi_n is None:
        theta = model.pseudo_theta(spec, En) if spec.pseudo_hermitian and sn.b_at_energy.real != 0 else 0.0
        if theta:
            dg = lambda z: model.wavefunction_derivative(spec, sn, np.asarray(z) + 1j * theta)  # noqa: E731
        else:
            dg = lambda z: model.wavefunction_derivative(spec, sn, z)  # noqa: E731
    else:
        dg = lambda z: derivative(g, z)  # noqa: E731

    def current(z):
        return -1j * phase * (f(z) * dg(z) - df(z) * g(z))

    P = phase * complex(f(x) * g(x))
    J = complex(current(x))
    dJ = complex(derivative(current, x))
    source = 1j * complex(_vt(spec, En, x) - _vt(spec, Em, x)) * P
    return ContinuityTerms(1j * (Em - En) * P, source, dJ, P, J)


def continuity_residual(
    spec: ModelSpec, m: int, n: int, x: float, t: float, *, psi_n: Callable | None = None
) -> complex:
    """Pointwise residual of the modified continuity equation (zero for exact states)."""
    return continuity_terms(spec, m, n, x, t, psi_n=psi_n).residual


# --------------------------------------------------------------------------- #
# Second quadrature path
# --------------------------------------------------------------------------- #


def reference_pseudo_norm(spec: ModelSpec, n: int, *, panels: int = 8, nodes: int = 400) -> complex:
    """Pseudo-norm from a fixed 8-panel, 400-node Gauss-Legendre rule."""
    if n < 0:
        raise PreconditionError("level index must be nonnegative")
    value, _ = inner.reference_norm(spec, n, panels=panels, nodes=nodes)
    return value
