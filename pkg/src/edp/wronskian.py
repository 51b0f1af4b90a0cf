"""
Integration-free orthogonality check via boundary Wronskians.

With f = conj(psi_m) (or its PT partner) and g = eta psi_n, both solve
Schrodinger equations with the (conjugated) potentials, so

    d/dx W[f, g] = [(E_m - E_n) - (V~_{E_m} - V~_{E_n})] f g

and the modified inner product equals (W(b) - W(a)) / (E_m - E_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import inner, model
from .errors import EndpointNotDecaying, PreconditionError
from .model import ModelSpec
from .quadrature import QuadratureSpec

__all__ = [
    "WronskianCheck",
    "derivative",
    "wronskian_value",
    "endpoint_sequence",
    "ortho_via_wronskian",
    "wronskian_vs_integral",
]

INFINITE_CUTOFFS = (16.0, 18.0, 20.0)
TRIG_DISTANCES = (1e-4, 1e-5, 1e-6)


def derivative(f: Callable, x, h: float | None = None, levels: int = 3):
    """
    Central difference with Richardson extrapolation over steps h, h/2, h/4, ...

    The default base step is 1e-4 (1 + |x|).
    """
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-4 * (1.0 + np.abs(x))
    table = []
    step = np.asarray(h, dtype=float)
    for _ in range(levels):
        table.append((np.asarray(f(x + step)) - np.asarray(f(x - step))) / (2.0 * step))
        step = step / 2.0
    # eliminate h^2, h^4, ... in turn
    for j in range(1, levels):
        factor = 4.0**j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    out = table[0]
    return complex(out) if out.ndim == 0 else out


def wronskian_value(f: Callable, g: Callable, x, h: float | None = None):
    """W[f, g](x) = f g' - f' g with numerically differentiated f and g."""
    fx = np.asarray(f(np.asarray(x, dtype=float)))
    gx = np.asarray(g(np.asarray(x, dtype=float)))
    w = fx * np.asarray(derivative(g, x, h)) - np.asarray(derivative(f, x, h)) * gx
    return complex(w) if np.ndim(w) == 0 else w


@dataclass(frozen=True)
class WronskianCheck:
    pair: tuple[int, int]
    w_left: complex
    w_right: complex
    difference: complex
    implied_inner_product: complex
    left_sequence: tuple[complex, ...]
    right_sequence: tuple[complex, ...]
    agreement_error: float | None = None

    def as_dict(self) -> dict:
        d = {
            "pair": list(self.pair),
            "w_left": [self.w_left.real, self.w_left.imag],
            "w_right": [self.w_right.real, self.w_right.imag],
            "difference_abs": abs(self.difference),
            "implied_inner_product": [self.implied_inner_product.real, self.implied_inner_product.imag],
        }
        if self.agreement_error is not None:
            d["agreement_error"] = self.agreement_error
        return d


def _pair_functions(spec: ModelSpec, m: int, n: int):
    sm = model.bound_state(spec, m)
    sn = model.bound_state(spec, n)
    f = lambda x: inner.pairing_left(spec, sm, x)  # noqa: E731
    g = lambda x: inner.eta_apply(spec, sn, x)  # noqa: E731
    return sm, sn, f, g


def _extrapolate(seq: list[complex]) -> complex:
    """Aitken limit of a geometric-looking sequence; the last term if degenerate."""
    w1, w2, w3 = seq
    denom = (w3 - w2) - (w2 - w1)
    if abs(denom) <= 1e-300 or abs(denom) < 1e-12 * max(abs(w3 - w2), 1e-300):
        return w3
    lim = w3 - (w3 - w2) ** 2 / denom
    # the model limit can only be trusted when it is no larger than the data
    return lim if abs(lim) <= abs(w3) else w3


def _contracting(seq: list[complex]) -> bool:
    mags = [abs(w) for w in seq]
    slack = 1e-14 * max(mags[0], 1e-300)
    return all(mags[i + 1] <= mags[i] + slack for i in range(len(mags) - 1))


def endpoint_sequence(spec: ModelSpec, f: Callable, g: Callable, side: str) -> list[complex]:
    """Wronskian at the three cutoffs approaching one end of the domain."""
    sign = 1.0 if side == "right" else -1.0
    out = []
    if spec.is_bounded:
        edge = math.pi / (2.0 * spec.alpha)
        for d in TRIG_DISTANCES:
            dist = d / spec.alpha
            x = sign * (edge - dist)
            h = min(1e-4 * (1.0 + abs(x)), dist / 4.0)
            out.append(wronskian_value(f, g, x, h))
    else:
        for c in INFINITE_CUTOFFS:
            out.append(wronskian_value(f, g, sign * c / spec.alpha))
    return out


def ortho_via_wronskian(spec: ModelSpec, m: int, n: int) -> WronskianCheck:
    """
    Boundary Wronskian difference for the pair (m, n) and the inner product it implies.

    Raises EndpointNotDecaying when |W| does not shrink along the cutoff
    sequence at either end.
    """
    if m == n:
        raise PreconditionError("Wronskian form needs m != n")
    sm, sn, f, g = _pair_functions(spec, m, n)
    left = endpoint_sequence(spec, f, g, "left")
    right = endpoint_sequence(spec, f, g, "right")
    for side, seq in (("left", left), ("right", right)):
        if not _contracting(seq):
            raise EndpointNotDecaying(f"|W| does not contract toward the {side} end for pair ({m}, {n}): {seq}")
    wl, wr = _extrapolate(left), _extrapolate(right)
    diff = wr - wl
    return WronskianCheck(
        pair=(m, n),
        w_left=wl,
        w_right=wr,
        difference=diff,
        implied_inner_product=diff / (sm.energy - sn.energy),
        left_sequence=tuple(left),
        right_sequence=tuple(right),
    )


def wronskian_vs_integral(spec: ModelSpec, m: int, n: int, quad: QuadratureSpec | None = None) -> float:
    """|integral form - Wronskian form| of the modified inner product."""
    if m == n:
        raise PreconditionError("consistency check needs m != n")
    check = ortho_via_wronskian(spec, m, n)
    integral = inner.modified_inner_product(spec, m, n, quad)
    return abs(integral.value - check.implied_inner_product)
