import math

import numpy as np
import pytest

from edp import inner, model, oracle
from edp.errors import NoSignChange
from edp.model import AffinePlusImaginaryLinear, Custom, Family, ImaginaryLinear, ImaginarySqrtShift, ModelSpec

HYP = ModelSpec(Family.HYPERBOLIC_SCARF, 3.0, 1.0, ImaginaryLinear(0.1))
TRIG = ModelSpec(Family.TRIG_SCARF, 5.0, 1.0, ImaginarySqrtShift(0.01), level_cap=4)
MORSE = ModelSpec(Family.MORSE, 3.0, 1.0, AffinePlusImaginaryLinear(0.1))
ALL = [HYP, TRIG, MORSE]
IDS = ["hyperbolic", "trig", "morse"]


# --- integrator ----------------------------------------------------------------------


def test_propagate_harmonic_oscillator():
    y = oracle.propagate(lambda x: -np.ones_like(x), 0.0, 10.0, [1.0, 0.0], 1e-2)
    assert y == pytest.approx([math.cos(10.0), -math.sin(10.0)], abs=1e-13)


def test_propagate_backwards_inverts_forwards():
    q = lambda x: 0.5 + 0.2j * np.sin(x)  # noqa: E731
    y1 = oracle.propagate(q, -1.0, 2.0, [1.0, 0.3j], 1e-2)
    y0 = oracle.propagate(q, 2.0, -1.0, y1, 1e-2)
    assert y0 == pytest.approx([1.0, 0.3j], abs=1e-12)


def test_collocation_order():
    # error on y' = y over [0, 1] should fall by ~2^8 when the step halves
    errs = []
    for h in (0.5, 0.25):
        y = oracle.propagate(lambda x: np.ones_like(x), 0.0, 1.0, [1.0, 1.0], h)
        errs.append(abs(y[0] - math.e))
    assert errs[0] / errs[1] > 2**7


# --- shooting ------------------------------------------------------------------------


@pytest.mark.parametrize("spec,n,expected", [(HYP, 1, 5.0), (TRIG, 3, 39.0), (MORSE, 2, 8.0)], ids=IDS)
def test_shooting_recovers_closed_form(spec, n, expected):
    res = oracle.shoot_eigenvalue(spec, n)
    assert abs(res.energy - expected) < 1e-6
    assert res.error < 1e-6
    assert res.bracket == (expected - 0.5, expected + 0.5)
    assert res.as_dict()["abs_error"] == res.error


def test_shooting_real_sech_well():
    spec = ModelSpec(Family.HYPERBOLIC_SCARF, 3.0, 1.0, Custom(lambda E: 0.0, lambda E: 0.0))
    # depth A(A+1) = 12 well shifted up by A^2: textbook levels -(3-n)^2 + 9
    for n, expected in enumerate((0.0, 5.0, 8.0)):
        assert abs(oracle.shoot_eigenvalue(spec, n).energy - expected) < 1e-6


def test_shooting_without_level_in_bracket_raises():
    with pytest.raises(NoSignChange):
        oracle.shoot_eigenvalue(TRIG, 1, bracket=(14.0, 16.0))


def test_matching_function_small_only_at_eigenvalue():
    assert abs(oracle.matching_function(TRIG, 24.0)) < 1e-10
    assert abs(oracle.matching_function(TRIG, 24.3)) > 1e-3


# --- continuity ----------------------------------------------------------------------


def grid_points(spec):
    if spec.is_bounded:
        edge = math.pi / (2 * spec.alpha)
        xs = np.linspace(-edge + 0.1, edge - 0.1, 10)
    else:
        xs = np.linspace(-3, 3, 10)
    return xs, np.linspace(0, 2, 5)


@pytest.mark.parametrize("spec", [MORSE], ids=["morse"])
def test_continuity_residual_small(spec):
    xs, ts = grid_points(spec)
    for m, n in ((0, 1), (2, 0), (1, 2)):
        for x in xs:
            for t in ts:
                terms = oracle.continuity_terms(spec, m, n, x, t)
                assert abs(terms.residual) < 1e-6 * terms.scale
                assert oracle.continuity_residual(spec, m, n, x, t) == terms.residual


def test_continuity_classical_limit():
    spec = ModelSpec(Family.HYPERBOLIC_SCARF, 3.0, 1.0, Custom(lambda E: 0.5j, lambda E: 0.0))
    for x in np.linspace(-2, 2, 5):
        terms = oracle.continuity_terms(spec, 1, 1, x, 0.7)
        assert terms.dP_dt == 0 and terms.source == 0
        assert abs(terms.residual) < 1e-6 * terms.scale


@pytest.mark.parametrize("spec", ALL, ids=IDS)
def test_continuity_detects_perturbed_state(spec):
    xs, _ = grid_points(spec)
    sn = model.bound_state(spec, 1)
    wrong = lambda z: (1 + 0.01 * z) * model.wavefunction(spec, sn, z)  # noqa: E731
    rel = [oracle.continuity_terms(spec, 0, 1, x, 0.3, psi_n=wrong).relative for x in xs]
    assert max(rel) > 1e-3


# --- second quadrature path ----------------------------------------------------------


def test_reference_norm_values():
    assert abs(oracle.reference_pseudo_norm(MORSE, 0) - 1.875) < 1e-8
    assert oracle.reference_pseudo_norm(HYP, 0).real == pytest.approx(1.06667, rel=1e-4)


@pytest.mark.parametrize("spec", ALL, ids=IDS)
def test_reference_norm_agrees_with_adaptive_path(spec):
    for st in model.admissible_levels(spec):
        assert abs(oracle.reference_pseudo_norm(spec, st.n) - inner.pseudo_norm(spec, st).value) < 1e-8
