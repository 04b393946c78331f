import math

import numpy as np
import pytest

from parabose_wigner import oracle, wigner
from parabose_wigner.errors import InvalidParameters, QuadratureDidNotConverge
from parabose_wigner.oracle import QuadSpec
from parabose_wigner.specfun import laguerre_gen
from parabose_wigner.wigner import PhasePoint


def test_quadspec_validation():
    with pytest.raises(InvalidParameters):
        QuadSpec(scheme="simpson")
    with pytest.raises(InvalidParameters):
        QuadSpec(half_width=-1.0)


def test_gaussian_integral():
    lhs, rhs, diff = oracle.integral_appA_check(0, 0.0, 0.0)
    assert lhs == pytest.approx(1 / math.pi, abs=1e-12)
    assert diff <= 1e-8


def test_gaussian_moment_rhs():
    _, rhs, diff = oracle.integral_appA_check(1, 0.5, 0.0)
    assert rhs == pytest.approx(math.exp(-0.25) / math.pi * 4 * laguerre_gen(1, 0.0, 0.25), rel=1e-14)
    assert diff <= 1e-8
    assert oracle.integral_appA_check(3, 1.0, -1.0)[2] <= 1e-8


def test_gaussian_moment_rejects_large_k():
    with pytest.raises(InvalidParameters):
        oracle.integral_appA_check(9, 0.0, 0.0)


def test_boundary_width_grows_with_moment():
    # e^{-t/4} t^8 is not below 1e-14 of its peak at H = 12
    spec = oracle.fit_half_width(lambda t: np.exp(-t / 4) * t**8, QuadSpec())
    assert spec.half_width > 12
    t = spec.half_width**2
    peak = (32.0 / math.e) ** 8
    assert math.exp(-t / 4) * t**8 <= 1e-14 * peak


def test_wigner_quadrature_examples():
    assert oracle.wigner_quadrature(0, 0.5, PhasePoint(0.0)) == pytest.approx(1 / math.pi, abs=1e-10)
    assert oracle.wigner_quadrature(0, 1.5, PhasePoint(0.0)) == pytest.approx(-1 / math.pi, abs=1e-10)
    pt = PhasePoint(1.0, 1.0)
    assert oracle.wigner_quadrature(3, 1.5, pt) == pytest.approx(wigner.wn_radial(3, 1.5, 2.0).value, abs=1e-7)


def test_quadrature_needs_half_integer():
    with pytest.raises(InvalidParameters):
        oracle.wigner_quadrature(0, 1.2, PhasePoint(0.0))
    with pytest.raises(InvalidParameters):
        oracle.normalization(9, 1.5)


@pytest.mark.parametrize("n,a", [(0, 0.5), (0, 2.5), (3, 1.5)])
def test_normalization(n, a):
    assert oracle.normalization(n, a) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("n,a,e", [(0, 0.5, 0.5), (0, 1.5, 1.5), (2, 1.5, 3.5)])
def test_energy(n, a, e):
    assert oracle.energy_moment(n, a) == pytest.approx(e, abs=1e-7)


def test_too_few_nodes_is_detected():
    with pytest.raises(QuadratureDidNotConverge):
        oracle.integral_appA_check(3, 2.0, 1.0, QuadSpec(nodes_per_axis=8))


def test_adaptive_scheme_recovers():
    spec = QuadSpec(scheme="adaptive", nodes_per_axis=40, max_doublings=4)
    _, _, diff = oracle.integral_appA_check(2, 1.0, 0.5, spec)
    assert diff <= 1e-8
