import math

import numpy as np
import pytest
from fractions import Fraction

from parabose_wigner import fock
from parabose_wigner.errors import IndexOutOfRange, InvalidParameters, TruncationTooSmall
from parabose_wigner.fock import ParaParam


def test_param_parsing():
    assert ParaParam.parse("3/2").a == 1.5
    assert ParaParam.parse("3/2").half_integer_m == 1
    assert ParaParam.parse(" 7/2 ").half_integer_m == 3
    assert ParaParam.parse(0.8).half_integer_m is None
    assert ParaParam.parse(Fraction(1, 2)).is_half_integer
    assert ParaParam.half_integer(4).a == 4.5
    assert ParaParam(1.5).shifted().a == 2.5
    assert float(ParaParam(0.3)) == 0.3


@pytest.mark.parametrize("bad", ["0", "-1/2", "abc", "1/0", "inf"])
def test_param_rejects(bad):
    with pytest.raises(InvalidParameters):
        ParaParam.parse(bad)


def test_param_inconsistent_m():
    with pytest.raises(InvalidParameters):
        ParaParam(2.5, half_integer_m=1)


def test_build_rep_examples():
    assert fock.build_rep(2.0, 4).b_plus[1, 0] == 2.0
    assert fock.build_rep(0.5, 4).b_minus[0, 1] == 1.0
    rep = fock.build_rep(1.5, 1)
    assert not rep.b_plus.any() and not rep.b_minus.any()


def test_build_rep_is_read_only():
    rep = fock.build_rep(1.5, 4)
    with pytest.raises(ValueError):
        rep.b_plus[0, 0] = 1.0


def test_build_rep_rejects_empty():
    with pytest.raises(InvalidParameters):
        fock.build_rep(1.5, 0)


def test_x_matrix_examples():
    rep = fock.build_rep(2.0, 6)
    assert not fock.x_matrix(rep, 0.0, 0.0).any()
    np.testing.assert_allclose(fock.x_matrix(rep, 0.0, math.sqrt(2)), rep.b_plus + rep.b_minus)
    np.testing.assert_allclose(fock.x_matrix(rep, 0.0, math.sqrt(2)), math.sqrt(2) * rep.q_matrix())
    x = fock.x_matrix(rep, 1.0, 1.0)
    assert (x @ x)[0, 0] == pytest.approx(4.0)


@pytest.mark.parametrize("a,n,want", [(1.5, 0, 3.0), (0.5, 3, 7.0), (2.5, 4, 13.0)])
def test_anticommutator(a, n, want):
    assert fock.anticommutator_check(fock.build_rep(a, 8), n) == pytest.approx(want)


@pytest.mark.parametrize("a,n,want", [(0.5, 0, -1j), (0.5, 3, -1j), (2.0, 0, -4j), (2.0, 1, 2j)])
def test_commutator(a, n, want):
    assert fock.commutator_pq_check(fock.build_rep(a, 8), n) == pytest.approx(want)


def test_checks_refuse_edge_index():
    rep = fock.build_rep(1.5, 5)
    with pytest.raises(IndexOutOfRange):
        fock.anticommutator_check(rep, 4)
    with pytest.raises(IndexOutOfRange):
        fock.commutator_pq_check(rep, -1)


def test_matrix_power_examples():
    rep = fock.build_rep(1.3, 12)
    assert fock.matrix_power_element(rep, 0.4, 0.7, 3, 0, 0) == 0
    assert fock.matrix_power_element(rep, 0.0, 1.0, 4, 0, 0) == pytest.approx(1.3 * 2.3)
    assert fock.matrix_power_element(rep, 0.3, 0.2, 0, 4, 4) == 1


def test_matrix_power_truncation_enforced():
    rep = fock.build_rep(1.3, 6)
    with pytest.raises(TruncationTooSmall):
        fock.matrix_power_element(rep, 0.0, 1.0, 4, 2, 2)


def test_matrix_power_independent_of_dim():
    values = {fock.matrix_power_element(fock.build_rep(0.7, d), 0.6, -0.9, 6, 3, 5) for d in (12, 20, 40)}
    assert len(values) == 1


def test_real_part_checked():
    assert fock.real_part_checked(2.0 + 1e-15j) == 2.0
    with pytest.raises(ArithmeticError):
        fock.real_part_checked(1.0 + 1e-3j)
