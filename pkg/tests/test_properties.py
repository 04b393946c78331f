"""Property-based checks of the identities the closed forms rest on."""

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from parabose_wigner import fock, matelem, specfun, wigner
from parabose_wigner.matelem import MatElemQuery

reals = st.floats(min_value=-4, max_value=4, allow_nan=False)
params = st.floats(min_value=0.05, max_value=4, allow_nan=False)
radii2 = st.floats(min_value=0, max_value=16, allow_nan=False)


@given(x=reals, k=st.integers(0, 40))
def test_pochhammer_step(x, k):
    lhs = specfun.rising_factorial(x, k + 1)
    rhs = specfun.rising_factorial(x, k) * (x + k)
    assert lhs == rhs


@given(n=st.integers(0, 10), a=reals, c=st.floats(0.5, 5))
def test_chu_vandermonde(n, a, c):
    lhs = specfun.hyp_terminating([-n, a], [c], 1.0)
    rhs = specfun.rising_factorial(c - a, n) / specfun.rising_factorial(c, n)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1e-3)


@given(a=st.floats(-3, 3), c=st.floats(0.3, 3), z=st.floats(-5, 5))
def test_kummer(a, c, z):
    lhs = specfun.hyp1f1(a, c, z).value
    rhs = math.exp(z) * specfun.hyp1f1(c - a, c, -z).value
    assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1e-3)


@given(n=st.integers(0, 6), r=st.integers(0, 6), alpha=st.floats(-2, 3), z=st.floats(0, 10))
def test_laguerre_alternating_sum(n, r, alpha, z):
    lhs = math.fsum((-1) ** k * math.comb(n, k) * specfun.laguerre_gen(r + k, alpha, z) for k in range(n + 1))
    rhs = (-1) ** n * specfun.laguerre_gen(r + n, alpha - n, z)
    scale = max(1.0, max(abs(specfun.laguerre_gen(r + k, alpha, z)) for k in range(n + 1)))
    assert abs(lhs - rhs) <= 1e-12 * scale * 2**n


@given(k=st.integers(0, 50), t=st.floats(0, 25))
def test_laguerre_bound(k, t):
    assert abs(specfun.laguerre_gen(k, 0.0, t)) <= math.exp(t / 2)


@settings(max_examples=60)
@given(n=st.integers(0, 6), k=st.integers(0, 6), a=params, lam=reals, mu=reals, odd=st.booleans())
def test_diagonal_forms_match_truncated_matrix(n, k, a, lam, mu, odd):
    assume(lam * lam + mu * mu > 1e-3)
    q = MatElemQuery(n=n, k=k, a=a, lam=lam, mu=mu, parity="odd" if odd else "even")
    rep = fock.build_rep(a, q.ket + 2 * k + 1)
    brute = fock.matrix_power_element(rep, lam, mu, 2 * k, q.ket, q.ket)
    assert abs(brute.imag) <= 1e-12 * abs(brute)
    for value in (matelem.diag_J(q), matelem.diag_S(q), matelem.offdiag_recurrence(q)):
        assert abs(value - brute) <= 1e-10 * abs(brute)


@settings(max_examples=40)
@given(n=st.integers(0, 8), m=st.integers(0, 4), t=radii2)
def test_routes_agree(n, m, t):
    a = 0.5 + m
    triple = wigner.wn_radial(n, a, t, "a29").value
    general = wigner.wn_radial(n, a, t, "a31").value
    assert abs(triple - general) <= 1e-9 * max(1.0, abs(triple))


@given(n=st.integers(0, 10), t=radii2)
def test_canonical_limit(n, t):
    assert abs(wigner.wn_radial(n, 0.5, t).value - wigner.canonical_wn(n, t)) <= 1e-9


@given(nu=st.integers(0, 6), m=st.integers(0, 4), t=radii2)
def test_odd_shift_is_exact(nu, m, t):
    assert wigner.wn_radial(2 * nu + 1, 0.5 + m, t).value == wigner.wn_radial(2 * nu, 1.5 + m, t).value


@given(p=reals, q=reals, theta=st.floats(0, 2 * math.pi))
def test_radial_symmetry(p, q, theta):
    # rotating (p, q) leaves W_n unchanged up to the rounding of the radius
    r = math.hypot(p, q)
    rotated = wigner.PhasePoint(r * math.cos(theta), r * math.sin(theta))
    w1 = wigner.wn(wigner.WignerQuery(n=2, a=1.5, point=wigner.PhasePoint(p, q))).value
    w2 = wigner.wn(wigner.WignerQuery(n=2, a=1.5, point=rotated)).value
    assert abs(w1 - w2) <= 1e-12
