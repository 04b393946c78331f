"""Named invariant checks, grouped into suites for ``parabose-wigner verify``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import fock, matelem, oracle, specfun, wigner
from .fock import ParaParam
from .matelem import MatElemQuery

SUITES = ("specfun", "matelem", "wigner", "oracle")


@dataclass
class CheckResult:
    name: str
    suite: str
    passed: bool
    max_err: float
    tol: float
    detail: str = ""

    def as_dict(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.passed else "fail"
        del d["passed"]
        return d


_REGISTRY: dict[str, list[tuple[str, Callable[[], list[CheckResult]]]]] = {s: [] for s in SUITES}


def check(suite: str):
    def register(fn):
        _REGISTRY[suite].append((fn.__name__, fn))
        return fn

    return register


def _result(name, suite, err, tol, detail="") -> CheckResult:
    err = float(err)
    return CheckResult(name, suite, bool(err <= tol), err, tol, detail)


def _rel(x, y, floor=0.0) -> float:
    return abs(x - y) / max(abs(y), floor) if max(abs(y), floor) > 0 else abs(x - y)


# --------------------------------------------------------------------------
# specfun


@check("specfun")
def pochhammer_identities():
    rng = np.random.default_rng(7)
    err = 0.0
    for x in rng.uniform(-5, 5, 40):
        for k in range(60):
            lhs = specfun.rising_factorial(x, k + 1)
            rhs = specfun.rising_factorial(x, k) * (x + k)
            err = max(err, _rel(lhs, rhs, 1e-300))
    err2 = max(
        _rel(specfun.rising_factorial(0.5, k) * math.factorial(k) * 4.0**k, float(math.factorial(2 * k)))
        for k in range(21)
    )
    return [
        _result("pochhammer_step", "specfun", err, 1e-14),
        _result("double_factorial_identity", "specfun", err2, 1e-13),
    ]


@check("specfun")
def chu_vandermonde():
    rng = np.random.default_rng(11)
    err = 0.0
    for _ in range(200):
        n = int(rng.integers(0, 11))
        a = float(rng.uniform(-3, 3))
        c = float(rng.uniform(0.5, 5))
        lhs = specfun.hyp_terminating([-n, a], [c], 1.0)
        rhs = specfun.rising_factorial(c - a, n) / specfun.rising_factorial(c, n)
        err = max(err, abs(lhs - rhs) / max(abs(rhs), 1e-12))
    return [_result("chu_vandermonde", "specfun", err, 1e-10)]


@check("specfun")
def binomial_theorem():
    err = 0.0
    for a in (-2.5, -0.7, 0.3, 1.0, 2.2, 4.5):
        for z in np.linspace(-0.5, 0.5, 11):
            lhs = specfun.hyp_series([a], [], z).value
            err = max(err, _rel(lhs, (1 - z) ** (-a)))
    return [_result("binomial_theorem", "specfun", err, 1e-10)]


KUMMER_A = (-2.6, -1.3, -0.4, 0.7, 1.9, 3.0)
KUMMER_C = (-2.5, -1.5, -0.7, 0.5, 1.3, 2.9)
KUMMER_Z = (-5.0, -2.0, -0.3, 0.9, 3.0, 5.0)


@check("specfun")
def kummer_transform():
    err = 0.0
    for a in KUMMER_A:
        for c in KUMMER_C:
            for z in KUMMER_Z:
                lhs = specfun.hyp1f1(a, c, z, kummer=False).value
                rhs = math.exp(z) * specfun.hyp1f1(c - a, c, -z, kummer=False).value
                err = max(err, _rel(lhs, rhs))
    return [_result("kummer_transform", "specfun", err, 1e-10)]


@check("specfun")
def laguerre_identities():
    err_forms = 0.0
    for n in range(15):
        for alpha in (0.0, 0.5, 1.0, 2.7):
            for z in (0.1, 1.0, 3.5, 9.0):
                lhs = specfun.laguerre_gen(n, alpha, z)
                rhs = specfun.rising_factorial(alpha + 1, n) / math.factorial(n) * specfun.hyp_terminating([-n], [alpha + 1], z)
                err_forms = max(err_forms, _rel(lhs, rhs, 1e-12))
    err_alt = 0.0
    for n in range(7):
        for r in range(7):
            for alpha in (0.0, 0.5, 1.7, -0.3):
                for z in (0.3, 1.5, 4.0):
                    lhs = specfun.compensated_sum(
                        [(-1) ** k * specfun.binomial(n, k) * specfun.laguerre_gen(r + k, alpha, z) for k in range(n + 1)]
                    )
                    rhs = (-1) ** n * specfun.laguerre_gen(r + n, alpha - n, z)
                    err_alt = max(err_alt, _rel(lhs, rhs, 1.0))
    t = np.linspace(0, 25, 101)
    seq = specfun.laguerre_sequence(50, 0.0, t)
    excess = float(np.max(np.abs(seq) - np.exp(t / 2)))
    return [
        _result("laguerre_forms_agree", "specfun", err_forms, 1e-12),
        _result("laguerre_alternating_sum", "specfun", err_alt, 1e-10),
        _result("laguerre_bound", "specfun", max(excess, 0.0), 0.0, "max(|L_k(t)| - e^{t/2})"),
    ]


@check("specfun")
def hermite_summation():
    err = 0.0
    for k in range(7):
        for x in (-1.1, -0.3, 0.0, 0.4, 1.7):
            for y in (-0.8, 0.2, 1.3):
                lhs = math.fsum(
                    specfun.binomial(k, j) * specfun.hermite(2 * j, x) * specfun.hermite(2 * k - 2 * j, y)
                    for j in range(k + 1)
                )
                rhs = (-1) ** k * math.factorial(k) * 4.0**k * specfun.laguerre_gen(k, 0.0, x * x + y * y)
                err = max(err, _rel(lhs, rhs, 4.0**k * math.factorial(k)))
    return [_result("hermite_summation", "specfun", err, 1e-10)]


@check("specfun")
def paris_2f2_transform():
    err = 0.0
    for a in (0.7, 1.5, 2.3):
        for b in (0.5, 1.5, 2.5):
            for c in (1.0, 1.5, 2.5):
                for j in range(4):
                    for z in (-3.0, -1.0, 0.5, 2.0):
                        direct = specfun.hyp_series([a, c + j], [b, c], z).value
                        paris = specfun.hyp2f2_paris(a, b, c, j, z).value
                        err = max(err, _rel(paris, direct, 1e-3))
    return [_result("paris_2f2_transform", "specfun", err, 1e-10)]


# --------------------------------------------------------------------------
# matelem

MATELEM_A = (0.3, 0.7, 1.5, 2.5)


@check("matelem")
def diag_forms():
    err = 0.0
    for a in (0.3, 0.5, 1.5, 2.5, math.pi / 2):
        for t in (0.25, 1.0, 4.0):
            for n in range(13):
                for k in range(13):
                    q = MatElemQuery(n=n, k=k, a=a, lam=0.0, mu=math.sqrt(t))
                    err = max(err, _rel(matelem.diag_J(q), matelem.diag_S(q)))
    return [_result("diag_J_equals_diag_S", "matelem", err, 1e-10)]


@check("matelem")
def matrix_element_routes():
    lam, mu = 0.6, -0.9
    err_oracle = err_rec = err_shift = 0.0
    for a in MATELEM_A:
        for parity in matelem.PARITIES:
            for n in range(7):
                for k in range(7):
                    for l in range(-k, k + 1):
                        q = MatElemQuery(n=n, k=k, a=a, lam=lam, mu=mu, l=l, parity=parity)
                        if q.bra < 0:
                            continue
                        closed = matelem.offdiag_closed(q)
                        rec = matelem.offdiag_recurrence(q)
                        rep = fock.build_rep(a, max(q.bra, q.ket) + 2 * k + 1)
                        brute = fock.matrix_power_element(rep, lam, mu, 2 * k, q.bra, q.ket)
                        scale = max(abs(brute), 1e-300)
                        err_oracle = max(err_oracle, abs(closed - brute) / scale)
                        err_rec = max(err_rec, abs(rec - closed) / scale)
                        if l == 0:
                            err_oracle = max(err_oracle, _rel(matelem.diag_J(q), brute.real), _rel(matelem.diag_S(q), brute.real))
                        if parity == "odd":
                            shifted = MatElemQuery(n=n, k=k, a=a + 1, lam=lam, mu=mu, l=l)
                            err_shift = max(err_shift, abs(matelem.offdiag_closed(shifted) - closed) / scale)
    return [
        _result("closed_forms_match_fock_oracle", "matelem", err_oracle, 1e-10),
        _result("recurrence_matches_closed_form", "matelem", err_rec, 1e-10),
        _result("odd_parity_shift", "matelem", err_shift, 1e-12),
    ]


@check("matelem")
def exp_diag_routes():
    err = 0.0
    for a in (0.7, 1.5, 2.5):
        for parity in matelem.PARITIES:
            for n in range(4):
                for t in (0.0, 0.5, 2.0, 3.0, 6.0):
                    v28 = matelem.exp_diag_A28(n, parity, a, t).value
                    v27 = matelem.exp_diag_A27(n, parity, a, t).value
                    vs = matelem.exp_diag_series(n, parity, a, t).value
                    err = max(err, abs(v28 - v27), abs(v28 - vs))
    return [_result("exp_diag_routes_agree", "matelem", err, 1e-10)]


# --------------------------------------------------------------------------
# wigner

R2_GRID = np.linspace(0.0, 16.0, 33)


@check("wigner")
def canonical_reduction():
    err = 0.0
    for n in range(11):
        for formula in (wigner.Formula.TRIPLE_SUM, wigner.Formula.GENERALIZED):
            v = wigner.wn_radial(n, 0.5, R2_GRID, formula).value
            err = max(err, float(np.max(np.abs(v - wigner.canonical_wn(n, R2_GRID)))))
    return [_result("canonical_reduction", "wigner", err, 1e-9)]


@check("wigner")
def route_equivalence():
    err = 0.0
    t = np.array([0.0, 0.5, 1.0, 4.0, 9.0, 16.0])
    for n in range(9):
        for m in range(5):
            v29 = wigner.wn_radial(n, 0.5 + m, t, wigner.Formula.TRIPLE_SUM).value
            v31 = wigner.wn_radial(n, 0.5 + m, t, wigner.Formula.GENERALIZED).value
            err = max(err, float(np.max(np.abs(v29 - v31) / np.maximum(1.0, np.abs(v29)))))
    return [_result("route_equivalence", "wigner", err, 1e-9)]


@check("wigner")
def ground_state_forms():
    t = np.linspace(0.0, 16.0, 65)
    coincide = float(np.max(np.abs(wigner.wn_radial(0, 1.5, t).value - wigner.canonical_wn(1, t))))
    poly = 0.0
    for m in range(6):
        series = wigner.wn_radial(0, 0.5 + m, t).value
        closed = wigner.w0_polynomial(m, t).value
        poly = max(poly, float(np.max(np.abs(series - closed) / np.maximum(np.abs(closed), np.exp(-t) / math.pi))))
    return [
        _result("ground_state_coincidence", "wigner", coincide, 1e-12),
        _result("ground_state_polynomial", "wigner", poly, 1e-12),
    ]


@check("wigner")
def odd_state_shift():
    err = 0.0
    for nu in range(5):
        for m in range(4):
            odd = wigner.wn_radial(2 * nu + 1, 0.5 + m, R2_GRID).value
            even = wigner.wn_radial(2 * nu, 1.5 + m, R2_GRID).value
            err = max(err, float(np.max(np.abs(odd - even))))
    return [_result("odd_state_shift", "wigner", err, 0.0)]


@check("wigner")
def radial_invariance():
    rng = np.random.default_rng(3)
    mismatches = 0
    for _ in range(50):
        p, q = rng.uniform(-3, 3, 2)
        pt = wigner.PhasePoint(p, q)
        for n in (0, 3, 4):
            lhs = wigner.wn(wigner.WignerQuery(n, ParaParam(1.5), pt)).value
            rhs = wigner.wn(wigner.WignerQuery(n, ParaParam(1.5), wigner.PhasePoint.radial(pt.r))).value
            mismatches += lhs != rhs
    return [_result("radial_invariance", "wigner", mismatches, 0, "count of non-identical values")]


@check("wigner")
def wavefunctions():
    from scipy.integrate import quad

    err_orth = 0.0
    for a in (0.7, 1.5, 2.5):
        for m in range(7):
            for n in range(m, 7):
                f = lambda q: wigner.wavefn(m, a, q) * wigner.wavefn(n, a, q)
                # split at the origin, where |q|^(2a-1) is not smooth
                left, _ = quad(f, -14.0, 0.0, epsabs=1e-13, epsrel=1e-13, limit=400)
                right, _ = quad(f, 0.0, 14.0, epsabs=1e-13, epsrel=1e-13, limit=400)
                err_orth = max(err_orth, abs(left + right - (m == n)))
    err_eq = 0.0
    for a in (0.7, 1.5, 2.5):
        for n in range(5):
            for q in (-1.7, -0.6, 0.4, 1.1, 2.3):
                err_eq = max(err_eq, abs(wigner.waveeq_residual(n, a, q)))
    return [
        _result("wavefn_orthonormality", "wigner", err_orth, 1e-8),
        _result("waveeq_residual", "wigner", err_eq, 1e-6),
    ]


@check("wigner")
def convergence_guard():
    expected = [
        ((0, 1.5), wigner.Status.EXACT),
        ((2, 0.8), wigner.Status.NOT_GUARANTEED),
        ((3, 0.8), wigner.Status.CONVERGED),
        ((4, 2.3), wigner.Status.CONVERGED),
        ((1, 0.5), wigner.Status.EXACT),
    ]
    wrong = sum(wigner.convergence_guard(n, a) is not status for (n, a), status in expected)
    return [_result("convergence_guard", "wigner", wrong, 0, "count of misclassified cases")]


# --------------------------------------------------------------------------
# oracle


@check("oracle")
def appendix_integral():
    out = []
    for k in range(4):
        err = max(
            oracle.integral_appA_check(k, p, q)[2] for p, q in ((0.0, 0.0), (0.5, 0.0), (1.0, -1.0), (2.0, 1.0))
        )
        out.append(_result(f"appendixA_integral_k{k}", "oracle", err, 1e-8))
    return out


@check("oracle")
def defining_integral():
    err = 0.0
    for m in range(3):
        for n in range(7):
            for r2 in (0.0, 1.0, 4.0):
                pt = wigner.PhasePoint.radial(math.sqrt(r2))
                err = max(err, abs(oracle.wigner_quadrature(n, 0.5 + m, pt) - wigner.wn_radial(n, 0.5 + m, pt.r2).value))
    return [_result("wigner_quadrature_roundtrip", "oracle", err, 1e-7)]


@check("oracle")
def moments():
    err_norm = err_energy = 0.0
    for m in range(3):
        for n in range(5):
            err_norm = max(err_norm, abs(oracle.normalization(n, 0.5 + m) - 1.0))
            err_energy = max(err_energy, abs(oracle.energy_moment(n, 0.5 + m) - (n + 0.5 + m)))
    return [
        _result("normalization", "oracle", err_norm, 1e-8),
        _result("energy_moment", "oracle", err_energy, 1e-7),
    ]


def run_suite(suite: str = "all") -> list[CheckResult]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        for _, fn in _REGISTRY[name]:
            results.extend(fn())
    return results
