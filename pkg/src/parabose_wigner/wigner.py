"""Wigner distribution function W_n(p, q) of the parabose oscillator.

W_n depends on the phase-space point only through t = p^2 + q^2.  Even states
n = 2v are evaluated by one of two Laguerre expansions; odd states reuse the
even formula with the representation parameter shifted by one.  When
a = 1/2 + m every expansion is a finite sum.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameters, NotGuaranteedConvergence, OutOfSupportedRange
from .fock import ParaParam
from .series import (
    DEFAULT_CONTROL,
    EvalResult,
    SeriesControl,
    Status,
    StreakMonitor,
    compensated_sum,
    warn_not_guaranteed,
)
from .specfun import EPS, binomial, hyp_terminating, laguerre_gen, laguerre_sequence, rising_factorial

MAX_STATE = 40


class Formula(str, enum.Enum):
    """Evaluation routes; the values double as CLI tokens."""

    TRIPLE_SUM = "a29"
    GENERALIZED = "a31"
    GROUND_POLY = "w0m"


@dataclass(frozen=True)
class PhasePoint:
    p: float
    q: float = 0.0
    r: float = field(init=False, repr=False)
    r2: float = field(init=False, repr=False)

    def __post_init__(self):
        r = math.hypot(self.p, self.q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "r2", r * r)

    @classmethod
    def radial(cls, r: float) -> "PhasePoint":
        return cls(float(r), 0.0)


@dataclass(frozen=True)
class WignerQuery:
    n: int
    a: ParaParam
    point: PhasePoint
    formula: Formula = Formula.TRIPLE_SUM
    ctl: SeriesControl = DEFAULT_CONTROL
    allow_unguaranteed: bool = False

    def __post_init__(self):
        if not isinstance(self.a, ParaParam):
            object.__setattr__(self, "a", ParaParam(self.a))
        object.__setattr__(self, "formula", Formula(self.formula))
        if self.formula is Formula.GROUND_POLY and (self.n > 1 or not self.a.is_half_integer):
            raise InvalidParameters("the ground-state polynomial form needs n in {0, 1} and a = 1/2 + m")


def _param(a) -> ParaParam:
    return a if isinstance(a, ParaParam) else ParaParam(a)


def convergence_guard(n: int, a) -> Status:
    """Classify the series for state n: Exact (terminating), Converged
    (absolutely convergent) or NotGuaranteed (0 < effective a <= 1)."""
    a = _param(a)
    if n < 0:
        raise InvalidParameters("state index must be nonnegative")
    if a.is_half_integer:
        return Status.EXACT
    effective = a.a + (n % 2)
    return Status.CONVERGED if effective > 1 else Status.NOT_GUARANTEED


def _guard(n: int, a: ParaParam, allow_unguaranteed: bool) -> Status:
    if n > MAX_STATE:
        raise OutOfSupportedRange(f"state index n={n} exceeds {MAX_STATE}")
    status = convergence_guard(n, a)
    if status is Status.NOT_GUARANTEED and not allow_unguaranteed:
        raise NotGuaranteedConvergence(
            f"series for n={n}, a={a.a} is not known to converge; pass allow_unguaranteed to evaluate anyway"
        )
    return status


# --------------------------------------------------------------------------
# even-state Laguerre expansions; each returns the bracketed sum without the
# (1/pi) e^{-t} prefactor


def _triple_sum_coefficients(nu: int, a: float, kmax: int) -> list[float]:
    """Combined coefficients d_k of sum_k d_k L_k(t), k = 0..kmax (finite case)."""
    beta = 0.5 - a - 2 * nu
    outer = [binomial(nu, j) * rising_factorial(a + nu - j, j) / math.factorial(j) for j in range(nu + 1)]
    coefs = []
    for k in range(kmax + 1):
        parts = [
            outer[j] * rising_factorial(k - 2 * j + 1, 2 * j) * rising_factorial(beta + 2 * j, k - 2 * j)
            for j in range(min(nu, k // 2) + 1)
        ]
        coefs.append(compensated_sum(parts) / rising_factorial(0.5, k))
    return coefs


def _triple_sum_finite(nu: int, a: ParaParam, t) -> EvalResult:
    kmax = a.half_integer_m + 2 * nu
    coefs = np.array(_triple_sum_coefficients(nu, a.a, kmax))
    lag = laguerre_sequence(kmax, 0.0, t)
    terms = coefs.reshape((-1,) + (1,) * np.ndim(t)) * lag
    value = compensated_sum(terms) if np.ndim(t) else compensated_sum(list(terms))
    err = 8 * EPS * np.sum(np.abs(terms), axis=0)
    return EvalResult(value, err, kmax + 1, Status.EXACT)


def _triple_sum_streaming(nu: int, a: float, t: float, ctl: SeriesControl) -> EvalResult:
    beta = 0.5 - a - 2 * nu
    outer = [binomial(nu, j) * rising_factorial(a + nu - j, j) / math.factorial(j) for j in range(nu + 1)]
    inner = [0.0] * (nu + 1)
    mon = StreakMonitor(ctl)
    lag_prev, lag = 0.0, 1.0
    done = False
    k = 0
    d_prev = d = 0.0
    while not done and not mon.exhausted:
        for j in range(nu + 1):
            if k == 2 * j:
                inner[j] = math.factorial(2 * j) / rising_factorial(0.5, 2 * j)
            elif k > 2 * j:
                inner[j] *= k / (k - 2 * j) * (beta + k - 1) / (0.5 + k - 1)
        d_prev, d = d, compensated_sum([outer[j] * inner[j] for j in range(min(nu, k // 2) + 1)])
        done = mon.add(d * lag)
        lag_prev, lag = lag, ((2 * k + 1 - t) * lag - k * lag_prev) / (k + 1)
        k += 1
    tail = _majorant_tail(d_prev, d, k - 1, t)
    if done:
        return EvalResult(mon.total, max(mon.streak_error(), tail), mon.count, Status.CONVERGED)
    msg = f"Laguerre series hit max_terms={ctl.max_terms}"
    warn_not_guaranteed(msg)
    return EvalResult(mon.total, tail, mon.count, Status.NOT_GUARANTEED, msg)


TAIL_SAFETY = 2.0


def _majorant_tail(d_prev: float, d: float, k: int, t: float) -> float:
    """Tail estimate from |L_k(t)| <= e^{t/2} and a power-law fit of |d_k|.

    For |d_j| = C j^{-s} the remainder past k is at most |d_k| k / (s - 1);
    s is read off the last two coefficients and the result is padded by
    TAIL_SAFETY because the coefficients are only asymptotically a power law.
    """
    if d == 0.0:
        return 0.0
    if d_prev == 0.0 or k < 2:
        return float("inf")
    ratio = abs(d_prev) / abs(d)
    if ratio <= 1.0:
        return float("inf")
    s = math.log(ratio) / math.log(k / (k - 1))
    if s <= 1.0:
        return float("inf")
    return TAIL_SAFETY * abs(d) * math.exp(t / 2) * k / (s - 1.0)


def _generalized_finite(nu: int, a: ParaParam, t) -> EvalResult:
    m = a.half_integer_m
    parts = []
    count = 0
    for j in range(nu + 1):
        outer = binomial(nu, j) * rising_factorial(j + 1.0, j) / rising_factorial(0.5, j)
        for k in range(m + 1):
            coef = (
                rising_factorial(0.5 - a.a, k) * rising_factorial(2.0 * j + 1, k)
                / (math.factorial(k) * rising_factorial(0.5 + j, k))
            )
            parts.append(outer * coef * laguerre_gen(k + 2 * j, -j, t))
            count += 1
    value = compensated_sum(parts) if np.ndim(t) else compensated_sum(list(parts))
    err = 8 * EPS * sum(np.abs(p) for p in parts)
    return EvalResult(value, err, m + 1, Status.EXACT)


def _generalized_streaming(nu: int, a: float, t: float, ctl: SeriesControl) -> EvalResult:
    total, err = [], 0.0
    status, used = Status.EXACT, 0
    for j in range(nu + 1):
        outer = binomial(nu, j) * rising_factorial(j + 1.0, j) / rising_factorial(0.5, j)
        alpha = -float(j)
        # advance L^(alpha)_deg to deg = 2j
        lag_prev, lag = 0.0, 1.0
        for deg in range(2 * j):
            lag_prev, lag = lag, ((2 * deg + alpha + 1 - t) * lag - (deg + alpha) * lag_prev) / (deg + 1)
        mon = StreakMonitor(ctl)
        coef, k, done = 1.0, 0, False
        while not done and not mon.exhausted:
            done = mon.add(coef * lag)
            deg = k + 2 * j
            lag_prev, lag = lag, ((2 * deg + alpha + 1 - t) * lag - (deg + alpha) * lag_prev) / (deg + 1)
            coef *= (0.5 - a + k) * (2 * j + 1 + k) / ((k + 1) * (0.5 + j + k))
            k += 1
        total.append(outer * mon.total)
        used = max(used, mon.count)
        if done:
            status = status.worst(Status.CONVERGED)
            err += abs(outer) * mon.streak_error()
        else:
            status = Status.NOT_GUARANTEED
            err = float("inf")
    result = EvalResult(compensated_sum(total), err, used, status)
    if status is Status.NOT_GUARANTEED:
        warn_not_guaranteed(f"generalized Laguerre series hit max_terms={ctl.max_terms}")
    return result


def _even_sum(nu: int, a: ParaParam, t, formula: Formula, ctl: SeriesControl) -> EvalResult:
    if a.is_half_integer:
        if formula is Formula.GENERALIZED:
            return _generalized_finite(nu, a, t)
        return _triple_sum_finite(nu, a, t)
    stream = _generalized_streaming if formula is Formula.GENERALIZED else _triple_sum_streaming
    if np.ndim(t) == 0:
        return stream(nu, a.a, float(t), ctl)
    t = np.asarray(t, dtype=float)
    results = [stream(nu, a.a, float(v), ctl) for v in t.ravel()]
    status = Status.EXACT
    for r in results:
        status = status.worst(r.status)
    return EvalResult(
        np.array([r.value for r in results]).reshape(t.shape),
        np.array([r.est_error for r in results]).reshape(t.shape),
        max(r.terms_used for r in results),
        status,
    )


def wn_radial(n: int, a, r2, formula=Formula.TRIPLE_SUM, ctl: SeriesControl = DEFAULT_CONTROL,
              allow_unguaranteed: bool = False) -> EvalResult:
    """W_n as a function of t = p^2 + q^2 (scalar or array)."""
    a = _param(a)
    formula = Formula(formula)
    if np.any(np.asarray(r2) < 0):
        raise InvalidParameters("r^2 must be nonnegative")
    guard = _guard(n, a, allow_unguaranteed)
    nu, odd = divmod(n, 2)
    a_eff = a.shifted() if odd else a
    if formula is Formula.GROUND_POLY:
        if nu != 0 or not a.is_half_integer:
            raise InvalidParameters("the ground-state polynomial form needs n in {0, 1} and a = 1/2 + m")
        return w0_polynomial(a_eff.half_integer_m, r2)
    with warnings.catch_warnings():
        if guard is Status.NOT_GUARANTEED:
            warnings.simplefilter("ignore")
        body = _even_sum(nu, a_eff, r2, formula, ctl)
    prefactor = np.exp(-np.asarray(r2, dtype=float)) / math.pi if np.ndim(r2) else math.exp(-r2) / math.pi
    result = body.scaled(prefactor)
    if guard is Status.NOT_GUARANTEED:
        msg = f"a={a.a} lies in the region where convergence for n={n} is not established"
        warn_not_guaranteed(msg)
        return EvalResult(result.value, result.est_error, result.terms_used, Status.NOT_GUARANTEED, msg)
    return result


def wn(query: WignerQuery) -> EvalResult:
    """W_n(p, q) for the query's state, parameter and route."""
    return wn_radial(query.n, query.a, query.point.r2, query.formula, query.ctl, query.allow_unguaranteed)


def w0(a, point: PhasePoint, ctl: SeriesControl = DEFAULT_CONTROL, allow_unguaranteed: bool = False) -> EvalResult:
    """Ground state: (1/pi) e^{-t} sum_k (1/2-a)_k / (1/2)_k L_k(t)."""
    return wn_radial(0, a, point.r2, Formula.TRIPLE_SUM, ctl, allow_unguaranteed)


def w0_polynomial(m: int, point) -> EvalResult:
    """Ground state for a = 1/2 + m as (1/pi) e^{-t} 1F1(-m; 3/2-m; t) / (1 - 2m).

    ``point`` may be a PhasePoint or t = r^2 directly (scalar or array).
    """
    if m < 0:
        raise InvalidParameters("m must be a nonnegative integer")
    t = point.r2 if isinstance(point, PhasePoint) else point
    poly = hyp_terminating([-m], [1.5 - m], t)
    if np.ndim(t):
        prefactor = np.exp(-np.asarray(t, dtype=float)) / math.pi / (1 - 2 * m)
    else:
        prefactor = math.exp(-t) / math.pi / (1 - 2 * m)
    value = prefactor * poly
    return EvalResult(value, 8 * EPS * np.abs(value), m + 1, Status.EXACT)


def canonical_wn(n: int, point) -> float:
    """Canonical oscillator reference ((-1)^n / pi) e^{-t} L_n(2t)."""
    t = point.r2 if isinstance(point, PhasePoint) else point
    if np.ndim(t):
        t = np.asarray(t, dtype=float)
        return (-1) ** n / math.pi * np.exp(-t) * laguerre_gen(n, 0.0, 2 * t)
    return (-1) ** n / math.pi * math.exp(-t) * laguerre_gen(n, 0.0, 2 * t)


# --------------------------------------------------------------------------
# position-space wave functions


class WavefunctionDivergence(UserWarning):
    """The even wave function for a < 1/2 is unbounded at q = 0."""


def wavefn(n: int, a, q):
    """Orthonormal position-space wave function Psi_n(q).

    Returns +-inf at q = 0 for even states with a < 1/2 and emits
    :class:`WavefunctionDivergence`.
    """
    a = _param(a).a
    nu, odd = divmod(n, 2)
    q = np.asarray(q, dtype=float) if np.ndim(q) else float(q)
    x = q * q
    if odd:
        norm = math.exp(0.5 * (math.lgamma(nu + 1) - math.lgamma(nu + a + 1)))
        poly = laguerre_gen(nu, a, x) * q
    else:
        norm = math.exp(0.5 * (math.lgamma(nu + 1) - math.lgamma(nu + a)))
        poly = laguerre_gen(nu, a - 1, x)
    with np.errstate(divide="ignore"):
        power = np.power(np.abs(q), a - 0.5)
    value = (-1) ** nu * norm * power * np.exp(-x / 2) * poly
    if not odd and a < 0.5 and np.any(np.asarray(q) == 0):
        warnings.warn(f"Psi_{n} diverges at q=0 for a={a}", WavefunctionDivergence, stacklevel=2)
    return value


def waveeq_residual(n: int, a, q: float) -> float:
    """Residual of the singular-oscillator equation
    -Psi''/2 + q^2 Psi/2 + g(g-1) Psi / (2 q^2) - E Psi at q != 0,
    with Psi'' from a central difference."""
    if q == 0:
        raise InvalidParameters("the singular oscillator equation is not defined at q = 0")
    a = _param(a).a
    nu, odd = divmod(n, 2)
    if odd:
        g, energy = a + 0.5, a + 2 * nu + 1
    else:
        g, energy = a - 0.5, a + 2 * nu
    h = 1e-4 * max(1.0, abs(q))
    psi = wavefn(n, a, q)
    second = (wavefn(n, a, q + h) - 2 * psi + wavefn(n, a, q - h)) / (h * h)
    return float(-0.5 * second + 0.5 * q * q * psi + 0.5 * g * (g - 1) * psi / (q * q) - energy * psi)
