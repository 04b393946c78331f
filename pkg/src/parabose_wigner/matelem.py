"""Matrix elements <2n+2l|X^(2k)|2n> and diagonal elements of exp(iX).

States come in pairs: ``parity="even"`` addresses |2n>, ``parity="odd"``
addresses |2n+1>.  Odd-parity elements are even-parity elements with a
replaced by a+1, so every routine normalizes the parity first and then works
with even states only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidParameters, OutOfSupportedRange
from .fock import ParaParam, alphas
from .series import (
    DEFAULT_CONTROL,
    EvalResult,
    SeriesControl,
    Status,
    StreakMonitor,
    compensated_sum,
    warn_not_guaranteed,
)
from .specfun import binomial, hyp1f1, hyp2f2, rising_factorial

MAX_PAIR_INDEX = 40
PARITIES = ("even", "odd")


@dataclass(frozen=True)
class MatElemQuery:
    n: int
    k: int
    a: ParaParam
    lam: float = 0.0
    mu: float = 1.0
    l: int = 0
    parity: str = "even"

    def __post_init__(self):
        if not isinstance(self.a, ParaParam):
            object.__setattr__(self, "a", ParaParam(self.a))
        if self.parity not in PARITIES:
            raise InvalidParameters(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.n < 0 or self.k < 0:
            raise InvalidParameters("n and k must be nonnegative")
        if self.n > MAX_PAIR_INDEX:
            raise OutOfSupportedRange(f"pair index n={self.n} exceeds {MAX_PAIR_INDEX}")

    @property
    def t(self) -> float:
        return self.lam * self.lam + self.mu * self.mu

    @property
    def effective_a(self) -> float:
        return self.a.a + (1.0 if self.parity == "odd" else 0.0)

    @property
    def bra(self) -> int:
        return 2 * (self.n + self.l) + (self.parity == "odd")

    @property
    def ket(self) -> int:
        return 2 * self.n + (self.parity == "odd")


def _require_diagonal(q: MatElemQuery):
    if q.l != 0:
        raise InvalidParameters("diagonal formula requires l = 0")


def diag_J(q: MatElemQuery) -> float:
    """<2n|X^(2k)|2n> as the sum over j with 2j <= k of
    (2j)!/j! C(n,j) C(k,2j) (a+n-j)_j (a+2n)_(k-2j)."""
    _require_diagonal(q)
    a, n, k = q.effective_a, q.n, q.k
    terms = [
        math.factorial(2 * j) / math.factorial(j)
        * binomial(n, j) * binomial(k, 2 * j)
        * rising_factorial(a + n - j, j) * rising_factorial(a + 2 * n, k - 2 * j)
        for j in range(min(n, k // 2) + 1)
    ]
    return q.t**k * compensated_sum(terms)


def diag_S(q: MatElemQuery) -> float:
    """<2n|X^(2k)|2n> as sum_{j<=min(n,k)} C(n,j)/j! (a+j)_(k-j) (k+1-j)_(2j)."""
    _require_diagonal(q)
    a, n, k = q.effective_a, q.n, q.k
    terms = [
        binomial(n, j) / math.factorial(j)
        * rising_factorial(a + j, k - j) * rising_factorial(k + 1 - j, 2 * j)
        for j in range(min(n, k) + 1)
    ]
    return q.t**k * compensated_sum(terms)


def _sqrt_pochhammer_product(x: float, y: float, l: int) -> float:
    # sqrt((x)_l (y)_l) as a product of square roots of positive factors
    out = 1.0
    for i in range(l):
        out *= math.sqrt(x + i) * math.sqrt(y + i)
    return out


def offdiag_closed(q: MatElemQuery) -> complex:
    """Closed form of <2n+2l|X^(2k)|2n> for any integer l."""
    a, n, k, l = q.effective_a, q.n, q.k, q.l
    L = abs(l)
    if L > k or n + l < 0:
        return 0.0j
    ap, am = alphas(q.lam, q.mu)
    if l >= 0:
        prefactor = (-1) ** L * 2**k * ap ** (k + L) * am ** (k - L)
        prefactor *= _sqrt_pochhammer_product(n + 1, n + a, L)
        m = n
    else:
        prefactor = (-1) ** L * 2**k * ap ** (k - L) * am ** (k + L)
        prefactor *= _sqrt_pochhammer_product(n - L + 1, n - L + a, L)
        m = n - L
    terms = [
        rising_factorial(a + L + j, k - L - j) * rising_factorial(-m, j)
        * rising_factorial(-k, L + j) * rising_factorial(k + L + 1, j)
        / (math.factorial(L + j) * math.factorial(j))
        for j in range(min(m, k - L) + 1)
    ]
    return prefactor * compensated_sum(terms)


def offdiag_recurrence(q: MatElemQuery) -> complex:
    """<2n+2l|X^(2k)|2n> by dynamic programming over the three-term
    recurrence in k, starting from F_{0,0} = 1 and F_{0,l} = 0 otherwise."""
    a = q.effective_a
    ap, am = alphas(q.lam, q.mu)
    up = 2 * ap * ap
    mid = 2 * ap * am
    down = 2 * am * am

    @lru_cache(maxsize=None)
    def F(k: int, l: int, n: int) -> complex:
        if n < 0 or n + l < 0 or abs(l) > k:
            return 0.0j
        if k == 0:
            return 1.0 + 0.0j
        value = up * math.sqrt((n + a) * (n + 1)) * F(k - 1, l - 1, n + 1)
        value += mid * (2 * n + a) * F(k - 1, l, n)
        if n > 0:
            value += down * math.sqrt(n * (n + a - 1)) * F(k - 1, l + 1, n - 1)
        return value

    return F(q.k, q.l, q.n)


# --------------------------------------------------------------------------
# diagonal elements of exp(iX); they depend on lambda, mu only via t


def _effective(n: int, parity: str, a) -> float:
    if parity not in PARITIES:
        raise InvalidParameters(f"parity must be 'even' or 'odd', got {parity!r}")
    if n > MAX_PAIR_INDEX:
        raise OutOfSupportedRange(f"pair index n={n} exceeds {MAX_PAIR_INDEX}")
    a = a if isinstance(a, ParaParam) else ParaParam(a)
    return a.a + (1.0 if parity == "odd" else 0.0)


def _minus_quarter(t):
    return -np.asarray(t, dtype=float) / 4 if np.ndim(t) else -float(t) / 4


def _check_t(t):
    if np.any(np.asarray(t) < 0):
        raise InvalidParameters("t = lambda^2 + mu^2 must be nonnegative")


def exp_diag_A28(n: int, parity: str, a, t, ctl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """<2n|exp(iX)|2n> as sum_j C(n,j) (2j)! (a+n-j)_j / ((4j)! j!) t^(2j)
    1F1(a+2n; 2j+1/2; -t/4).  ``t`` may be an array."""
    _check_t(t)
    a_eff = _effective(n, parity, a)
    parts, err = [], 0.0
    status, terms_used = Status.EXACT, 0
    for j in range(n + 1):
        w = (
            binomial(n, j) * math.factorial(2 * j) * rising_factorial(a_eff + n - j, j)
            / (math.factorial(4 * j) * math.factorial(j))
        ) * np.power(t, 2 * j)
        f = hyp1f1(a_eff + 2 * n, 2 * j + 0.5, _minus_quarter(t), ctl)
        parts.append(w * f.value)
        err = err + np.abs(w) * f.est_error
        status = status.worst(f.status)
        terms_used += f.terms_used
    return EvalResult(compensated_sum(parts), err, terms_used, status)


def exp_diag_A27(n: int, parity: str, a, t, ctl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """<2n|exp(iX)|2n> as sum_j C(n,j) (-1)^j / j! t^j
    2F2(a+j, 1+2j; j+1/2, 1+j; -t/4)."""
    _check_t(t)
    a_eff = _effective(n, parity, a)
    parts, err = [], 0.0
    status, terms_used = Status.EXACT, 0
    for j in range(n + 1):
        w = binomial(n, j) * (-1) ** j / math.factorial(j) * np.power(t, j)
        f = hyp2f2(a_eff + j, 1.0 + 2 * j, j + 0.5, 1.0 + j, _minus_quarter(t), ctl)
        parts.append(w * f.value)
        err = err + np.abs(w) * f.est_error
        status = status.worst(f.status)
        terms_used += f.terms_used
    return EvalResult(compensated_sum(parts), err, terms_used, status)


def exp_diag_series(n: int, parity: str, a, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """<2n|exp(iX)|2n> = sum_k (-1)^k <2n|X^(2k)|2n> / (2k)!, summed directly.

    The series is entire, so it converges for every t, but it suffers from
    cancellation once t is large (roughly t > 30).
    """
    _check_t(t)
    a_eff = _effective(n, parity, a)
    base = ParaParam(a_eff)
    mon = StreakMonitor(ctl)
    k = 0
    # diag_S already includes t^k; divide incrementally to stay in range
    done = False
    while not done and not mon.exhausted:
        q = MatElemQuery(n=n, k=k, a=base, lam=0.0, mu=1.0)
        coef = diag_S(q)
        term = (-1) ** k * coef * _t_power_over_factorial(t, k)
        done = mon.add(term)
        k += 1
    if done:
        return EvalResult(mon.total, mon.streak_error(), mon.count, Status.CONVERGED)
    msg = f"exp(iX) series hit max_terms={ctl.max_terms}"
    warn_not_guaranteed(msg)
    return EvalResult(mon.total, float("inf"), mon.count, Status.NOT_GUARANTEED, msg)


def _t_power_over_factorial(t: float, k: int) -> float:
    """t^k / (2k)! computed as a log-space ratio to avoid overflow."""
    if k == 0:
        return 1.0
    if t == 0:
        return 0.0
    return math.exp(k * math.log(t) - math.lgamma(2 * k + 1))
