"""Scalar special-function kernels.

Rising factorials are always formed as explicit products so that a factor
``x + i == 0`` yields an exact zero.  Every function accepts either a float
or a numpy array for its continuous argument (``z`` / ``x``); integer orders
and hypergeometric parameters are scalars.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidParameters
from .series import (
    DEFAULT_CONTROL,
    EvalResult,
    SeriesControl,
    Status,
    StreakMonitor,
    compensated_sum,
    warn_not_guaranteed,
)

EPS = np.finfo(float).eps


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _as_float_or_array(z):
    if np.ndim(z) == 0:
        return float(z)
    return np.asarray(z, dtype=float)


def rising_factorial(x, k: int):
    """Pochhammer symbol (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1."""
    if k < 0:
        raise InvalidParameters(f"k must be nonnegative, got {k}")
    result = 1.0 if np.ndim(x) == 0 else np.ones_like(np.asarray(x, dtype=float))
    for i in range(k):
        result = result * (x + i)
    return result


def binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        return 0.0
    return float(math.comb(n, k))


def laguerre_gen(n: int, alpha: float, z):
    """Generalized Laguerre polynomial L_n^(alpha)(z) for any real alpha.

    Uses the explicit sum
    ``(1/n!) sum_k (-n)_k (alpha+k+1)_{n-k} z^k / k!``, which stays valid when
    alpha is a negative integer.  For scalar ``z`` the sum is carried out in
    exact rational arithmetic on the binary values of alpha and z, so the
    result is correctly rounded even near a root.  Arrays go through the
    three-term recurrence, which is stable for z >= 0.
    """
    if n < 0:
        raise InvalidParameters(f"degree must be nonnegative, got {n}")
    z = _as_float_or_array(z)
    if np.ndim(z) != 0:
        return laguerre_sequence(n, alpha, z)[n]
    al = Fraction(float(alpha))
    coefs = []
    for k in range(n + 1):
        c = Fraction((-1) ** k * math.comb(n, k), math.factorial(n))
        for i in range(n - k):
            c *= al + k + 1 + i
        coefs.append(c)
    return _horner_exact(coefs, z)


def laguerre_sequence(kmax: int, alpha: float, z) -> np.ndarray:
    """Return ``[L_0^(alpha)(z), ..., L_kmax^(alpha)(z)]`` stacked on axis 0.

    Forward three-term recurrence in the degree; the recurrence is polynomial
    in alpha so it reproduces the extended definition for every alpha.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty((kmax + 1,) + z.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = alpha + 1.0 - z
    for k in range(1, kmax):
        out[k + 1] = ((2 * k + alpha + 1.0 - z) * out[k] - (k + alpha) * out[k - 1]) / (k + 1)
    return out


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence."""
    x = _as_float_or_array(x)
    h_prev = 1.0 if np.ndim(x) == 0 else np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


# --------------------------------------------------------------------------
# hypergeometric series


def _termination_order(numer: Sequence[float]):
    orders = [int(-a) for a in numer if _is_nonpos_int(a)]
    return min(orders) if orders else None


def _term_coefficients(numer, denom, count: int) -> list[float]:
    """Coefficients c_k = prod (a)_k / (prod (b)_k k!) for k < count."""
    coefs = [1.0]
    c = 1.0
    for k in range(count - 1):
        den = float(k + 1)
        for b in denom:
            if b + k == 0:
                raise InvalidParameters(
                    f"denominator parameter {b} vanishes at term {k + 1} before the series terminates"
                )
            den *= b + k
        num = 1.0
        for a in numer:
            num *= a + k
        c = c * num / den
        coefs.append(c)
    return coefs


def _horner_exact(coefs: Sequence[Fraction], z: float) -> float:
    zq = Fraction(z)
    acc = Fraction(0)
    for c in reversed(coefs):
        acc = acc * zq + c
    return float(acc)


def _exact_coefficients(numer, denom, count: int) -> list[Fraction]:
    numer = [Fraction(float(a)) for a in numer]
    denom = [Fraction(float(b)) for b in denom]
    coefs = [Fraction(1)]
    for k in range(count - 1):
        num = Fraction(1)
        for a in numer:
            num *= a + k
        den = Fraction(k + 1)
        for b in denom:
            den *= b + k
        coefs.append(coefs[-1] * num / den)
    return coefs


def hyp_terminating(numer: Sequence[float], denom: Sequence[float], z):
    """Finite sum of a terminating rFs series.

    Some numerator parameter must be a nonpositive integer -N.  A scalar
    ``z`` is summed in exact rational arithmetic (correctly rounded result);
    for arrays the N+1 terms are accumulated with compensated summation.
    """
    N = _termination_order(numer)
    if N is None:
        raise InvalidParameters(f"no nonpositive integer among numerator parameters {list(numer)}")
    z = _as_float_or_array(z)
    # validates the denominators (raises before the exact path divides by zero)
    coefs = _term_coefficients(numer, denom, N + 1)
    if np.ndim(z) == 0:
        return _horner_exact(_exact_coefficients(numer, denom, N + 1), z)
    terms = []
    zk = np.ones_like(z)
    for c in coefs:
        terms.append(c * zk)
        zk = zk * z
    return compensated_sum(terms)


def _exact_result(numer, denom, z) -> EvalResult:
    N = _termination_order(numer)
    value = hyp_terminating(numer, denom, z)
    if np.ndim(z) == 0:
        return EvalResult(value, EPS * abs(value), N + 1, Status.EXACT)
    coefs = _term_coefficients(numer, denom, N + 1)
    absz = np.abs(z)
    magnitude = sum(abs(c) * absz**k for k, c in enumerate(coefs))
    return EvalResult(value, 4 * EPS * magnitude, N + 1, Status.EXACT)


def _series_scalar(numer, denom, z: float, ctl: SeriesControl) -> EvalResult:
    for b in denom:
        if _is_nonpos_int(b):
            raise InvalidParameters(f"denominator parameter {b} is a nonpositive integer")
    mon = StreakMonitor(ctl)
    term = 1.0
    k = 0
    done = mon.add(term)
    while not done and not mon.exhausted:
        num = 1.0
        for a in numer:
            num *= a + k
        den = float(k + 1)
        for b in denom:
            den *= b + k
        term = term * num / den * z
        k += 1
        done = mon.add(term)
    if done:
        return EvalResult(mon.total, mon.streak_error(), mon.count, Status.CONVERGED)
    msg = f"series hit max_terms={ctl.max_terms} without meeting the stop rule"
    warn_not_guaranteed(msg)
    return EvalResult(mon.total, abs(term) * mon.count, mon.count, Status.NOT_GUARANTEED, msg)


def _combine(results: list[EvalResult], shape) -> EvalResult:
    status = Status.EXACT
    for r in results:
        status = status.worst(r.status)
    value = np.array([r.value for r in results]).reshape(shape)
    err = np.array([r.est_error for r in results]).reshape(shape)
    warning = next((r.warning for r in results if r.warning), None)
    return EvalResult(value, err, max(r.terms_used for r in results), status, warning)


def hyp_series(numer: Sequence[float], denom: Sequence[float], z, ctl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Direct summation of rFs(numer; denom; z), no transformations applied."""
    numer = [float(a) for a in numer]
    denom = [float(b) for b in denom]
    if _termination_order(numer) is not None:
        return _exact_result(numer, denom, _as_float_or_array(z))
    if np.ndim(z) == 0:
        return _series_scalar(numer, denom, float(z), ctl)
    z = np.asarray(z, dtype=float)
    return _combine([_series_scalar(numer, denom, float(v), ctl) for v in z.ravel()], z.shape)


def _by_sign(z, negative_route, other_route) -> EvalResult:
    """Evaluate ``negative_route`` where z < 0 and ``other_route`` elsewhere."""
    if np.ndim(z) == 0:
        return negative_route(z) if z < 0 else other_route(z)
    negative = z < 0
    if negative.all():
        return negative_route(z)
    if not negative.any():
        return other_route(z)
    value, err = np.empty_like(z), np.empty_like(z)
    parts = []
    for mask, route in ((negative, negative_route), (~negative, other_route)):
        r = route(z[mask])
        value[mask], err[mask] = r.value, r.est_error
        parts.append(r)
    status = parts[0].status.worst(parts[1].status)
    warning = parts[0].warning or parts[1].warning
    return EvalResult(value, err, max(r.terms_used for r in parts), status, warning)


def hyp1f1(a: float, c: float, z, ctl: SeriesControl = DEFAULT_CONTROL, *, kummer=None) -> EvalResult:
    """Confluent hypergeometric series 1F1(a; c; z).

    ``kummer=None`` picks the evaluation route: a terminating direct series
    is summed as is, otherwise Kummer's transformation
    ``1F1(a;c;z) = e^z 1F1(c-a;c;-z)`` is applied when it terminates or when
    z < 0.  ``kummer=False`` forces direct summation, ``kummer=True`` forces
    the transformed form.
    """
    z = _as_float_or_array(z)
    if kummer is None:
        if _is_nonpos_int(a):
            kummer = False
        elif _is_nonpos_int(c - a):
            kummer = True
        else:
            return _by_sign(
                z,
                lambda v: hyp1f1(a, c, v, ctl, kummer=True),
                lambda v: hyp1f1(a, c, v, ctl, kummer=False),
            )
    if not kummer:
        return hyp_series([a], [c], z, ctl)
    inner = hyp_series([c - a], [c], -z, ctl)
    return inner.scaled(np.exp(z))


def hyp2f2_paris(a: float, b: float, c: float, j: int, z, ctl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Evaluate 2F2(a, c+j; b, c; z) through its finite exponential expansion

    ``e^z sum_{k<=j} C(j,k) z^k / (c)_k 2F2(b-a, c+j; b, c+k; -z)``.
    """
    if j < 0:
        raise InvalidParameters("j must be a nonnegative integer")
    zf = _as_float_or_array(z)
    parts = []
    status = Status.EXACT
    terms_used = 0
    err = 0.0
    for k in range(j + 1):
        inner = hyp_series([b - a, c + j], [b, c + k], -zf, ctl)
        w = binomial(j, k) * zf**k / rising_factorial(c, k)
        parts.append(w * inner.value)
        err = err + np.abs(w) * inner.est_error
        status = status.worst(inner.status)
        terms_used = max(terms_used, inner.terms_used)
    scale = np.exp(zf)
    return EvalResult(scale * compensated_sum(parts), scale * err, terms_used, status)


def hyp2f2(a1: float, a2: float, b1: float, b2: float, z, ctl: SeriesControl = DEFAULT_CONTROL, *, paris=None) -> EvalResult:
    """2F2(a1, a2; b1, b2; z).

    When one numerator exceeds a denominator by a nonnegative integer j the
    finite exponential expansion is used for z < 0 (``paris=None``), which
    removes the cancellation of the alternating direct series.
    """
    numer, denom = [a1, a2], [b1, b2]
    pairing = None
    for ai, other in ((a2, a1), (a1, a2)):
        for bi, bother in ((b2, b1), (b1, b2)):
            d = ai - bi
            if d >= 0 and float(d).is_integer():
                pairing = (other, bother, bi, int(d))
                break
        if pairing:
            break
    z = _as_float_or_array(z)
    if paris is None:
        if pairing is None or _termination_order(numer) is not None:
            paris = False
        else:
            return _by_sign(
                z,
                lambda v: hyp2f2(a1, a2, b1, b2, v, ctl, paris=True),
                lambda v: hyp2f2(a1, a2, b1, b2, v, ctl, paris=False),
            )
    if not paris:
        return hyp_series(numer, denom, z, ctl)
    if pairing is None:
        raise InvalidParameters("no numerator/denominator pair differing by a nonnegative integer")
    a, b, c, j = pairing
    return hyp2f2_paris(a, b, c, j, z, ctl)
