"""Independent quadrature checks on a truncated square [-H, H]^2.

All integrands here are radial (functions of lambda^2 + mu^2 or p^2 + q^2)
times Gaussian damping, so a tensor-product Gauss-Legendre rule converges
quickly.  Every result is recomputed with twice the nodes per axis and
rejected if the two disagree by more than ``QuadSpec.tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import InvalidParameters, QuadratureDidNotConverge
from .fock import ParaParam
from .matelem import exp_diag_A28
from .specfun import laguerre_gen
from .wigner import PhasePoint, wn_radial

SCHEMES = ("gauss-legendre", "adaptive")
MAX_STATE = 8
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class QuadSpec:
    scheme: str = "gauss-legendre"
    half_width: float = 12.0
    nodes_per_axis: int = 400
    tol: float = 1e-8
    boundary_ratio: float = 1e-14
    max_doublings: int = 4

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise InvalidParameters(f"scheme must be one of {SCHEMES}")
        if self.half_width <= 0 or self.nodes_per_axis < 2:
            raise InvalidParameters("half_width must be positive and nodes_per_axis >= 2")


DEFAULT_SPEC = QuadSpec()


def fit_half_width(profile: Callable[[np.ndarray], np.ndarray], spec: QuadSpec) -> QuadSpec:
    """Grow H (keeping the node density) until the radial profile at the
    boundary, t = H^2, is below ``boundary_ratio`` times its peak."""
    H, N = spec.half_width, spec.nodes_per_axis
    for _ in range(50):
        t = np.linspace(0.0, H * H, 2001)
        peak = np.max(np.abs(profile(t)))
        edge = abs(float(np.asarray(profile(np.array([H * H])))[0]))
        if edge <= spec.boundary_ratio * peak:
            return replace(spec, half_width=H, nodes_per_axis=N)
        H_new = H + 2.0
        N = int(math.ceil(N * H_new / H))
        H = H_new
    raise QuadratureDidNotConverge(f"integrand does not decay below the boundary ratio within H={H}")


@lru_cache(maxsize=16)
def _nodes(H: float, N: int):
    x, w = leggauss(N)
    x, w = H * x, H * w
    x.setflags(write=False)
    w.setflags(write=False)
    t = x[:, None] ** 2 + x[None, :] ** 2
    t.setflags(write=False)
    return x, w, t


def _fourier(grid: np.ndarray, x: np.ndarray, w: np.ndarray, p: float, q: float) -> float:
    u = w * np.exp(-1j * x * p)
    v = w * np.exp(-1j * x * q)
    value = (u @ grid @ v) / (4 * math.pi**2)
    if abs(value.imag) > IMAG_TOL:
        raise QuadratureDidNotConverge(f"imaginary part {value.imag:.3e} exceeds {IMAG_TOL}")
    return float(value.real)


def _plain(grid: np.ndarray, w: np.ndarray) -> float:
    return float(w @ grid @ w)


def _refine(evaluate: Callable[[int], float], spec: QuadSpec) -> float:
    """Run ``evaluate(N)`` at N and 2N (repeatedly for the adaptive scheme)."""
    N = spec.nodes_per_axis
    coarse = evaluate(N)
    rounds = 1 if spec.scheme == "gauss-legendre" else spec.max_doublings
    for _ in range(rounds):
        N *= 2
        fine = evaluate(N)
        if abs(fine - coarse) <= spec.tol:
            return fine
        coarse = fine
    raise QuadratureDidNotConverge(
        f"doubling the nodes changed the result by {abs(fine - coarse):.3e} > {spec.tol}"
    )


def integral_appA_check(k: int, p: float, q: float, spec: QuadSpec = DEFAULT_SPEC) -> tuple[float, float, float]:
    """Gaussian-moment Fourier integral against its Laguerre closed form.

    lhs = (1/4 pi^2) iint e^{-t/4} e^{-i(lambda p + mu q)} t^k, t = lambda^2 + mu^2
    rhs = (1/pi) e^{-p^2-q^2} k! 4^k L_k(p^2 + q^2)
    """
    if not 0 <= k <= 8:
        raise InvalidParameters("k must lie in 0..8")

    def profile(t):
        return np.exp(-t / 4) * t**k

    spec = fit_half_width(profile, spec)

    def evaluate(N):
        x, w, t = _nodes(spec.half_width, N)
        return _fourier(profile(t), x, w, p, q)

    lhs = _refine(evaluate, spec)
    r2 = p * p + q * q
    rhs = math.exp(-r2) / math.pi * math.factorial(k) * 4**k * float(laguerre_gen(k, 0.0, r2))
    return lhs, rhs, abs(lhs - rhs)


def _require_half_integer(n: int, a) -> ParaParam:
    a = a if isinstance(a, ParaParam) else ParaParam(a)
    if not a.is_half_integer:
        raise InvalidParameters("quadrature checks need a = 1/2 + m")
    if not 0 <= n <= MAX_STATE:
        raise InvalidParameters(f"state index must lie in 0..{MAX_STATE}")
    return a


def _char_profile(n: int, a: ParaParam):
    nu, odd = divmod(n, 2)
    parity = "odd" if odd else "even"

    def profile(t):
        return exp_diag_A28(nu, parity, a, t).value

    return profile


@lru_cache(maxsize=64)
def _char_grid(n: int, a: float, H: float, N: int) -> np.ndarray:
    _, _, t = _nodes(H, N)
    grid = np.asarray(_char_profile(n, ParaParam(a))(t), dtype=float)
    grid.setflags(write=False)
    return grid


def wigner_quadrature(n: int, a, point: PhasePoint, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """W_n(p, q) straight from its defining Fourier integral of <n|exp(iX)|n>."""
    a = _require_half_integer(n, a)
    spec = fit_half_width(_char_profile(n, a), spec)

    def evaluate(N):
        x, w, _ = _nodes(spec.half_width, N)
        return _fourier(_char_grid(n, a.a, spec.half_width, N), x, w, point.p, point.q)

    return _refine(evaluate, spec)


@lru_cache(maxsize=64)
def _wigner_grid(n: int, a: float, H: float, N: int) -> np.ndarray:
    _, _, t = _nodes(H, N)
    grid = np.asarray(wn_radial(n, a, t).value, dtype=float)
    grid.setflags(write=False)
    return grid


def _phase_space_moment(n: int, a: ParaParam, weight, spec: QuadSpec) -> float:
    spec = fit_half_width(lambda t: wn_radial(n, a, t).value, spec)

    def evaluate(N):
        _, w, t = _nodes(spec.half_width, N)
        return _plain(weight(t) * _wigner_grid(n, a.a, spec.half_width, N), w)

    return _refine(evaluate, spec)


def normalization(n: int, a, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """iint W_n dp dq; equals <n|n> = 1."""
    a = _require_half_integer(n, a)
    return _phase_space_moment(n, a, lambda t: 1.0, spec)


def energy_moment(n: int, a, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """iint (p^2 + q^2)/2 W_n dp dq; equals the energy n + a."""
    a = _require_half_integer(n, a)
    return _phase_space_moment(n, a, lambda t: t / 2, spec)
