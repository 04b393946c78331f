"""Truncated matrix realization of the parabose operators b+ and b-.

The matrices act on the first ``dim`` Fock states |0>, ..., |dim-1>.  They
serve as a brute-force oracle: a matrix element <row|X^power|col> is exact
whenever ``dim >= max(row, col) + power + 1``, because X changes the
occupation number by exactly one per application.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import IndexOutOfRange, InvalidParameters, TruncationTooSmall


@dataclass(frozen=True)
class ParaParam:
    """Representation parameter a > 0.

    ``half_integer_m`` is set when a equals 1/2 + m exactly, in which case every
    Wigner series terminates.
    """

    a: float
    half_integer_m: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        a = float(self.a)
        object.__setattr__(self, "a", a)
        if not (a > 0 and math.isfinite(a)):
            raise InvalidParameters(f"representation parameter must be positive and finite, got {a}")
        shift = a - 0.5
        m = int(shift) if shift >= 0 and shift.is_integer() else None
        if self.half_integer_m is not None and self.half_integer_m != m:
            raise InvalidParameters(f"a={a} is not 1/2 + {self.half_integer_m}")
        object.__setattr__(self, "half_integer_m", m)

    @classmethod
    def parse(cls, text: Union[str, float, Fraction]) -> "ParaParam":
        """Accept floats and rational strings such as ``"3/2"``."""
        if isinstance(text, str):
            try:
                value = Fraction(text.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidParameters(f"cannot parse representation parameter {text!r}") from exc
            return cls(float(value))
        return cls(float(text))

    @classmethod
    def half_integer(cls, m: int) -> "ParaParam":
        if m < 0:
            raise InvalidParameters("m must be a nonnegative integer")
        return cls(0.5 + m)

    @property
    def is_half_integer(self) -> bool:
        return self.half_integer_m is not None

    def shifted(self, by: int = 1) -> "ParaParam":
        return ParaParam(self.a + by)

    def __float__(self) -> float:
        return self.a


def _param(a) -> ParaParam:
    return a if isinstance(a, ParaParam) else ParaParam(a)


@dataclass(frozen=True)
class TruncatedRep:
    a: ParaParam
    dim: int
    b_plus: np.ndarray
    b_minus: np.ndarray

    def p_matrix(self) -> np.ndarray:
        return 1j / math.sqrt(2) * (self.b_plus - self.b_minus)

    def q_matrix(self) -> np.ndarray:
        return (self.b_plus + self.b_minus) / math.sqrt(2)


def build_rep(a, dim: int) -> TruncatedRep:
    """Matrices of b+ and b- on the first ``dim`` Fock states.

    <2n+1|b+|2n> = sqrt(2(n+a)) and <2n+2|b+|2n+1> = sqrt(2(n+1)); b- is the
    transpose.
    """
    a = _param(a)
    if dim < 1:
        raise InvalidParameters(f"dim must be >= 1, got {dim}")
    b_plus = np.zeros((dim, dim))
    for i in range(dim - 1):
        b_plus[i + 1, i] = math.sqrt(i + 2 * a.a) if i % 2 == 0 else math.sqrt(i + 1)
    b_plus.setflags(write=False)
    b_minus = b_plus.T.copy()
    b_minus.setflags(write=False)
    return TruncatedRep(a, dim, b_plus, b_minus)


def alphas(lam: float, mu: float) -> tuple[complex, complex]:
    """Coefficients of X = alpha+ b+ + alpha- b-."""
    s = math.sqrt(2)
    return complex(mu, lam) / s, complex(mu, -lam) / s


def x_matrix(rep: TruncatedRep, lam: float, mu: float) -> np.ndarray:
    ap, am = alphas(lam, mu)
    return ap * rep.b_plus + am * rep.b_minus


def _check_index(rep: TruncatedRep, n: int):
    if not 0 <= n <= rep.dim - 2:
        raise IndexOutOfRange(f"index {n} needs dim >= {n + 2}, have {rep.dim}")


def anticommutator_check(rep: TruncatedRep, n: int) -> float:
    """<n|{b-, b+}|n>, expected to equal 2(n + a)."""
    _check_index(rep, n)
    bm, bp = rep.b_minus, rep.b_plus
    return float((bm @ bp + bp @ bm)[n, n])


def commutator_pq_check(rep: TruncatedRep, n: int) -> complex:
    """<n|[p, q]|n>: -2ai on even states, -2(1-a)i on odd ones."""
    _check_index(rep, n)
    p, q = rep.p_matrix(), rep.q_matrix()
    return complex((p @ q - q @ p)[n, n])


def _apply_tridiagonal(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    # X has zero diagonal; the explicit banded product keeps results
    # independent of dim (no BLAS blocking or fused multiply-add).
    sub = np.diagonal(x, -1)
    sup = np.diagonal(x, 1)
    out = np.zeros_like(v)
    out[1:] += sub * v[:-1]
    out[:-1] += sup * v[1:]
    return out


def matrix_power_element(rep: TruncatedRep, lam: float, mu: float, power: int, row: int, col: int) -> complex:
    """Exact matrix element <row|X^power|col> in the truncated space."""
    if power < 0:
        raise InvalidParameters("power must be nonnegative")
    need = max(row, col) + power + 1
    if rep.dim < need:
        raise TruncationTooSmall(f"<{row}|X^{power}|{col}> needs dim >= {need}, have {rep.dim}")
    x = x_matrix(rep, lam, mu)
    v = np.zeros(rep.dim, dtype=complex)
    v[col] = 1.0
    for _ in range(power):
        v = _apply_tridiagonal(x, v)
    value = complex(v[row])
    return value


def real_part_checked(value: complex, rtol: float = 1e-12) -> float:
    """Return the real part after asserting the imaginary part is negligible."""
    if abs(value.imag) > rtol * max(1.0, abs(value)):
        raise ArithmeticError(f"expected a real value, got {value}")
    return value.real
