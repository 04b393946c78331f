"""Series bookkeeping: truncation policy, result records and summation helpers."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameters

ArrayLike = Union[float, np.ndarray]


class Status(str, enum.Enum):
    EXACT = "Exact"
    CONVERGED = "Converged"
    NOT_GUARANTEED = "NotGuaranteed"

    def __str__(self) -> str:
        return self.value

    def worst(self, other: "Status") -> "Status":
        order = [Status.EXACT, Status.CONVERGED, Status.NOT_GUARANTEED]
        return max(self, other, key=order.index)


class ConvergenceWarning(UserWarning):
    """Emitted whenever a result with status NotGuaranteed is produced."""


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for infinite series.

    A series is declared converged once ``small_streak`` consecutive terms
    satisfy ``|term| < rel_tol * |partial sum|``; evaluation gives up after
    ``max_terms`` terms.
    """

    rel_tol: float = 1e-12
    small_streak: int = 20
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise InvalidParameters(f"rel_tol must be positive, got {self.rel_tol}")
        if self.small_streak < 1:
            raise InvalidParameters(f"small_streak must be >= 1, got {self.small_streak}")
        if self.max_terms < self.small_streak:
            raise InvalidParameters("max_terms must be >= small_streak")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class EvalResult:
    value: ArrayLike
    est_error: ArrayLike
    terms_used: int
    status: Status
    warning: Optional[str] = None

    def __post_init__(self):
        if self.status is Status.NOT_GUARANTEED and self.warning is None:
            object.__setattr__(self, "warning", "convergence not guaranteed")

    def scaled(self, factor: ArrayLike) -> "EvalResult":
        return EvalResult(
            self.value * factor,
            np.abs(factor) * self.est_error,
            self.terms_used,
            self.status,
            self.warning,
        )


def warn_not_guaranteed(message: str) -> None:
    warnings.warn(message, ConvergenceWarning, stacklevel=3)


def compensated_sum(terms) -> ArrayLike:
    """Sum along the first axis with error compensation.

    Scalars go through :func:`math.fsum`; arrays use Neumaier's variant of
    Kahan summation column by column.
    """
    arr = np.asarray(terms)
    if arr.ndim <= 1:
        return math.fsum(float(x) for x in np.ravel(arr))
    total = np.zeros(arr.shape[1:], dtype=arr.dtype)
    comp = np.zeros_like(total)
    for row in arr:
        t = total + row
        big = np.abs(total) >= np.abs(row)
        comp += np.where(big, (total - t) + row, (row - t) + total)
        total = t
    return total + comp


class StreakMonitor:
    """Streaming accumulator implementing the small-term stop rule."""

    def __init__(self, ctl: SeriesControl):
        self.ctl = ctl
        self.count = 0
        self._sum = 0.0
        self._comp = 0.0
        self._streak: list[float] = []

    @property
    def total(self) -> float:
        return self._sum + self._comp

    def add(self, term: float) -> bool:
        """Add a term; return True once the stop rule is satisfied."""
        self.count += 1
        t = self._sum + term
        if abs(self._sum) >= abs(term):
            self._comp += (self._sum - t) + term
        else:
            self._comp += (term - t) + self._sum
        self._sum = t
        if term == 0.0 or abs(term) < self.ctl.rel_tol * abs(self.total):
            self._streak.append(abs(term))
        else:
            self._streak.clear()
        return len(self._streak) >= self.ctl.small_streak

    @property
    def exhausted(self) -> bool:
        return self.count >= self.ctl.max_terms

    def streak_error(self) -> float:
        return math.fsum(self._streak)
