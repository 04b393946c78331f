"""Wigner functions of the parabose oscillator, with independent numerical oracles."""

from .errors import (
    IndexOutOfRange,
    InvalidParameters,
    NotGuaranteedConvergence,
    OutOfSupportedRange,
    ParaboseError,
    QuadratureDidNotConverge,
    TruncationTooSmall,
)
from .fock import ParaParam, build_rep
from .matelem import MatElemQuery, diag_J, diag_S, offdiag_closed, offdiag_recurrence
from .series import DEFAULT_CONTROL, ConvergenceWarning, EvalResult, SeriesControl, Status
from .wigner import (
    Formula,
    PhasePoint,
    WignerQuery,
    canonical_wn,
    convergence_guard,
    w0,
    w0_polynomial,
    wavefn,
    wn,
    wn_radial,
)

__version__ = "0.1.0"
