"""Command-line entry point ``parabose-wigner``.

Subcommands write CSV to stdout (or ``--out``) and, when writing files, a
JSON manifest next to the data.  Exit codes: 0 ok, 1 verification failure,
2 usage / invalid parameters, 3 convergence-guard refusal, 4 IO error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import subprocess
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import metadata
from typing import Optional, Sequence

import numpy as np

from . import fock, matelem, verify, wigner
from .errors import InvalidParameters, NotGuaranteedConvergence, ParaboseError
from .fock import ParaParam
from .matelem import MatElemQuery
from .series import DEFAULT_CONTROL, SeriesControl, Status
from .wigner import Formula, PhasePoint

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GUARD, EXIT_IO = 0, 1, 2, 3, 4

WIGNER_HEADER = ("r", "p", "q", "W", "terms_used", "est_error", "status")
FIGURE1_A = ("1/2", "3/2", "5/2", "7/2")
FIGURE2_N = (0, 1, 2, 3)
FIGURE_RMAX = 4.0


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _build_id() -> Optional[str]:
    here = os.path.dirname(os.path.abspath(__file__))
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=here, capture_output=True, text=True, timeout=5, check=False,
        )
    except (OSError, subprocess.SubprocessError):
        return None
    return out.stdout.strip() or None


def _manifest(command: str, flags: dict, tolerances: dict, checks=None) -> dict:
    doc = {
        "command": command,
        "flags": flags,
        "tolerances": tolerances,
        "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": _version(),
        "build": _build_id(),
    }
    if checks is not None:
        doc["checks"] = checks
    return doc


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _manifest_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".manifest.json"


def _flags(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k != "handler"}


def _control(args) -> SeriesControl:
    return SeriesControl(
        rel_tol=args.tol if args.tol is not None else DEFAULT_CONTROL.rel_tol,
        small_streak=DEFAULT_CONTROL.small_streak,
        max_terms=args.max_terms if args.max_terms is not None else DEFAULT_CONTROL.max_terms,
    )


def _tolerances(ctl: SeriesControl) -> dict:
    return {"rel_tol": ctl.rel_tol, "small_streak": ctl.small_streak, "max_terms": ctl.max_terms}


# --------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    mode: str = "radial"
    r_max: float = 4.0
    p_range: tuple = (-4.0, 4.0)
    q_range: tuple = (-4.0, 4.0)
    points: int = 81

    def __post_init__(self):
        if self.mode not in ("radial", "cartesian"):
            raise InvalidParameters(f"unknown grid mode {self.mode!r}")
        if self.points < 2:
            raise InvalidParameters("points must be >= 2")
        values = (self.r_max, *self.p_range, *self.q_range)
        if not all(math.isfinite(v) for v in values):
            raise InvalidParameters("grid ranges must be finite")
        if self.r_max < 0:
            raise InvalidParameters("rmax must be nonnegative")

    def phase_points(self) -> list[PhasePoint]:
        if self.mode == "radial":
            return [PhasePoint(float(r), 0.0) for r in np.linspace(0.0, self.r_max, self.points)]
        ps = np.linspace(*self.p_range, self.points)
        qs = np.linspace(*self.q_range, self.points)
        return [PhasePoint(float(p), float(q)) for p in ps for q in qs]


def _wigner_row(job):
    n, a, formula, ctl, allow, point = job
    res = wigner.wn_radial(n, a, point.r2, formula, ctl, allow)
    return (point.r, point.p, point.q, float(res.value), int(res.terms_used), float(res.est_error), str(res.status))


def wigner_rows(n: int, a: ParaParam, formula: Formula, ctl: SeriesControl, allow: bool,
                points: Sequence[PhasePoint], workers: int = 1) -> list[tuple]:
    """Evaluate each grid point independently; rows come back in grid order,
    so the output does not depend on ``workers``."""
    # fail fast (exit code 3) before spawning workers
    if not allow:
        wigner.wn_radial(n, a, 0.0, formula, ctl, allow)
    jobs = [(n, a, formula, ctl, allow, p) for p in points]
    if workers <= 1 or len(jobs) < 2:
        rows = [_wigner_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_wigner_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    if not allow:
        # a guaranteed-convergent series can still run out of terms
        stalled = [row[0] for row in rows if row[-1] == str(Status.NOT_GUARANTEED)]
        if stalled:
            raise NotGuaranteedConvergence(
                f"{len(stalled)} grid point(s) hit max_terms={ctl.max_terms} (first at r={stalled[0]:.6g})"
            )
    return rows


# --------------------------------------------------------------------------
# subcommands


def cmd_wigner(args) -> int:
    a = ParaParam.parse(args.a)
    ctl = _control(args)
    grid = GridSpec(args.mode, args.rmax, tuple(args.p_range), tuple(args.q_range), args.points)
    rows = wigner_rows(args.n, a, Formula(args.formula), ctl, args.allow_unguaranteed,
                       grid.phase_points(), args.workers)
    text = _csv_text(WIGNER_HEADER, rows)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    _write(args.out, text)
    doc = _manifest("wigner", _flags(args), _tolerances(ctl))
    _write(_manifest_path(args.out), json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def figure_series(which: int, points: int, ctl: SeriesControl = DEFAULT_CONTROL, workers: int = 1) -> dict[str, list[tuple]]:
    """Data behind the two radial figures, keyed by output file name."""
    grid = GridSpec("radial", FIGURE_RMAX, points=points).phase_points()
    series = {}
    if which == 1:
        for text in FIGURE1_A:
            a = ParaParam.parse(text)
            name = "figure1_n0_a%s.csv" % text.replace("/", "_")
            series[name] = wigner_rows(0, a, Formula.TRIPLE_SUM, ctl, False, grid, workers)
    elif which == 2:
        a = ParaParam.parse("3/2")
        for n in FIGURE2_N:
            name = "figure2_a3_2_n%d.csv" % n
            series[name] = wigner_rows(n, a, Formula.TRIPLE_SUM, ctl, False, grid, workers)
    else:
        raise InvalidParameters(f"unknown figure {which}")
    return series


def cmd_figures(args) -> int:
    which = (1, 2) if args.which == "all" else (int(args.which),)
    ctl = DEFAULT_CONTROL
    os.makedirs(args.out, exist_ok=True)
    files = []
    for w in which:
        for name, rows in figure_series(w, args.points, ctl, args.workers).items():
            _write(os.path.join(args.out, name), _csv_text(WIGNER_HEADER, rows))
            files.append(name)
    flags = _flags(args)
    flags["files"] = files
    doc = _manifest("figures", flags, _tolerances(ctl))
    _write(os.path.join(args.out, "manifest.json"), json.dumps(doc, indent=2) + "\n")
    for name in files:
        print(os.path.join(args.out, name))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = [r.as_dict() for r in verify.run_suite(args.suite)]
    ok = all(r["status"] == "pass" for r in results)
    doc = _manifest("verify", _flags(args), {}, checks=results)
    doc["passed"] = ok
    text = json.dumps(doc, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write(args.out, text)
    return EXIT_OK if ok else EXIT_VERIFY


MATELEM_HEADER = ("route", "n", "k", "l", "parity", "a", "lam", "mu", "real", "imag")
ROUTES = ("j", "s", "recurrence", "oracle", "closed")


def matelem_value(route: str, q: MatElemQuery) -> complex:
    if route == "j":
        return complex(matelem.diag_J(q))
    if route == "s":
        return complex(matelem.diag_S(q))
    if route == "recurrence":
        return complex(matelem.offdiag_recurrence(q))
    if route == "closed":
        return complex(matelem.offdiag_closed(q))
    if route == "oracle":
        if q.bra < 0:
            return 0j
        rep = fock.build_rep(q.a, max(q.bra, q.ket) + 2 * q.k + 1)
        return fock.matrix_power_element(rep, q.lam, q.mu, 2 * q.k, q.bra, q.ket)
    raise InvalidParameters(f"unknown route {route!r}")


def cmd_matelem(args) -> int:
    if args.t is not None:
        if args.lam is not None or args.mu is not None:
            raise InvalidParameters("give either --t or --lam/--mu, not both")
        if args.t < 0:
            raise InvalidParameters("t must be nonnegative")
        lam, mu = 0.0, math.sqrt(args.t)
    else:
        lam = args.lam if args.lam is not None else 0.0
        mu = args.mu if args.mu is not None else 1.0
    q = MatElemQuery(n=args.n, k=args.k, a=ParaParam.parse(args.a), lam=lam, mu=mu, l=args.l, parity=args.parity)
    routes = ROUTES if args.route == "all" else (args.route,)
    if args.l != 0:
        diagonal_only = [r for r in routes if r in ("j", "s")]
        if args.route != "all" and diagonal_only:
            raise InvalidParameters(f"route {args.route!r} needs --l 0")
        routes = [r for r in routes if r not in ("j", "s")]
    rows = []
    for route in routes:
        v = matelem_value(route, q)
        rows.append((route, q.n, q.k, q.l, q.parity, q.a.a, lam, mu, v.real, v.imag))
    sys.stdout.write(_csv_text(MATELEM_HEADER, rows))
    return EXIT_OK


def cmd_wavefn(args) -> int:
    a = ParaParam.parse(args.a)
    if args.q is not None:
        qs = [float(v) for v in args.q]
    else:
        if args.points < 2:
            raise InvalidParameters("points must be >= 2")
        qs = [float(v) for v in np.linspace(args.q_min, args.q_max, args.points)]
    rows = [(q, float(wigner.wavefn(args.n, a, q))) for q in qs]
    sys.stdout.write(_csv_text(("q", "psi"), rows))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_series_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="relative stop-rule tolerance (default 1e-12)")
    p.add_argument("--max-terms", type=int, default=None, help="series term cap (default 100000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parabose-wigner", description="Wigner functions of the parabose oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner", help="tabulate W_n on a radial or cartesian grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help="representation parameter, e.g. 1.5 or 3/2")
    p.add_argument("--formula", choices=[f.value for f in Formula], default=Formula.TRIPLE_SUM.value)
    p.add_argument("--mode", choices=("radial", "cartesian"), default="radial")
    p.add_argument("--rmax", type=float, default=4.0)
    p.add_argument("--points", type=int, default=81)
    p.add_argument("--p-range", type=float, nargs=2, default=(-4.0, 4.0), metavar=("PMIN", "PMAX"))
    p.add_argument("--q-range", type=float, nargs=2, default=(-4.0, 4.0), metavar=("QMIN", "QMAX"))
    p.add_argument("--allow-unguaranteed", action="store_true",
                   help="evaluate even where convergence is not established (rows are tagged NotGuaranteed)")
    _add_series_flags(p)
    p.add_argument("--out", default=None, help="CSV path; a manifest is written next to it")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_wigner)

    p = sub.add_parser("figures", help="write the CSV series behind the radial figures")
    p.add_argument("--which", choices=("1", "2", "all"), default="all")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--points", type=int, default=161)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_figures)

    p = sub.add_parser("verify", help="run the invariant suites and print a JSON report")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("matelem", help="matrix elements <2n+2l|X^(2k)|2n> by a chosen route")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--t", type=float, default=None, help="lambda^2 + mu^2 (sets lambda = 0)")
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--parity", choices=matelem.PARITIES, default="even")
    p.add_argument("--route", choices=ROUTES + ("all",), default="all")
    p.set_defaults(handler=cmd_matelem)

    p = sub.add_parser("wavefn", help="tabulate the position-space wave function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--q", type=float, nargs="+", default=None)
    p.add_argument("--q-min", type=float, default=-4.0)
    p.add_argument("--q-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=81)
    p.set_defaults(handler=cmd_wavefn)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except NotGuaranteedConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: raise --max-terms, or pass --allow-unguaranteed to emit rows tagged NotGuaranteed", file=sys.stderr)
        return EXIT_GUARD
    except ParaboseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
