import csv
import io
import json
import math
import os

import numpy as np
import pytest

from parabose_wigner import cli, wigner
from parabose_wigner.wigner import PhasePoint


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_wigner_canonical_gaussian(capsys):
    code, out, _ = run(capsys, "wigner", "--n", "0", "--a", "0.5", "--rmax", "4", "--points", "5")
    assert code == 0
    assert out.splitlines()[0] == "r,p,q,W,terms_used,est_error,status"
    table = rows(out)
    assert [float(r["r"]) for r in table] == [0, 1, 2, 3, 4]
    for r in table:
        assert float(r["W"]) == pytest.approx(math.exp(-float(r["r"]) ** 2) / math.pi, rel=1e-15)
        assert r["status"] == "Exact"


def test_wigner_rational_a(capsys):
    code, out, _ = run(capsys, "wigner", "--n", "0", "--a", "3/2", "--rmax", "2", "--points", "3")
    assert code == 0
    assert float(rows(out)[0]["W"]) == pytest.approx(-1 / math.pi, rel=1e-15)


def test_wigner_routes_agree(capsys):
    args = ("wigner", "--n", "1", "--a", "1.5", "--rmax", "4", "--points", "17")
    _, triple, _ = run(capsys, *args, "--formula", "a29")
    _, general, _ = run(capsys, *args, "--formula", "a31")
    for x, y in zip(rows(triple), rows(general)):
        assert abs(float(x["W"]) - float(y["W"])) <= 1e-9


def test_wigner_values_use_17_digits(capsys):
    _, out, _ = run(capsys, "wigner", "--n", "2", "--a", "2.5", "--rmax", "3", "--points", "4")
    for r in rows(out):
        assert float(r["W"]) == wigner.wn_radial(2, 2.5, float(r["r"]) ** 2).value


def test_wigner_cartesian(capsys):
    code, out, _ = run(capsys, "wigner", "--n", "2", "--a", "1/2", "--mode", "cartesian",
                       "--p-range", "-1", "1", "--q-range", "0", "2", "--points", "3")
    assert code == 0
    table = rows(out)
    assert len(table) == 9
    for r in table:
        pt = PhasePoint(float(r["p"]), float(r["q"]))
        assert float(r["W"]) == pytest.approx(wigner.canonical_wn(2, pt), abs=1e-14)


def test_guard_refusal_exit_code(capsys):
    code, out, err = run(capsys, "wigner", "--n", "0", "--a", "0.8", "--points", "3")
    assert code == 3 and out == ""
    assert "allow-unguaranteed" in err


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_stalled_series_also_refused(capsys):
    code, _, err = run(capsys, "wigner", "--n", "0", "--a", "3.3", "--points", "2", "--rmax", "0.5", "--max-terms", "50")
    assert code == 3
    assert "max_terms" in err


def test_opt_in_rows_are_tagged(capsys, tmp_path):
    out_csv = tmp_path / "w.csv"
    with pytest.warns(UserWarning):
        code, _, _ = run(capsys, "wigner", "--n", "0", "--a", "0.8", "--points", "2", "--rmax", "1",
                         "--allow-unguaranteed", "--max-terms", "200", "--out", str(out_csv))
    assert code == 0
    assert {r["status"] for r in rows(out_csv.read_text())} == {"NotGuaranteed"}
    manifest = json.loads((tmp_path / "w.manifest.json").read_text())
    assert manifest["flags"]["allow_unguaranteed"] is True
    assert manifest["tolerances"]["max_terms"] == 200
    assert {"command", "flags", "tolerances", "created_at"} <= set(manifest)


@pytest.mark.parametrize("argv", [
    ("wigner", "--n", "0"),
    ("wigner", "--n", "0", "--a", "x/y"),
    ("wigner", "--n", "0", "--a", "1.5", "--points", "1"),
    ("wigner", "--n", "0", "--a", "1.5", "--formula", "nope"),
    ("wigner", "--n", "2", "--a", "1.5", "--formula", "w0m"),
    ("wigner", "--n", "0", "--a", "1.5", "--tol", "-1"),
    ("matelem", "--n", "0", "--k", "1", "--a", "1.5", "--t", "1", "--lam", "1"),
    ("matelem", "--n", "0", "--k", "1", "--a", "1.5", "--l", "1", "--route", "j"),
    ("bogus",),
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "figures", "--which", "1", "--out", str(blocker / "sub"), "--points", "5")
    assert code == 4


def test_worker_count_does_not_change_bytes(tmp_path, capsys):
    base = ("wigner", "--n", "3", "--a", "2.5", "--points", "23")
    _, serial, _ = run(capsys, *base)
    _, parallel, _ = run(capsys, *base, "--workers", "3")
    _, again, _ = run(capsys, *base)
    assert serial == parallel == again


def test_figures(tmp_path, capsys):
    code, _, _ = run(capsys, "figures", "--out", str(tmp_path), "--points", "81")
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert len(manifest["flags"]["files"]) == 8
    for name in manifest["flags"]["files"]:
        assert (tmp_path / name).exists()

    def series(name):
        table = rows((tmp_path / name).read_text())
        return np.array([float(r["r"]) for r in table]), np.array([float(r["W"]) for r in table])

    r, w = series("figure1_n0_a1_2.csv")
    assert r[0] == 0 and r[-1] == 4 and np.argmax(w) == 0
    np.testing.assert_allclose(w, np.exp(-r**2) / math.pi, rtol=1e-14)
    r, w = series("figure1_n0_a3_2.csv")
    np.testing.assert_allclose(w, wigner.canonical_wn(1, r**2), rtol=1e-12, atol=1e-17)
    origin = [series(f"figure2_a3_2_n{n}.csv")[1][0] for n in range(4)]
    # even states share one origin value, odd states another, smaller in magnitude
    assert origin[0] == pytest.approx(origin[2]) and origin[1] == pytest.approx(origin[3])
    assert abs(origin[1]) < abs(origin[0])


def test_verify_matelem(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "matelem")
    assert code == 0
    report = json.loads(out)
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["diag_J_equals_diag_S"]["max_err"] <= 1e-10
    assert all(c["status"] == "pass" for c in checks.values())


def test_verify_oracle_names(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle")
    assert code == 0
    names = {c["name"] for c in json.loads(out)["checks"]}
    assert {f"appendixA_integral_k{k}" for k in range(4)} <= names


@pytest.mark.slow
def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_failure_exit_code(capsys, monkeypatch):
    from parabose_wigner import verify

    bad = verify.CheckResult("broken", "specfun", False, 1.0, 0.0)
    monkeypatch.setattr(verify, "run_suite", lambda suite: [bad])
    code, out, _ = run(capsys, "verify", "--suite", "specfun")
    assert code == 1
    assert json.loads(out)["checks"][0]["status"] == "fail"


def test_matelem_routes(capsys):
    code, out, _ = run(capsys, "matelem", "--n", "0", "--k", "2", "--a", "1.3", "--t", "1", "--route", "s")
    assert code == 0
    assert float(rows(out)[0]["real"]) == pytest.approx(2.99, rel=1e-15)
    _, out, _ = run(capsys, "matelem", "--n", "0", "--k", "2", "--a", "1.3", "--t", "1", "--route", "recurrence")
    assert float(rows(out)[0]["real"]) == pytest.approx(2.99, rel=1e-10)
    _, out, _ = run(capsys, "matelem", "--n", "2", "--k", "3", "--a", "0.7", "--lam", "0.4", "--mu", "0.9", "--l", "-1")
    table = rows(out)
    assert [r["route"] for r in table] == ["recurrence", "oracle", "closed"]
    values = [complex(float(r["real"]), float(r["imag"])) for r in table]
    assert max(abs(v - values[1]) for v in values) <= 1e-10 * abs(values[1])


def test_wavefn(capsys):
    code, out, _ = run(capsys, "wavefn", "--n", "0", "--a", "0.5", "--q", "0")
    assert code == 0
    assert float(rows(out)[0]["psi"]) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    code, out, _ = run(capsys, "wavefn", "--n", "3", "--a", "1.5", "--q-min", "-2", "--q-max", "2", "--points", "5")
    assert code == 0 and len(rows(out)) == 5


def test_entry_point_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "wigner" in out
