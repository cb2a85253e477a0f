import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest
from mpmath import mp, mpf

from xiconst.cli import main
from xiconst.constants import ConstantsRecord


def run(*argv, environ=None):
    out = io.StringIO()
    code = main(list(argv), stdout=out, environ=environ or {})
    return code, out.getvalue()


def test_compute_series_records():
    code, out = run("compute", "--n-max", "5", "--methods", "series")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    recs = [ConstantsRecord.from_json(line) for line in lines]
    assert [r.n for r in recs] == [1, 2, 3, 4, 5]
    with mp.workprec(128):
        assert abs(recs[0].c - mp.euler) < mpf(2) ** -120
        for r in recs:
            assert abs(r.lemma1_residual()) < mpf(2) ** -100
            assert abs(r.lemma2_residual()) < mpf(2) ** -100


def test_compute_round_trip_is_exact():
    _, out = run("compute", "--n-max", "3")
    for line in out.splitlines():
        rec = ConstantsRecord.from_json(line)
        assert json.loads(rec.to_json()) == json.loads(line)


def test_compute_agreement_digits():
    code, out = run("compute", "--n-max", "4", "--methods", "series,contour")
    assert code == 0
    bits = 128
    for line in out.splitlines():
        rec = json.loads(line)
        assert rec["agree_digits"] >= bits / 4 * 0.30103


def test_compute_csv(tmp_path):
    code, _ = run("compute", "--n-max", "3", "--format", "csv", "--out-dir", str(tmp_path))
    assert code == 0
    raw = (tmp_path / "constants.csv").read_bytes()
    assert b"\r\n" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode("utf-8"))))
    assert [r["n"] for r in rows] == ["1", "2", "3"]


def test_compute_cap_error_is_numeric():
    code, out = run("compute", "--n-max", "33", "--methods", "stieltjes")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ("compute", "--n-max", "0"),
    ("compute", "--methods", "magic"),
    ("compute", "--radius", "1.5"),
    ("verify", "--suite", "nope"),
    ("frobnicate",),
    ("compute", "--format", "xml"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_verify_bounds_suite():
    code, out = run("verify", "--suite", "bounds", "--n-max", "200")
    assert code == 0
    report = json.loads(out)
    assert report["name"] == "s1_bounds" and report["pass"] is True


def test_verify_several_suites_csv():
    code, out = run("verify", "--suite", "funceq,asymptotics,appendixB", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["name"] for r in rows] == ["funceq_F", "d_asymptotics", "appendixB"]
    assert all(r["pass"] == "True" for r in rows)


def test_verify_inconclusive_is_numeric():
    code, _ = run("verify", "--suite", "eta", "--bits", "24")
    assert code == 3


def test_figures(tmp_path):
    code, out = run("figures", "--n-max", "20", "--out-dir", str(tmp_path))
    assert code == 0
    read = lambda name: list(csv.reader(open(tmp_path / name, encoding="utf-8")))
    fig1, fig2, fig3, fig4 = (read(f"fig{i}.csv") for i in range(1, 5))
    assert fig1[0] == ["n", "abs_c_n", "bound_6_over_pi2_sqrt_n"]
    assert fig2[0] == ["n", "c_n"]
    assert fig3[0] == ["n", "delta_n"]
    assert fig4[0] == ["k", "dft_magnitude"]
    assert len(fig1) - 1 == 20 and len(fig2) - 1 == 20
    assert len(fig3) - 1 == 20 - 2
    assert len(fig4) - 1 == 20
    row4 = fig1[4]
    assert row4[0] == "4"
    assert row4[2].startswith("0.3039635")
    with mp.workprec(128):
        c = [mpf(r[1]) for r in fig2[1:]]
        assert abs(mpf(fig3[1][1]) - (c[1] ** 2 - c[0] * c[2])) < mpf(2) ** -100
        assert abs(mpf(fig4[1][1]) - abs(mpmath.fsum(c))) < mpf(2) ** -100


def test_zeros_command(tmp_path):
    code, out = run("zeros", "--n-max", "1")
    assert code == 0
    report = json.loads(out)
    assert report["K"] == 200
    assert float(report["comparisons"][0]["abs_diff"]) < 1e-2

    good = tmp_path / "z100.txt"
    from xiconst.contour import bundled_zeros
    good.write_text("\n".join(str(t) for t in bundled_zeros(100).ordinates) + "\n")
    code, out = run("zeros", "--zeros-file", str(good))
    assert code == 0 and json.loads(out)["K"] == 100


def test_zeros_command_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("14.1347\n25.01\n21.02\n")
    code, _ = run("zeros", "--zeros-file", str(bad))
    assert code == 2
    assert "line 3" in capsys.readouterr().err


def test_stieltjes_csv():
    code, out = run("stieltjes", "--k-max", "2", "--bits", "96")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,gamma_k,bits"
    assert lines[2].startswith("1,-0.0728158454836767")
    assert lines[2].endswith(",96")


def test_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nbits = 80\nk-max = 1\n")
    _, out = run("stieltjes", "--config", str(cfg))
    assert out.splitlines()[1].endswith(",80")
    _, out = run("stieltjes", "--config", str(cfg), environ={"XICONST_BITS": "90"})
    assert out.splitlines()[1].endswith(",90")
    _, out = run("stieltjes", "--config", str(cfg), "--bits", "100",
                 environ={"XICONST_BITS": "90"})
    assert out.splitlines()[1].endswith(",100")


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour=blue\n")
    assert run("stieltjes", "--config", str(cfg))[0] == 2
    assert run("stieltjes", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_deterministic_output():
    assert run("compute", "--n-max", "4")[1] == run("compute", "--n-max", "4")[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "xiconst", "stieltjes", "--k-max", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("k,gamma_k,bits")
