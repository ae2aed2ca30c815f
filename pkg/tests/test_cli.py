import math

import numpy as np
import pytest

from dimerlab.cli import main
from dimerlab.sweep import COLUMNS, records_from_csv
from dimerlab.weighting import dump_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pressure_constant_d1(capsys):
    code, out, _ = run(capsys, "pressure", "--d", "1", "--L", "4", "--family", "constant", "--header")
    assert code == 0
    (rec,) = records_from_csv(out)
    assert rec.Z == 0.5
    assert rec.p == pytest.approx(-0.173287, abs=1e-6) and rec.p == pytest.approx(rec.p0, abs=1e-12)


def test_pressure_constant_d2(capsys):
    code, out, _ = run(capsys, "pressure", "--d", "2", "--L", "4", "--family", "constant")
    assert code == 0 and len(out.splitlines()) == 1
    fields = dict(zip(COLUMNS, out.strip().split(",")))
    assert float(fields["Z"]) == pytest.approx(0.00240326, rel=1e-6)
    assert float(fields["p"]) == pytest.approx(-0.376930, abs=5e-6)


def test_pressure_capacity(capsys):
    code, _, err = run(capsys, "pressure", "--d", "2", "--L", "8", "--family", "constant")
    assert code == 3 and "30" in err


def test_pressure_repeatable(capsys):
    args = ("pressure", "--d", "2", "--L", "4", "--family", "random", "--seed", "5")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "pressure", "--d", "2", "--L", "3")[0] == 2
    assert run(capsys)[0] == 2


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--seed", "7", "--count", "50")
    assert code == 0
    assert out.count("PASS oracle") == 50 and "50/50" in out


def test_verify_lemma2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma2", "--seed", "1", "--count", "100")
    assert code == 0 and "FAIL" not in out


def test_verify_paradigm(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paradigm", "--epsilon", "1")
    assert code == 0 and "d=2 L=6" in out


def test_verify_paradigm_out_of_reach(capsys):
    # eps = 0.1 needs lbar far beyond the Ryser cap: reported, not crashed
    code, out, _ = run(capsys, "verify", "--suite", "paradigm", "--epsilon", "0.1")
    assert code == 1 and "cap" in out


def test_verify_all_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--count", "4", "--quiet")
    assert code == 0


def test_sweep_file(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--d", "1", "--L", "8", "--betas", "0.4,0.2,0", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(COLUMNS)
    recs = records_from_csv(text)
    assert [r.beta for r in recs] == [0.4, 0.2, 0.0]
    for r in recs:
        assert abs(abs(r.p - r.p0) - r.abs_diff) <= 1e-12
        assert r.within_bound()
        assert math.exp(-r.N) * (1 - 1e-9) <= r.Z <= 1 + 1e-9
        assert -0.5 - 1e-9 <= r.p <= 1e-9
    assert recs[-1].sm == 0 and recs[-1].abs_diff <= 1e-12


def test_sweep_unwritable(tmp_path, capsys):
    bad = tmp_path / "missing" / "s.csv"
    assert run(capsys, "sweep", "--d", "1", "--L", "4", "--betas", "0.1", "--out", str(bad))[0] == 4


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--epsilon", "1", "--d", "2")
    assert code == 0
    kv = dict(line.split("=") for line in out.splitlines())
    assert float(kv["delta1"]) == pytest.approx(0.367879, abs=1e-6)
    assert (kv["lbar"], kv["nbar"], kv["L_min"]) == ("6", "18", "206")
    assert float(kv["delta3"]) == pytest.approx(0.01295, abs=5e-6)


def test_constants_e(capsys):
    _, out, _ = run(capsys, "constants", "--epsilon", repr(math.e), "--d", "2")
    assert "delta1=1.0\n" in out


def test_constants_small_eps(capsys):
    assert run(capsys, "constants", "--epsilon", "0.1", "--d", "1")[0] == 0


def test_permanent_matrix_in(tmp_path, capsys):
    path = tmp_path / "m.txt"
    dump_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]), path)
    code, out, _ = run(capsys, "permanent", "--matrix-in", str(path))
    assert code == 0 and "permanent=10.0" in out
    assert run(capsys, "permanent", "--matrix-in", str(tmp_path / "none.txt"))[0] == 4
