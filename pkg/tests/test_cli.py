import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from helpers import EXAMPLE_FILE, golden, identity_bands, random_instance
from nonadiag import CyclicNonadiagonal, parse, serialize
from nonadiag.band_matrix import BAND_NAMES, band_range
from nonadiag.cli import RunConfig, run


def write(tmp_path, name, m):
    path = tmp_path / name
    path.write_text(serialize(m) if isinstance(m, CyclicNonadiagonal) else m)
    return str(path)


def circulant_singular(n=12):
    bands = {name: [1 if name in "dab" else 0 for _ in band_range(name, n)] for name in BAND_NAMES}
    return CyclicNonadiagonal.from_bands(n, bands)


def structurally_stuck():
    m = random_instance(random.Random(3), 12, nonzero=True)
    for name, i, value in [("d", 1, 0), ("a", 1, 1), ("b", 2, 1), ("d", 2, 1),
                           ("a", 2, 1), ("B", 3, 1), ("b", 3, 1), ("d", 3, 1)]:
        m = m.replace(name, i, value)
    return m


def test_inv_example(tmp_path, capsys):
    out = tmp_path / "inv.json"
    assert run(["inv", str(EXAMPLE_FILE), "--output", str(out)]) == 0
    cells = json.loads(out.read_text())
    assert [[Fraction(x) for x in row] for row in cells] == golden()["K_inverse"]
    err = capsys.readouterr().err
    assert "n=12" in err and "mode=exact" in err and "det=4715" in err
    assert "substitutions=0" in err and "elapsed=" in err and "verified=yes" in err


def test_inv_to_stdout_and_csv(capsys):
    assert run(["inv", str(EXAMPLE_FILE), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 12
    assert lines[0].split(",")[0] == "231/4715"


def test_anti_inv(capsys):
    assert run(["anti-inv", str(EXAMPLE_FILE)]) == 0
    cells = json.loads(capsys.readouterr().out)
    assert [[Fraction(x) for x in row] for row in cells] == golden()["Y_inverse"]


def test_det_identity(tmp_path, capsys):
    path = write(tmp_path, "identity12.json", identity_bands(12))
    assert run(["det", path]) == 0
    assert capsys.readouterr().out == "1\n"


def test_det_example_all_modes(capsys):
    assert run(["det", str(EXAMPLE_FILE)]) == 0
    assert capsys.readouterr().out == "4715\n"
    assert run(["det", str(EXAMPLE_FILE), "--mode", "oracle"]) == 0
    assert capsys.readouterr().out == "4715\n"
    assert run(["det", str(EXAMPLE_FILE), "--mode", "float"]) == 0
    out = capsys.readouterr().out.strip()
    assert float(out) == pytest.approx(4715, rel=1e-12)
    assert len(out.replace("-", "").replace(".", "").lstrip("0")) == 17


def test_singular_exit_1(tmp_path, capsys):
    path = write(tmp_path, "singular.json", circulant_singular())
    assert run(["inv", path]) == 1
    assert "singular matrix" in capsys.readouterr().err
    assert run(["inv", path, "--mode", "oracle"]) == 1
    assert run(["det", path]) == 1
    assert capsys.readouterr().out == "0\n"


def test_structurally_singular_exit_1_and_oracle_fallback(tmp_path, capsys):
    path = write(tmp_path, "stuck.json", structurally_stuck())
    assert run(["inv", path]) == 1
    assert "--mode oracle" in capsys.readouterr().err
    assert run(["inv", path, "--mode", "oracle"]) == 0


@pytest.mark.parametrize(
    "content",
    ["{", '{"n": 12, "bands": {"d": [1]}}', '{"n": 3, "bands": {}}'],
)
def test_bad_input_exit_2(tmp_path, content, capsys):
    path = write(tmp_path, "bad.json", content)
    assert run(["inv", path]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_exit_2(tmp_path):
    assert run(["det", str(tmp_path / "nope.json")]) == 2


def test_small_order_needs_oracle(tmp_path, capsys):
    m = random_instance(random.Random(10), 10, nonzero=True)
    path = write(tmp_path, "n10.json", m)
    assert run(["inv", path]) == 2
    assert "oracle" in capsys.readouterr().err
    assert run(["inv", path, "--mode", "oracle"]) in (0, 1)


def test_anti_inv_float_rejected(capsys):
    assert run(["anti-inv", str(EXAMPLE_FILE), "--mode", "float"]) == 2
    with pytest.raises(ValueError):
        RunConfig("anti-inv", "x", mode="float")


def test_float_forces_no_verify(capsys):
    assert RunConfig("inv", "x", mode="float", verify=True).verify is False
    assert run(["inv", str(EXAMPLE_FILE), "--mode", "float", "--verify"]) == 0
    captured = capsys.readouterr()
    assert "verified=no" in captured.err
    cells = json.loads(captured.out)
    assert float(cells[0][0]) == pytest.approx(231 / 4715, rel=1e-12)


def test_float_zero_pivot_exit_2(tmp_path, capsys):
    m = parse(EXAMPLE_FILE.read_text()).replace("d", 1, 0)
    path = write(tmp_path, "zp.json", m)
    assert run(["inv", path, "--mode", "float"]) == 2
    assert run(["inv", path]) == 0


def test_no_verify_flag(capsys):
    assert run(["inv", str(EXAMPLE_FILE), "--no-verify"]) == 0
    assert "verified=no" in capsys.readouterr().err


def test_verification_failure_exit_3(monkeypatch, capsys):
    import nonadiag.inversion as inversion
    from nonadiag.band_matrix import DenseMatrix

    real = inversion.back_columns

    def broken(lu, six):
        good = real(lu, six)
        rows = [list(r) for r in good.rows]
        rows[0][0] = rows[0][0] + 1
        return DenseMatrix(rows)

    monkeypatch.setattr(inversion, "back_columns", broken)
    assert run(["inv", str(EXAMPLE_FILE)]) == 3


@pytest.mark.parametrize("seed", range(6))
def test_exact_and_oracle_outputs_are_identical(tmp_path, seed):
    rng = random.Random(seed)
    m = random_instance(rng, rng.randint(12, 18))
    path = write(tmp_path, "m.json", m)
    for fmt in ("json", "csv"):
        a, b = tmp_path / f"exact.{fmt}", tmp_path / f"oracle.{fmt}"
        code_a = run(["inv", path, "--format", fmt, "--output", str(a)])
        code_b = run(["inv", path, "--format", fmt, "--output", str(b), "--mode", "oracle"])
        if code_a == 1:
            continue
        assert code_a == code_b == 0
        assert a.read_bytes() == b.read_bytes()


def test_gen_random_round_trip(tmp_path):
    out = tmp_path / "r.json"
    assert run(["gen-random", "--n", "14", "--seed", "5", "--output", str(out)]) == 0
    m = parse(out.read_text())
    assert m.n == 14
    assert run(["inv", str(out)]) in (0, 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nonadiag", "det", str(EXAMPLE_FILE)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "4715\n"
    assert "det=4715" in proc.stderr
