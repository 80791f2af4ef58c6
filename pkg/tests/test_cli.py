import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from chanquant.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    SweepSpec,
    main,
    parse_channel_spec,
    sweep_rows,
)
from chanquant.errors import InvalidParameter, ParseError, SchemaError, ValidationError

AD_03 = '{"kind":"named","name":"amplitude_damping","params":{"gamma":0.3}}'
IDENTITY = '{"kind":"affine","lambda":[[1,0,0],[0,1,0],[0,0,1]],"t":[0,0,0]}'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_named():
    ch = parse_channel_spec(AD_03)
    np.testing.assert_allclose(ch.lam, np.diag([np.sqrt(0.7), np.sqrt(0.7), 0.7]), atol=1e-15)
    np.testing.assert_allclose(ch.t, [0, 0, 0.3])


def test_parse_affine_identity():
    ch = parse_channel_spec(IDENTITY)
    np.testing.assert_array_equal(ch.lam, np.eye(3))
    np.testing.assert_array_equal(ch.t, 0)


def test_parse_kraus_matches_named():
    g = 0.3
    spec = {"kind": "kraus", "ops": [[[1, 0], [0, np.sqrt(1 - g)]], [[0, np.sqrt(g)], [0, 0]]]}
    ch = parse_channel_spec(json.dumps(spec))
    ref = parse_channel_spec(AD_03)
    np.testing.assert_allclose(ch.lam, ref.lam, atol=1e-12)
    np.testing.assert_allclose(ch.t, ref.t, atol=1e-12)


def test_parse_kraus_complex_entries():
    # sigma_2 = [[0, -i], [i, 0]]
    ch = parse_channel_spec('{"kind":"kraus","ops":[[[0,[0,-1]],[[0,1],0]]]}')
    np.testing.assert_allclose(ch.lam, np.diag([-1, 1, -1]), atol=1e-15)


def test_parse_rejects_expansion():
    with pytest.raises(ValidationError):
        parse_channel_spec('{"kind":"affine","lambda":[[2,0,0],[0,1,0],[0,0,1]],"t":[0,0,0]}')


@pytest.mark.parametrize(
    "text, exc",
    [
        ("{not json", ParseError),
        ("[1, 2]", SchemaError),
        ('{"kind":"superop"}', SchemaError),
        ('{"kind":"named","name":"teleport"}', SchemaError),
        ('{"kind":"affine","lambda":[[1,0,0],[0,1,0],[0,0,1]],"extra":1}', SchemaError),
        ('{"kind":"affine","lambda":[[1,0],[0,1]]}', SchemaError),
        ('{"kind":"kraus","ops":[[[0.5,0],[0,0.5]]]}', ValidationError),
        ('{"kind":"named","name":"amplitude_damping","params":{"gamma":2}}', ValidationError),
        # transpose map: contractive but not completely positive
        ('{"kind":"affine","lambda":[[1,0,0],[0,1,0],[0,0,-1]]}', ValidationError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_channel_spec(text)


def test_analyze_identity():
    code, out, _ = run("analyze", "--channel", IDENTITY)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["q"] == pytest.approx(1, abs=1e-12)
    assert rep["d_g"] == pytest.approx(1, abs=1e-12)
    assert rep["flags"]["unitary"] is True
    assert set(rep) >= {"q", "m_eigenvalues", "optimal_n", "d_g", "gap", "flags"}
    assert set(rep["flags"]) == {"unital", "semiclassical", "eb", "unitary"}


def test_analyze_amplitude_damping_half():
    code, out, _ = run("analyze", "--channel", '{"kind":"named","name":"amplitude_damping","params":{"gamma":0.5}}')
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["q"] == pytest.approx(0.5, abs=1e-12)
    assert rep["d_g"] == pytest.approx(0.5, abs=1e-12)


def test_analyze_dephasing():
    code, out, _ = run("analyze", "--channel", '{"kind":"named","name":"dephasing"}')
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["q"] == pytest.approx(0, abs=1e-15)
    assert rep["flags"]["semiclassical"] is True


def test_analyze_with_oracles():
    code, out, _ = run("analyze", "--channel", AD_03, "--resolution", "32", "--samples", "20000", "--seed", "3")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert -1e-10 <= rep["grid"]["q_grid"] - rep["q"] <= 5e-3
    mc = rep["monte_carlo"]
    assert abs(mc["estimate"] - rep["q"]) <= 4 * mc["std_error"]


def test_analyze_reads_file(tmp_path):
    path = tmp_path / "ch.json"
    path.write_text(AD_03)
    code, out, _ = run("analyze", "--channel", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["q"] == pytest.approx(0.7, abs=1e-12)


@pytest.mark.parametrize(
    "spec",
    ["{oops", '{"kind":"affine","lambda":[[2,0,0],[0,1,0],[0,0,1]]}', '{"kind":"mystery"}'],
)
def test_analyze_input_errors(spec):
    code, out, err = run("analyze", "--channel", spec)
    assert code == EXIT_INPUT
    assert out == "" and "chanquant analyze" in err


def test_analyze_low_resolution_is_input_error():
    code, _, _ = run("analyze", "--channel", IDENTITY, "--resolution", "8")
    assert code == EXIT_INPUT


def _sweep_csv(*argv):
    code, out, _ = run("sweep", *argv)
    assert code == EXIT_OK
    return list(csv.reader(io.StringIO(out)))


def test_sweep_amplitude_damping_header_and_rows():
    rows = _sweep_csv("--sweep", "amplitude_damping", "--start", "0", "--stop", "1", "--step", "0.001")
    assert rows[0] == ["gamma", "quantumness", "geometric_discord", "optimal_n_class"]
    assert len(rows) == 1002
    assert {r[3] for r in rows[1:]} == {"xy", "z"}


def test_sweep_gamma_one_sixth_continuity():
    (row,) = sweep_rows(SweepSpec("amplitude_damping", 1 / 6, 1 / 6, 1.0))
    assert row[1] == pytest.approx(5 / 6, abs=1e-12)
    g = 1 / 6
    assert (6 * g * g - 3 * g + 2) / 2 == pytest.approx(1 - g, abs=1e-12)


def test_sweep_werner_threshold_row():
    (row,) = sweep_rows(SweepSpec("werner", 1 / 3, 1 / 3, 1.0))
    assert row[2] == pytest.approx(2 / 3, abs=1e-15)
    assert row[3] is False


def test_sweep_werner_endpoint():
    rows = _sweep_csv("--sweep", "werner", "--start", "0", "--stop", "1", "--step", "0.5")
    assert rows[0] == ["w", "quantumness", "avg_fidelity", "beats_classical"]
    assert rows[-1] == ["1", "1", "1", "true"]
    assert rows[1][3] == "false"


def test_sweep_rows_match_closed_forms():
    for w, q, f, beats in sweep_rows(SweepSpec("werner", 0.0, 1.0, 1e-3)):
        assert q == pytest.approx(w * w, abs=1e-12)
        assert f == pytest.approx((1 + w) / 2, abs=1e-12)
        assert beats == (f > 2 / 3)


def test_sweep_byte_stable():
    argv = ("sweep", "--sweep", "amplitude_damping", "--step", "0.01")
    assert run(*argv)[1] == run(*argv)[1]
    argv = ("sweep", "--sweep", "werner", "--step", "0.01")
    assert run(*argv)[1] == run(*argv)[1]


@pytest.mark.parametrize(
    "family, start, stop, step",
    [("werner", 1, 0, 0.1), ("werner", 0, 1, 0), ("werner", 0, 1, -1), ("werner", 0, 1, 1e-7), ("bloch", 0, 1, 0.1)],
)
def test_sweep_spec_invalid(family, start, stop, step):
    with pytest.raises(InvalidParameter):
        SweepSpec(family, start, stop, step)


def test_sweep_invalid_exit_code():
    code, _, err = run("sweep", "--sweep", "werner", "--step", "0")
    assert code == EXIT_INPUT and "InvalidParameter" in err


def test_usage_errors():
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("analyze")[0] == EXIT_USAGE
    assert run("verify", "--n-channels", "0")[0] == EXIT_USAGE
    assert run("sweep", "--sweep", "bloch")[0] == EXIT_USAGE


def test_verify_small_run_passes():
    code, out, _ = run("verify", "--seed", "3", "--n-channels", "40", "--samples", "20000")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS") for line in lines)


def test_verify_corrupt_channel_exit_2():
    code, out, _ = run("verify", "--n-channels", "10", "--samples", "5000", "--inject-corrupt")
    assert code == EXIT_VIOLATION
    dumps = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    assert dumps
    obs = next(d for d in dumps if d["suite"] == "observation")
    # the dumped spec reproduces the violation
    ch = obs["counterexample"]["channel"]
    assert ch["kind"] == "affine"
    assert np.allclose(ch["lambda"], 1.5 * np.eye(3))


def test_verify_deterministic():
    argv = ("verify", "--seed", "11", "--n-channels", "20", "--samples", "5000")
    assert run(*argv)[1] == run(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chanquant", "analyze", "--channel", '{"kind":"named","name":"dephasing"}'],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q"] == pytest.approx(0, abs=1e-15)
