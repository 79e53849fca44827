import json
import math

import numpy as np
import pytest

from wzterm.cli import EXIT_BAD_INPUT, EXIT_OK, main, run


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == EXIT_OK, out
    return json.loads(out)


def test_group_info(capsys):
    d = run_json(capsys, ["group-info", "--group", "G2"])
    assert d["command"] == "group-info"
    assert d["values"]["dual_coxeter"] == 4
    assert d["values"]["beta_norm_sq"] == {"num": 1, "den": 4}
    assert d["values"]["energy_quantum"] == pytest.approx(64.0 * math.pi)


def test_wz_torus_hom(capsys):
    d = run_json(capsys, ["wz-torus-hom", "--group", "A2", "--m", "1,0", "--n", "0,1"])
    assert d["values"]["gamma_pi_multiple"] == 1
    assert d["values"]["gamma_canonical"] == pytest.approx(math.pi)


def test_wz_symmetric_and_degree(capsys):
    d = run_json(capsys, ["wz-symmetric", "--n", "3"])
    assert d["values"]["gamma_pi_multiple"] == 1
    d = run_json(capsys, ["wz-degree", "--deg", "4"])
    assert d["values"]["gamma_pi_multiple"] == 0


def test_wz_sphere(capsys):
    quantum = 32.0 * math.pi  # A1
    d = run_json(capsys, ["wz-sphere", "--group", "A1", "--energy", str(quantum)])
    assert d["values"]["gamma_pi_multiple"] == 1
    assert d["values"]["integrality_residual"] < 1e-12
    d = run_json(
        capsys,
        ["wz-sphere", "--group", "A1", "--energy", str(quantum), "--theta", "0.0"],
    )
    assert d["values"]["gamma_canonical"] == 0.0


def test_clifford(capsys):
    d = run_json(capsys, ["clifford"])
    assert d["values"]["E"] == pytest.approx(16.0 * math.pi**2)
    assert d["values"]["gamma_canonical"] == pytest.approx(math.pi)
    assert d["diagnostics"]["orientation_sign"] == 1
    assert d["diagnostics"]["energy_mod_residual"] < 1e-7


def test_spectral_alpha_and_dump(capsys, tmp_path):
    csv = tmp_path / "lift.csv"
    d = run_json(
        capsys,
        ["spectral", "--alpha", "0.3,0.2", "--dump-samples", str(csv)],
    )
    r = math.sqrt(1.0 + 0.3**2 + 0.2**2 + 2.0 * 0.3)
    s = math.sqrt(1.0 + 0.3**2 + 0.2**2 - 2.0 * 0.3)
    assert d["values"]["E"] == pytest.approx(32.0 * math.pi**2 * 1.13 / (r * s))
    expect_gamma = 4.0 * math.pi * 0.2 / (r * s)
    assert d["values"]["gamma_canonical"] == pytest.approx(expect_gamma, abs=1e-9)
    assert d["diagnostics"]["orientation_sign"] == -1
    assert csv.read_text().startswith("theta,")


def test_spectral_input_file(capsys, tmp_path):
    f = tmp_path / "curve.json"
    f.write_text(json.dumps({"kind": "clifford"}))
    d = run_json(capsys, ["spectral", "--input", str(f)])
    assert d["values"]["E"] == pytest.approx(16.0 * math.pi**2)


def test_moduli_holonomy(capsys, tmp_path):
    t = np.linspace(0.0, 1.0, 2001)
    path = {
        "t": t.tolist(),
        "a1": np.outer(t, [1, 0]).tolist(),
        "a2": np.outer(t, [0, 1]).tolist(),
    }
    f = tmp_path / "path.json"
    f.write_text(json.dumps(path))
    d = run_json(capsys, ["moduli-holonomy", "--group", "A2", "--input", str(f)])
    assert d["values"]["holonomy"]["re"] == pytest.approx(-1.0, abs=1e-6)
    assert d["values"]["holonomy"]["im"] == pytest.approx(0.0, abs=1e-6)


def test_flat_check_and_energy(capsys):
    d = run_json(capsys, ["flat-check", "--clifford-grid", "64"])
    assert d["values"]["curvature_residual"] < 0.05
    d = run_json(capsys, ["energy-numeric", "--clifford-grid", "64"])
    assert d["values"]["E_over_16pi2"] == pytest.approx(1.0, abs=1e-4)


def test_volume(capsys):
    d = run_json(capsys, ["volume", "--surface", "equator", "--samples", "100000", "--seed", "9"])
    assert abs(d["values"]["fraction"] - 0.5) < 5 * d["values"]["stderr"]
    assert d["values"]["gamma_canonical"] == pytest.approx(
        2.0 * math.pi * d["values"]["fraction"]
    )


def test_text_format(capsys):
    code = main(["wz-degree", "--deg", "1", "--format", "text"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("command: wz-degree")
    assert "gamma_pi_multiple = 1" in out


def test_global_flags_after_subcommand(capsys):
    code = main(["clifford", "--format", "text", "--quad-tol", "1e-9"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "command: clifford" in out


def test_bad_inputs(capsys):
    assert main(["group-info", "--group", "Z9"]) == EXIT_BAD_INPUT
    assert main(["wz-torus-hom", "--group", "A2", "--m", "1", "--n", "0,1"]) == EXIT_BAD_INPUT
    assert main(["spectral"]) == EXIT_BAD_INPUT
    assert main(["spectral", "--alpha", "1.0,0.0000000001"]) == EXIT_BAD_INPUT
    assert main(["moduli-holonomy", "--group", "A1", "--input", "/nonexistent.json"]) == EXIT_BAD_INPUT
    capsys.readouterr()


def test_run_returns_envelope():
    env = run(["wz-degree", "--deg", "2"])
    assert env.command == "wz-degree"
    assert env.values["gamma_pi_multiple"] == 0
