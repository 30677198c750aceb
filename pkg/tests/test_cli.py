"""Command-line front end: output pins, exit codes, config files, artifact
files, and the plot-script emitter."""

import json
import math

import numpy as np
import pytest

from tauberlab import cli, growth, semigroup, witness
from tauberlab.errors import ConfigurationError


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rate_prints_pinned_values(capsys):
    code, out, _ = run(capsys, "rate", "--m", "poly:beta=2", "--t", "1000")
    assert code == 0
    assert "m_log_inverse(t=1000) = 10.64652740675956" in out
    assert "m_inverse(t=1000) = 30.622776601463556" in out


def test_rate_two_function_variant(capsys):
    code, out, _ = run(capsys, "rate", "--m", "poly:beta=2", "--k", "poly:beta=2",
                       "--t", "1000")
    assert code == 0
    assert "m_k_inverse(t=1000) = 10.64652740675956" in out  # m_k(m,m) == m_log


def test_unknown_growth_spec_exits_2(capsys):
    code, _, err = run(capsys, "rate", "--m", "bogus:xyz", "--t", "10")
    assert code == 2
    assert "bogus" in err


def test_missing_required_flag_exits_2(capsys):
    code, _, err = run(capsys, "rate", "--m", "poly:beta=2")
    assert code == 2
    assert "--t" in err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["rate", "--m", "poly:beta=2", "--t", "10", "--frobnicate"])
    assert exc.value.code == 2


def test_invert_below_range_exits_1(capsys):
    code, _, _ = run(capsys, "invert", "--m", "poly:beta=2", "--t", "0.5")
    assert code == 1


def test_config_file_supplies_and_yields_to_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample config\nm = poly:beta=2\nt = 1000\n")
    code, out, _ = run(capsys, "rate", "--config", str(cfg))
    assert code == 0
    assert "m_log_inverse(t=1000) = 10.64652740675956" in out
    # explicit flag beats the config value
    code, out, _ = run(capsys, "rate", "--config", str(cfg), "--t", "7")
    assert code == 0
    assert "m_log_inverse(t=7)" in out


def test_config_unknown_key_exits_2(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m = poly:beta=2\nt = 10\nfrobnicate = 3\n")
    code, _, err = run(capsys, "rate", "--config", str(cfg))
    assert code == 2
    assert "frobnicate" in err


def test_witness_json_matches_library(capsys, tmp_path):
    code, _, _ = run(capsys, "witness", "--m", "poly:beta=2", "--t", "1000",
                     "--out", str(tmp_path))
    assert code == 0
    blob = json.loads((tmp_path / "witness_certificate.json").read_text())
    cert = witness.optimize_R(growth.poly(2.0), 1000.0, math.pi / 6.0)
    expect = cert.to_json_dict()
    assert blob == json.loads(json.dumps(expect))


def test_witness_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "witness", "--m", "poly:beta=2", "--t", "1000", "--out", str(a))
    run(capsys, "witness", "--m", "poly:beta=2", "--t", "1000", "--out", str(b))
    assert (a / "witness_certificate.json").read_bytes() == \
        (b / "witness_certificate.json").read_bytes()


def test_sweep_writes_csv_and_summary(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--m", "poly:beta=2", "--t-min", "100",
                       "--t-max", "10000", "--t-count", "5", "--out", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "sharpness.csv").read_text().strip().splitlines()
    assert lines[0] == "t,R_star,N,implied_floor,rate_comparison,admissible"
    assert len(lines) == 6
    summary = json.loads((tmp_path / "sharpness.json").read_text())
    assert summary["n_points"] == 5
    assert summary["all_feasible"] is True
    assert summary["band_ratio"] < 10.0
    # every float in the CSV re-parses to exactly the certificate values
    cert0 = witness.optimize_R(growth.poly(2.0), 100.0, math.pi / 6.0)
    first = lines[1].split(",")
    assert float(first[1]) == cert0.R_star
    assert float(first[2]) == cert0.N


def test_semigroup_mult_artifacts(capsys, tmp_path):
    code, out, _ = run(capsys, "semigroup", "--m", "poly:beta=2", "--kind", "mult",
                       "--t-count", "6", "--t-max", "10000", "--out", str(tmp_path))
    assert code == 0
    csv_text = (tmp_path / "semigroup_mult.csv").read_text()
    lines = csv_text.strip().splitlines()
    assert lines[0] == "t,measured_or_lower,curve_mlog,curve_minv,admissible"
    assert len(lines) == 7
    plt_text = (tmp_path / "semigroup_mult.plt").read_text()
    assert "logscale" in plt_text and "semigroup_mult.csv" in plt_text
    assert json.loads((tmp_path / "semigroup_mult.json").read_text())["kind"] == "multiplication"
    # CSV columns re-parse bit-exactly against a fresh library computation
    spec = semigroup.mult_semigroup(growth.poly(2.0), semigroup.geometric_frequencies())
    report = semigroup.compare_rates(
        semigroup.mult_decay_report(spec, np.geomspace(1e2, 1e4, 6)),
        growth.poly(2.0),
        growth.RateParams(c=1.5, C_choice=1.0),
    )
    parsed = np.genfromtxt(tmp_path / "semigroup_mult.csv", delimiter=",", skip_header=1)
    assert np.array_equal(parsed[:, 0], report.t_grid)
    assert np.array_equal(parsed[:, 1], report.values)
    assert np.array_equal(parsed[:, 2], report.curve_mlog)
    assert np.array_equal(parsed[:, 3], report.curve_minv)


def test_emit_plot_script_rejects_empty_report(tmp_path):
    empty = semigroup.DecayReport(
        kind="multiplication",
        m_spec="poly:beta=2",
        t_grid=np.array([]),
        values=np.array([]),
        admissible=np.array([], dtype=bool),
    )
    target = tmp_path / "empty"
    with pytest.raises(ConfigurationError):
        cli.emit_plot_script(empty, target)
    assert not target.with_suffix(".csv").exists()
    assert not target.with_suffix(".plt").exists()


def test_specialfn_subcommand(capsys, tmp_path):
    code, out, _ = run(capsys, "specialfn", "--out", str(tmp_path))
    assert code == 0
    assert "verification: pass" in out
    assert (tmp_path / "kernel.tsv").exists()
    assert (tmp_path / "kernel.json").exists()
    report = json.loads((tmp_path / "specialfn_report.json").read_text())
    assert report["ok"] is True
    assert report["checks"]["strip_weighted_sup"] <= math.e


def test_truncate_subcommand(capsys, tmp_path):
    code, out, _ = run(capsys, "truncate", "--m", "poly:beta=2", "--out", str(tmp_path))
    assert code == 0
    assert "verification: pass" in out
    report = json.loads((tmp_path / "truncate_report.json").read_text())
    assert report["ok"] is True
    assert report["min_margin_plain"] >= -1e-8
    assert report["agreement_residual"] < 1e-5
