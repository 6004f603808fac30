import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numentropy import verification
from numentropy.analysis import VerdictKind
from numentropy.cli import main
from numentropy.dynamics import Scenario, integrate_decay
from numentropy.errors import ConfigurationError, FileError, ParseError
from numentropy.runner import CSV_HEADER, read_csv, render_csv, run_scenario
from numentropy.scenario import parse_scenario, render_scenario

DECAY5_TEXT = "name=decay5\nmodel=lindblad-decay\nlevels=5\ndim=6\ngamma=1\nt_final=3\ndt=0.001"


def test_parse_decay_example():
    s = parse_scenario(DECAY5_TEXT)
    assert s.initial_level == 5
    assert (s.copies, s.sample_every, s.gamma, s.dim) == (1, 1, 1.0, 6)


def test_parse_comments_and_whitespace():
    s = parse_scenario("# header\n name = x # trailing\nmodel=rate-decay\nlevels=2\n\ngamma=0.5\nt_final=1\ndt=0.01\n")
    assert s.name == "x" and s.dim == 3


@pytest.mark.parametrize(
    "text, message",
    [
        ("model=warp-drive", "unknown model"),
        (DECAY5_TEXT + "\nflux=3", "unknown key 'flux'"),
        (DECAY5_TEXT.replace("gamma=1\n", ""), "gamma"),
        (DECAY5_TEXT.replace("levels=5", "levels=five"), "not a valid integer"),
        (DECAY5_TEXT + "\ndt=0.01", "duplicate"),
        ("name=q\nmodel=unitary-quench\nlevels=0\ndim=10\nt_final=1\ndt=0.01", "omega_initial"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_scenario(text)


def test_unknown_key_names_line():
    with pytest.raises(ParseError, match="line 8"):
        parse_scenario(DECAY5_TEXT + "\nflux=3")


def test_configuration_error():
    with pytest.raises(ConfigurationError, match="dim"):
        parse_scenario(DECAY5_TEXT.replace("dim=6", "dim=4"))


scenarios = st.builds(
    lambda levels, extra, gamma, dt_frac, t_final, copies, every, name: Scenario(
        name=name, model="rate-decay", levels=levels, dim=levels + 1 + extra, gamma=gamma,
        t_final=t_final, dt=t_final * dt_frac, copies=copies, sample_every=every,
    ),
    st.integers(0, 10), st.integers(0, 5), st.floats(0, 1), st.floats(1e-3, 0.09), st.floats(0.01, 1),
    st.integers(1, 9), st.integers(1, 9), st.from_regex(r"[a-z][a-z0-9_-]{0,10}", fullmatch=True),
)


@settings(max_examples=200, deadline=None)
@given(scenarios)
def test_render_parse_roundtrip(s):
    assert parse_scenario(render_scenario(s)) == s


def test_csv_roundtrip_and_determinism(tmp_path, decay5):
    scen = decay5.replace(t_final=0.5)
    a = run_scenario(scen, tmp_path / "a.csv")
    b = run_scenario(scen, tmp_path / "b.csv")
    raw = a.csv_path.read_bytes()
    assert raw == b.csv_path.read_bytes()
    assert b"\r" not in raw and not raw.rstrip(b"\n").endswith(b",")
    header, rows = read_csv(a.csv_path)
    assert header == "t,n_expect,entropy,purity,jensen_bound,vn_entropy,trace_error"
    tr = integrate_decay(scen)
    assert rows.shape == (len(tr), 7)
    mem = tr.columns()
    for x, y in zip(rows.ravel(), mem.ravel()):
        assert f"{x:.15g}" == f"{y + 0.0:.15g}"


def test_thinning_only_affects_csv(tmp_path, decay5):
    scen = decay5.replace(t_final=0.5, sample_every=7)
    report = run_scenario(scen, tmp_path / "thin.csv")
    _, rows = read_csv(report.csv_path)
    assert rows[0, 0] == 0 and rows[-1, 0] == pytest.approx(0.5)
    assert len(rows) == len(range(0, 501, 7)) + 1
    full = run_scenario(scen.replace(sample_every=1))
    assert report.verdict == full.verdict and report.trend == full.trend


def test_run_report_decay5(tmp_path):
    report = run_scenario(parse_scenario(DECAY5_TEXT + "\ncopies=3"), tmp_path / "d.csv")
    assert report.verdict.kind is VerdictKind.DECREASED
    assert report.s_initial == pytest.approx(1.7047481, abs=5e-8)
    assert report.n_initial == 5
    assert report.total.s_initial == pytest.approx(3 * report.s_initial)
    assert report.total.kind is report.verdict.kind
    assert "Decreased" in report.format()
    frozen = run_scenario(parse_scenario(DECAY5_TEXT.replace("gamma=1", "gamma=0")))
    assert frozen.verdict.kind is VerdictKind.FLAT


def test_run_report_quench():
    s = parse_scenario("name=q\nmodel=unitary-quench\nlevels=0\ndim=40\nomega_initial=1\nomega_final=2\nt_final=2\ndt=0.05")
    assert run_scenario(s).n_final == pytest.approx(0.125, abs=1e-6)


def test_unwritable_csv(tmp_path, decay5):
    with pytest.raises(FileError, match="missing"):
        run_scenario(decay5.replace(t_final=0.01), tmp_path / "missing" / "x.csv")


def test_cli_run(tmp_path, capsys):
    f = tmp_path / "decay5.scn"
    f.write_text(DECAY5_TEXT)
    assert main(["run", str(f), "--out", str(tmp_path / "o.csv")]) == 0
    assert "Decreased" in capsys.readouterr().out
    assert (tmp_path / "o.csv").read_text().startswith(CSV_HEADER + "\n")

    g = tmp_path / "frozen.scn"
    g.write_text(DECAY5_TEXT.replace("gamma=1", "gamma=0").replace("t_final=3", "t_final=0.1"))
    assert main(["run", str(f), str(g), "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    assert out.index("decay5") < out.index("Flat")
    assert (tmp_path / "frozen.csv").exists()


def test_cli_exit_statuses(tmp_path, capsys):
    bad = tmp_path / "bad.scn"
    bad.write_text("model=warp-drive\n")
    assert main(["run", str(bad)]) == 2
    assert "unknown model" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "nope.scn")]) == 3
    good = tmp_path / "ok.scn"
    good.write_text(DECAY5_TEXT)
    assert main(["run", str(good), "--out", str(tmp_path / "no" / "dir.csv")]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["run", str(good), "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


def test_cli_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "numentropy", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "0.1.0" in out.stdout


def test_verify_io_failure(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(verification.AcceptanceSuite, "criteria", lambda self: [self.criterion_9])
    assert main(["verify", "--out-dir", str(tmp_path / "absent")]) == 3
    assert main(["verify", "--out-dir", str(tmp_path)]) == 0
