from pathlib import Path

import pytest

from pseudo_dce import cli
from pseudo_dce.verify import VerifyReport

FAST_CFG = "tau_max = 10\noracle = off\n"
FAILING_CFG = "tau_max = 10\noracle = off\ndyson_source = integrated\n"


def write_cfg(tmp_path, text, name="case.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestRunCommand:

    def test_config_run_succeeds(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        code = cli.main(["run", "--config", cfg, "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "r_final=" in out
        assert (tmp_path / "case.csv").exists()

    def test_preset_run_succeeds(self, tmp_path, capsys):
        code = cli.main(["run", "--preset", "fig1", "--out", str(tmp_path)])
        assert code == 0
        assert "fig1:" in capsys.readouterr().out
        assert (tmp_path / "fig1.csv").exists()
        assert (tmp_path / "fig1.gp").exists()

    def test_out_dir_from_environment(self, tmp_path, monkeypatch, capsys):
        target = tmp_path / "env_out"
        monkeypatch.setenv("PSEUDO_DCE_OUT", str(target))
        cfg = write_cfg(tmp_path, FAST_CFG)
        assert cli.main(["run", "--config", cfg]) == 0
        capsys.readouterr()
        assert (target / "case.csv").exists()

    def test_invalid_config_exits_one(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "eps_mod = 1.5\n")
        code = cli.main(["run", "--config", cfg, "--out", str(tmp_path)])
        assert code == 1
        assert "pseudo-dce:" in capsys.readouterr().err

    def test_missing_config_file_exits_two(self, tmp_path, capsys):
        code = cli.main(["run", "--config", str(tmp_path / "absent.cfg"),
                         "--out", str(tmp_path)])
        assert code == 2

    def test_simulation_failure_exits_two(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAILING_CFG)
        code = cli.main(["run", "--config", cfg, "--out", str(tmp_path)])
        assert code == 2
        assert "ChiSingular" in capsys.readouterr().err

    def test_config_and_preset_conflict(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "--config", cfg, "--preset", "fig1"])
        assert exc.value.code == 1

    def test_run_requires_a_source(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run"])
        assert exc.value.code == 1

    def test_unknown_preset_exits_one(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "--preset", "fig7"])
        assert exc.value.code == 1


class TestVerifyCommand:

    def test_passing_report_exits_zero(self, monkeypatch, capsys):
        fake = VerifyReport(level="fast", all_passed=True,
                            total_seconds=0.0, checks=[])
        monkeypatch.setattr(cli, "run_verify", lambda level: fake)
        assert cli.main(["verify"]) == 0
        assert '"all_passed": true' in capsys.readouterr().out

    def test_failing_report_exits_three(self, monkeypatch, capsys):
        fake = VerifyReport(level="fast", all_passed=False,
                            total_seconds=0.0, checks=[])
        monkeypatch.setattr(cli, "run_verify", lambda level: fake)
        assert cli.main(["verify", "--level", "full"]) == 3

    def test_bad_level_rejected(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--level", "paranoid"])
        assert exc.value.code == 1


class TestSweepCommand:

    def test_summary_on_stdout(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        code = cli.main(["sweep", "--config", cfg, "--axis", "beta0_tilde",
                         "--values", "1e-3,1e-4", "--out", str(tmp_path)])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "beta0_tilde,amplification,N_final"
        assert len(lines) == 3

    def test_failing_cell_exits_two(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAILING_CFG)
        code = cli.main(["sweep", "--config", cfg, "--axis", "beta0_tilde",
                         "--values", "1e-3", "--out", str(tmp_path)])
        assert code == 2
        captured = capsys.readouterr()
        assert "failed,failed" in captured.out
        assert "ChiSingular" in captured.err

    def test_bad_values_exit_one(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        code = cli.main(["sweep", "--config", cfg, "--axis", "beta0_tilde",
                         "--values", "1e-3,abc"])
        assert code == 1

    def test_empty_values_exit_one(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        code = cli.main(["sweep", "--config", cfg, "--axis", "beta0_tilde",
                         "--values", " , "])
        assert code == 1

    def test_unknown_axis_exits_one(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, FAST_CFG)
        code = cli.main(["sweep", "--config", cfg, "--axis", "gamma",
                         "--values", "0.1"])
        assert code == 1


def test_no_command_exits_one():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1
