import math
from pathlib import Path

import numpy as np
import pytest

from pseudo_dce.errors import ParseError, ValidationError
from pseudo_dce.scenario import (CANONICAL_COLUMNS, PRESETS, RunRecord,
                                 ScenarioConfig, SweepFailure, load_config,
                                 parse_config, run, run_preset, sweep)


def fast_config(**overrides):
    base = dict(tau_max=10.0, oracle=False)
    base.update(overrides)
    return ScenarioConfig(**base)


class TestParseConfig:

    def test_empty_document_gives_defaults(self):
        assert parse_config("") == ScenarioConfig()

    def test_comments_and_sections_tolerated(self):
        text = "# comment\n[drive]\nbeta0_tilde = 1e-4\n\n"
        cfg = parse_config(text)
        assert cfg.beta0_tilde == 1e-4
        assert cfg.omega0 == 1.0

    def test_unknown_key_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_config("omega0 = 1.0\nomega_zero = 2.0\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_config("omega0 = 1.0\nomega0 = 2.0\n")

    def test_missing_equals_rejected(self):
        with pytest.raises(ParseError, match="key = value"):
            parse_config("omega0 1.0\n")

    def test_bad_number_rejected(self):
        with pytest.raises(ValidationError, match="expected a number"):
            parse_config("omega0 = fast\n")

    def test_bad_bool_rejected(self):
        with pytest.raises(ValidationError, match="boolean"):
            parse_config("oracle = maybe\n")

    def test_outputs_list(self):
        cfg = parse_config("outputs = tau, r_numeric\n")
        assert cfg.outputs == ("tau", "r_numeric")

    def test_load_config_roundtrip(self, tmp_path):
        path = tmp_path / "case.cfg"
        path.write_text("eps_mod = 0.02\n")
        assert load_config(path).eps_mod == 0.02


class TestValidation:

    @pytest.mark.parametrize("kwargs", [
        dict(eps_mod=1.5),
        dict(kappa=-1.0),
        dict(tau_max=0.0),
        dict(grid_per_period=50),
        dict(z_abs=1.5),
        dict(chi=1.0),
        dict(zeta_mode="sloppy"),
        dict(dyson_source="exact"),
        dict(outputs=("tau", "momentum")),
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(ValidationError):
            ScenarioConfig(**kwargs).validate()

    def test_defaults_valid(self):
        ScenarioConfig().validate()


class TestRun:

    def test_columns_follow_outputs_selection(self):
        cfg = fast_config(outputs=("tau", "r_numeric", "N_numeric"))
        rec = run(cfg, out_dir=None)
        assert list(rec.columns) == ["tau", "r_numeric", "N_numeric"]

    def test_csv_and_plot_written(self, tmp_path):
        rec = run(fast_config(), out_dir=tmp_path, name="case")
        assert Path(rec.csv_path).name == "case.csv"
        header = Path(rec.csv_path).read_text().splitlines()[0]
        assert header == ",".join(CANONICAL_COLUMNS)
        assert Path(rec.plot_path).exists()
        assert "case.csv" in Path(rec.plot_path).read_text()

    def test_csv_roundtrips_exactly(self, tmp_path):
        # 17 significant digits reproduce the doubles bit for bit.
        rec = run(fast_config(outputs=("tau", "r_numeric")), out_dir=tmp_path)
        lines = Path(rec.csv_path).read_text().splitlines()
        parsed = np.array([[float(v) for v in line.split(",")]
                           for line in lines[1:]])
        assert np.array_equal(parsed[:, 0], rec.column("tau"))
        assert np.array_equal(parsed[:, 1], rec.column("r_numeric"))

    def test_deterministic_bytes(self, tmp_path):
        a = run(fast_config(), out_dir=tmp_path / "a")
        b = run(fast_config(), out_dir=tmp_path / "b")
        assert (Path(a.csv_path).read_bytes()
                == Path(b.csv_path).read_bytes())

    def test_off_resonance_leaves_analytic_columns_empty(self):
        cfg = fast_config(kappa=1.7)
        rec = run(cfg, out_dir=None)
        assert np.all(np.isnan(rec.column("r_analytic")))
        assert np.all(np.isfinite(rec.column("r_numeric")))


class TestPresets:

    def test_catalog_shape(self):
        assert set(PRESETS) == {"fig1", "fig2", "fig3"}
        names = [label for label, _ in PRESETS["fig3"]]
        assert names == ["fig3_solid", "fig3_dotted", "fig3_hermitian"]
        for label, cfg in PRESETS["fig3"]:
            cfg.validate()

    def test_unknown_preset(self):
        with pytest.raises(ValidationError):
            run_preset("fig9")


class TestSweep:

    def test_single_cell_matches_plain_run(self):
        cfg = fast_config()
        plain = run(cfg, out_dir=None)
        records, _ = sweep(cfg, "beta0_tilde", [cfg.beta0_tilde],
                           out_dir=None)
        assert isinstance(records[0], RunRecord)
        for key in plain.columns:
            assert np.array_equal(plain.columns[key],
                                  records[0].columns[key], equal_nan=True)

    def test_counter_drive_ordering(self, tmp_path):
        cfg = fast_config(tau_max=5.0)
        records, summary = sweep(cfg, "beta0_tilde", [1e-3, 1e-4],
                                 out_dir=tmp_path)
        rows = [line.split(",") for line in summary.splitlines()]
        assert rows[0] == ["beta0_tilde", "amplification", "N_final"]
        amp = [float(r[1]) for r in rows[1:]]
        assert amp[1] > amp[0]
        assert (tmp_path / "sweep_beta0_tilde_summary.csv").exists()

    def test_growth_is_linear_in_modulation(self):
        # Final r scales with eps_mod; doubling the depth doubles r
        # to well within 5%.
        finals = {}
        for em in (0.005, 0.01, 0.02):
            cfg = fast_config(eps_mod=em, alpha0_tilde=1.0, beta0_tilde=1.0,
                              tau_max=50.0)
            rec = run(cfg, out_dir=None)
            finals[em] = float(rec.column("r_numeric")[-1])
        assert abs(finals[0.01] / finals[0.005] - 2.0) < 0.1
        assert abs(finals[0.02] / finals[0.01] - 2.0) < 0.1

    def test_failed_cell_is_marked(self):
        # The locked-map flow runs into the chi = 1 singularity in this
        # regime, so the cell must degrade to a failure row, not a crash.
        base = fast_config(dyson_source="integrated")
        records, summary = sweep(base, "beta0_tilde", [1e-3], out_dir=None)
        assert isinstance(records[0], SweepFailure)
        assert "ChiSingular" in records[0].error
        assert summary.splitlines()[1].endswith("failed,failed")

    def test_unknown_axis(self):
        with pytest.raises(ValidationError):
            sweep(ScenarioConfig(), "gamma", [0.1])

    def test_invalid_value_raises_before_running(self):
        with pytest.raises(ValidationError):
            sweep(ScenarioConfig(), "eps_mod", [0.01, 1.5])
