import pytest

from crnoma_aoi.cli import main
from crnoma_aoi.experiments import (CSV_HEADER, PRESETS, ExperimentSpec,
                                    preset_spec, run_experiment)


class TestPresets:
    def test_all_presets_validate(self):
        for name, spec in PRESETS.items():
            spec.validate()
            assert spec.preset == name

    def test_fig4b_axes(self):
        spec = preset_spec("fig4b")
        assert spec.gen_model == "GAW"
        assert spec.M_values == (8,)
        assert spec.R_values == (1.0,)
        assert spec.T_values == (0.5, 1.0, 1.5)

    def test_fig6_axes(self):
        for name in ("fig6a", "fig6b"):
            spec = preset_spec(name)
            assert (spec.gen_model, spec.M_values, spec.R_values,
                    spec.T_values) == ("GAR", (8,), (1.0,), (0.5,))

    def test_fig5_sweeps_m(self):
        spec = preset_spec("fig5")
        assert spec.M_values == (4, 8, 16, 32)
        assert spec.R_values == (1.5,)
        assert spec.T_values == (0.5,)

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset_spec("fig99")


class TestRunExperiment:
    def small_spec(self, **kw):
        base = dict(preset="custom", schemes=("TDMA", "CR-NOMA"),
                    gen_model="GAW", M_values=(4,), T_values=(1.0,),
                    R_values=(1.0,), snr_db_values=(0.0, 10.0),
                    frames=2000, warmup=10, seed=3)
        base.update(kw)
        return ExperimentSpec(**base)

    def test_header_and_shape(self):
        csv_text = run_experiment(self.small_spec())
        lines = csv_text.strip().split("\n")
        assert lines[0] == CSV_HEADER
        # 2 schemes x 2 SNRs, GAW -> one overall row each
        assert len(lines) == 1 + 4

    def test_gar_emits_per_user_rows(self):
        csv_text = run_experiment(self.small_spec(gen_model="GAR",
                                                  schemes=("TDMA",),
                                                  snr_db_values=(0.0,)))
        lines = csv_text.strip().split("\n")
        assert len(lines) == 1 + 1 + 4  # header + overall + 4 users

    def test_byte_identical_rerun(self):
        spec = self.small_spec(gen_model="GAR")
        assert run_experiment(spec) == run_experiment(spec)

    def test_analytic_only(self):
        csv_text = run_experiment(self.small_spec(outputs="analytic"))
        row = csv_text.strip().split("\n")[1].split(",")
        assert row[8] != "" and row[9] == "" and row[10] == ""

    def test_empty_scheme_list_rejected(self):
        with pytest.raises(ValueError):
            run_experiment(self.small_spec(schemes=()))

    def test_odd_m_rejected(self):
        with pytest.raises(ValueError):
            run_experiment(self.small_spec(M_values=(5,)))

    def test_fig4b_zero_db_value(self):
        spec = self.small_spec(schemes=("TDMA",), M_values=(8,), T_values=(1.5,),
                               snr_db_values=(0.0,), outputs="analytic")
        row = run_experiment(spec).strip().split("\n")[1].split(",")
        assert float(row[8]) == pytest.approx(28.1194, abs=1e-3)


class TestCliMain:
    def test_run_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        rc = main(["run", "--schemes", "TDMA", "--gen-model", "GAW",
                   "--M", "4", "--T", "1", "--R", "1", "--snr-db", "0",
                   "--frames", "1000", "--warmup", "10", "--seed", "1",
                   "--out", str(out)])
        assert rc == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER and len(lines) == 2

    def test_run_stdout_deterministic(self, capsys):
        args = ["run", "--preset", "fig4b", "--analytic-only"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_config_file_with_cli_override(self, tmp_path, capsys):
        conf = tmp_path / "exp.conf"
        conf.write_text(
            "preset=fig4b\n"
            "snr_db_values=0\n"
            "outputs=analytic\n"
            "# comment line\n")
        assert main(["run", "--config", str(conf), "--T", "1.5"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 1 + 2  # both schemes at one SNR, one T

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--preset", "nonsense"])
        assert exc.value.code == 2

    def test_bad_config_key(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("bogus_key=1\n")
        with pytest.raises(SystemExit) as exc:
            main(["run", "--config", str(conf)])
        assert exc.value.code == 2

    def test_probs_command(self, capsys):
        assert main(["probs", "--trials", "20000", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert "gaw.p0" in out
        assert "MISMATCH" not in out

    def test_probs_power_mismatch_notes(self, capsys):
        assert main(["probs", "--trials", "20000", "--ps-db", "5"]) == 0
        out = capsys.readouterr().out
        assert "certified for P = P_S" in out
