import json

import pytest

from peerlens.cli import main
from peerlens.scenarios import SimulationConfig, investigator_candidates, question_value


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMars:
    def test_prints_five_values(self, capsys):
        code, out, _ = run_cli(capsys, "mars")
        assert code == 0
        lines = [line for line in out.splitlines() if line.strip()]
        assert len(lines) == 5
        assert lines[0].startswith("private_inv")

    def test_json_values(self, capsys):
        code, out, _ = run_cli(capsys, "mars", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["private_inv"] == pytest.approx(0.0, abs=1e-9)
        assert payload["public_inv_no_life"] == pytest.approx(0.3, abs=1e-9)
        assert payload["public_inv_life"] == pytest.approx(0.7, abs=1e-9)
        assert payload["private_rev"] == pytest.approx(0.0, abs=1e-9)
        assert payload["public_rev"] == pytest.approx(0.42, abs=1e-9)

    def test_writes_csv_and_sidecar(self, capsys, tmp_path):
        out_path = tmp_path / "mars.csv"
        code, _, _ = run_cli(capsys, "mars", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "name,value"
        assert len(lines) == 6
        meta = json.loads((tmp_path / "mars.csv.meta.json").read_text())
        assert meta["command"] == "mars"


class TestLandscape:
    def test_private_grid_three(self, capsys, tmp_path):
        out_path = tmp_path / "private.csv"
        code, _, _ = run_cli(
            capsys, "landscape", "--mode", "private", "--grid", "3", "--out", str(out_path)
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "p,value"
        rows = [line.split(",") for line in lines[1:]]
        assert [r[0] for r in rows] == ["0", "0.5", "1"]
        assert float(rows[0][1]) == 0.0
        assert float(rows[2][1]) == 0.0

    def test_public_grid_three_has_nine_rows(self, capsys, tmp_path):
        out_path = tmp_path / "public.csv"
        code, _, _ = run_cli(
            capsys, "landscape", "--mode", "public", "--grid", "3", "--out", str(out_path)
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "p,r,value"
        assert len(lines) == 10

    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            run_cli(
                capsys, "landscape", "--mode", "private", "--grid", "11", "--out", str(path)
            )
        assert a.read_bytes() == b.read_bytes()
        meta_a = (tmp_path / "a.csv.meta.json").read_text()
        meta_b = (tmp_path / "b.csv.meta.json").read_text()
        assert meta_a.replace("a.csv", "") == meta_b.replace("b.csv", "")

    def test_unwritable_path_fails_cleanly(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "landscape",
            "--mode",
            "private",
            "--grid",
            "3",
            "--out",
            str(tmp_path / "missing" / "out.csv"),
        )
        assert code == 1
        assert "error" in err


class TestSimulate:
    def test_row_count_and_determinism(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            code, _, _ = run_cli(
                capsys,
                "simulate",
                "--criterion",
                "reviewer-private",
                "--investigators",
                "10",
                "--candidates",
                "3",
                "--seed",
                "7",
                "--out",
                str(path),
            )
            assert code == 0
        lines = a.read_text().splitlines()
        assert (
            lines[0]
            == "m,q_maj,q_min,investigator_belief,favored_claim,community_mean,community_sd,criterion_value"
        )
        assert len(lines) == 11
        assert a.read_bytes() == b.read_bytes()

    def test_single_candidate_matches_direct_evaluation(self, capsys, tmp_path):
        out_path = tmp_path / "one.csv"
        run_cli(
            capsys,
            "simulate",
            "--criterion",
            "investigator-public",
            "--investigators",
            "3",
            "--candidates",
            "1",
            "--seed",
            "11",
            "--out",
            str(out_path),
        )
        cfg = SimulationConfig(
            n_investigators=3,
            n_candidates=1,
            criterion="investigator-public",
            rng_seed=11,
        )
        lines = out_path.read_text().splitlines()[1:]
        for i, line in enumerate(lines):
            fields = line.split(",")
            (question, belief), = investigator_candidates(cfg, i)
            direct = question_value(
                "investigator-public", question, investigator_belief=belief
            )
            assert float(fields[7]) == direct

    def test_unknown_criterion_rejected_by_parser(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main(
                [
                    "simulate",
                    "--criterion",
                    "citations",
                    "--out",
                    str(tmp_path / "x.csv"),
                ]
            )
        assert excinfo.value.code == 2

    def test_thread_cap_does_not_change_output(self, capsys, tmp_path, monkeypatch):
        paths = []
        for threads in ("1", "4"):
            monkeypatch.setenv("PEERLENS_THREADS", threads)
            path = tmp_path / f"t{threads}.csv"
            run_cli(
                capsys,
                "simulate",
                "--criterion",
                "reviewer-public",
                "--investigators",
                "8",
                "--candidates",
                "2",
                "--seed",
                "5",
                "--out",
                str(path),
            )
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestOptimal:
    def test_reviewer_private_tossup(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimal", "--criterion", "reviewer-private", "--grid", "21", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["community_mean"] == pytest.approx(0.5, abs=1e-12)
        assert payload["community_sd"] == pytest.approx(0.0, abs=1e-12)
        assert "value" in payload

    def test_plain_output_mentions_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimal", "--criterion", "reviewer-public", "--grid", "11"
        )
        assert code == 0
        assert "value" in out
        assert "q_maj" in out


class TestPropcheck:
    def test_zero_trials_vacuous_pass(self, capsys):
        code, out, _ = run_cli(capsys, "propcheck", "--trials", "0")
        assert code == 0
        assert "FAIL" not in out

    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "propcheck", "--trials", "25", "--seed", "31")
        assert code == 0
        assert "PASS" in out

    def test_violation_gives_nonzero_exit(self, capsys, monkeypatch):
        from peerlens.scenarios import CheckResult

        monkeypatch.setattr(
            "peerlens.cli.run_property_checks",
            lambda trials, seed: [CheckResult("forced", False, "synthetic")],
        )
        code, out, _ = run_cli(capsys, "propcheck", "--trials", "1")
        assert code == 1
        assert "FAIL forced" in out


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_override(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps(
                {
                    "experiment": {"mu0": 0.0, "mu1": 4.0, "sigma_y": 2.0},
                    "rule": "brier",
                    "grid": 5,
                    "seed": 13,
                }
            )
        )
        out_path = tmp_path / "landscape.csv"
        code, _, _ = run_cli(
            capsys,
            "landscape",
            "--mode",
            "private",
            "--config",
            str(config),
            "--grid",
            "3",
            "--out",
            str(out_path),
        )
        assert code == 0
        meta = json.loads((tmp_path / "landscape.csv.meta.json").read_text())
        assert meta["options"]["mu1"] == 4.0  # from config
        assert meta["options"]["grid"] == 3  # flag wins
        assert meta["options"]["seed"] == 13

    def test_unknown_config_key_rejected(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"power": 0.8}))
        code, _, err = run_cli(
            capsys,
            "landscape",
            "--mode",
            "private",
            "--config",
            str(config),
            "--out",
            str(tmp_path / "x.csv"),
        )
        assert code == 1
        assert "unknown config key" in err
