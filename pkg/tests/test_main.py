import csv
import json

import pytest

from rabibo.main import main

STRONG = ["--delta", "10", "--g-over-gc", "1.5", "--n-max", "60"]


def read_csv(path):
    with open(path, newline="") as file:
        return list(csv.DictReader(file))


def run_ok(*argv):
    assert main(list(argv)) == 0


class TestSpectrum:
    def test_csv(self, tmp_path):
        out = tmp_path / "spectrum.csv"
        run_ok("spectrum", *STRONG, "-q", "-o", str(out))
        rows = read_csv(out)
        assert len(rows) == 10
        assert list(rows[0]) == ["index", "energy_bo", "energy_ed", "parity_bo", "parity_ed"]
        assert rows[0]["parity_ed"] == "-1"
        # BO rows are labelled by Fock parity; the tunnel doublet alternates.
        assert [r["parity_bo"] for r in rows[:2]] == ["even", "odd"]
        assert abs(float(rows[0]["energy_bo"]) - float(rows[0]["energy_ed"])) < 0.05
        assert out.read_bytes().endswith(b"\n")
        assert b"\r" not in out.read_bytes()

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        run_ok("spectrum", *STRONG, "-q", "-o", str(first))
        run_ok("spectrum", *STRONG, "-q", "-o", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_json_matches_csv(self, tmp_path):
        csv_path, json_path = tmp_path / "s.csv", tmp_path / "s.json"
        run_ok("spectrum", *STRONG, "-q", "-o", str(csv_path))
        run_ok("spectrum", *STRONG, "-q", "-o", str(json_path), "--format", "json")
        document = json.loads(json_path.read_text())
        assert document["meta"]["command"] == "spectrum"
        assert document["meta"]["config"]["delta"] == [10.0]
        assert "numpy" in document["meta"]["versions"]
        assert document["data"]["total_parity_bo"][:2] == [-1, 1]
        data = document["data"]
        assert data["columns"] == ["index", "energy_bo", "energy_ed", "parity_bo", "parity_ed"]
        for from_csv, from_json in zip(read_csv(csv_path), data["rows"]):
            # Both formats round-trip the same double.
            assert float(from_csv["energy_ed"]) == from_json["energy_ed"]

    def test_key_value_config_and_patches(self, tmp_path):
        config = tmp_path / "strong.cfg"
        config.write_text("# delta and coupling\ndelta=10\ng_over_gc=1.5\nn_max=60\n")
        out = tmp_path / "out.csv"
        run_ok("spectrum", "--config", str(config), "-q", "-o", str(out), "n_levels=4", "solver=ed")
        rows = read_csv(out)
        assert len(rows) == 4
        assert list(rows[0]) == ["index", "energy_ed", "parity_ed"]

    def test_stdout(self, capsys):
        run_ok("spectrum", *STRONG, "--levels", "3", "-q", "-o", "-")
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "index,energy_bo,energy_ed,parity_bo,parity_ed"
        assert len(lines) == 4


class TestOtherCommands:
    def test_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_ok("sweep", "--delta", "10", "--g-over-gc", "0:1.5:4", "--n-max", "60",
               "--levels", "4", "-q", "-o", str(out))
        rows = read_csv(out)
        assert len(rows) == 4
        assert len(rows[0]) == 2 + (4 + 4 + 4 + 4) + (4 + 4 + 4)
        assert rows[-1]["parity_bo_0"] == "even"
        assert rows[-1]["total_parity_bo_0"] == rows[-1]["parity_ed_0"] == "-1"
        assert float(rows[-1]["g_over_gc"]) == pytest.approx(1.5)
        assert float(rows[-1]["photons_ed_0"]) > float(rows[0]["photons_ed_0"])

    def test_potential(self, tmp_path):
        out = tmp_path / "potential.json"
        run_ok("potential", "--delta", "10", "--g", "2.882413", "--format", "json",
               "-q", "-o", str(out))
        data = json.loads(out.read_text())["data"]
        assert len(data["rows"]) == 801
        assert data["double_well"] is True
        assert data["minima"][1] == pytest.approx(3.8874, abs=1e-4)

    def test_wavefunction(self, tmp_path):
        out = tmp_path / "wavefunction.csv"
        run_ok("wavefunction", *STRONG, "--points", "101", "--state", "1", "-q", "-o", str(out))
        rows = read_csv(out)
        assert len(rows) == 101
        assert list(rows[0]) == ["xi", "psi_bo", "up_bo", "down_bo", "up_ed", "down_ed"]

    def test_population_with_fits(self, tmp_path):
        out = tmp_path / "population.json"
        run_ok("population", *STRONG, "--fit", "all", "-q", "-o", str(out))
        data = json.loads(out.read_text())["data"]
        assert len(data["rows"]) == 60
        assert data["columns"] == ["n", "fock_parity", "p_bo", "p_ed"]
        assert sum(data["populations"]["ed"]["p"]) == pytest.approx(1.0)
        for name in ("bo", "ed"):
            fits = data["fits"][name]
            assert fits["selected"] in ("Poisson", "GOE", "GUE")
            assert [f["family"] for f in fits["fits"]] == ["Poisson", "GOE", "GUE"]

    def test_population_default_name(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        run_ok("population", *STRONG, "--fit", "gue", "--solver", "ed", "-q")
        assert (tmp_path / "population.json").exists()

    def test_fit(self, tmp_path):
        out = tmp_path / "fit.csv"
        run_ok("fit", *STRONG, "--solver", "ed", "--subset", "even", "-q", "-o", str(out))
        rows = read_csv(out)
        assert [r["family"] for r in rows] == ["Poisson", "GOE", "GUE"]
        assert sum(r["selected"] == "true" for r in rows) == 1

    def test_convergence(self, tmp_path):
        out = tmp_path / "convergence.csv"
        run_ok("convergence", "--delta", "10", "--g-over-gc", "1.5", "--sizes", "40,80",
               "-q", "-o", str(out))
        rows = read_csv(out)
        assert [r["n_max"] for r in rows] == ["40", "80"]
        assert rows[0]["change_ed"] == ""
        assert float(rows[1]["change_ed"]) < 1e-6

    def test_compare(self, tmp_path):
        out = tmp_path / "compare.csv"
        run_ok("compare", "--delta", "5,10", "--g-over-gc", "0.5,1.5", "--n-max", "60",
               "-q", "-o", str(out))
        rows = read_csv(out)
        assert len(rows) == 4
        assert all(float(r["energy_difference"]) < 0.05 for r in rows)


class TestErrors:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_help(self, capsys):
        assert main(["help", "population"]) == 0
        assert "--fit" in capsys.readouterr().out
        assert main(["spectrum", "--help"]) == 0

    def test_missing_coupling(self, tmp_path, capsys):
        assert main(["spectrum", "--delta", "10", "-o", str(tmp_path / "x.csv")]) == 2
        err = capsys.readouterr().err
        assert err.startswith("rabibo: error: ")
        assert "exactly one of g and g_over_gc" in err
        assert len(err.strip().splitlines()) == 1
        assert not (tmp_path / "x.csv").exists()

    def test_unknown_flag(self, capsys):
        assert main(["spectrum", "--delta", "10", "--g", "1", "--bogus"]) == 2
        assert "unrecognized arguments" in capsys.readouterr().err

    def test_exclusive_couplings(self):
        assert main(["spectrum", "--delta", "10", "--g", "1", "--g-over-gc", "1"]) == 2

    def test_bad_grid(self, capsys):
        assert main(["sweep", "--delta", "10", "--g-over-gc", "0:1"]) == 2
        assert "Cannot parse grid" in capsys.readouterr().err

    def test_runtime_failure(self, tmp_path, capsys):
        """No photons at g = 0, so there is nothing to fit."""
        code = main(["fit", "--delta", "10", "--g", "0", "--n-max", "20",
                     "--solver", "ed", "-q", "-o", str(tmp_path / "fit.csv")])
        assert code == 1
        err = capsys.readouterr().err
        assert "fit :: ValueError" in err
        assert not (tmp_path / "fit.csv").exists()

    def test_unwritable_output(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(["spectrum", *STRONG, "-q", "-o", str(blocker / "out.csv")]) == 1
