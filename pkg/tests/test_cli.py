"""Command-line interface: config validation, subcommands, manifests."""

import os

import numpy as np
import pytest

from fkplab import cli


class TestConfigParsing:
    def test_round_trip(self):
        cfg = cli.parse_config(["alpha=1.5", "sigma=-1", "c=2.0", "n=512"])
        assert cfg == {"alpha": 1.5, "sigma": -1, "c": 2.0, "n": 512}

    def test_unknown_key(self):
        with pytest.raises(cli.ConfigError, match="unknown key"):
            cli.parse_config(["bogus=1"])

    def test_malformed_pair(self):
        with pytest.raises(cli.ConfigError, match="key=value"):
            cli.parse_config(["alpha"])

    def test_bad_number(self):
        with pytest.raises(cli.ConfigError, match="bad value"):
            cli.parse_config(["alpha=fast"])

    @pytest.mark.parametrize("pair,msg", [
        ("alpha=0.2", "alpha must be in"),
        ("alpha=2.5", "alpha must be in"),
        ("sigma=2", "sigma must be"),
        ("c=-1", "c must be positive"),
        ("n=100", "power of two"),
        ("nx=4", "power of two"),
    ])
    def test_precondition_messages(self, pair, msg):
        with pytest.raises(cli.ConfigError, match=msg):
            cli.parse_config([pair])

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# comment\nalpha=1.5\n\nc=2.0\n")
        assert cli.read_config_file(path) == {"alpha": 1.5, "c": 2.0}


class TestSubcommands:
    def test_bad_config_exit_code(self, capsys):
        assert cli.main(["ground-state", "alpha=9"]) == 2
        assert "alpha must be in" in capsys.readouterr().err

    def test_ground_state(self, tmp_path, capsys):
        out = tmp_path / "gs"
        rc = cli.main(["ground-state", "alpha=2", "c=2", "L=60", "n=1024",
                       f"out_dir={out}"])
        assert rc == 0
        prof = np.loadtxt(out / "profile.csv", delimiter=",", skiprows=1)
        assert prof.shape == (1024, 2)
        assert np.max(prof[:, 1]) == pytest.approx(6.0, abs=1e-8)
        manifest = (out / "manifest.txt").read_text()
        assert "status: completed" in manifest
        assert "profile.csv sha256=" in manifest

    def test_evolve(self, tmp_path):
        out = tmp_path / "ev"
        rc = cli.main(["evolve", "alpha=2", "sigma=-1", "c=2", "Lx=30",
                       "nx=128", "Ly=10", "ny=16", "dt=0.001", "t_end=0.05",
                       f"out_dir={out}"])
        assert rc == 0
        assert (out / "diagnostics.csv").exists()
        from fkplab.snapshots import read_snapshot
        data, meta = read_snapshot(out / "final.fkps")
        assert data.shape == (128, 16)
        assert meta["t"] == pytest.approx(0.05)

    def test_experiment(self, tmp_path):
        out = tmp_path / "ex"
        rc = cli.main(["experiment", "alpha=2", "sigma=1", "c=2", "Lx=30",
                       "nx=128", "Ly=10", "ny=16", "dt=0.001", "t_end=0.05",
                       "kind=localized", "rho=0.1", f"out_dir={out}"])
        assert rc == 0
        header = (out / "diagnostics.csv").read_text().splitlines()[0]
        assert header == "t,sup_norm,mass,mass_rel_err,perturbation_sup,energy"

    def test_spectrum(self, tmp_path, capsys):
        out = tmp_path / "sp"
        rc = cli.main(["spectrum", "alpha=2", "c=2", "L=100", "n=512",
                       f"out_dir={out}"])
        assert rc == 0
        text = (out / "certificate.txt").read_text()
        assert "negative_count: 1" in text
        assert "passed: True" in text

    def test_growth_rate(self, tmp_path):
        out = tmp_path / "gr"
        rc = cli.main(["growth-rate", "alpha=2", "c=2", "L=100", "n=256",
                       "k_min=0.2", "k_max=1.2", "k_count=3",
                       f"out_dir={out}"])
        assert rc == 0
        rows = np.loadtxt(out / "growth_rate.csv", delimiter=",", skiprows=1)
        assert rows.shape == (3, 2)
        assert rows[0, 1] > 0  # unstable band

    def test_failure_writes_manifest(self, tmp_path, capsys):
        out = tmp_path / "fail"
        # alpha=1 profile cannot satisfy the boundary gate on a tiny box
        rc = cli.main(["ground-state", "alpha=1", "c=2", "L=20", "n=512",
                       f"out_dir={out}"])
        assert rc == 1
        assert "status: failed" in (out / "manifest.txt").read_text()
