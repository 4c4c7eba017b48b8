"""Command-line orchestration: config parsing, subcommands, manifests."""

import argparse
import hashlib
import os
import sys
import time

import numpy as np

from . import __version__, diagnostics, evolution, experiments, operators
from .branch import BranchProblem, continue_branch, steady_equation_residual
from .ground_state import FkpParams, exact_kdv_profile, petviashvili_solve
from .snapshots import write_snapshot
from .spectral import make_grid, make_grid2d

SUBCOMMANDS = ("ground-state", "evolve", "experiment", "spectrum",
               "growth-rate", "branch", "sweep", "verify")

_KEYS = {
    "alpha": float, "sigma": int, "c": float,
    "Lx": float, "Ly": float, "nx": int, "ny": int,
    "L": float, "n": int,
    "dt": float, "t_end": float, "cadence": int,
    "kind": str, "rho": float, "x0": float,
    "k_min": float, "k_max": float, "k_count": int,
    "s_min": float, "s_max": float, "s_count": int, "modes": int,
    "alphas": str, "out_dir": str,
}


class ConfigError(ValueError):
    pass


def parse_config(pairs):
    """Validate key=value strings into a config dict."""
    cfg = {}
    for item in pairs:
        if "=" not in item:
            raise ConfigError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        if key not in _KEYS:
            raise ConfigError(f"unknown key {key!r}")
        try:
            cfg[key] = _KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    if "alpha" in cfg and not (1.0 / 3.0 < cfg["alpha"] <= 2.0):
        raise ConfigError("alpha must be in (1/3, 2]")
    if "sigma" in cfg and cfg["sigma"] not in (-1, 1):
        raise ConfigError("sigma must be -1 or +1")
    if "c" in cfg and not cfg["c"] > 0:
        raise ConfigError("c must be positive")
    for key in ("n", "nx", "ny"):
        if key in cfg:
            v = cfg[key]
            if v < 8 or (v & (v - 1)) != 0:
                raise ConfigError(f"{key}: power of two required (>= 8)")
    return cfg


def read_config_file(path):
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                pairs.append(line)
    return parse_config(pairs)


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


class Manifest:
    def __init__(self, out_dir, config):
        self.out_dir = out_dir
        self.config = config
        self.files = []
        self.start = time.time()
        self.status = "running"

    def add(self, path):
        self.files.append(path)

    def write(self, status):
        self.status = status
        path = os.path.join(self.out_dir, "manifest.txt")
        with open(path, "w") as fh:
            fh.write(f"version: {__version__}\n")
            fh.write(f"status: {status}\n")
            fh.write(f"wall_seconds: {time.time() - self.start:.3f}\n")
            for key in sorted(self.config):
                fh.write(f"config.{key}: {self.config[key]}\n")
            for f in self.files:
                fh.write(f"file: {os.path.basename(f)} sha256={_sha256(f)}\n")
        return path


def _params(cfg, default_sigma=-1):
    return FkpParams(cfg.get("alpha", 2.0), cfg.get("sigma", default_sigma),
                     cfg.get("c", 2.0))


def _carrier(cfg, grid=None):
    params = _params(cfg)
    grid = grid or make_grid(cfg.get("L", 100.0), cfg.get("n", 4096))
    return petviashvili_solve(params, grid)


def cmd_ground_state(cfg, out_dir, manifest):
    state = _carrier(cfg)
    path = os.path.join(out_dir, "profile.csv")
    with open(path, "w") as fh:
        fh.write("x,Q\n")
        for x, q in zip(state.grid.x, state.samples):
            fh.write(f"{x:.17g},{q:.17g}\n")
    manifest.add(path)
    print(f"converged in {state.iterations} iterations, "
          f"amplitude {state.amplitude:.12g}, residual {state.residual_sup:.3e}")
    return 0


def _evolution_setup(cfg):
    grid = make_grid2d(cfg.get("Lx", 60.0), cfg.get("nx", 512),
                       cfg.get("Ly", 30.0), cfg.get("ny", 128))
    params = _params(cfg)
    return grid, params


def cmd_evolve(cfg, out_dir, manifest):
    grid, params = _evolution_setup(cfg)
    if params.alpha == 2.0:
        line = exact_kdv_profile(grid.grid_x, params.c)
    else:
        carrier = petviashvili_solve(
            params, make_grid(cfg.get("L", 100.0), cfg.get("n", 4096)))
        line = experiments.resample_carrier(carrier, grid.grid_x)
    u0 = np.repeat(line[:, None], grid.grid_y.n, axis=1)
    final, status, series = evolution.evolve(
        u0, grid, params, cfg.get("dt", 1e-3), cfg.get("t_end", 10.0),
        cadence=cfg.get("cadence", 100))
    csv_path = os.path.join(out_dir, "diagnostics.csv")
    series.write_csv(csv_path)
    manifest.add(csv_path)
    snap_path = os.path.join(out_dir, "final.fkps")
    write_snapshot(snap_path, final.samples(), grid, params, final.t)
    manifest.add(snap_path)
    print(f"status {status}; final relative mass error "
          f"{series.mass_rel_err[-1]:.3e}")
    return 0 if status == "completed" else 1


def cmd_experiment(cfg, out_dir, manifest):
    grid, params = _evolution_setup(cfg)
    spec = experiments.PerturbationSpec(
        cfg.get("kind", "localized"), cfg.get("rho", 0.1), cfg.get("x0", 0.0))
    if params.alpha == 2.0:
        from .ground_state import GroundState
        carrier = GroundState(params, grid.grid_x,
                              exact_kdv_profile(grid.grid_x, params.c))
    else:
        carrier = petviashvili_solve(
            params, make_grid(cfg.get("L", 100.0), cfg.get("n", 4096)))
    config = experiments.ExperimentConfig(
        params, grid, cfg.get("dt", 1e-3), cfg.get("t_end", 10.0), spec,
        cadence=cfg.get("cadence", 100), out_dir=out_dir)
    report = experiments.run_experiment(config, carrier)
    manifest.add(os.path.join(out_dir, "diagnostics.csv"))
    print(f"status {report.status}; doubling_time={report.doubling_time}; "
          f"halving_time={report.halving_time}")
    return 0 if report.status == "completed" else 1


def cmd_spectrum(cfg, out_dir, manifest):
    grid = make_grid(cfg.get("L", 100.0), cfg.get("n", 1024))
    carrier = _carrier(cfg)
    params = _params(cfg)
    cert = operators.certificate_A0_A4(carrier, params, grid)
    path = os.path.join(out_dir, "certificate.txt")
    with open(path, "w") as fh:
        for key, val in cert.items():
            fh.write(f"{key}: {val}\n")
    manifest.add(path)
    print(f"lambda={cert['lambda']:.12g} omega0={cert['omega0']:.12g} "
          f"negative_count={cert['negative_count']} passed={cert['passed']}")
    return 0 if cert["passed"] else 1


def cmd_growth_rate(cfg, out_dir, manifest):
    grid = make_grid(cfg.get("L", 100.0), cfg.get("n", 512))
    carrier = _carrier(cfg)
    params = _params(cfg)
    k = np.linspace(cfg.get("k_min", 0.05), cfg.get("k_max", 1.5),
                    cfg.get("k_count", 16))
    curve = operators.growth_rate_curve(carrier, params, grid, k)
    path = os.path.join(out_dir, "growth_rate.csv")
    with open(path, "w") as fh:
        fh.write("k,sigma_max\n")
        for kk, ss in zip(curve.k, curve.sigma_max):
            fh.write(f"{kk:.17g},{ss:.17g}\n")
    manifest.add(path)
    print(f"max growth rate {np.max(curve.sigma_max):.6g} at "
          f"k={curve.k[np.argmax(curve.sigma_max)]:.4g}")
    return 0


def cmd_branch(cfg, out_dir, manifest):
    grid = make_grid(cfg.get("L", 100.0), cfg.get("n", 512))
    carrier = _carrier(cfg)
    params = _params(cfg)
    problem = BranchProblem(carrier, params, grid,
                            n_modes=cfg.get("modes", 8))
    s_values = np.geomspace(cfg.get("s_min", 1e-4), cfg.get("s_max", 1e-2),
                            cfg.get("s_count", 6))
    points = continue_branch(problem, s_values)
    path = os.path.join(out_dir, "branch.csv")
    with open(path, "w") as fh:
        fh.write("s,omega,residual,sup_dx_w\n")
        for p in points:
            wx_sup = float(np.max(np.abs(problem._wx_colloc(p.coeffs))))
            fh.write(f"{p.s:.17g},{p.omega:.17g},{p.residual_sup:.17g},"
                     f"{wx_sup:.17g}\n")
    manifest.add(path)
    print(f"omega0={problem.omega0:.12g}; "
          f"omega(s_max)={points[-1].omega:.12g}")
    return 0


def cmd_sweep(cfg, out_dir, manifest):
    alphas = [float(a) for a in cfg.get("alphas", "0.9,1.35,1.7,2").split(",")]
    status = 0
    for a in alphas:
        child_cfg = dict(cfg)
        child_cfg["alpha"] = a
        child_cfg.pop("alphas", None)
        child_dir = os.path.join(out_dir, f"alpha_{a:g}")
        os.makedirs(child_dir, exist_ok=True)
        child_manifest = Manifest(child_dir, child_cfg)
        rc = cmd_experiment(child_cfg, child_dir, child_manifest)
        manifest.add(child_manifest.write("completed" if rc == 0 else "failed"))
        status = status or rc
    return status


def cmd_verify(cfg, out_dir, manifest):
    import subprocess

    root = os.path.dirname(os.path.dirname(os.path.dirname(__file__)))
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-v",
         os.path.join(root, "tests", "test_acceptance.py")],
        cwd=root)
    return proc.returncode


_DISPATCH = {
    "ground-state": cmd_ground_state,
    "evolve": cmd_evolve,
    "experiment": cmd_experiment,
    "spectrum": cmd_spectrum,
    "growth-rate": cmd_growth_rate,
    "branch": cmd_branch,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="fkplab",
        description="Spectral laboratory for fractional KdV/KP equations")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("settings", nargs="*",
                        help="key=value settings (or @file to read a config)")
    parser.add_argument("--out-dir", default="out")
    args = parser.parse_args(argv)

    pairs = []
    for item in args.settings:
        if item.startswith("@"):
            pairs.extend(f"{k}={v}" for k, v in read_config_file(item[1:]).items())
        else:
            pairs.append(item)
    try:
        cfg = parse_config(pairs)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out_dir = cfg.pop("out_dir", args.out_dir)
    os.makedirs(out_dir, exist_ok=True)
    manifest = Manifest(out_dir, dict(cfg, subcommand=args.subcommand))
    try:
        rc = _DISPATCH[args.subcommand](cfg, out_dir, manifest)
    except Exception as exc:  # surface module errors as exit codes
        print(f"error: {exc}", file=sys.stderr)
        manifest.write("failed")
        return 1
    manifest.write("completed" if rc == 0 else "failed")
    return rc


if __name__ == "__main__":
    sys.exit(main())
