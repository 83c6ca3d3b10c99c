"""Command-line entry point: config parsing, orchestration, file emission.

This is the only module with side effects.  Every subcommand resolves its
configuration (flags override config-file keys override defaults), writes a
manifest JSON echoing the resolved config, then writes data to
``<out>.partial`` and renames on completion, so partial files are never
mistaken for results.  All pipelines are deterministic; identical configs
produce byte-identical outputs.

Exit codes: 0 success, 1 numeric failure (cap exceeded, sentinel-only
series), 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, dynamics, meanfield, model, phasespace, states
from .fock import Convention, FockBasis, QuantumState, convert_convention

__all__ = ["main", "run", "validate"]

WORKERS_ENV = "VIBRONSIM_WORKERS"


class ConfigError(Exception):
    """Aggregated configuration problems; maps to exit code 2."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _resolve(args: argparse.Namespace, argv) -> dict:
    """Merge precedence: defaults < config file < explicit CLI flags."""
    merged = dict(vars(args))
    merged.pop("func", None)
    config_path = merged.pop("config", None)
    if config_path:
        with open(config_path) as f:
            file_cfg = json.load(f)
        for key, value in file_cfg.items():
            key = key.replace("-", "_")
            if key not in merged:
                raise ConfigError([f"unknown config key {key!r}"])
            # a flag the user typed wins over the file value
            if _flag_given(key, argv):
                continue
            merged[key] = value
    return merged


def _flag_given(key: str, argv) -> bool:
    flag = "--" + key.replace("_", "-")
    return flag in argv or any(a.startswith(flag + "=") for a in argv)


def validate(cfg: dict, command: str) -> dict:
    """Range-check every numeric key, collecting all errors."""
    errors = []
    g = cfg.get("gamma")
    if g is not None and not (0.0 <= g <= 1.0):
        errors.append(f"gamma must lie in [0,1], got {g}")
    if command == "quench" and g == 0.0:
        errors.append("gamma = 0 quench is singular; use the n0_only protocol "
                      "(wigner --protocol n0)")
    for key in ("n", "points", "steps", "resolution"):
        v = cfg.get(key)
        if v is not None and v <= 0:
            errors.append(f"{key} must be positive, got {v}")
    for key in ("gamma_min", "gamma_max"):
        v = cfg.get(key)
        if v is not None and not (0.0 <= v <= 1.0):
            errors.append(f"{key} must lie in [0,1], got {v}")
    if cfg.get("t_max") is not None and cfg["t_max"] <= 0:
        errors.append(f"t-max must be positive, got {cfg['t_max']}")
    if errors:
        raise ConfigError(errors)
    return cfg


def _workers(cfg: dict) -> int:
    if cfg.get("workers"):
        return int(cfg["workers"])
    env = os.environ.get(WORKERS_ENV)
    if env:
        return int(env)
    return os.cpu_count() or 1


def _write_manifest(cfg: dict, out: str | None) -> None:
    if out is None:
        return
    manifest = {"config": {k: v for k, v in sorted(cfg.items())},
                "version": __version__}
    with open(out + ".manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True, default=str)
        f.write("\n")


class _Emitter:
    """Writes to <out>.partial and renames on success; stdout if out is None."""

    def __init__(self, out: str | None):
        self.out = out

    def __enter__(self):
        if self.out is None:
            self.fh = sys.stdout
        else:
            self.fh = open(self.out + ".partial", "w")
        return self.fh

    def __exit__(self, exc_type, exc, tb):
        if self.out is not None:
            self.fh.close()
            if exc_type is None:
                os.replace(self.out + ".partial", self.out)
        return False


def _emit_file(write_fn, out: str | None) -> None:
    """Route a path-based dump function through the .partial protocol."""
    if out is None:
        import io
        buf = io.StringIO()
        path = None
        # dump functions expect a path; use a temp file in cwd-free fashion
        import tempfile
        with tempfile.NamedTemporaryFile("r", suffix=".csv", delete=False) as tf:
            path = tf.name
        write_fn(path)
        with open(path) as f:
            sys.stdout.write(f.read())
        os.remove(path)
        return
    write_fn(out + ".partial")
    os.replace(out + ".partial", out)


def _cmd_spectrum(cfg: dict) -> int:
    grid = np.linspace(cfg["gamma_min"], cfg["gamma_max"], cfg["steps"])
    kind = model.HamiltonianKind(cfg["kind"])
    norm = model.Normalization(cfg["normalization"]) if cfg.get("normalization") else None
    rows = model.spectrum_scan(kind, cfg["n"], cfg["l"], grid, normalization=norm)
    _write_manifest(cfg, cfg["out"])
    with _Emitter(cfg["out"]) as f:
        f.write("gamma,level_index,energy_normalized\n")
        for gamma, energies in rows:
            for idx, e in enumerate(energies):
                f.write(f"{gamma:.17g},{idx},{e:.17g}\n")
    return 0


def _cmd_meanfield(cfg: dict) -> int:
    gamma = cfg["gamma"]
    res = cfg["resolution"]
    lo = meanfield._min_energy(gamma)
    trajectories = []
    n_levels = cfg["trajectories"]
    etas = list(np.linspace(lo * 0.95, -1e-3, n_levels))
    if gamma > meanfield.GAMMA_C:
        etas.append(-(1.0 - gamma))  # separatrix
    for eta in sorted(etas):
        trajectories.extend(meanfield.level_set(eta, gamma, res))
    _write_manifest(cfg, cfg["out"])
    _emit_file(lambda p: meanfield.dump_trajectories_csv(trajectories, p), cfg["out"])
    return 0


def _cmd_coherent(cfg: dict) -> int:
    if cfg.get("theta") is not None:
        state = states.spin_coherent2(cfg["theta"], cfg["phi"], cfg["n"])
    else:
        state = states.coherent3(cfg["x"], cfg["y"], cfg["n"])
    _write_manifest(cfg, cfg["out"])
    _emit_file(lambda p: states.dump_state_csv(state, p), cfg["out"])
    return 0


def _cmd_quench(cfg: dict) -> int:
    config = dynamics.QuenchConfig(
        gamma=cfg["gamma"], n_total=cfg["n"],
        frame=dynamics.TimeFrame(cfg["t_max"], cfg["points"]),
        method=cfg["method"])
    series = dynamics.quench(config)
    _write_manifest(cfg, cfg["out"])
    _emit_file(lambda p: dynamics.dump_timeseries_csv(series, p), cfg["out"])
    return 0


def _cmd_wigner(cfg: dict) -> int:
    n = cfg["n"]
    if cfg.get("theta") is not None:
        psi = states.spin_coherent2(cfg["theta"], cfg["phi"], n)
    else:
        psi = states.coherent3(cfg["x"], cfg["y"], n)
    t = cfg["time"]
    if t > 0.0:
        if cfg["protocol"] == "n0":
            kind = model.HamiltonianKind.N0_ONLY
            params = model.ModelParams(gamma=max(cfg["gamma"], 0.0), n_total=n)
        else:
            kind = model.HamiltonianKind.SPINOR_ROTATED
            params = model.ModelParams(gamma=cfg["gamma"], n_total=n)
        circ = convert_convention(psi, Convention.CIRCULAR)
        h = model.build(kind, params, circ.basis)
        evolved = dynamics.evolve(h, circ, [t])[0]
        psi = convert_convention(evolved, Convention.CARTESIAN)
    if cfg["wigner_kind"] == "planar":
        half = cfg["extent"]
        ax = np.linspace(-half, half, cfg["grid_points"])
        grid = phasespace.wigner_planar(psi, ax, ax)
    else:
        theta = np.linspace(0.0, np.pi, cfg["grid_points"])
        phi = np.linspace(0.0, 2.0 * np.pi, 2 * cfg["grid_points"] - 1)
        grid = phasespace.wigner_sphere(psi, theta, phi)
    _write_manifest(cfg, cfg["out"])
    _emit_file(lambda p: phasespace.dump_grid_csv(grid, p), cfg["out"])
    return 0


def _cmd_sweep(cfg: dict) -> int:
    gammas = [float(v) for v in str(cfg["gammas"]).split(",")]
    n_list = [int(v) for v in str(cfg["n_list"]).split(",")]
    bad = [g for g in gammas if not 0.0 < g <= 1.0]
    if bad:
        raise ConfigError([f"sweep gammas must lie in (0,1], got {bad}"])
    frame = dynamics.TimeFrame(cfg["t_max"], cfg["points"])
    workers = _workers(cfg)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = dynamics.sweep(gammas, n_list, frame, map_fn=pool.map)
    else:
        rows = dynamics.sweep(gammas, n_list, frame)
    _write_manifest(cfg, cfg["out"])
    _emit_file(lambda p: dynamics.dump_sweep_csv(rows, p), cfg["out"])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vibronsim",
                                     description="Exact-diagonalization simulator "
                                     "of the bending-vibration / spin-1 BEC model")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file; flags override its keys")
        p.add_argument("--out", default=None, help="output CSV path (default stdout)")
        p.add_argument("--workers", type=int, default=0,
                       help=f"worker pool size (or env {WORKERS_ENV}); 0 = cores")

    p = sub.add_parser("spectrum", help="per-gamma normalized excitation spectra")
    common(p)
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--kind", default="essential",
                   choices=[k.value for k in model.HamiltonianKind])
    p.add_argument("--normalization", default=None,
                   choices=[n.value for n in model.Normalization])
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("meanfield", help="fixed-energy trajectories and separatrix")
    common(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--trajectories", type=int, default=8,
                   help="number of energy levels to trace")
    p.add_argument("--resolution", type=int, default=1024)
    p.set_defaults(func=_cmd_meanfield)

    p = sub.add_parser("coherent", help="prepare a coherent state and dump amplitudes")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=_cmd_coherent)

    p = sub.add_parser("quench", help="zero-magnetization quench time series")
    common(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-max", type=float, default=1000.0)
    p.add_argument("--points", type=int, default=10000)
    p.add_argument("--method", default="band", choices=["band", "full"])
    p.set_defaults(func=_cmd_quench)

    p = sub.add_parser("wigner", help="Wigner grid of a (possibly evolved) state")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--wigner-kind", default="planar", choices=["planar", "spherical"])
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--time", type=float, default=0.0)
    p.add_argument("--protocol", default="spinor", choices=["spinor", "n0"])
    p.add_argument("--extent", type=float, default=8.0,
                   help="planar half-width of the grid")
    p.add_argument("--grid-points", type=int, default=161)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("sweep", help="max-gap witness over a (gamma, N) grid")
    common(p)
    p.add_argument("--gammas", required=True, help="comma-separated gamma values")
    p.add_argument("--n-list", required=True, help="comma-separated N values")
    p.add_argument("--t-max", type=float, default=1000.0)
    p.add_argument("--points", type=int, default=10000)
    p.set_defaults(func=_cmd_sweep)
    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse failure is a config error
        return 0 if exc.code == 0 else 2
    try:
        cfg = validate(_resolve(args, argv), args.command)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 2
    try:
        return args.func(cfg)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
