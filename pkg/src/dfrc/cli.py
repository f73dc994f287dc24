"""Command-line interface: solve | sweep | beampattern | verify.

All subcommands read a YAML config describing the scenario and the radar
requirement; see configs/reference.yaml for the full schema. Exit codes:
0 success, 1 usage or config error, 2 infeasible radar requirement,
3 verification failure.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np
import yaml

from .closed_form import solve_closed_form
from .metrics import radar_snr
from .model import (
    ArrayGeometry,
    InfeasibleRadarRequirement,
    RadarSnrSpec,
    Scenario,
    resolve_radar_spec,
)
from .sweep import (
    DEFAULT_BEAMPATTERN_LOSSES_DB,
    beampattern_sweep,
    default_loss_grid_db,
    tradeoff_sweep,
    write_beampattern_csv,
    write_tradeoff_csv,
)
from .verify import DEFAULT_SEED, DEFAULT_TRIALS, run_verification

__all__ = ["ConfigError", "build_scenario", "load_config", "main", "serialize_config"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY_FAILED = 3


class ConfigError(ValueError):
    """Bad command line or config file; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; route them through ConfigError so
    # exit code 2 stays reserved for infeasibility
    def error(self, message):
        raise ConfigError(message)


def load_config(path) -> dict:
    """Parse a YAML config file into a dict, with path context on errors."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping at top level")
    return data


def serialize_config(config: dict) -> str:
    """Canonical YAML for a config dict; parses back equal via load."""
    return yaml.safe_dump(config, sort_keys=True, default_flow_style=False)


def _section(config: dict, name: str, required: bool = True) -> dict:
    block = config.get(name)
    if block is None:
        if required:
            raise ConfigError(f"config is missing the '{name}' section")
        return {}
    if not isinstance(block, dict):
        raise ConfigError(f"config section '{name}' must be a mapping")
    return block


def _number(block: dict, section: str, key: str, default=None):
    value = block.get(key, default)
    if value is None:
        raise ConfigError(f"config is missing '{section}.{key}'")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{section}.{key}' must be a number, got {value!r}")
    return value


def build_scenario(config: dict, user_angle_deg=None) -> Scenario:
    """Scenario from the 'scenario' config section.

    ``user_angle_deg`` overrides the configured user direction (used by
    batch sweeps). The channel comes either from 'user_angle_deg'
    (line of sight) or from 'channel' as [[re, im], ...] entries.
    """
    sc = _section(config, "scenario")
    m = _number(sc, "scenario", "num_antennas")
    if not isinstance(m, int):
        raise ConfigError(f"'scenario.num_antennas' must be an integer, got {m!r}")
    spacing = float(_number(sc, "scenario", "spacing_over_wavelength", 0.5))
    target_deg = float(_number(sc, "scenario", "target_angle_deg"))
    power = float(_number(sc, "scenario", "power", 1.0))
    amplitude = float(_number(sc, "scenario", "target_amplitude", 1.0))
    try:
        geometry = ArrayGeometry(m, spacing)
        if user_angle_deg is None and "channel" in sc:
            if "user_angle_deg" in sc:
                raise ConfigError(
                    "give either 'scenario.user_angle_deg' or 'scenario.channel', not both"
                )
            entries = sc["channel"]
            try:
                channel = np.array(
                    [complex(float(re), float(im)) for re, im in entries],
                    dtype=np.complex128,
                )
            except (TypeError, ValueError) as exc:
                raise ConfigError(
                    "'scenario.channel' must be a list of [re, im] pairs"
                ) from exc
            return Scenario(geometry, math.radians(target_deg), channel, power, amplitude)
        if user_angle_deg is None:
            user_angle_deg = _number(sc, "scenario", "user_angle_deg")
        return Scenario.with_los_user(
            geometry,
            math.radians(target_deg),
            math.radians(float(user_angle_deg)),
            power,
            amplitude,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from exc


def build_radar_spec(config: dict) -> RadarSnrSpec:
    rb = _section(config, "radar")
    keys = [k for k in ("snr_loss_db", "gamma", "snr0") if k in rb]
    if len(keys) != 1:
        raise ConfigError(
            f"'radar' must contain exactly one of snr_loss_db, gamma, snr0; got {keys or 'none'}"
        )
    value = _number(rb, "radar", keys[0])
    field = {"snr0": "snr_threshold"}.get(keys[0], keys[0])
    return RadarSnrSpec(**{field: float(value)})


def resolve_gamma(config: dict, scenario: Scenario) -> float:
    try:
        return resolve_radar_spec(build_radar_spec(config), scenario).gamma
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid radar requirement: {exc}") from exc


def _loss_grid(config: dict) -> np.ndarray:
    sw = _section(config, "sweep", required=False)
    if "loss_grid_db" in sw:
        grid = sw["loss_grid_db"]
        if not isinstance(grid, list) or not grid:
            raise ConfigError("'sweep.loss_grid_db' must be a nonempty list")
        values = np.array([float(_e) for _e in grid], dtype=np.float64)
    elif {"loss_start_db", "loss_stop_db", "loss_step_db"} & sw.keys():
        start = float(_number(sw, "sweep", "loss_start_db", -40.0))
        stop = float(_number(sw, "sweep", "loss_stop_db", 0.0))
        step = float(_number(sw, "sweep", "loss_step_db", 0.25))
        if not step > 0:
            raise ConfigError("'sweep.loss_step_db' must be positive")
        count = round((stop - start) / step)
        if count < 1 or abs(count * step - (stop - start)) > 1e-9:
            raise ConfigError("loss grid bounds must differ by a whole number of steps")
        values = np.linspace(start, stop, count + 1)
    else:
        values = default_loss_grid_db()
    if np.any(values > 0.0):
        raise ConfigError("loss grid entries must be <= 0 dB")
    if np.any(np.diff(values) <= 0.0):
        raise ConfigError("loss grid must be strictly ascending")
    return values


def _out_dir(config: dict, args) -> Path:
    if args.out is not None:
        directory = Path(args.out)
    else:
        directory = Path(_section(config, "output", required=False).get("directory", "."))
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {directory}: {exc}") from exc
    return directory


def _emit_text(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        try:
            if path.parent != Path("."):
                path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write {path}: {exc}") from exc
        print(f"wrote {path}")


def _angle_label(angle_deg: float) -> str:
    text = f"{angle_deg:g}".replace("-", "m").replace(".", "p")
    return f"user{text}deg"


def cmd_solve(args) -> int:
    config = load_config(args.config)
    scenario = build_scenario(config)
    gamma = resolve_gamma(config, scenario)
    solution = solve_closed_form(scenario, gamma)
    achieved = radar_snr(solution.covariance, scenario)
    spec = resolve_radar_spec(RadarSnrSpec(gamma=gamma), scenario)
    lines = [
        f"case: {solution.case.value}",
        f"gamma: {gamma:.17g}",
        f"snr_loss_db: {spec.snr_loss_db:.17g}",
        f"coeff_a: {solution.coeff_a.real:.17g}{solution.coeff_a.imag:+.17g}j",
        f"coeff_b: {solution.coeff_b.real:.17g}{solution.coeff_b.imag:+.17g}j",
        f"capacity_bits: {solution.capacity_bits:.17g}",
        f"radar_snr: {achieved:.17g}",
        f"trace: {float(np.trace(solution.covariance).real):.17g}",
    ]
    _emit_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    losses = _loss_grid(config)
    sw = _section(config, "sweep", required=False)
    out_dir = _out_dir(config, args)
    angles = sw.get("user_angles_deg")
    if angles is not None:
        if not isinstance(angles, list) or not angles:
            raise ConfigError("'sweep.user_angles_deg' must be a nonempty list")
        jobs = [
            (f"tradeoff_{_angle_label(float(a))}.csv", build_scenario(config, float(a)))
            for a in angles
        ]
    else:
        jobs = [("tradeoff.csv", build_scenario(config))]
    for filename, scenario in jobs:
        points = tradeoff_sweep(scenario, losses)
        path = write_tradeoff_csv(points, out_dir / filename)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_beampattern(args) -> int:
    config = load_config(args.config)
    scenario = build_scenario(config)
    sw = _section(config, "sweep", required=False)
    losses = sw.get("beampattern_losses_db")
    if losses is None:
        losses = list(DEFAULT_BEAMPATTERN_LOSSES_DB)
    if not isinstance(losses, list) or not losses:
        raise ConfigError("'sweep.beampattern_losses_db' must be a nonempty list")
    out_dir = _out_dir(config, args)
    try:
        patterns = beampattern_sweep(scenario, [float(v) for v in losses])
    except ValueError as exc:
        raise ConfigError(f"invalid beampattern losses: {exc}") from exc
    path = write_beampattern_csv(patterns, out_dir / "beampattern.csv")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    config = load_config(args.config)
    scenario = build_scenario(config)
    gamma = resolve_gamma(config, scenario)
    vb = _section(config, "verify", required=False)
    resolution = args.resolution
    if resolution is None:
        resolution = vb.get("resolution")
    trials = args.trials
    if trials is None:
        trials = int(vb.get("trials", DEFAULT_TRIALS))
    seed = args.seed
    if seed is None:
        seed = int(vb.get("seed", DEFAULT_SEED))
    report = run_verification(
        scenario, gamma, resolution=resolution, trials=trials, seed=seed
    )
    _emit_text(json.dumps(report, indent=2) + "\n", args.out)
    if not report["passed"]:
        print(
            "verification FAILED: " + ", ".join(report["failed"]), file=sys.stderr
        )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="dfrc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="YAML config path")
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--seed", type=int, default=None, help="falsifier seed (verify)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="closed-form beamformer and capacity")
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("sweep", parents=[common], help="capacity versus SNR-loss CSV")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("beampattern", parents=[common], help="beam patterns at several SNR losses")
    p.set_defaults(func=cmd_beampattern)
    p = sub.add_parser("verify", parents=[common], help="cross-check the solution with the oracles")
    p.add_argument("--resolution", type=int, default=None, help="oracle grid points per axis")
    p.add_argument("--trials", type=int, default=None, help="falsifier trial count")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleRadarRequirement as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
