"""
Command-line front door for the half-line spectral lab.
Controller layer only -- does NOT implement numerics.

    python app.py <command> [--config path.json] [--out dir] [--seed N]

Commands: transforms-check | sets | spectral-sweep | observe | constants

Every config is validated before any computation starts; outputs are
written at the very end so a rejected run leaves no partial files.
"""

import argparse
import json
import logging
import math
import os
import sys
import uuid
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from adapters.reports import (
    build_report,
    rows_to_frame,
    summarize_ratio,
    write_csv,
    write_json,
)
from evolution.observability import estimate_cobs, miller_time
from evolution.propagator import Propagator, PropagatorSpec
from scripts.config import Config
from scripts.errors import ConfigError, InvalidParameterError, LabError, ResourceCapError
from scripts.experiment_config import (
    COMMANDS,
    integer,
    load_config,
    check_keys,
    number,
    number_list,
    parse_grid,
    parse_omega,
    parse_operator,
    parse_seed,
    validate,
)
from scripts.logger_config import setup_logger
from sets.interval_set import IntervalSet
from sets.thickness import (
    MU_TO_THICK,
    THICK_TO_MU,
    ThicknessWitness,
    mu_thickness_profile,
    thickness_profile,
    thickness_transfer_constants,
    trim_tail,
)
from spectral.constants import horizon_sweep, sweep_constant
from spectral.explicit import ExplicitConstants
from transforms.validator import TransformValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CHECK_FAILED = 3
EXIT_RESOURCE_CAP = 4

DEFAULT_HORIZONS = (10.0, 20.0, 40.0)
DEFAULT_BLOWUP_THRESHOLD = 10.0
DEFAULT_ENSEMBLE_SIZE = 32

SWEEP_COLUMNS = ("a", "b", "C_star", "lambda_min", "dim", "n_grid")
HORIZON_COLUMNS = ("x_max", "C_star", "lambda_min", "dim", "n_grid")

# (file name, writer(path)) pairs collected while a command runs
Outputs = List[Tuple[str, Callable[[str], Any]]]


class CommandResult:
    """Report body, deferred file writers and exit code of one command"""

    def __init__(self, body: Dict[str, Any], outputs: Outputs, exit_code: int = EXIT_OK):
        self.body = body
        self.outputs = outputs
        self.exit_code = exit_code


def _build_error_response(run_id: str, message: str, exit_code: int, pointer: Optional[str] = None) -> int:
    """Write the standard error payload to stderr and return the exit code.

    Every key always exists so scripts can parse failures uniformly.
    """
    payload = {
        "run_id": run_id,
        "status": "failed",
        "exit_code": exit_code,
        "error_message": message,
        "pointer": pointer,
    }
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return exit_code


# ---------------------------------------------------------------------- #
# transforms-check
# ---------------------------------------------------------------------- #
def _prepare_transforms_check(config: Dict[str, Any], seed: int):
    x_grid, k_grid, grid_cfg = parse_grid(config.get("grid"))
    nus = number_list(config, "nus", "", [0.5])
    for i, nu in enumerate(nus):
        if nu < 0:
            raise ConfigError(f"nu must be >= 0, got {nu}", f"/nus/{i}")
    betas = number_list(config, "betas", "", [1.0, -1.0])
    phases = number_list(config, "phases", "", [0.0, math.pi / 4, math.pi / 2])

    tolerances = dict(Config.CHECK_TOLERANCES)
    overrides = config.get("tolerances", {})
    if not isinstance(overrides, dict):
        raise ConfigError("'tolerances' must be an object", "/tolerances")
    for key in overrides:
        if key not in tolerances:
            raise ConfigError(f"unknown tolerance '{key}'", f"/tolerances/{key}")
        tolerances[key] = number(overrides, key, "/tolerances", minimum=0.0, exclusive=True)

    normalized = {"grid": grid_cfg, "nus": nus, "betas": betas, "phases": phases,
                  "tolerances": tolerances, "seed": seed}
    return normalized, (x_grid, k_grid, nus, betas, phases, tolerances)


def cmd_transforms_check(params) -> CommandResult:
    x_grid, k_grid, nus, betas, phases, tolerances = params
    result = TransformValidator(tolerances).run(x_grid, k_grid, nus=nus, betas=betas, phases=phases)
    exit_code = EXIT_OK if result["passed"] else EXIT_CHECK_FAILED
    return CommandResult(result, [], exit_code)


# ---------------------------------------------------------------------- #
# sets
# ---------------------------------------------------------------------- #
def _prepare_sets(config: Dict[str, Any], seed: int):
    omega = parse_omega(config.get("omega"))
    L_values = number_list(config, "L_values", "", [1.0, 2.0, 4.0])
    for i, L in enumerate(L_values):
        if L <= 0:
            raise ConfigError(f"L must be positive, got {L}", f"/L_values/{i}")

    horizon = None
    if "horizon" in config:
        horizon = number(config, "horizon", "", minimum=0.0, exclusive=True)
    if not omega.is_periodic and not omega.is_empty:
        if horizon is None:
            raise ConfigError("aperiodic omega needs a scan 'horizon'", "/horizon")
        for i, L in enumerate(L_values):
            if L > horizon:
                raise ConfigError(f"L={L} exceeds horizon {horizon}", f"/L_values/{i}")

    nu = number(config, "nu", "", minimum=0.0) if "nu" in config else None

    transfer = None
    if "transfer" in config:
        block = config["transfer"]
        if not isinstance(block, dict):
            raise ConfigError("'transfer' must be an object", "/transfer")
        transfer = _transfer_args(block, "/transfer")

    trim = None
    if "trim_tail" in config:
        trim = _trim_args(config["trim_tail"], "/trim_tail")
        if not omega.is_periodic and horizon is not None and trim["L1"] > horizon:
            raise ConfigError("trimmed window L1 exceeds the scan horizon", "/trim_tail/c")

    normalized = {"omega": omega.to_dict(), "L_values": L_values, "horizon": horizon, "nu": nu,
                  "transfer": transfer, "trim_tail": trim, "seed": seed}
    return normalized, (omega, L_values, horizon, nu, transfer, trim)


def _transfer_args(block: Dict[str, Any], pointer: str, extra: Tuple[str, ...] = ()) -> Dict[str, float]:
    check_keys(block, {"r", "L", "nu", *extra}, pointer)
    r = number(block, "r", pointer, minimum=0.0, exclusive=True)
    if r > 1:
        raise ConfigError(f"r must lie in (0, 1], got {r}", f"{pointer}/r")
    return {
        "r": r,
        "L": number(block, "L", pointer, minimum=0.0, exclusive=True),
        "nu": number(block, "nu", pointer, 0.0, minimum=0.0),
    }


def _trim_args(block: Any, pointer: str) -> Dict[str, float]:
    if not isinstance(block, dict):
        raise ConfigError("'trim_tail' must be an object", pointer)
    check_keys(block, {"c", "L", "r"}, pointer)
    c = number(block, "c", pointer, minimum=0.0)
    L = number(block, "L", pointer, minimum=0.0, exclusive=True)
    r = number(block, "r", pointer, minimum=0.0, exclusive=True)
    if r > 1:
        raise ConfigError(f"r must lie in (0, 1], got {r}", f"{pointer}/r")
    return {"c": c, "L": L, "r": r, "L1": (math.floor(c / L) + 2) * L}


def cmd_sets(params) -> CommandResult:
    omega, L_values, horizon, nu, transfer, trim = params

    rows = []
    for L in L_values:
        row = {"L": L, "gamma": thickness_profile(omega, L, horizon)}
        if nu is not None:
            row["mu_gamma"] = mu_thickness_profile(omega, nu, L, horizon)
        rows.append(row)
    columns = ("L", "gamma", "mu_gamma") if nu is not None else ("L", "gamma")
    frame = rows_to_frame(rows, columns)

    body: Dict[str, Any] = {"profile": rows}
    if transfer is not None:
        body["transfer"] = {
            MU_TO_THICK: thickness_transfer_constants(MU_TO_THICK, **transfer),
            THICK_TO_MU: thickness_transfer_constants(THICK_TO_MU, **transfer),
        }
    if trim is not None:
        witness = ThicknessWitness(trim["r"], trim["L"])
        trimmed, L1, r1 = trim_tail(omega, trim["c"], witness)
        gamma1 = thickness_profile(trimmed, L1, horizon)
        body["trim_tail"] = {
            "c": trim["c"],
            "witness": {"r": witness.gamma, "L": witness.L},
            "witness_holds": witness.verify(omega, horizon),
            "L1": L1,
            "r1": r1,
            "trimmed_omega": trimmed.to_dict(),
            "trimmed_gamma": gamma1,
            "verified": gamma1 >= r1 - 1e-12,
        }

    outputs: Outputs = [("thickness.csv", lambda path: write_csv(path, frame))]
    return CommandResult(body, outputs)


# ---------------------------------------------------------------------- #
# spectral-sweep
# ---------------------------------------------------------------------- #
def _prepare_spectral_sweep(config: Dict[str, Any], seed: int):
    x_grid, k_grid, grid_cfg = parse_grid(config.get("grid"))
    op = parse_operator(config.get("operator"))
    omega = parse_omega(config.get("omega"))
    band_length = number(config, "band_length", "", minimum=0.0, exclusive=True)
    a_values = number_list(config, "a_values", "")
    for i, a in enumerate(a_values):
        if a < 0 or a + band_length > k_grid.x_max:
            raise ConfigError(
                f"band [{a}, {a + band_length}] must lie inside [0, k_max={k_grid.x_max}]", f"/a_values/{i}"
            )
    dim = integer(config, "dim", "", Config.BAND_DIM_CAP) if "dim" in config else None

    horizons = number_list(config, "horizons", "", list(DEFAULT_HORIZONS), min_items=0)
    for i, h in enumerate(horizons):
        if h <= 0:
            raise ConfigError(f"horizon must be positive, got {h}", f"/horizons/{i}")
    if "horizon_band" in config:
        horizon_band = number_list(config, "horizon_band", "", min_items=2)
        if len(horizon_band) != 2 or not 0 <= horizon_band[0] < horizon_band[1] <= k_grid.x_max:
            raise ConfigError("'horizon_band' must be [a, b] with 0 <= a < b <= k_max", "/horizon_band")
    else:
        horizon_band = [a_values[0], a_values[0] + band_length]
    threshold = number(config, "blowup_threshold", "", DEFAULT_BLOWUP_THRESHOLD, minimum=1.0)

    normalized = {"grid": grid_cfg, "operator": op.to_dict(), "omega": omega.to_dict(),
                  "band_length": band_length, "a_values": a_values, "dim": dim,
                  "horizons": horizons, "horizon_band": horizon_band,
                  "blowup_threshold": threshold, "seed": seed}
    return normalized, (op, omega, band_length, a_values, x_grid, k_grid, dim,
                        horizons, horizon_band, threshold)


def cmd_spectral_sweep(params) -> CommandResult:
    (op, omega, band_length, a_values, x_grid, k_grid, dim,
     horizons, horizon_band, threshold) = params

    rows = sweep_constant(op, omega, band_length, a_values, x_grid, k_grid, dim=dim)
    sweep_frame = rows_to_frame(rows, SWEEP_COLUMNS)
    outputs: Outputs = [("sweep.csv", lambda path: write_csv(path, sweep_frame))]

    summary: Dict[str, Any] = {
        "max_over_min": summarize_ratio([r.C_star for r in rows]),
        "blowup_ratio": None,
        "non_thick_detected": False,
    }
    horizon_rows = []
    if horizons:
        horizon_rows = horizon_sweep(
            op, omega, tuple(horizon_band), horizons, k_grid,
            nodes_per_unit=x_grid.n / x_grid.x_max, scheme=x_grid.scheme, dim=dim,
        )
        ordered = sorted(horizon_rows, key=lambda r: r.x_max)
        first, last = ordered[0].C_star, ordered[-1].C_star
        blowup = math.inf if first <= 0 else last / first
        summary["blowup_ratio"] = blowup
        summary["non_thick_detected"] = bool(blowup >= threshold)
        horizon_frame = rows_to_frame(horizon_rows, HORIZON_COLUMNS)
        outputs.append(("horizon.csv", lambda path: write_csv(path, horizon_frame)))

    if summary["non_thick_detected"]:
        logger.warning(f"non-thick detected: C* grew {summary['blowup_ratio']:.3g}x along the horizon")
    body = {"sweep": rows, "horizon": horizon_rows, "summary": summary}
    return CommandResult(body, outputs)


# ---------------------------------------------------------------------- #
# observe
# ---------------------------------------------------------------------- #
def _prepare_observe(config: Dict[str, Any], seed: int):
    x_grid, k_grid, grid_cfg = parse_grid(config.get("grid"))
    op = parse_operator(config.get("operator"))
    omega = parse_omega(config.get("omega"))
    T = number(config, "T", "", minimum=0.0, exclusive=True)
    n_t = integer(config, "n_t", "", minimum=4) if "n_t" in config else None
    size = integer(config, "ensemble_size", "", DEFAULT_ENSEMBLE_SIZE)

    miller = None
    if "miller" in config:
        block = config["miller"]
        if not isinstance(block, dict):
            raise ConfigError("'miller' must be an object", "/miller")
        check_keys(block, {"k", "D"}, "/miller")
        miller = (number(block, "k", "/miller", minimum=0.0, exclusive=True),
                  number(block, "D", "/miller", minimum=0.0, exclusive=True))

    try:
        spec = PropagatorSpec(op, x_grid, k_grid, T, n_t)
    except InvalidParameterError as exc:
        raise ConfigError(str(exc), "/T") from exc

    normalized = {"grid": grid_cfg, "operator": op.to_dict(), "omega": omega.to_dict(), "T": T,
                  "n_t": spec.n_t, "ensemble_size": size,
                  "miller": None if miller is None else {"k": miller[0], "D": miller[1]},
                  "seed": seed}
    return normalized, (spec, omega, size, seed, miller)


def cmd_observe(params) -> CommandResult:
    spec, omega, size, seed, miller = params
    propagator = Propagator(spec)
    report = estimate_cobs(spec, omega, ensemble_size=size, seed=seed, miller=miller, propagator=propagator)
    series = propagator.mass_time_series(report.worst_initial_datum, omega)
    outputs: Outputs = [
        ("mass_series.csv", lambda path: write_csv(path, series)),
        ("worst_datum.csv", lambda path: report.worst_initial_datum.to_csv(path)),
    ]
    return CommandResult(report.to_dict(), outputs)


# ---------------------------------------------------------------------- #
# constants
# ---------------------------------------------------------------------- #
def _entries(config: Dict[str, Any], key: str) -> List[Tuple[str, Dict[str, Any]]]:
    items = config.get(key, [])
    if not isinstance(items, list):
        raise ConfigError(f"'{key}' must be a list of objects", f"/{key}")
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ConfigError("entries must be objects", f"/{key}/{i}")
        out.append((f"/{key}/{i}", item))
    return out


def _prepare_constants(config: Dict[str, Any], seed: int):
    plan: Dict[str, List[Dict[str, Any]]] = {}

    plan["ls"] = []
    for ptr, item in _entries(config, "ls"):
        check_keys(item, {"nu", "r", "L", "h"}, ptr)
        r = number(item, "r", ptr, minimum=0.0, exclusive=True)
        if r > 1:
            raise ConfigError(f"r must lie in (0, 1], got {r}", f"{ptr}/r")
        plan["ls"].append({
            "nu": number(item, "nu", ptr, 0.0, minimum=0.0),
            "r": r,
            "L": number(item, "L", ptr, minimum=0.0, exclusive=True),
            "h": number(item, "h", ptr, minimum=0.0, exclusive=True),
        })

    plan["kovrijkine"] = []
    for ptr, item in _entries(config, "kovrijkine"):
        check_keys(item, {"beta", "r", "L", "b_minus_a", "c_beta"}, ptr)
        beta = number(item, "beta", ptr)
        if beta == 0:
            raise ConfigError("beta = 0 makes C0 diverge", f"{ptr}/beta")
        L = number(item, "L", ptr, minimum=0.5, exclusive=True)
        r = number(item, "r", ptr, minimum=0.0, exclusive=True)
        if r > 1:
            raise ConfigError(f"r must lie in (0, 1], got {r}", f"{ptr}/r")
        plan["kovrijkine"].append({
            "beta": beta, "r": r, "L": L,
            "b_minus_a": number(item, "b_minus_a", ptr, minimum=0.0, exclusive=True),
            "c_beta": number(item, "c_beta", ptr, 1.0, minimum=0.0, exclusive=True),
        })

    plan["transfer"] = []
    for ptr, item in _entries(config, "transfer"):
        direction = item.get("direction")
        if direction not in (THICK_TO_MU, MU_TO_THICK):
            raise ConfigError(f"direction must be '{THICK_TO_MU}' or '{MU_TO_THICK}'", f"{ptr}/direction")
        plan["transfer"].append({"direction": direction, **_transfer_args(item, ptr, ("direction",))})

    plan["trim_tail"] = [_trim_args(item, ptr) for ptr, item in _entries(config, "trim_tail")]

    plan["miller"] = []
    for ptr, item in _entries(config, "miller"):
        check_keys(item, {"k", "D"}, ptr)
        plan["miller"].append({
            "k": number(item, "k", ptr, minimum=0.0, exclusive=True),
            "D": number(item, "D", ptr, minimum=0.0, exclusive=True),
        })

    if not any(plan.values()):
        raise ConfigError("constants config requests nothing", "")
    return {**plan, "seed": seed}, plan


def cmd_constants(plan) -> CommandResult:
    body: Dict[str, Any] = {
        "ls": [
            {**p, "log10_C": ExplicitConstants.ls_predicted_constant(p["nu"], p["r"], p["L"], p["h"])}
            for p in plan["ls"]
        ],
        "kovrijkine": [ExplicitConstants.kovrijkine_constants(**p).to_dict() for p in plan["kovrijkine"]],
        "transfer": [
            {**p, "value": thickness_transfer_constants(p["direction"], p["r"], p["L"], p["nu"])}
            for p in plan["transfer"]
        ],
        "trim_tail": [],
        "miller": [{**p, "T": miller_time(p["k"], p["D"])} for p in plan["miller"]],
    }
    for p in plan["trim_tail"]:
        # only the witness arithmetic is needed here
        _, L1, r1 = trim_tail(IntervalSet.full(), p["c"], ThicknessWitness(p["r"], p["L"]))
        body["trim_tail"].append({"c": p["c"], "L": p["L"], "r": p["r"], "L1": L1, "r1": r1})
    return CommandResult(body, [])


COMMAND_TABLE = {
    "transforms-check": (_prepare_transforms_check, cmd_transforms_check),
    "sets": (_prepare_sets, cmd_sets),
    "spectral-sweep": (_prepare_spectral_sweep, cmd_spectral_sweep),
    "observe": (_prepare_observe, cmd_observe),
    "constants": (_prepare_constants, cmd_constants),
}


def _report_name(command: str) -> str:
    return command.replace("-", "_") + ".json"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="app.py",
        description="Half-line Schrodinger spectral lab: checks, sweeps and observability estimates",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", default=None, help="experiment config JSON (defaults when omitted)")
    ap.add_argument("--out", default=Config.REPORTS_DIR, help="output directory")
    ap.add_argument("--seed", type=int, default=None, help="override the config seed")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger("lab", Config.LOG_LEVEL, Config.LOG_DIR, root=True)
    run_id = uuid.uuid4().hex[:8]
    logger.info(f"[run_id={run_id}] {args.command} started (config={args.config}, out={args.out})")
    logger.debug(f"[run_id={run_id}] settings: {json.dumps(Config.get_config_summary(), default=str)}")

    prepare, run = COMMAND_TABLE[args.command]
    try:
        config = load_config(args.config) if args.config else {}
        validate(args.command, config)
        seed = parse_seed(config, args.seed)
        normalized, params = prepare(config, seed)
    except ConfigError as exc:
        logger.error(f"[run_id={run_id}] config rejected at '{exc.pointer}': {exc}")
        return _build_error_response(run_id, str(exc), EXIT_CONFIG, exc.pointer)

    try:
        result = run(params)
    except ResourceCapError as exc:
        logger.error(f"[run_id={run_id}] resource cap: {exc}")
        return _build_error_response(run_id, str(exc), EXIT_RESOURCE_CAP)
    except LabError as exc:
        logger.exception(f"[run_id={run_id}] {args.command} failed")
        return _build_error_response(run_id, str(exc), EXIT_CONFIG, getattr(exc, "pointer", None))

    report = build_report(args.command, normalized, result.body)
    report["status"] = "passed" if result.exit_code == EXIT_OK else "failed"
    os.makedirs(args.out, exist_ok=True)
    write_json(os.path.join(args.out, _report_name(args.command)), report)
    for name, writer in result.outputs:
        writer(os.path.join(args.out, name))

    logger.info(f"[run_id={run_id}] {args.command} finished with exit code {result.exit_code}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
