"""
Command line front end.

Examples:
  hardy-lab optimize --k 2
  hardy-lab scan --k 1 --t-min 0.1 --t-max 0.9 --steps 81 --visibility 0.96 --out scan.csv
  hardy-lab simulate --k 1 --visibility 0.96 --seed 7 --out report.json
  hardy-lab table --visibility 0.96
"""
from dataclasses import dataclass
from itertools import zip_longest
from typing import Optional
import argparse
import json
import logging
import math
import os
import sys
import numpy as np

from . import config, utils
from .apparatus import analyzer_settings, settings_for_state, simulated_report, simulated_scan
from .data_csv_saver import DataCSVSaver
from .errors import HardyLabError, SizeGuardError
from .ladder import LadderConfig, ladder_angles, optimize_t, scan_ladder, violation_threshold
from .lhv import lhv_max, strategy_count

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("angles", "optimize", "scan", "simulate", "lhv", "table", "threshold", "sweep")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class Command:
    subcommand: str
    k: int
    phi: float = config.params["phi"]
    visibility: float = config.params["visibility"]
    t: Optional[float] = None
    t_min: float = config.params["t_min"]
    t_max: float = config.params["t_max"]
    steps: int = config.params["steps"]
    counts: int = config.params["counts"]
    seed: int = config.params["seed"]
    workers: int = config.exec_params["worker_processes"]
    out: Optional[str] = None
    fmt: str = "json"
    verbose: bool = False

    def ts(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.steps)


def build_parser() -> argparse.ArgumentParser:
    k_parent = argparse.ArgumentParser(add_help=False)
    k_parent.add_argument("--k", dest="k", type=int, default=None, help="Number of ladder steps K.")
    k_parent.add_argument("--out", dest="out", default=None, help="Output file (default: standard output).")
    k_parent.add_argument("-v", "--verbose", dest="verbose", action="store_true", help="Log progress to stderr.")

    state_parent = argparse.ArgumentParser(add_help=False)
    state_parent.add_argument("--phi", dest="phi", type=float, default=config.params["phi"],
                              help="Relative phase of |LL> in radians.")
    state_parent.add_argument("--visibility", dest="visibility", type=float, default=config.params["visibility"],
                              help="Interference visibility V in [0, 1].")

    t_parent = argparse.ArgumentParser(add_help=False)
    t_parent.add_argument("--t", dest="t", type=float, default=None,
                          help="Amplitude ratio t in (0, 1] (default: optimum t* at V=1).")

    range_parent = argparse.ArgumentParser(add_help=False)
    range_parent.add_argument("--t-min", dest="t_min", type=float, default=config.params["t_min"])
    range_parent.add_argument("--t-max", dest="t_max", type=float, default=config.params["t_max"])
    range_parent.add_argument("--steps", dest="steps", type=int, default=config.params["steps"],
                              help="Number of t values, endpoints included.")
    range_parent.add_argument("--workers", dest="workers", type=int, default=config.exec_params["worker_processes"],
                              help="Worker processes for the sweep.")

    sampling_parent = argparse.ArgumentParser(add_help=False)
    sampling_parent.add_argument("--counts", dest="counts", type=int, default=config.params["counts"],
                                 help="Coincidences per setting pair.")
    sampling_parent.add_argument("--seed", dest="seed", type=int, default=config.params["seed"],
                                 help="Unsigned 64-bit seed.")

    format_parent = argparse.ArgumentParser(add_help=False)
    format_parent.add_argument("--format", dest="fmt", choices=FORMATS, default=None)

    parser = argparse.ArgumentParser(prog="hardy-lab", description="Hardy ladder nonlocality laboratory.")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="{}".format("|".join(SUBCOMMANDS)))
    subparsers.required = True
    subparsers.add_parser("angles", parents=[k_parent, state_parent, t_parent, format_parent],
                          help="Analyzer angles and optical settings.")
    subparsers.add_parser("optimize", parents=[k_parent, state_parent], help="Maximize S_K over t.")
    subparsers.add_parser("scan", parents=[k_parent, state_parent, range_parent, format_parent],
                          help="Theory curves P_K(t) and S_K(t).")
    subparsers.add_parser("simulate", parents=[k_parent, state_parent, t_parent, sampling_parent],
                          help="Simulated coincidence experiment.")
    subparsers.add_parser("lhv", parents=[k_parent], help="Local hidden variable bound by enumeration.")
    subparsers.add_parser("table", parents=[k_parent, state_parent, sampling_parent],
                          help="Simulated counterpart of the K=1..k probability table.")
    subparsers.add_parser("threshold", parents=[k_parent, state_parent],
                          help="Smallest t above t* where the violation is lost.")
    subparsers.add_parser("sweep", parents=[k_parent, state_parent, range_parent, sampling_parent, format_parent],
                          help="Simulated experimental points along t.")
    return parser


def _validate(parser: argparse.ArgumentParser, opts: argparse.Namespace):
    def in_unit_interval(t):
        return math.isfinite(t) and 0. < t <= 1.

    if opts.k < 1:
        parser.error("--k must be >= 1, got {}".format(opts.k))
    if opts.subcommand == "lhv":
        try:
            strategy_count(opts.k)
        except SizeGuardError as e:
            parser.error(str(e))
    if not math.isfinite(getattr(opts, "phi", 0.)):
        parser.error("--phi must be finite")
    if not 0. <= getattr(opts, "visibility", 1.) <= 1.:
        parser.error("--visibility must lie in [0, 1], got {}".format(opts.visibility))
    if getattr(opts, "t", None) is not None and not in_unit_interval(opts.t):
        parser.error("--t must lie in (0, 1], got {}".format(opts.t))
    if hasattr(opts, "t_min"):
        if not (in_unit_interval(opts.t_min) and in_unit_interval(opts.t_max)) or opts.t_min > opts.t_max:
            parser.error("need 0 < --t-min <= --t-max <= 1, got {} and {}".format(opts.t_min, opts.t_max))
        if opts.steps < 1 or (opts.steps == 1 and opts.t_min != opts.t_max):
            parser.error("--steps must be >= 2 for a range, got {}".format(opts.steps))
        if opts.workers < 1:
            parser.error("--workers must be >= 1, got {}".format(opts.workers))
    if hasattr(opts, "counts") and opts.counts < 1:
        parser.error("--counts must be >= 1, got {}".format(opts.counts))
    if hasattr(opts, "seed") and not 0 <= opts.seed < config.params["max_seed"]:
        parser.error("--seed must be an unsigned 64-bit integer, got {}".format(opts.seed))


def parse_args(argv=None) -> Command:
    """Parse and validate argv; usage errors exit with status 2."""
    parser = build_parser()
    opts = parser.parse_args(argv)
    if opts.k is None:
        opts.k = 2 if opts.subcommand == "table" else config.params["k"]
    _validate(parser, opts)

    values = {key: value for key, value in vars(opts).items() if value is not None}
    if values.get("fmt") is None:
        values["fmt"] = "csv" if opts.subcommand in ("scan", "sweep") else "json"
    return Command(**values)


# Payload helpers ---------------------------------------------------------------

def _state_config(cmd: Command, K: int, t: Optional[float]) -> dict:
    return {"K": K, "t": t, "phi": cmd.phi, "visibility": cmd.visibility}


def _angles_payload(thetas) -> list:
    return [{"k": k, "theta": theta, "theta_deg": float(np.degrees(theta))} for k, theta in enumerate(thetas)]


def report_payload(report) -> dict:
    terms = report.labelled_terms()
    payload = {
        "config": {"K": report.config.K, "t": report.config.t, "phi": report.phi,
                   "visibility": report.visibility},
        "angles": _angles_payload(report.angles.thetas),
        "probabilities": {label: value for label, value, _ in terms},
        "s_value": report.s_value,
        "uncertainties": None,
        "seed": report.seed,
    }
    if report.uncertainties is not None:
        sigmas = {label: sigma for label, _, sigma in terms}
        sigmas["S_{}".format(report.config.K)] = report.uncertainties.s_value
        payload["uncertainties"] = sigmas
        payload["error_model"] = report.error_model
        payload["counts"] = [{"setting": list(r.setting), "pp": r.c_pp, "pm": r.c_pm, "mp": r.c_mp, "mm": r.c_mm}
                             for r in report.records]
    return payload


def _write_json(stream, payload):
    stream.write(json.dumps(payload, indent=2))
    stream.write("\n")


def _operating_t(cmd: Command) -> float:
    if cmd.t is not None:
        return cmd.t
    t_star, _ = optimize_t(cmd.k, 1., cmd.phi)
    return t_star


# Subcommands ------------------------------------------------------------------

def run_angles(cmd: Command, stream):
    t = _operating_t(cmd)
    angles = ladder_angles(cmd.k, t)
    if cmd.fmt == "csv":
        saver = DataCSVSaver(stream, ("k", "theta"))
        for k, theta in enumerate(angles.thetas):
            saver.append_data(k, theta)
        return

    rows = _angles_payload(angles.thetas)
    for row in rows:
        optics = analyzer_settings(row["theta"])
        row.update({"hwp2_deg": float(np.degrees(optics.hwp2)), "vbs2_R": optics.vbs2_R, "vbs2_T": optics.vbs2_T})
    preparation = settings_for_state(t)
    _write_json(stream, {
        "config": _state_config(cmd, cmd.k, t),
        "angles": rows,
        "preparation": {"hwp1_deg": float(np.degrees(preparation.hwp1_a)),
                        "vbs1_T": preparation.vbs1_T_a, "vbs1_R": preparation.vbs1_R_a},
    })


def run_optimize(cmd: Command, stream):
    t_star, s_star = optimize_t(cmd.k, cmd.visibility, cmd.phi)
    _write_json(stream, {
        "config": _state_config(cmd, cmd.k, None),
        "t_star": t_star,
        "s_star": s_star,
        "angles": _angles_payload(ladder_angles(cmd.k, t_star).thetas),
    })


def run_scan(cmd: Command, stream):
    rows = scan_ladder(cmd.k, cmd.ts(), cmd.visibility, cmd.phi, workers=cmd.workers)
    columns = ("t", "P_K", "S_K") + tuple("theta_{}".format(k) for k in range(cmd.k + 1))
    if cmd.fmt == "csv":
        saver = DataCSVSaver(stream, columns)
        for row in rows:
            saver.append_data(*row)
        logger.debug("%d rows of %s written", saver.rows, ",".join(saver.columns))
        return
    _write_json(stream, {"config": _state_config(cmd, cmd.k, None),
                         "rows": [dict(zip(columns, row)) for row in rows]})


def run_simulate(cmd: Command, stream):
    report = simulated_report(LadderConfig(cmd.k, _operating_t(cmd)), cmd.phi, cmd.visibility, cmd.counts, cmd.seed)
    _write_json(stream, report_payload(report))


def run_lhv(cmd: Command, stream):
    _write_json(stream, {"K": cmd.k, "lhv_max": lhv_max(cmd.k), "strategies": strategy_count(cmd.k)})


def run_threshold(cmd: Command, stream):
    t_star, s_star = optimize_t(cmd.k, cmd.visibility, cmd.phi)
    _write_json(stream, {
        "config": _state_config(cmd, cmd.k, None),
        "t_star": t_star,
        "s_star": s_star,
        "t_cross": violation_threshold(cmd.k, cmd.visibility, cmd.phi),
    })


def run_sweep(cmd: Command, stream):
    reports = simulated_scan(cmd.k, cmd.ts(), cmd.visibility, cmd.phi, cmd.counts, cmd.seed)
    columns = ("t", "P_K", "sigma_P_K", "S_K", "sigma_S_K")
    rows = [(r.config.t, r.hardy_fraction, r.uncertainties.hardy_fraction, r.s_value, r.uncertainties.s_value)
            for r in reports]
    if cmd.fmt == "csv":
        saver = DataCSVSaver(stream, columns)
        for row in rows:
            saver.append_data(*row)
        logger.debug("%d rows of %s written", saver.rows, ",".join(saver.columns))
        return
    _write_json(stream, {"config": _state_config(cmd, cmd.k, None), "seed": cmd.seed,
                         "rows": [dict(zip(columns, row)) for row in rows]})


def format_table(reports) -> str:
    """Side-by-side columns, one per K, in the layout of the experimental table."""
    columns = []
    for report in reports:
        K = report.config.K
        cells = [("K={}, t={:.3f}".format(K, report.config.t), "")]
        cells += [(label, "{:.3f} +/- {:.3f}".format(value, sigma)) for label, value, sigma in report.labelled_terms()]
        cells.append(("S_{}".format(K), "{:.3f} +/- {:.3f}".format(report.s_value, report.uncertainties.s_value)))
        columns.append(cells)

    lines = []
    for row in zip_longest(*columns, fillvalue=("", "")):
        lines.append("".join("{:<14}{:<20}".format(label, value) for label, value in row).rstrip())
    return "\n".join(lines) + "\n"


def run_table(cmd: Command, stream):
    reports = []
    for K in range(1, cmd.k + 1):
        t_star, _ = optimize_t(K, 1., cmd.phi)
        reports.append(simulated_report(LadderConfig(K, t_star), cmd.phi, cmd.visibility, cmd.counts, cmd.seed))
    stream.write(format_table(reports))
    stream.write("uncertainties: one standard deviation, {} model, {} pairs per setting, seed {}\n".format(
        reports[0].error_model, cmd.counts, cmd.seed))


HANDLERS = {
    "angles": run_angles,
    "optimize": run_optimize,
    "scan": run_scan,
    "simulate": run_simulate,
    "lhv": run_lhv,
    "table": run_table,
    "threshold": run_threshold,
    "sweep": run_sweep,
}


def _write_output(cmd: Command):
    handler = HANDLERS[cmd.subcommand]
    if cmd.out is None:
        handler(cmd, sys.stdout)
        return
    utils.ensure_parent_dir(cmd.out)
    # the target only appears once the handler has finished
    partial = cmd.out + ".part"
    try:
        with open(partial, "w", newline="\n", encoding="utf-8") as stream:
            handler(cmd, stream)
        os.replace(partial, cmd.out)
    finally:
        if os.path.exists(partial):
            os.remove(partial)


def execute(cmd: Command) -> int:
    try:
        with np.errstate(all="raise", under="ignore"):
            _write_output(cmd)
    except (HardyLabError, OSError, FloatingPointError) as e:
        print("hardy-lab: error: {}".format(e), file=sys.stderr)
        return 1
    if cmd.out is not None:
        utils.notice("{} result saved in {}".format(cmd.subcommand, cmd.out))
    return 0


def main(argv=None) -> int:
    cmd = parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if cmd.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if cmd.verbose:
        config.print_config(file=sys.stderr)
    return execute(cmd)


if __name__ == '__main__':
    sys.exit(main())
