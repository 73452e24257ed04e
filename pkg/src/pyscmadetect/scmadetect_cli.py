"""
scmadetect_cli.py

Command line utility, installed with PyPi library pyscmadetect,
to run SCMA detection experiments and evaluate discretization
error bounds.

Usage:

scmadetect bler --k 4 --m 16 --detector dmpa --n0 0.002,0.02,0.2
   --w 0.05,0.3 --blocks 20000 --workers 4 --out bler.csv

scmadetect timing --df 2,3,4,5 --detectors mpa,llr,dmpa --trials 100 --out timing.csv

scmadetect compare --w 0.05,0.1 --n0 0.02,0.2 --trials 1000 --out divergence.csv

scmadetect bounds --df 3 --w 0.05 --sigma2 0.1 --suggest-w 0.01

Each table is accompanied by a <table>.cfg file which replays the run
with e.g. ``scmadetect bler -C bler.cfg``.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser
from logging import getLogger

from pyscmadetect._version import __version__ as VERSION
from pyscmadetect.bounds import (
    BoundInputs,
    abs_error_bound,
    abs_error_bound_complex,
    estimate_complexity,
    rel_error_bound,
    rel_error_bound_complex,
    suggest_w,
)
from pyscmadetect.dmpa import DiscretizationParams
from pyscmadetect.exceptions import (
    CodebookError,
    DetectionError,
    DiscretizationError,
    FactorGraphError,
    ParameterError,
    SpectrumError,
)
from pyscmadetect.globals import (
    BLER_COLUMNS,
    COMPLEXITY_PATHS,
    DEFAULT_BLOCKS,
    DEFAULT_DF_SWEEP,
    DEFAULT_ITERATIONS,
    DEFAULT_K,
    DEFAULT_M,
    DEFAULT_N0_SWEEP,
    DEFAULT_NWID,
    DEFAULT_SEED,
    DEFAULT_TIMING_TRIALS,
    DEFAULT_W,
    DET_DMPA,
    DET_LLR,
    DET_MPA,
    DETECTORS,
    DIVERGENCE_COLUMNS,
    DMPA_MODES,
    EPILOG,
    FIELD_COMPLEX,
    FIELD_REAL,
    MODE_AUTO,
    PATH_DMPA_1D,
    PATH_DMPA_2D,
    TIMING_COLUMNS,
    VERBOSITY_MEDIUM,
)
from pyscmadetect.harness import (
    SimConfig,
    emit_results,
    run_bler,
    run_divergence,
    run_timing,
)
from pyscmadetect.helpers import (
    common_args,
    floatlist,
    intlist,
    progbar,
    set_common_args,
    strlist,
)

CMD_BLER = "bler"
CMD_TIMING = "timing"
CMD_COMPARE = "compare"
CMD_BOUNDS = "bounds"

DOMAIN_ERRORS = (
    CodebookError,
    DetectionError,
    DiscretizationError,
    FactorGraphError,
    ParameterError,
    SpectrumError,
)


def _csv(vals) -> str:
    return ",".join(str(v) for v in vals)


class ExperimentRunner:
    """
    Experiment Runner Class.

    Runs one CLI subcommand and writes its result table.
    """

    def __init__(self, **kwargs):
        """
        Constructor.

        :param str command: (kwarg) bler, timing, compare or bounds
        :param str out: (kwarg) output table path (not used by bounds)
        :param int verbosity: (kwarg) verbosity, progress bar shown >= 1
        :param kwargs: remaining subcommand settings, echoed to the
            reproducibility stanza
        :raises: ParameterError
        """

        self.logger = getLogger(__name__)
        self._command = kwargs.pop("command", None)
        self._out = kwargs.pop("out", None)
        self._verbosity = int(kwargs.pop("verbosity", VERBOSITY_MEDIUM))
        kwargs.pop("logtofile", None)
        self._settings = kwargs
        self._handlers = {
            CMD_BLER: self.bler,
            CMD_TIMING: self.timing,
            CMD_COMPARE: self.compare,
            CMD_BOUNDS: self.bounds,
        }
        if self._command not in self._handlers:
            raise ParameterError(f"Unknown command {self._command}")

    def run(self):
        """
        Run the configured subcommand.

        :returns: records produced
        """

        self.logger.info(f"Running {self._command} with {self._settings}")
        return self._handlers[self._command]()

    def _progress(self, done: int, total: int):
        """
        Console progress bar.
        """

        if self._verbosity >= VERBOSITY_MEDIUM:
            progbar(done, total)
            if done >= total:
                print()

    def _config(self, **overrides) -> SimConfig:
        """
        Simulation config from settings.
        """

        s = self._settings
        cfg = {
            "K": s.get("k", DEFAULT_K),
            "M": s.get("m", DEFAULT_M),
            "n0": s.get("n0", DEFAULT_N0_SWEEP),
            "w": s.get("w", (DEFAULT_W,)),
            "nwid": s.get("nwid", DEFAULT_NWID),
            "iterations": s.get("iters", DEFAULT_ITERATIONS),
            "seed": s.get("seed", DEFAULT_SEED),
        }
        cfg.update(overrides)
        return SimConfig(**cfg)

    def bler(self) -> list:
        """
        Block error rate sweep.
        """

        s = self._settings
        cfg = self._config(
            detector=s["detector"],
            blocks=s["blocks"],
            codebook=s.get("codebook"),
            mode=s["mode"],
            workers=s["workers"],
        )
        records = run_bler(cfg, self._progress)
        emit_results(records, self._out, BLER_COLUMNS, self._settings)
        return records

    def timing(self) -> list:
        """
        Detection timing sweep over d_f.
        """

        s = self._settings
        cfg = self._config(n0=(s["n0"],), w=(s["w"],))
        records = run_timing(
            cfg,
            s["df"],
            s["detectors"],
            s["trials"],
            s["complex2d"],
            self._progress,
        )
        emit_results(records, self._out, TIMING_COLUMNS, self._settings)
        return records

    def compare(self) -> list:
        """
        Discretized vs exact resource message divergence.
        """

        s = self._settings
        records = run_divergence(
            self._config(),
            s["trials"],
            s["field"],
            s["aligned"],
            self._progress,
        )
        emit_results(records, self._out, DIVERGENCE_COLUMNS, self._settings)
        return records

    def bounds(self) -> dict:
        """
        Print error bounds, suggested w and operation counts.
        """

        s = self._settings
        inp = BoundInputs(
            s["df"],
            s["w"],
            s["nwid"],
            sigma2=s.get("sigma2"),
            n0=s.get("n0"),
            wid=s["wid"],
        )
        if inp.sigma2 is not None:
            res = {
                "field": FIELD_REAL,
                "sigma2": inp.sigma2,
                "abs_error_bound": abs_error_bound(inp),
                "rel_error_bound": rel_error_bound(inp),
            }
        else:
            res = {
                "field": FIELD_COMPLEX,
                "N0": inp.n0,
                "abs_error_bound": abs_error_bound_complex(inp),
                "rel_error_bound": rel_error_bound_complex(inp),
            }
        if s.get("suggest_w") is not None:
            res["suggested_w"] = suggest_w(s["suggest_w"], inp, res["field"])
        params = DiscretizationParams(inp.w, wid=inp.wid, nwid=inp.nwid)
        for path in COMPLEXITY_PATHS:
            est = estimate_complexity(inp.d_f, s["m"], params, path)
            res[f"ops_{path}"] = est.operations
            if path in (PATH_DMPA_1D, PATH_DMPA_2D):
                res[f"N_{path}"] = est.transform_length
        print(f"d_f={inp.d_f} w={inp.w} nwid={inp.nwid} wid={inp.wid} M={s['m']}")
        for key, val in res.items():
            print(f"{key}={val}")
        return res


def _add_model_args(ap: ArgumentParser, k: bool = True):
    """
    Arguments shared by the simulation subcommands.
    """

    if k:
        ap.add_argument(
            "--k", required=False, help="Resource count K", type=int, default=DEFAULT_K
        )
    ap.add_argument(
        "--m", required=False, help="Codewords per layer M", type=int, default=DEFAULT_M
    )
    ap.add_argument(
        "--nwid",
        required=False,
        help="Noise PDF truncation half-width",
        type=float,
        default=DEFAULT_NWID,
    )
    ap.add_argument(
        "--iters",
        required=False,
        help="Detector iterations",
        type=int,
        default=DEFAULT_ITERATIONS,
    )
    ap.add_argument(
        "--seed", required=False, help="Master RNG seed", type=int, default=DEFAULT_SEED
    )


def build_parser() -> ArgumentParser:
    """
    Build the scmadetect argument parser.

    :returns: parser with bler, timing, compare and bounds subcommands
    :rtype: ArgumentParser
    """

    ap = ArgumentParser(
        prog="scmadetect", epilog=EPILOG, formatter_class=ArgumentDefaultsHelpFormatter
    )
    ap.add_argument("-V", "--version", action="version", version="%(prog)s " + VERSION)
    sub = ap.add_subparsers(dest="command", required=True)
    parent = [common_args("scmadetect")]
    fmt = ArgumentDefaultsHelpFormatter

    bler = sub.add_parser(
        CMD_BLER, parents=parent, formatter_class=fmt, help="Monte Carlo BLER sweep"
    )
    _add_model_args(bler)
    bler.add_argument(
        "--detector",
        required=False,
        help="Detector",
        choices=DETECTORS,
        default=DET_MPA,
    )
    bler.add_argument(
        "--n0",
        required=False,
        help="Comma-separated noise levels N0",
        type=floatlist,
        default=_csv(DEFAULT_N0_SWEEP),
    )
    bler.add_argument(
        "--w",
        required=False,
        help="Comma-separated sampling intervals (dmpa only)",
        type=floatlist,
        default=str(DEFAULT_W),
    )
    bler.add_argument(
        "--blocks",
        required=False,
        help="Transmissions per N0 point (each carries J blocks)",
        type=int,
        default=DEFAULT_BLOCKS,
    )
    bler.add_argument(
        "--codebook",
        required=False,
        help="Codebook file (generated from seed if omitted)",
        default=None,
    )
    bler.add_argument(
        "--mode",
        required=False,
        help="DMPA mode",
        choices=DMPA_MODES,
        default=MODE_AUTO,
    )
    bler.add_argument(
        "--workers", required=False, help="Worker threads", type=int, default=1
    )
    bler.add_argument("--out", required=False, help="Output table", default="bler.csv")

    timing = sub.add_parser(
        CMD_TIMING, parents=parent, formatter_class=fmt, help="Detection timing"
    )
    _add_model_args(timing, k=False)
    timing.add_argument(
        "--df",
        required=False,
        help="Comma-separated resource degrees (K = d_f + 1)",
        type=intlist,
        default=_csv(DEFAULT_DF_SWEEP),
    )
    timing.add_argument(
        "--detectors",
        required=False,
        help="Comma-separated detectors",
        type=strlist,
        default=_csv((DET_MPA, DET_LLR, DET_DMPA)),
    )
    timing.add_argument(
        "--trials",
        required=False,
        help="Timed detections per point",
        type=int,
        default=DEFAULT_TIMING_TRIALS,
    )
    timing.add_argument(
        "--w", required=False, help="Sampling interval", type=float, default=DEFAULT_W
    )
    timing.add_argument(
        "--n0", required=False, help="Noise level N0", type=float, default=0.02
    )
    timing.add_argument(
        "--complex2d",
        required=False,
        help="Time the complex (2-D) paths instead of the split paths",
        action="store_true",
    )
    timing.add_argument(
        "--out", required=False, help="Output table", default="timing.csv"
    )

    compare = sub.add_parser(
        CMD_COMPARE,
        parents=parent,
        formatter_class=fmt,
        help="Discretized vs exact resource message divergence",
    )
    _add_model_args(compare)
    compare.add_argument(
        "--w",
        required=False,
        help="Comma-separated sampling intervals",
        type=floatlist,
        default="0.05,0.1",
    )
    compare.add_argument(
        "--n0",
        required=False,
        help="Comma-separated noise levels N0",
        type=floatlist,
        default="0.02,0.2",
    )
    compare.add_argument(
        "--trials",
        required=False,
        help="Random resource updates per point",
        type=int,
        default=100,
    )
    compare.add_argument(
        "--field",
        required=False,
        help="Real (1-D) or complex (2-D) field",
        choices=(FIELD_REAL, FIELD_COMPLEX),
        default=FIELD_REAL,
    )
    compare.add_argument(
        "--aligned",
        required=False,
        help="Snap codewords and received samples onto the grid",
        action="store_true",
    )
    compare.add_argument(
        "--out", required=False, help="Output table", default="divergence.csv"
    )

    bounds = sub.add_parser(
        CMD_BOUNDS, parents=parent, formatter_class=fmt, help="Error bounds"
    )
    bounds.add_argument(
        "--df", required=False, help="Resource degree d_f", type=int, default=3
    )
    bounds.add_argument(
        "--w", required=False, help="Sampling interval", type=float, default=DEFAULT_W
    )
    bounds.add_argument(
        "--nwid",
        required=False,
        help="Noise PDF truncation half-width",
        type=float,
        default=DEFAULT_NWID,
    )
    bounds.add_argument(
        "--wid",
        required=False,
        help="Codeword amplitude bound",
        type=float,
        default=1.0,
    )
    bounds.add_argument(
        "--m",
        required=False,
        help="Codewords per layer (operation counts)",
        type=int,
        default=DEFAULT_M,
    )
    noise = bounds.add_mutually_exclusive_group(required=True)
    noise.add_argument("--sigma2", help="Real-field noise variance", type=float)
    noise.add_argument("--n0", help="Complex noise variance N0", type=float)
    bounds.add_argument(
        "--suggest-w",
        required=False,
        help="Relative error target for which to suggest w",
        type=float,
        default=None,
    )
    return ap


def main(argv: list = None) -> int:
    """
    CLI Entry point.

    :param list argv: argument tokens (sys.argv[1:] if None)
    :returns: exit code, 0 on success, 1 on validation failure
    :rtype: int
    """

    logger = getLogger(__name__)
    try:
        kwargs = set_common_args("scmadetect", build_parser(), argv=argv)
        ExperimentRunner(**kwargs).run()
    except DOMAIN_ERRORS as err:
        logger.error(f"{type(err).__name__}: {err}")
        return 1
    except (FileNotFoundError, ValueError) as err:
        logger.error(err)
        return 1
    except KeyboardInterrupt:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
