"""
harness.py

Monte Carlo BLER experiments, detection timing and discretized-vs-exact
message divergence, with comma-separated result tables.

Every trial draws from its own counter-based substream keyed by
(seed, trial index), so results do not depend on the number of worker
threads, and every detector and noise level sees the same bits and
standard normal draws.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-instance-attributes, too-many-locals

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from functools import partial
from logging import getLogger
from math import isnan, sqrt
from pathlib import Path
from timeit import Timer

import numpy as np
import pandas as pd
from scipy.stats import norm

from pyscmadetect._version import __version__ as VERSION
from pyscmadetect.bounds import (
    BoundInputs,
    abs_error_bound,
    abs_error_bound_complex,
    rel_error_bound,
    rel_error_bound_complex,
)
from pyscmadetect.channel import NoiseModel, draw_transmission, trial_rng
from pyscmadetect.codebook import (
    Codebook,
    Constellation,
    generate_separable_codebook,
    load_codebook,
    split_codebook,
)
from pyscmadetect.dmpa import (
    DiscretizationParams,
    detect_dmpa,
    update_resource_messages_dmpa,
)
from pyscmadetect.exceptions import ParameterError
from pyscmadetect.factorgraph import FactorGraph, build_regular_graph, from_codebook
from pyscmadetect.globals import (
    BLER_COLUMNS,
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
    DET_SPLIT_MPA,
    DETECTORS,
    DIVERGENCE_COLUMNS,
    DMPA_MODES,
    FIELD_COMPLEX,
    FIELD_REAL,
    MODE_AUTO,
    MODE_COMPLEX,
    MODE_SPLIT,
    TIMING_COLUMNS,
    WILSON_CONFIDENCE,
)
from pyscmadetect.helpers import round_half_away
from pyscmadetect.mpa import (
    Diagnostics,
    MessageSet,
    detect_llr_mpa,
    detect_mpa,
    detect_split_mpa,
    update_resource_messages,
)

logger = getLogger(__name__)

CHUNK = 64
"""Trials per worker task"""
REL_FLOOR = 1e-12
"""Oracle values below this are excluded from relative divergence"""


@dataclass(frozen=True)
class SimConfig:
    """
    Experiment configuration.

    :param int K: resource count
    :param int M: codewords per layer
    :param str detector: mpa, llr, split-mpa or dmpa
    :param tuple n0: noise levels N0
    :param tuple w: sampling intervals (discretized detector)
    :param float nwid: noise truncation half-width
    :param int iterations: detector iterations
    :param int blocks: transmissions per (N0, w) point
    :param int seed: master seed
    :param str codebook: codebook file, or None to generate from seed
    :param str mode: discretized detector mode
    :param int workers: worker threads for BLER trials
    :raises: ParameterError
    """

    K: int = DEFAULT_K
    M: int = DEFAULT_M
    detector: str = DET_MPA
    n0: tuple = DEFAULT_N0_SWEEP
    w: tuple = (DEFAULT_W,)
    nwid: float = DEFAULT_NWID
    iterations: int = DEFAULT_ITERATIONS
    blocks: int = DEFAULT_BLOCKS
    seed: int = DEFAULT_SEED
    codebook: str = None
    mode: str = MODE_AUTO
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n0", tuple(np.atleast_1d(self.n0).tolist()))
        object.__setattr__(self, "w", tuple(np.atleast_1d(self.w).tolist()))
        if self.detector not in DETECTORS:
            raise ParameterError(
                f"Unknown detector {self.detector}, expected one of {DETECTORS}"
            )
        if self.mode not in DMPA_MODES:
            raise ParameterError(
                f"Unknown mode {self.mode}, expected one of {DMPA_MODES}"
            )
        for name in ("blocks", "iterations", "workers"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be >= 1, got {getattr(self, name)}")
        if len(self.n0) == 0 or min(self.n0) <= 0:
            raise ParameterError(f"N0 values must be > 0, got {self.n0}")
        if len(self.w) == 0 or min(self.w) <= 0:
            raise ParameterError(f"w values must be > 0, got {self.w}")


@dataclass(frozen=True)
class BlerRecord:
    """
    Block error rate at one (detector, N0, w) point. w is NaN for
    detectors that do not discretize.
    """

    detector: str
    N0: float
    w: float
    blocks: int
    block_errors: int
    bler: float
    ci_lo: float
    ci_hi: float

    columns = BLER_COLUMNS


@dataclass(frozen=True)
class TimingRecord:
    """
    Wall-clock seconds per detection.
    """

    detector: str
    d_f: int
    trials: int
    mean_s: float
    std_s: float

    columns = TIMING_COLUMNS


@dataclass(frozen=True)
class DivergenceRecord:
    """
    Per-entry divergence of discretized from exact resource messages,
    with the corresponding bound values and whether the measured
    maxima exceed them.
    """

    field: str
    N0: float
    w: float
    trials: int
    entries: int
    max_abs: float
    mean_abs: float
    max_rel: float
    mean_rel: float
    abs_bound: float
    rel_bound: float
    abs_exceeded: bool = False
    rel_exceeded: bool = False

    columns = DIVERGENCE_COLUMNS


@dataclass
class _Tally:
    """Running totals for one BLER point."""

    errors: int = 0
    diagnostics: Diagnostics = field(default_factory=Diagnostics)


def wilson_interval(
    errors: int, n: int, confidence: float = WILSON_CONFIDENCE
) -> tuple:
    """
    Wilson score interval for a binomial proportion.

    :param int errors: failures
    :param int n: trials
    :param float confidence: two-sided confidence level
    :returns: (lower, upper), always containing errors/n
    :rtype: tuple
    """

    if n < 1:
        raise ParameterError(f"Trial count must be >= 1, got {n}")
    z = norm.ppf(1 - (1 - confidence) / 2)
    p = errors / n
    denom = 1 + z**2 / n
    center = (p + z**2 / (2 * n)) / denom
    half = z * sqrt(p * (1 - p) / n + z**2 / (4 * n**2)) / denom
    return min(max(center - half, 0.0), p), max(min(center + half, 1.0), p)


def build_codebook(cfg: SimConfig) -> tuple:
    """
    Codebook (loaded or generated) and its factor graph.

    :param SimConfig cfg: configuration
    :returns: (Codebook, FactorGraph)
    :rtype: tuple
    """

    if cfg.codebook:
        cb = load_codebook(cfg.codebook)
    else:
        cb = generate_separable_codebook(cfg.K, cfg.M, cfg.seed)
    return cb, from_codebook(cb)


def make_detector(
    name: str,
    cb: Codebook,
    graph: FactorGraph,
    noise: NoiseModel,
    iterations: int,
    params: DiscretizationParams = None,
    mode: str = MODE_AUTO,
):
    """
    Bind a detector to its configuration.

    :param str name: mpa, llr, split-mpa or dmpa
    :param Codebook cb: effective codebook
    :param FactorGraph graph: factor graph
    :param NoiseModel noise: noise model
    :param int iterations: iteration count
    :param DiscretizationParams params: discretization settings (dmpa)
    :param str mode: dmpa mode
    :returns: callable(y) -> DetectionResult
    :raises: ParameterError
    """

    # pylint: disable=too-many-arguments, too-many-positional-arguments

    if name == DET_MPA:
        return partial(
            detect_mpa, cb=cb, graph=graph, noise=noise, iterations=iterations
        )
    if name == DET_LLR:
        return partial(
            detect_llr_mpa, cb=cb, graph=graph, noise=noise, iterations=iterations
        )
    if name == DET_SPLIT_MPA:
        return partial(
            detect_split_mpa, cb=cb, graph=graph, noise=noise, iterations=iterations
        )
    if name == DET_DMPA:
        return partial(
            detect_dmpa,
            cb=cb,
            graph=graph,
            noise=noise,
            iterations=iterations,
            params=params,
            mode=mode,
        )
    raise ParameterError(f"Unknown detector {name}")


def _bler_chunk(
    trials: range, cb: Codebook, noise: NoiseModel, detect, seed: int
) -> _Tally:
    """
    Run a contiguous range of trials.
    """

    tally = _Tally()
    for t in trials:
        sent = draw_transmission(cb, noise, trial_rng(seed, t))
        res = detect(sent.y)
        tally.errors += sent.block_errors(res.decided)
        tally.diagnostics = tally.diagnostics.merge(res.diagnostics)
    return tally


def run_bler(cfg: SimConfig, progress=None) -> list:
    """
    Block error rate sweep over cfg.n0 (and cfg.w for the discretized
    detector).

    One block is one layer's codeword decision; each transmission
    contributes J blocks.

    :param SimConfig cfg: configuration
    :param progress: optional callable(done, total) for progress display
    :returns: list of BlerRecord in sweep order
    :rtype: list
    """

    cb, graph = build_codebook(cfg)
    ws = cfg.w if cfg.detector == DET_DMPA else (float("nan"),)
    points = [(n0, w) for n0 in cfg.n0 for w in ws]
    chunks = [
        range(i, min(i + CHUNK, cfg.blocks)) for i in range(0, cfg.blocks, CHUNK)
    ]
    total = len(points) * len(chunks)
    done = 0
    records = []
    for n0, w in points:
        noise = NoiseModel(n0, cfg.nwid)
        params = None if isnan(w) else DiscretizationParams(w, nwid=cfg.nwid)
        detect = make_detector(
            cfg.detector, cb, graph, noise, cfg.iterations, params, cfg.mode
        )
        tally = _Tally()
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_bler_chunk, chunk, cb, noise, detect, cfg.seed)
                for chunk in chunks
            ]
            for future in as_completed(futures):
                part = future.result()
                tally.errors += part.errors
                tally.diagnostics = tally.diagnostics.merge(part.diagnostics)
                done += 1
                if progress is not None:
                    progress(done, total)
        blocks = cfg.blocks * cb.J
        lo, hi = wilson_interval(tally.errors, blocks)
        rec = BlerRecord(
            cfg.detector, n0, w, blocks, tally.errors, tally.errors / blocks, lo, hi
        )
        logger.info(
            f"{rec.detector} N0={n0} w={w}: {rec.block_errors}/{rec.blocks} "
            f"block errors, BLER={rec.bler:.4g} [{lo:.4g}, {hi:.4g}]"
        )
        if tally.diagnostics.underflow or tally.diagnostics.out_of_grid:
            logger.warning(
                f"{rec.detector} N0={n0} w={w}: {tally.diagnostics.underflow} "
                f"underflow resets, {tally.diagnostics.out_of_grid} out-of-grid lookups"
            )
        records.append(rec)
    return records


def _timed_detector(name: str, cb, graph, noise, iterations, params, complex2d: bool):
    """
    Detector for timing: split (real / imaginary) paths unless complex2d.
    """

    # pylint: disable=too-many-arguments, too-many-positional-arguments

    if complex2d:
        return make_detector(name, cb, graph, noise, iterations, params, MODE_COMPLEX)
    if name in (DET_MPA, DET_SPLIT_MPA):
        return make_detector(DET_SPLIT_MPA, cb, graph, noise, iterations)
    if name == DET_LLR:
        return partial(
            detect_split_mpa,
            cb=cb,
            graph=graph,
            noise=noise,
            iterations=iterations,
            log_domain=True,
        )
    return make_detector(name, cb, graph, noise, iterations, params, MODE_SPLIT)


def run_timing(
    cfg: SimConfig,
    df_list: tuple = DEFAULT_DF_SWEEP,
    detectors: tuple = (DET_MPA, DET_LLR, DET_DMPA),
    trials: int = DEFAULT_TIMING_TRIALS,
    complex2d: bool = False,
    progress=None,
) -> list:
    """
    Time full detections on K = d_f + 1 regular graphs.

    Codebook, graph and received signals are prepared before timing and
    every detector gets one untimed warm-up call. Timing is sequential
    on the calling thread.

    :param SimConfig cfg: configuration (M, w, nwid, iterations, seed, n0[0])
    :param tuple df_list: resource degrees
    :param tuple detectors: detector names
    :param int trials: timed detections per (detector, d_f)
    :param bool complex2d: time the complex (2-D) paths instead of split paths
    :param progress: optional callable(done, total)
    :returns: list of TimingRecord
    :rtype: list
    """

    # pylint: disable=too-many-arguments, too-many-positional-arguments

    if trials < 1:
        raise ParameterError(f"Trials must be >= 1, got {trials}")
    for name in detectors:
        if name not in DETECTORS:
            raise ParameterError(
                f"Unknown detector {name}, expected one of {DETECTORS}"
            )
    noise = NoiseModel(cfg.n0[0], cfg.nwid)
    params = DiscretizationParams(cfg.w[0], nwid=cfg.nwid)
    records = []
    total = len(df_list) * len(detectors)
    for d_f in df_list:
        K = d_f + 1
        cb = generate_separable_codebook(K, cfg.M, cfg.seed)
        graph = build_regular_graph(K)
        sent = [
            draw_transmission(cb, noise, trial_rng(cfg.seed, t))
            for t in range(trials)
        ]
        for name in detectors:
            detect = _timed_detector(
                name, cb, graph, noise, cfg.iterations, params, complex2d
            )
            detect(sent[0].y)  # warm-up
            times = np.array(
                [Timer(partial(detect, s.y)).timeit(number=1) for s in sent]
            )
            rec = TimingRecord(
                name,
                d_f,
                trials,
                float(times.mean()),
                float(times.std(ddof=1)) if trials > 1 else 0.0,
            )
            logger.info(
                f"{name} d_f={d_f}: {rec.mean_s:.6f}s "
                f"+/- {rec.std_s:.6f}s per detection"
            )
            records.append(rec)
            if progress is not None:
                progress(len(records), total)
    return records


def snap_constellation(cons: Constellation, w: float) -> Constellation:
    """
    Move every component to its nearest multiple of w (per dimension).

    :param Constellation cons: constellation
    :param float w: grid step
    :returns: grid-aligned constellation
    :rtype: Constellation
    """

    return Constellation(tuple(snap_to_grid(p, w) for p in cons.points))


def snap_to_grid(x, w: float) -> np.ndarray:
    """
    Nearest multiple of w (per real / imaginary part).
    """

    x = np.asarray(x)
    re = round_half_away(np.real(x) / w) * w
    if np.iscomplexobj(x):
        return re + 1j * (round_half_away(np.imag(x) / w) * w)
    return np.asarray(re, dtype=float)


def random_messages(graph: FactorGraph, sizes: tuple, rng: np.random.Generator) -> dict:
    """
    Random probability vectors V on every edge.

    :param FactorGraph graph: factor graph
    :param tuple sizes: candidates per layer
    :param np.random.Generator rng: random stream
    :returns: V keyed by (j, k)
    :rtype: dict
    """

    return {(j, k): rng.dirichlet(np.ones(sizes[j])) for k, j in graph.edges()}


def run_divergence(
    cfg: SimConfig,
    trials: int = 100,
    field_: str = FIELD_REAL,
    aligned: bool = False,
    progress=None,
) -> list:
    """
    Compare one discretized resource update against the exact update on
    identical random inputs (V drawn from a flat Dirichlet, y from the
    channel), for every (N0, w) in the configuration.

    Real field uses the real-part constellation of a separable codebook
    (sigma2 = N0/2); complex field uses the full codebook on 2-D grids.
    With aligned, codeword components and y are snapped onto the w grid.

    :param SimConfig cfg: configuration
    :param int trials: random instances per (N0, w)
    :param str field_: "real" or "complex"
    :param bool aligned: snap inputs onto the grid
    :param progress: optional callable(done, total)
    :returns: list of DivergenceRecord
    :rtype: list
    """

    # pylint: disable=too-many-arguments, too-many-positional-arguments

    if trials < 1:
        raise ParameterError(f"Trials must be >= 1, got {trials}")
    if field_ not in (FIELD_REAL, FIELD_COMPLEX):
        raise ParameterError(f"Unknown field {field_}")
    cb, graph = build_codebook(cfg)
    base = split_codebook(cb).real if field_ == FIELD_REAL else cb.constellation()
    records = []
    total = len(cfg.n0) * len(cfg.w)
    for n0 in cfg.n0:
        noise = NoiseModel(n0, cfg.nwid)
        for w in cfg.w:
            cons = snap_constellation(base, w) if aligned else base
            params = DiscretizationParams(w, nwid=cfg.nwid)
            abs_dev, rel_dev = [], []
            for t in range(trials):
                rng = trial_rng(cfg.seed, t)
                y = draw_transmission(cb, noise, rng).y
                if field_ == FIELD_REAL:
                    y = y.real
                if aligned:
                    y = snap_to_grid(y, w)
                V = random_messages(graph, cons.sizes, rng)
                exact = MessageSet(dict(V), {})
                approx = MessageSet(dict(V), {})
                update_resource_messages(exact, y, cons, noise, graph)
                update_resource_messages_dmpa(approx, y, cons, noise, graph, params)
                for key, u_mpa in exact.U.items():
                    diff = np.abs(approx.U[key] - u_mpa)
                    abs_dev.append(diff)
                    mask = u_mpa > REL_FLOOR
                    rel_dev.append(diff[mask] / u_mpa[mask])
            abs_dev = np.concatenate(abs_dev)
            rel_dev = np.concatenate(rel_dev)
            inp = BoundInputs(graph.d_f, w, cfg.nwid, sigma2=noise.sigma2, n0=n0)
            if field_ == FIELD_REAL:
                bounds = abs_error_bound(inp), rel_error_bound(inp)
            else:
                bounds = abs_error_bound_complex(inp), rel_error_bound_complex(inp)
            max_abs = float(abs_dev.max())
            max_rel = float(rel_dev.max()) if rel_dev.size else 0.0
            rec = DivergenceRecord(
                field_,
                n0,
                w,
                trials,
                int(abs_dev.size),
                max_abs,
                float(abs_dev.mean()),
                max_rel,
                float(rel_dev.mean()) if rel_dev.size else 0.0,
                bounds[0],
                bounds[1],
                max_abs > bounds[0],
                max_rel > bounds[1],
            )
            logger.info(
                f"{field_} N0={n0} w={w}: max abs {rec.max_abs:.3g} "
                f"(bound {rec.abs_bound:.3g}), max rel {rec.max_rel:.3g} "
                f"(bound {rec.rel_bound:.3g})"
            )
            if rec.abs_exceeded or rec.rel_exceeded:
                logger.warning(
                    f"{field_} N0={n0} w={w}: measured divergence exceeds its bound "
                    f"(abs {rec.max_abs:.3g} vs {rec.abs_bound:.3g}, "
                    f"rel {rec.max_rel:.3g} vs {rec.rel_bound:.3g})"
                )
            records.append(rec)
            if progress is not None:
                progress(len(records), total)
    return records


def _stanza_value(val) -> str:
    """Config file representation of a setting."""

    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (tuple, list)):
        return ",".join(str(v) for v in val)
    return str(val)


def emit_results(records: list, path: str, columns: tuple = None, stanza: dict = None):
    """
    Write records as a comma-separated table with header row, plus an
    optional reproducibility stanza in a sidecar <table>.cfg file whose
    key=value lines can be replayed with --config.

    :param list records: BlerRecord, TimingRecord or DivergenceRecord list
    :param str path: output table file
    :param tuple columns: column names (required if records is empty)
    :param dict stanza: settings to echo (None values omitted)
    :raises: ParameterError
    """

    if columns is None:
        if not records:
            raise ParameterError("Column names required for an empty record list")
        columns = records[0].columns
    table = pd.DataFrame([asdict(r) for r in records], columns=list(columns))
    try:
        table.to_csv(path, index=False)
        if stanza is not None:
            cfgpath = Path(path).with_suffix(".cfg")
            with open(cfgpath, "w", encoding="utf-8") as outfile:
                outfile.write(f"# pyscmadetect {VERSION} reproducibility stanza\n")
                outfile.write(f"# table {Path(path).name}\n")
                for key, val in stanza.items():
                    if val is not None:
                        outfile.write(f"{key}={_stanza_value(val)}\n")
    except OSError as err:
        raise ParameterError(f"Unable to write results to {path}: {err}") from err
    logger.info(f"{len(records)} records written to {path}")
