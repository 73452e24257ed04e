"""
mpa.py

Reference message passing detector (exhaustive resource-node update),
its log-domain variant and the split real / imaginary detector.

The resource-node update for edge (k, j) and candidate m is

    U_kj(m) = sum over neighbour combinations c of
              eta(y_k - x_kj(m) - sum_i x_ki(c_i)) * prod_i V_ik(c_i)

where eta is the complex noise density exp(-|t|^2/N0)/(pi N0), or the
real density with variance sigma2 = N0/2 for real-valued constellations.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-arguments, too-many-positional-arguments

from dataclasses import dataclass, field
from itertools import product
from logging import getLogger
from math import log, pi, prod

import numpy as np
from scipy.special import logsumexp

from pyscmadetect.channel import NoiseModel
from pyscmadetect.codebook import (
    Codebook,
    Constellation,
    SeparableSplit,
    split_codebook,
)
from pyscmadetect.exceptions import DetectionError
from pyscmadetect.factorgraph import FactorGraph
from pyscmadetect.globals import UNDERFLOW

logger = getLogger(__name__)


@dataclass
class Diagnostics:
    """
    Numerical fallback counters for one detection.

    :param int underflow: V vectors replaced by the uniform vector
    :param int out_of_grid: g lookups outside the modelled support
    """

    underflow: int = 0
    out_of_grid: int = 0

    def merge(self, other: "Diagnostics") -> "Diagnostics":
        """Sum of two sets of counters."""
        return Diagnostics(
            self.underflow + other.underflow, self.out_of_grid + other.out_of_grid
        )


@dataclass
class MessageSet:
    """
    Messages on every edge.

    V[(j, k)] is the layer-to-resource probability vector and U[(k, j)]
    the resource-to-layer score vector, both indexed by candidate. In
    the log domain both hold natural logarithms.
    """

    V: dict
    U: dict
    log_domain: bool = False
    diagnostics: Diagnostics = field(default_factory=Diagnostics)


@dataclass(frozen=True)
class DetectionResult:
    """
    Detector output.

    :param np.ndarray decided: chosen codeword index per layer
    :param tuple scores: per-layer final belief vectors (log beliefs if
        log_domain)
    :param Diagnostics diagnostics: numerical fallback counters
    :param bool log_domain: scores are logarithms
    """

    decided: np.ndarray
    scores: tuple
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    log_domain: bool = False


def as_constellation(cb) -> Constellation:
    """Codebook or Constellation to Constellation."""

    if isinstance(cb, Codebook):
        return cb.constellation()
    return cb


def _sizes(M, J: int) -> tuple:
    """Per-layer candidate counts from a scalar or sequence."""

    if np.ndim(M) == 0:
        return (int(M),) * J
    return tuple(int(m) for m in M)


def noise_density(d, noise: NoiseModel, complex_field: bool) -> np.ndarray:
    """
    Noise density at offset(s) d.

    :param d: real or complex offsets
    :param NoiseModel noise: noise model
    :param bool complex_field: complex density with N0, else real density
        with sigma2 = N0/2
    :returns: density values
    :rtype: np.ndarray
    """

    if complex_field:
        return np.exp(-np.abs(d) ** 2 / noise.N0) / (pi * noise.N0)
    s2 = noise.sigma2
    return np.exp(-np.square(d) / (2 * s2)) / np.sqrt(2 * pi * s2)


def noise_log_density(d, noise: NoiseModel, complex_field: bool) -> np.ndarray:
    """
    Natural log of noise_density.
    """

    if complex_field:
        return -np.abs(d) ** 2 / noise.N0 - log(pi * noise.N0)
    s2 = noise.sigma2
    return -np.square(d) / (2 * s2) - 0.5 * log(2 * pi * s2)


def init_messages(graph: FactorGraph, M, log_domain: bool = False) -> MessageSet:
    """
    Uniform layer messages V = 1/M, zero resource messages.

    :param FactorGraph graph: factor graph
    :param M: candidates per layer (int, or one per layer)
    :param bool log_domain: hold log messages
    :returns: initial messages
    :rtype: MessageSet
    """

    sizes = _sizes(M, graph.J)
    V, U = {}, {}
    for k, j in graph.edges():
        if log_domain:
            V[(j, k)] = np.full(sizes[j], -log(sizes[j]))
            U[(k, j)] = np.full(sizes[j], -np.inf)
        else:
            V[(j, k)] = np.full(sizes[j], 1 / sizes[j])
            U[(k, j)] = np.zeros(sizes[j])
    return MessageSet(V, U, log_domain)


def neighbour_combinations(
    V: dict, cons: Constellation, others: tuple, k: int, log_domain: bool = False
):
    """
    Enumerate the Cartesian product of the other layers' candidates at
    resource k lazily, in odometer order (last layer turning fastest).

    Each step yields the summed components of the combination and its
    weight, the product of the matching V entries (their sum in the log
    domain). With no other layers a single empty combination is yielded.

    :param dict V: layer-to-resource messages keyed by (j, k)
    :param Constellation cons: candidate points
    :param tuple others: other layers connected to resource k
    :param int k: resource
    :param bool log_domain: V holds log messages
    :returns: generator of (offset, weight)
    """

    digits = [
        tuple(zip(cons.column(i, k).tolist(), V[(i, k)].tolist())) for i in others
    ]
    combine = sum if log_domain else prod
    for combo in product(*digits):
        yield sum(c for c, _ in combo), combine(v for _, v in combo)


def update_resource_messages(
    msgs: MessageSet,
    y,
    cb,
    noise: NoiseModel,
    graph: FactorGraph,
) -> dict:
    """
    Exhaustive resource-node update for every edge.

    For edge (k, j) the M^(d_f-1) combinations of the other layers are
    walked one at a time, accumulating each combination's weighted noise
    density over all candidates of layer j. The log domain accumulates
    with logaddexp.

    :param MessageSet msgs: messages (V normalized); U updated in place
    :param y: received signal (complex, or real for a real constellation)
    :param cb: effective Codebook or Constellation
    :param NoiseModel noise: noise model
    :param FactorGraph graph: factor graph
    :returns: updated U
    :rtype: dict
    """

    cons = as_constellation(cb)
    complex_field = cons.is_complex
    for k, layers in enumerate(graph.resource_layers):
        for j in layers:
            others = tuple(i for i in layers if i != j)
            base = y[k] - cons.column(j, k)
            combos = neighbour_combinations(msgs.V, cons, others, k, msgs.log_domain)
            if msgs.log_domain:
                acc = np.full(base.shape, -np.inf)
                for offset, weight in combos:
                    term = noise_log_density(base - offset, noise, complex_field)
                    acc = np.logaddexp(acc, weight + term)
            else:
                acc = np.zeros(base.shape)
                for offset, weight in combos:
                    acc += weight * noise_density(base - offset, noise, complex_field)
            msgs.U[(k, j)] = acc
    return msgs.U


def update_layer_messages(msgs: MessageSet, graph: FactorGraph) -> dict:
    """
    Layer-node update and normalization.

    V_jk is the product of U from every other resource of layer j,
    scaled to sum to 1. A vector whose sum falls below the underflow
    threshold is replaced by the uniform vector.

    :param MessageSet msgs: messages (U current); V updated in place
    :param FactorGraph graph: factor graph
    :returns: updated V
    :rtype: dict
    """

    for j, resources in enumerate(graph.layer_resources):
        for k in resources:
            others = [msgs.U[(l, j)] for l in resources if l != k]
            size = msgs.V[(j, k)].size
            if msgs.log_domain:
                v = np.sum(others, axis=0) if others else np.zeros(size)
                total = logsumexp(v)
                if np.isfinite(total):
                    msgs.V[(j, k)] = v - total
                    continue
                uniform = np.full(size, -log(size))
            else:
                v = np.prod(others, axis=0) if others else np.ones(size)
                total = v.sum()
                if total >= UNDERFLOW:
                    msgs.V[(j, k)] = v / total
                    continue
                uniform = np.full(size, 1 / size)
            msgs.V[(j, k)] = uniform
            msgs.diagnostics.underflow += 1
            logger.debug(f"V underflow on edge layer {j} -> resource {k}, set uniform")
    return msgs.V


def decide(msgs: MessageSet, graph: FactorGraph) -> DetectionResult:
    """
    Final beliefs and hard decisions (first maximum wins).

    :param MessageSet msgs: messages after the last iteration
    :param FactorGraph graph: factor graph
    :returns: detection result
    :rtype: DetectionResult
    """

    scores = []
    for j, resources in enumerate(graph.layer_resources):
        vecs = [msgs.U[(k, j)] for k in resources]
        if msgs.log_domain:
            scores.append(np.sum(vecs, axis=0))
        else:
            scores.append(np.prod(vecs, axis=0))
    decided = np.array([int(np.argmax(s)) for s in scores], dtype=np.int64)
    return DetectionResult(decided, tuple(scores), msgs.diagnostics, msgs.log_domain)


def run_message_passing(
    y,
    cb,
    graph: FactorGraph,
    noise: NoiseModel,
    iterations: int,
    resource_update=update_resource_messages,
    log_domain: bool = False,
) -> DetectionResult:
    """
    Iterate resource and layer updates, then decide.

    :param y: received signal
    :param cb: effective Codebook or Constellation
    :param FactorGraph graph: factor graph
    :param NoiseModel noise: noise model
    :param int iterations: iteration count (>= 1)
    :param resource_update: callable(msgs, y, cons, noise, graph)
    :param bool log_domain: run in the log domain
    :returns: detection result
    :rtype: DetectionResult
    :raises: DetectionError
    """

    if iterations < 1:
        raise DetectionError(f"Iterations must be >= 1, got {iterations}")
    cons = as_constellation(cb)
    if (cons.J, cons.K) != (graph.J, graph.K):
        raise DetectionError(
            f"Constellation (J={cons.J}, K={cons.K}) does not match "
            f"graph (J={graph.J}, K={graph.K})"
        )
    msgs = init_messages(graph, cons.sizes, log_domain)
    for itr in range(iterations):
        resource_update(msgs, y, cons, noise, graph)
        update_layer_messages(msgs, graph)
        logger.debug(f"Iteration {itr + 1} of {iterations} complete")
    if msgs.diagnostics.underflow:
        logger.warning(
            f"{msgs.diagnostics.underflow} V vectors underflowed, reset to uniform"
        )
    return decide(msgs, graph)


def detect_mpa(
    y, cb, graph: FactorGraph, noise: NoiseModel, iterations: int
) -> DetectionResult:
    """
    Linear-domain message passing detection.

    :param y: received signal
    :param cb: effective Codebook or Constellation
    :param FactorGraph graph: factor graph
    :param NoiseModel noise: noise model
    :param int iterations: iteration count (>= 1)
    :returns: detection result
    :rtype: DetectionResult
    """

    return run_message_passing(y, cb, graph, noise, iterations)


def detect_llr_mpa(
    y, cb, graph: FactorGraph, noise: NoiseModel, iterations: int
) -> DetectionResult:
    """
    Log-domain message passing detection with exact log-sum-exp
    marginalization. Decision-equivalent to detect_mpa.
    """

    return run_message_passing(y, cb, graph, noise, iterations, log_domain=True)


def combine_split(
    split: SeparableSplit, real: DetectionResult, imag: DetectionResult
) -> DetectionResult:
    """
    Recombine real and imaginary sub-detections into product-codebook
    indices and scores.

    :param SeparableSplit split: codebook factorization
    :param DetectionResult real: real-part detection
    :param DetectionResult imag: imaginary-part detection
    :returns: detection result over the full codebook
    :rtype: DetectionResult
    """

    decided, scores = [], []
    for j, index in enumerate(split.index):
        decided.append(int(index[real.decided[j], imag.decided[j]]))
        if real.log_domain:
            joint = np.add.outer(real.scores[j], imag.scores[j])
        else:
            joint = np.multiply.outer(real.scores[j], imag.scores[j])
        score = np.empty(index.size)
        score[index.ravel()] = joint.ravel()
        scores.append(score)
    return DetectionResult(
        np.array(decided, dtype=np.int64),
        tuple(scores),
        real.diagnostics.merge(imag.diagnostics),
        real.log_domain,
    )


def detect_split_mpa(
    y,
    cb: Codebook,
    graph: FactorGraph,
    noise: NoiseModel,
    iterations: int,
    log_domain: bool = False,
) -> DetectionResult:
    """
    Split detection for separable codebooks: independent real-field
    detections of the real and imaginary parts (sigma2 = N0/2 each),
    recombined into product-codebook indices.

    :param y: received signal (complex)
    :param Codebook cb: effective, separable codebook
    :param FactorGraph graph: factor graph
    :param NoiseModel noise: noise model
    :param int iterations: iteration count (>= 1)
    :param bool log_domain: run each half in the log domain
    :returns: detection result
    :rtype: DetectionResult
    :raises: DetectionError if the codebook is not separable
    """

    split = split_codebook(cb)
    y = np.asarray(y)
    real = run_message_passing(
        y.real, split.real, graph, noise, iterations, log_domain=log_domain
    )
    imag = run_message_passing(
        y.imag, split.imag, graph, noise, iterations, log_domain=log_domain
    )
    return combine_split(split, real, imag)
