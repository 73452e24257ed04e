"""
dmpa.py

Discretized message passing detector.

Each layer message at a resource node is turned into point masses on a
uniform grid of step w, the noise density is sampled on the same grid,
and the density g of y_k - x_kj is obtained as the FFT convolution of
the other layers' point masses with the noise samples. The resource
message is then read off g at the nearest grid point:

    U_kj(m) = g(y_k - x_kj(m))

Grid origins: -wid for layer pdfs, -nWid for the noise pdf and
-((d_f - 1) * wid + nWid) for g. The real field (split path) works
with 1-D grids, the complex field with square 2-D grids (axis 0 real,
axis 1 imaginary).

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name, too-many-arguments, too-many-locals
# pylint: disable=too-many-positional-arguments

from dataclasses import dataclass, replace
from functools import lru_cache
from logging import getLogger

import numpy as np

from pyscmadetect.channel import NoiseModel
from pyscmadetect.codebook import (
    Codebook,
    amplitude_bound,
    is_separable,
    split_codebook,
)
from pyscmadetect.exceptions import DetectionError, DiscretizationError, ParameterError
from pyscmadetect.factorgraph import FactorGraph
from pyscmadetect.globals import (
    DEFAULT_NWID,
    MODE_AUTO,
    MODE_COMPLEX,
    MODE_SPLIT,
)
from pyscmadetect.helpers import grid_steps, next_power_of_two, round_half_away
from pyscmadetect.mpa import (
    DetectionResult,
    Diagnostics,
    MessageSet,
    as_constellation,
    combine_split,
    noise_density,
    run_message_passing,
)
from pyscmadetect.spectral import leave_one_out_product, real_inverse, real_spectra

logger = getLogger(__name__)

PDF_MASS = "point-mass"
PDF_DENSITY = "density"


@dataclass(frozen=True)
class DiscretizationParams:
    """
    Discretization settings.

    wid and nWid are snapped up to integer multiples of w. With wid None,
    the amplitude bound of each resource's components is used.

    :param float w: sampling interval
    :param float wid: codeword amplitude bound, or None for per-resource
    :param float nwid: noise truncation half-width
    :param int d_f: resource degree
    :raises: ParameterError
    """

    w: float
    wid: float = None
    nwid: float = DEFAULT_NWID
    d_f: int = 1

    def __post_init__(self):
        if not self.w > 0:
            raise ParameterError(f"Sampling interval w must be > 0, got {self.w}")
        if not self.nwid > 0:
            raise ParameterError(f"nWid must be > 0, got {self.nwid}")
        if self.wid is not None and self.wid < 0:
            raise ParameterError(f"wid must be >= 0, got {self.wid}")
        if self.d_f < 1:
            raise ParameterError(f"d_f must be >= 1, got {self.d_f}")

    @property
    def wid_steps(self) -> int:
        """wid / w after snapping."""
        if self.wid is None:
            raise DiscretizationError("wid not resolved for this resource")
        return grid_steps(self.wid, self.w)

    @property
    def nwid_steps(self) -> int:
        """nWid / w after snapping."""
        return grid_steps(self.nwid, self.w)

    def resolve(self, wid: float, d_f: int) -> "DiscretizationParams":
        """
        Params for one resource node: fixed wid if configured, else the
        given one.

        :param float wid: resource amplitude bound
        :param int d_f: resource degree
        :returns: resolved params
        :rtype: DiscretizationParams
        """

        return replace(self, wid=wid if self.wid is None else self.wid, d_f=d_f)


@dataclass(frozen=True)
class DiscretePdf:
    """
    PDF sampled on a uniform grid.

    values[i] (1-D) or values[i, l] (2-D) sits at origin + i*w
    (+ 1j*(origin + l*w)).

    :param float origin: coordinate of index 0 per dimension
    :param float w: step
    :param np.ndarray values: nonnegative samples
    :param str kind: PDF_MASS or PDF_DENSITY
    """

    origin: float
    w: float
    values: np.ndarray
    kind: str = PDF_DENSITY

    def __post_init__(self):
        if self.kind not in (PDF_MASS, PDF_DENSITY):
            raise DiscretizationError(f"Unknown pdf kind {self.kind}")
        if np.ndim(self.values) not in (1, 2):
            raise DiscretizationError(
                f"Pdf values must be 1-D or 2-D, got shape {np.shape(self.values)}"
            )

    @property
    def dims(self) -> int:
        """1 or 2."""
        return self.values.ndim

    @property
    def length(self) -> int:
        """Samples per dimension."""
        return self.values.shape[0]


def discretize_layer_pdf(msg, components, params: DiscretizationParams) -> DiscretePdf:
    """
    Place each candidate's probability on the grid point nearest its
    component (halves rounded away from zero).

    Real components give a 1-D grid, complex components a 2-D grid, both
    spanning [-wid, wid] per dimension.

    :param msg: probability vector, one entry per candidate
    :param components: candidate components at this resource
    :param DiscretizationParams params: resolved params
    :returns: point-mass pdf with origin -wid
    :rtype: DiscretePdf
    :raises: DiscretizationError if a component lies outside [-wid, wid]
    """

    msg = np.asarray(msg, dtype=float)
    components = np.asarray(components)
    steps = params.wid_steps
    wid = steps * params.w
    tol = 1e-9 * max(wid, params.w)
    bound = max(np.max(np.abs(components.real)), np.max(np.abs(components.imag)))
    if bound > wid + tol:
        raise DiscretizationError(
            f"Component of magnitude {bound} outside grid [-{wid}, {wid}]"
        )
    length = 2 * steps + 1
    origin = -wid

    def index(part):
        return np.clip(round_half_away((part - origin) / params.w), 0, length - 1)

    if np.iscomplexobj(components):
        values = np.zeros((length, length))
        np.add.at(values, (index(components.real), index(components.imag)), msg)
    else:
        values = np.zeros(length)
        np.add.at(values, index(components), msg)
    return DiscretePdf(origin, params.w, values, PDF_MASS)


def sample_noise_pdf(
    noise: NoiseModel, params: DiscretizationParams, dims: int = 1
) -> DiscretePdf:
    """
    Sample the noise density on [-nWid, nWid] (per dimension).

    1-D: real Gaussian with sigma2 = N0/2. 2-D: circularly-symmetric
    complex density exp(-|t|^2/N0)/(pi N0).

    :param NoiseModel noise: noise model
    :param DiscretizationParams params: params (w, nWid)
    :param int dims: 1 or 2
    :returns: density pdf with origin -nWid
    :rtype: DiscretePdf
    """

    steps = params.nwid_steps
    t = np.arange(-steps, steps + 1) * params.w
    if dims == 1:
        values = noise_density(t, noise, False)
    elif dims == 2:
        values = noise_density(t[:, None] + 1j * t[None, :], noise, True)
    else:
        raise ParameterError(f"dims must be 1 or 2, got {dims}")
    return DiscretePdf(-steps * params.w, params.w, values, PDF_DENSITY)


def padded_length(params: DiscretizationParams) -> int:
    """
    Transform length: smallest power of two holding the linear
    convolution of d_f - 1 layer pdfs with the noise pdf.

    :param DiscretizationParams params: resolved params
    :returns: N
    :rtype: int
    """

    return next_power_of_two(
        2 * ((params.d_f - 1) * params.wid_steps + params.nwid_steps) + 1
    )


@lru_cache(maxsize=128)
def noise_spectrum(
    noise: NoiseModel, w: float, nwid: float, N: int, dims: int
) -> tuple:
    """
    Sampled noise pdf and its padded half spectrum, cached per
    (N0, w, nWid, N, dims).

    :returns: (DiscretePdf, np.ndarray)
    :rtype: tuple
    """

    pdf = sample_noise_pdf(noise, DiscretizationParams(w, nwid=nwid), dims)
    spectrum = real_spectra(pdf.values, N, dims)
    pdf.values.setflags(write=False)
    spectrum.setflags(write=False)
    return pdf, spectrum


def _to_density(values: np.ndarray, N: int, dims: int, length: int) -> np.ndarray:
    """
    Inverse-transform a stack of half spectra, trim to the
    linear-convolution support and clamp round-off negatives.
    """

    values = real_inverse(values, N, dims)
    trim = (Ellipsis,) + (slice(0, length),) * dims
    return np.maximum(values[trim], 0.0)


def convolve_all(layer_pdfs, noise_pdf: DiscretePdf, N: int) -> DiscretePdf:
    """
    Linear convolution of layer pdfs and noise pdf via zero-padded FFT.

    :param layer_pdfs: d_f - 1 point-mass pdfs sharing w
    :param DiscretePdf noise_pdf: sampled noise density
    :param int N: transform length per dimension
    :returns: density g with origin -((d_f - 1) * wid + nWid)
    :rtype: DiscretePdf
    :raises: DiscretizationError if the pdfs do not fit together or
        N cannot hold the convolution support
    """

    layer_pdfs = list(layer_pdfs)
    if noise_pdf.kind != PDF_DENSITY:
        raise DiscretizationError(
            f"Noise pdf must be a {PDF_DENSITY}, got {noise_pdf.kind}"
        )
    for p in layer_pdfs:
        if p.kind != PDF_MASS:
            raise DiscretizationError(f"Layer pdfs must be {PDF_MASS}, got {p.kind}")
        if p.dims != noise_pdf.dims:
            raise DiscretizationError(
                f"Layer pdf is {p.dims}-D, noise pdf is {noise_pdf.dims}-D"
            )
        if not np.isclose(p.w, noise_pdf.w, rtol=1e-12, atol=0):
            raise DiscretizationError(
                f"Grid steps differ: layer w={p.w}, noise w={noise_pdf.w}"
            )
    length = sum(p.length - 1 for p in layer_pdfs) + noise_pdf.length
    if length > N:
        raise DiscretizationError(
            f"Transform length {N} too small for convolution support {length}"
        )
    dims = noise_pdf.dims
    spectrum = real_spectra(noise_pdf.values, N, dims)
    for p in layer_pdfs:
        spectrum = spectrum * real_spectra(p.values, N, dims)
    origin = noise_pdf.origin + sum(p.origin for p in layer_pdfs)
    return DiscretePdf(
        origin, noise_pdf.w, _to_density(spectrum, N, dims, length), PDF_DENSITY
    )


def evaluate_g(g: DiscretePdf, t0, diagnostics: Diagnostics = None):
    """
    Value of g at the grid point nearest t0 (halves away from zero).

    Points outside the grid evaluate to 0 and are counted in
    diagnostics.out_of_grid.

    :param DiscretePdf g: density
    :param t0: coordinate(s); complex for a 2-D g
    :param Diagnostics diagnostics: counters to update (optional)
    :returns: density value(s)
    :raises: DiscretizationError if g is not a density
    """

    if g.kind != PDF_DENSITY:
        raise DiscretizationError(f"Lookup needs a {PDF_DENSITY}, got {g.kind}")
    t0 = np.asarray(t0)
    scalar = t0.ndim == 0
    t0 = np.atleast_1d(t0)
    idx = [np.atleast_1d(round_half_away((np.real(t0) - g.origin) / g.w))]
    if g.dims == 2:
        idx.append(np.atleast_1d(round_half_away((np.imag(t0) - g.origin) / g.w)))
    inside = np.ones(t0.shape, dtype=bool)
    for i in idx:
        inside &= (i >= 0) & (i < g.length)
    out = np.zeros(t0.shape)
    out[inside] = g.values[tuple(i[inside] for i in idx)]
    missed = int(np.count_nonzero(~inside))
    if missed:
        logger.debug(f"{missed} g lookups outside grid")
        if diagnostics is not None:
            diagnostics.out_of_grid += missed
    return float(out[0]) if scalar else out


def update_resource_messages_dmpa(
    msgs: MessageSet,
    y,
    cb,
    noise: NoiseModel,
    graph: FactorGraph,
    params: DiscretizationParams,
) -> dict:
    """
    Discretized resource-node update for every edge.

    Per resource node the d_f layer pdfs go through one batched forward
    transform and the cached noise spectrum is reused. Each edge's
    spectrum is the product of the other layers' spectra (prefix and
    suffix products) with the noise spectrum, and all d_f densities g
    come from one batched inverse transform. U is read off g.

    :param MessageSet msgs: messages (V normalized); U updated in place
    :param y: received signal (real for a real constellation)
    :param cb: effective Codebook or Constellation
    :param NoiseModel noise: noise model
    :param FactorGraph graph: factor graph
    :param DiscretizationParams params: discretization settings
    :returns: updated U
    :rtype: dict
    """

    if msgs.log_domain:
        raise DetectionError("Discretized update runs in the linear domain only")
    cons = as_constellation(cb)
    dims = 2 if cons.is_complex else 1
    for k, layers in enumerate(graph.resource_layers):
        prm = params.resolve(amplitude_bound(cons, k, layers), len(layers))
        N = padded_length(prm)
        pdfs = [
            discretize_layer_pdf(msgs.V[(j, k)], cons.column(j, k), prm)
            for j in layers
        ]
        noise_pdf, noise_spec = noise_spectrum(noise, prm.w, prm.nwid, N, dims)
        spectra = real_spectra(np.stack([p.values for p in pdfs]), N, dims)
        length = (len(pdfs) - 1) * (pdfs[0].length - 1) + noise_pdf.length
        densities = _to_density(
            leave_one_out_product(spectra) * noise_spec, N, dims, length
        )
        origin = (len(pdfs) - 1) * pdfs[0].origin + noise_pdf.origin
        for j, values in zip(layers, densities):
            g = DiscretePdf(origin, prm.w, values, PDF_DENSITY)
            msgs.U[(k, j)] = evaluate_g(g, y[k] - cons.column(j, k), msgs.diagnostics)
    return msgs.U


def detect_dmpa(
    y,
    cb: Codebook,
    graph: FactorGraph,
    noise: NoiseModel,
    iterations: int,
    params: DiscretizationParams,
    mode: str = MODE_AUTO,
) -> DetectionResult:
    """
    Discretized message passing detection.

    split-1D runs independent real-field detections of the real and
    imaginary parts and recombines them; complex-2D works on 2-D grids;
    auto picks split-1D for separable codebooks.

    :param y: received signal (complex)
    :param Codebook cb: effective codebook
    :param FactorGraph graph: factor graph
    :param NoiseModel noise: noise model
    :param int iterations: iteration count (>= 1)
    :param DiscretizationParams params: discretization settings
    :param str mode: auto, split-1D or complex-2D
    :returns: detection result
    :rtype: DetectionResult
    :raises: DetectionError, ParameterError
    """

    def update(msgs, yy, cons, nse, grp):
        return update_resource_messages_dmpa(msgs, yy, cons, nse, grp, params)

    if mode == MODE_AUTO:
        mode = MODE_SPLIT if is_separable(cb) else MODE_COMPLEX
        logger.debug(f"DMPA mode {mode} selected")
    if mode == MODE_SPLIT:
        split = split_codebook(cb)
        y = np.asarray(y)
        real = run_message_passing(
            y.real, split.real, graph, noise, iterations, resource_update=update
        )
        imag = run_message_passing(
            y.imag, split.imag, graph, noise, iterations, resource_update=update
        )
        res = combine_split(split, real, imag)
    elif mode == MODE_COMPLEX:
        res = run_message_passing(
            y, cb, graph, noise, iterations, resource_update=update
        )
    else:
        raise ParameterError(f"Unknown DMPA mode {mode}")
    if res.diagnostics.out_of_grid:
        logger.warning(
            f"{res.diagnostics.out_of_grid} g lookups fell outside the modelled support"
        )
    return res

