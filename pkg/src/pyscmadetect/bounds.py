"""
bounds.py

Error bounds for the discretized detector's resource messages, sampling
interval selection and per-resource-node operation counts.

Real field (noise variance sigma2 per dimension):

    absolute:  d_f * w * exp(-1/2) / (2 * sigma2 * sqrt(2 pi))
    relative:  w * d_f * nWid / (2 * sigma2)

Complex field (noise variance N0):

    absolute:  d_f * w / (N0^2 pi) * sqrt(N0 / e)
    relative:  sqrt(2) * d_f * w * nWid / (pi^2 * N0^3)

The relative bounds are first-order estimates, valid while they are
small compared with 1.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass
from math import ceil, e, exp, isclose, log2, pi, sqrt

from pyscmadetect.dmpa import padded_length
from pyscmadetect.exceptions import ParameterError
from pyscmadetect.globals import (
    AMPLITUDE,
    DEFAULT_NWID,
    FIELD_COMPLEX,
    FIELD_REAL,
    PATH_DMPA_1D,
    PATH_DMPA_2D,
    PATH_MPA,
    PATH_MPA_SPLIT,
)

MAX_SNAP = 100000
"""Maximum grid refinements tried when snapping w"""


@dataclass(frozen=True)
class BoundInputs:
    """
    Bound parameters. sigma2 (real field) and n0 (complex field) are
    independent; neither is derived from the other.

    :param int d_f: resource degree
    :param float w: sampling interval
    :param float nwid: noise truncation half-width
    :param float sigma2: real-field noise variance
    :param float n0: complex noise variance
    :param float wid: codeword amplitude bound (for snapping w)
    :raises: ParameterError
    """

    d_f: int
    w: float = None
    nwid: float = DEFAULT_NWID
    sigma2: float = None
    n0: float = None
    wid: float = AMPLITUDE

    def __post_init__(self):
        for name in ("d_f", "w", "nwid", "sigma2", "n0", "wid"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                raise ParameterError(f"{name} must be > 0, got {val}")

    def require(self, *names: str):
        """
        :raises: ParameterError if any named field is unset
        """

        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ParameterError(f"Bound inputs missing {', '.join(missing)}")


@dataclass(frozen=True)
class ComplexityEstimate:
    """
    Per-resource-node operation count.

    :param str path: mpa, mpa-split, dmpa-1d or dmpa-2d
    :param int d_f: resource degree
    :param int M: codewords per layer
    :param int transform_length: FFT length per dimension (0 for MPA paths)
    :param int operations: estimated operation count
    """

    path: str
    d_f: int
    M: int
    transform_length: int
    operations: int


def abs_error_bound(inp: BoundInputs) -> float:
    """
    Real-field absolute bound on |U_dmpa - U_mpa|.

    :param BoundInputs inp: needs d_f, w, sigma2
    :returns: bound in density units
    :rtype: float
    """

    inp.require("w", "sigma2")
    return inp.d_f * inp.w * exp(-0.5) / (2 * inp.sigma2 * sqrt(2 * pi))


def rel_error_bound(inp: BoundInputs) -> float:
    """
    Real-field relative bound on |U_dmpa - U_mpa| / U_mpa.

    :param BoundInputs inp: needs d_f, w, nwid, sigma2
    :returns: dimensionless bound
    :rtype: float
    """

    inp.require("w", "sigma2")
    return inp.w * inp.d_f * inp.nwid / (2 * inp.sigma2)


def abs_error_bound_complex(inp: BoundInputs) -> float:
    """
    Complex-field absolute bound.

    :param BoundInputs inp: needs d_f, w, n0
    :returns: bound in density units
    :rtype: float
    """

    inp.require("w", "n0")
    return inp.d_f * inp.w / (inp.n0**2 * pi) * sqrt(inp.n0 / e)


def rel_error_bound_complex(inp: BoundInputs) -> float:
    """
    Complex-field relative bound.

    :param BoundInputs inp: needs d_f, w, nwid, n0
    :returns: dimensionless bound
    :rtype: float
    """

    inp.require("w", "n0")
    return sqrt(2) * inp.d_f * inp.w * inp.nwid / (pi**2 * inp.n0**3)


def snap_w(w: float, nwid: float, wid: float) -> float:
    """
    Largest w' <= w such that nwid/w' and wid/w' are both integers.

    :param float w: unsnapped interval
    :param float nwid: noise half-width
    :param float wid: amplitude bound
    :returns: snapped interval
    :rtype: float
    :raises: ParameterError if no common divisor is found
    """

    n = max(ceil(nwid / w - 1e-9), 1)
    for steps in range(n, n + MAX_SNAP):
        ratio = wid * steps / nwid
        if isclose(ratio, round(ratio), rel_tol=0, abs_tol=1e-9):
            return nwid / steps
    raise ParameterError(f"No common grid step for wid={wid}, nWid={nwid} below w={w}")


def suggest_w(target_rel: float, inp: BoundInputs, field: str = FIELD_REAL) -> float:
    """
    Sampling interval meeting a relative error target, snapped down so
    that wid/w and nWid/w are integers.

    :param float target_rel: relative error target (> 0)
    :param BoundInputs inp: d_f, nwid, wid and sigma2 (real) or n0 (complex)
    :param str field: "real" or "complex"
    :returns: sampling interval
    :rtype: float
    :raises: ParameterError
    """

    if not target_rel > 0:
        raise ParameterError(f"Target must be > 0, got {target_rel}")
    if field == FIELD_REAL:
        inp.require("sigma2")
        raw = target_rel * 2 * inp.sigma2 / (inp.d_f * inp.nwid)
    elif field == FIELD_COMPLEX:
        inp.require("n0")
        raw = target_rel * pi**2 * inp.n0**3 / (sqrt(2) * inp.d_f * inp.nwid)
    else:
        raise ParameterError(f"Unknown field {field}")
    return snap_w(raw, inp.nwid, inp.wid)


def estimate_complexity(
    d_f: int, M: int, params=None, path: str = PATH_MPA
) -> ComplexityEstimate:
    """
    Operation count per resource node.

    mpa: d_f * M^d_f; mpa-split: d_f * sqrt(M)^d_f; dmpa: 2*d_f + 1
    transforms (d_f + 1 forward, d_f inverse) plus d_f^2 pointwise
    products, each of N (1-D) or N^2 (2-D) points.

    :param int d_f: resource degree
    :param int M: codewords per layer
    :param DiscretizationParams params: required for the dmpa paths
    :param str path: mpa, mpa-split, dmpa-1d or dmpa-2d
    :returns: estimate
    :rtype: ComplexityEstimate
    :raises: ParameterError
    """

    if path == PATH_MPA:
        return ComplexityEstimate(path, d_f, M, 0, d_f * M**d_f)
    if path == PATH_MPA_SPLIT:
        return ComplexityEstimate(path, d_f, M, 0, int(round(d_f * sqrt(M) ** d_f)))
    if path not in (PATH_DMPA_1D, PATH_DMPA_2D):
        raise ParameterError(f"Unknown complexity path {path}")
    if params is None:
        raise ParameterError(f"Path {path} needs discretization params")
    prm = params.resolve(AMPLITUDE if params.wid is None else params.wid, d_f)
    N = padded_length(prm)
    points = N if path == PATH_DMPA_1D else N * N
    ops = (2 * d_f + 1) * points * log2(points) + d_f**2 * points
    return ComplexityEstimate(path, d_f, M, N, int(round(ops)))
