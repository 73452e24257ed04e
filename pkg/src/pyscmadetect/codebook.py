"""
codebook.py

SCMA codebooks: load, save, generate and transform.

A codebook holds J layers of M complex codewords of length K. Each layer
spreads over N of the K resources; the remaining K-N positions are zero
in every codeword of that layer.

Codebook file format (plain text, '#' begins a comment line)::

    K J M N
    re_1 im_1 re_2 im_2 ... re_K im_K    <- layer 0, codeword 0
    ...                                  <- J*M lines, layer-major

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass, field
from itertools import combinations
from logging import getLogger
from math import isqrt, log2

import numpy as np

from pyscmadetect.exceptions import CodebookError, DetectionError
from pyscmadetect.globals import AMPLITUDE, MIN_SEPARATION
from pyscmadetect.helpers import is_power_of_two

logger = getLogger(__name__)


def _readonly(arr: np.ndarray) -> np.ndarray:
    """Return a read-only copy of an array."""

    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Constellation:
    """
    Per-layer candidate points seen by the detectors.

    Layer j offers points[j] of shape (M_j, K); candidate counts may differ
    between layers. Points are complex for the full detectors and real for
    each half of the split (real / imaginary) detectors.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple(_readonly(p) for p in self.points)
        if len(pts) == 0 or any(p.ndim != 2 for p in pts):
            raise CodebookError("Constellation needs one (M_j, K) array per layer")
        if len({p.shape[1] for p in pts}) != 1:
            raise CodebookError("All layers must share the same resource count K")
        object.__setattr__(self, "points", pts)

    @property
    def J(self) -> int:
        """Layer count."""
        return len(self.points)

    @property
    def K(self) -> int:
        """Resource count."""
        return self.points[0].shape[1]

    @property
    def sizes(self) -> tuple:
        """Candidate count per layer."""
        return tuple(p.shape[0] for p in self.points)

    @property
    def is_complex(self) -> bool:
        """True if points are complex-valued."""
        return np.iscomplexobj(self.points[0])

    def column(self, j: int, k: int) -> np.ndarray:
        """
        Components of every candidate of layer j at resource k.

        :param int j: layer
        :param int k: resource
        :returns: array of length M_j
        :rtype: np.ndarray
        """

        return self.points[j][:, k]


@dataclass(frozen=True)
class Codebook:
    """
    SCMA codebook, entries[j, m, k] = x_kjm.

    :param np.ndarray entries: complex array of shape (J, M, K)
    :param int N: expected nonzero positions per layer, or None to infer
        (layers may then differ; N is the largest layer support)
    :raises: CodebookError
    """

    entries: np.ndarray
    N: int = None
    support: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.complex128)
        if entries.ndim != 3:
            raise CodebookError(
                f"Codebook entries must have shape (J, M, K), got {entries.shape}"
            )
        J, M, K = entries.shape
        if M < 2 or not is_power_of_two(M):
            raise CodebookError(f"Codebook size M must be a power of two >= 2, got {M}")
        support = np.any(entries != 0, axis=1)  # (J, K)
        counts = support.sum(axis=1)
        if self.N is not None:
            for j in range(J):
                if counts[j] > self.N:
                    nz = (entries[j] != 0).sum(axis=0)
                    k = int(np.argmin(np.where(support[j], nz, M + 1)))
                    raise CodebookError(
                        f"Layer {j}: inconsistent support at position {k} "
                        f"({nz[k]} of {M} codewords nonzero), "
                        f"layer uses {counts[j]} positions, expected {self.N}"
                    )
                if counts[j] < self.N:
                    raise CodebookError(
                        f"Layer {j}: inconsistent support, only {counts[j]} "
                        f"nonzero positions, expected {self.N}"
                    )
            n = self.N
        else:
            n = int(counts.max()) if J else 0
        if K < 1 or J < 1:
            raise CodebookError(f"Codebook needs J >= 1 and K >= 1, got J={J}, K={K}")
        object.__setattr__(self, "entries", _readonly(entries))
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "support", _readonly(support))

    @property
    def J(self) -> int:
        """Layer count."""
        return self.entries.shape[0]

    @property
    def M(self) -> int:
        """Codewords per layer."""
        return self.entries.shape[1]

    @property
    def K(self) -> int:
        """Resource count (codeword length)."""
        return self.entries.shape[2]

    @property
    def bits_per_layer(self) -> int:
        """log2(M) bits carried by one codeword."""
        return int(log2(self.M))

    @property
    def overloading(self) -> float:
        """Overloading factor J/K."""
        return self.J / self.K

    def constellation(self) -> Constellation:
        """
        Complex per-layer candidate points.

        :returns: constellation with M candidates per layer
        :rtype: Constellation
        """

        return Constellation(tuple(self.entries[j] for j in range(self.J)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Codebook):
            return NotImplemented
        return self.N == other.N and np.array_equal(self.entries, other.entries)

    __hash__ = None


@dataclass(frozen=True)
class ChannelVectors:
    """
    Channel gains, h[j, k] = h_kj.

    :param np.ndarray h: complex array of shape (J, K)
    """

    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.complex128)
        if h.ndim != 2:
            raise CodebookError(
                f"Channel vectors must have shape (J, K), got {h.shape}"
            )
        object.__setattr__(self, "h", _readonly(h))

    @classmethod
    def ones(cls, J: int, K: int) -> "ChannelVectors":
        """All-ones (AWGN) channel."""
        return cls(np.ones((J, K), dtype=np.complex128))


@dataclass(frozen=True)
class SeparableSplit:
    """
    Factorization of a separable codebook.

    Codeword m of layer j with (real index a, imaginary index b) satisfies
    entries[j, m] = real.points[j][a] + 1j * imag.points[j][b] and
    index[j][a, b] = m.
    """

    real: Constellation
    imag: Constellation
    index: tuple


def load_codebook(path: str) -> Codebook:
    """
    Load codebook from plain-text file.

    :param str path: fully qualified path to codebook file
    :returns: validated codebook
    :rtype: Codebook
    :raises: CodebookError
    """

    try:
        with open(path, "r", encoding="utf-8") as infile:
            lines = [
                ln.split()
                for ln in infile
                if ln.strip() != "" and ln.lstrip()[0] != "#"
            ]
    except OSError as err:
        raise CodebookError(f"Unable to read codebook file {path}: {err}") from err

    if len(lines) == 0:
        raise CodebookError(f"Codebook file {path} is empty")
    try:
        K, J, M, N = (int(v) for v in lines[0])
    except ValueError as err:
        raise CodebookError(
            f"Codebook file {path}: header must be 'K J M N', got {lines[0]}"
        ) from err
    rows = lines[1:]
    if len(rows) != J * M:
        raise CodebookError(
            f"Codebook file {path}: expected {J * M} codeword lines, got {len(rows)}"
        )
    entries = np.zeros((J, M, K), dtype=np.complex128)
    for i, row in enumerate(rows):
        j, m = divmod(i, M)
        if len(row) != 2 * K:
            raise CodebookError(
                f"Codebook file {path}: layer {j} codeword {m} has "
                f"{len(row)} values, expected {2 * K}"
            )
        try:
            vals = [float(v) for v in row]
        except ValueError as err:
            raise CodebookError(
                f"Codebook file {path}: layer {j} codeword {m}: {err}"
            ) from err
        entries[j, m] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])

    cb = Codebook(entries, N=N)
    logger.debug(f"Loaded codebook K={K} J={J} M={M} N={N} from {path}")
    return cb


def save_codebook(cb: Codebook, path: str):
    """
    Save codebook to plain-text file (bit-exact round trip with load_codebook).

    :param Codebook cb: codebook
    :param str path: fully qualified path to codebook file
    :raises: CodebookError
    """

    try:
        with open(path, "w", encoding="utf-8") as outfile:
            outfile.write(f"# SCMA codebook K={cb.K} J={cb.J} M={cb.M} N={cb.N}\n")
            outfile.write(f"{cb.K} {cb.J} {cb.M} {cb.N}\n")
            for j in range(cb.J):
                outfile.write(f"# layer {j}\n")
                for m in range(cb.M):
                    vals = []
                    for x in cb.entries[j, m]:
                        vals += [repr(float(x.real)), repr(float(x.imag))]
                    outfile.write(" ".join(vals) + "\n")
    except OSError as err:
        raise CodebookError(f"Unable to write codebook file {path}: {err}") from err


def _draw_levels(rng: np.random.Generator, count: int) -> np.ndarray:
    """
    Draw distinct values uniformly from [-AMPLITUDE, AMPLITUDE], rejecting
    any closer than MIN_SEPARATION to one already drawn.
    """

    levels = []
    while len(levels) < count:
        val = rng.uniform(-AMPLITUDE, AMPLITUDE)
        if all(abs(val - lvl) >= MIN_SEPARATION for lvl in levels):
            levels.append(val)
    return np.array(levels)


def generate_separable_codebook(K: int, M: int, seed: int) -> Codebook:
    """
    Generate a separable codebook on the K-choose-2 layer structure.

    One layer per unordered resource pair, in lexicographic order. Per layer
    and nonzero position, sqrt(M) real and sqrt(M) imaginary values are
    drawn; codeword m = a * sqrt(M) + b combines real value set a with
    imaginary value set b.

    :param int K: resource count (>= 3)
    :param int M: codewords per layer (perfect square and power of two)
    :param int seed: RNG seed
    :returns: codebook with J = K(K-1)/2, N = 2
    :rtype: Codebook
    :raises: CodebookError
    """

    root = isqrt(M) if M > 0 else 0
    if M < 2 or root * root != M or not is_power_of_two(M):
        raise CodebookError(
            f"M must be a perfect square and a power of two, got {M}"
        )
    if K < 3:
        raise CodebookError(f"K must be >= 3, got {K}")

    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(K), 2))
    entries = np.zeros((len(pairs), M, K), dtype=np.complex128)
    for j, pair in enumerate(pairs):
        for k in pair:
            re = _draw_levels(rng, root)
            im = _draw_levels(rng, root)
            entries[j, :, k] = np.add.outer(re, 1j * im).ravel()
    return Codebook(entries, N=2)


def effective_codebook(cb: Codebook, h: ChannelVectors) -> Codebook:
    """
    Absorb channel gains into the codewords (entries h_kj * x_kjm).

    :param Codebook cb: codebook
    :param ChannelVectors h: channel vectors
    :returns: effective codebook, seen by the detectors through an all-ones channel
    :rtype: Codebook
    :raises: CodebookError
    """

    if h.h.shape != (cb.J, cb.K):
        raise CodebookError(
            f"Channel vectors shape {h.h.shape} does not match codebook (J, K) "
            f"= ({cb.J}, {cb.K})"
        )
    return Codebook(cb.entries * h.h[:, None, :])


def _max_component(arr: np.ndarray) -> float:
    """Largest |real| or |imaginary| component."""

    arr = np.asarray(arr)
    if arr.size == 0:
        return 0.0
    return float(max(np.max(np.abs(arr.real)), np.max(np.abs(arr.imag))))


def amplitude_bound(cb, resource: int = None, layers: tuple = None) -> float:
    """
    Smallest wid such that every real and imaginary component lies in [-wid, wid].

    :param cb: Codebook or Constellation
    :param int resource: restrict to one resource, or None for all
    :param tuple layers: restrict a resource to these layers, or None for all
    :returns: amplitude bound wid
    :rtype: float
    """

    if isinstance(cb, Codebook):
        cb = cb.constellation()
    if resource is None:
        return max(_max_component(p) for p in cb.points)
    if layers is None:
        layers = range(cb.J)
    cols = [np.zeros(0)] + [cb.column(j, resource) for j in layers]
    return _max_component(np.concatenate(cols))


def _factor_layer(points: np.ndarray):
    """
    Factor one layer's codewords into real and imaginary value sets.

    :returns: (real set, imag set, index table) or None if not a product set
    """

    M = points.shape[0]
    reals, re_idx = np.unique(points.real, axis=0, return_inverse=True)
    imags, im_idx = np.unique(points.imag, axis=0, return_inverse=True)
    re_idx = np.asarray(re_idx).reshape(-1)
    im_idx = np.asarray(im_idx).reshape(-1)
    if reals.shape[0] * imags.shape[0] != M:
        return None
    index = np.full((reals.shape[0], imags.shape[0]), -1, dtype=np.int64)
    index[re_idx, im_idx] = np.arange(M)
    if np.any(index < 0):  # duplicate codewords
        return None
    return reals, imags, index


def _layers(cb) -> list:
    """Per-layer codeword arrays from a Codebook or (J, M, K) array."""

    if isinstance(cb, Codebook):
        return [cb.entries[j] for j in range(cb.J)]
    arr = np.asarray(cb, dtype=np.complex128)
    return [arr[j] for j in range(arr.shape[0])]


def is_separable(cb) -> bool:
    """
    Check if every layer's codeword set is the Cartesian product of its
    real-part set and imaginary-part set.

    :param cb: Codebook or complex array of shape (J, M, K)
    :returns: True if separable
    :rtype: bool
    """

    return all(_factor_layer(pts) is not None for pts in _layers(cb))


def split_codebook(cb) -> SeparableSplit:
    """
    Split a separable codebook into real and imaginary constellations.

    :param cb: Codebook or complex array of shape (J, M, K)
    :returns: real constellation, imaginary constellation and index tables
    :rtype: SeparableSplit
    :raises: DetectionError if the codebook is not separable
    """

    reals, imags, index = [], [], []
    for j, pts in enumerate(_layers(cb)):
        factors = _factor_layer(pts)
        if factors is None:
            raise DetectionError(
                f"Layer {j} is not separable: codewords are not the Cartesian "
                "product of their real and imaginary parts"
            )
        reals.append(factors[0])
        imags.append(factors[1])
        index.append(_readonly(factors[2]))
    return SeparableSplit(
        Constellation(tuple(reals)), Constellation(tuple(imags)), tuple(index)
    )
