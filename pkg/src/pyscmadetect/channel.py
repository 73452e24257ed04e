"""
channel.py

Bit-to-codeword mapping, codeword superposition and complex AWGN.

Received sample on resource k:

    y_k = sum over layers j of x_kj(m_j) + n_k,  n_k ~ CN(0, N0)

with channel gains already absorbed into the (effective) codebook.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass
from math import exp, sqrt

import numpy as np

from pyscmadetect.codebook import Codebook
from pyscmadetect.exceptions import ParameterError
from pyscmadetect.globals import DEFAULT_NWID, TRUNCATION


@dataclass(frozen=True)
class NoiseModel:
    """
    Complex white Gaussian noise.

    :param float N0: complex noise variance (real and imaginary parts
        each have variance N0/2)
    :param float nwid: truncation half-width of the noise PDF grid
    :raises: ParameterError
    """

    N0: float
    nwid: float = DEFAULT_NWID

    def __post_init__(self):
        if not self.N0 > 0:
            raise ParameterError(f"N0 must be > 0, got {self.N0}")
        if not self.nwid > 0:
            raise ParameterError(f"nWid must be > 0, got {self.nwid}")
        # eta(nWid) / eta(0), identical for the real (sigma2 = N0/2) and
        # complex densities
        tail = exp(-(self.nwid**2) / self.N0)
        if tail >= TRUNCATION:
            raise ParameterError(
                f"Noise density not negligible at nWid={self.nwid} for N0={self.N0} "
                f"(eta(nWid)/eta(0) = {tail:.3g} >= {TRUNCATION})"
            )

    @property
    def sigma2(self) -> float:
        """Variance per real dimension."""
        return self.N0 / 2


@dataclass(frozen=True)
class TransmitRecord:
    """
    Ground truth for one transmission.

    :param np.ndarray indices: per-layer transmitted codeword index (length J)
    :param np.ndarray y: received signal (complex, length K)
    """

    indices: np.ndarray
    y: np.ndarray

    def block_errors(self, decided) -> int:
        """
        Layers whose decided codeword differs from the transmitted one.

        :param decided: decided codeword index per layer
        :returns: wrong decisions
        :rtype: int
        :raises: ParameterError on a length mismatch
        """

        decided = np.asarray(decided)
        if decided.shape != np.shape(self.indices):
            raise ParameterError(
                f"Expected {len(self.indices)} decisions, got {decided.size}"
            )
        return int(np.count_nonzero(decided != self.indices))


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Counter-based random stream for one (seed, keys) substream.

    Substreams keyed by trial index are independent of the order or
    thread in which trials run.

    :param int seed: master seed
    :param int keys: substream keys e.g. trial index
    :returns: random generator
    :rtype: np.random.Generator
    """

    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(keys)))
    )


def random_bits(J: int, M: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw J * log2(M) uniform random bits.

    :param int J: layer count
    :param int M: codewords per layer
    :param np.random.Generator rng: random stream
    :returns: bit vector
    :rtype: np.ndarray
    """

    return rng.integers(0, 2, size=J * (int(M).bit_length() - 1), dtype=np.int64)


def encode(bits, cb: Codebook) -> np.ndarray:
    """
    Map bits to per-layer codeword indices.

    Layer j takes the j-th group of log2(M) bits, most significant first.

    :param bits: bit vector of length J * log2(M)
    :param Codebook cb: codebook
    :returns: codeword index per layer
    :rtype: np.ndarray
    :raises: ParameterError
    """

    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    nbits = cb.bits_per_layer
    if bits.size != cb.J * nbits:
        raise ParameterError(
            f"Expected {cb.J * nbits} bits ({cb.J} layers x {nbits}), got {bits.size}"
        )
    if np.any((bits != 0) & (bits != 1)):
        raise ParameterError("Bit vector must contain only 0 and 1")
    weights = 1 << np.arange(nbits - 1, -1, -1, dtype=np.int64)
    return bits.reshape(cb.J, nbits) @ weights


def superpose(indices, cb: Codebook) -> np.ndarray:
    """
    Noiseless superposition of the selected codewords.

    :param indices: codeword index per layer
    :param Codebook cb: (effective) codebook
    :returns: complex vector of length K
    :rtype: np.ndarray
    :raises: ParameterError
    """

    indices = np.asarray(indices, dtype=np.int64).reshape(-1)
    if indices.size != cb.J:
        raise ParameterError(f"Expected {cb.J} codeword indices, got {indices.size}")
    if np.any(indices < 0) or np.any(indices >= cb.M):
        raise ParameterError(f"Codeword indices must be in [0, {cb.M}), got {indices}")
    return cb.entries[np.arange(cb.J), indices].sum(axis=0)


def transmit(
    indices, cb: Codebook, noise: NoiseModel, rng: np.random.Generator
) -> np.ndarray:
    """
    Superpose codewords and add complex Gaussian noise.

    :param indices: codeword index per layer
    :param Codebook cb: effective codebook (channel already absorbed)
    :param NoiseModel noise: noise model, or None for a noiseless channel
    :param np.random.Generator rng: random stream
    :returns: received signal y (complex, length K)
    :rtype: np.ndarray
    :raises: ParameterError
    """

    y = superpose(indices, cb)
    if noise is None:
        return y
    n = rng.standard_normal((2, cb.K)) * sqrt(noise.sigma2)
    return y + (n[0] + 1j * n[1])


def draw_transmission(
    cb: Codebook, noise: NoiseModel, rng: np.random.Generator
) -> TransmitRecord:
    """
    One random transmission: draw bits, encode them and send the
    codewords through the channel, all from the same stream.

    :param Codebook cb: effective codebook
    :param NoiseModel noise: noise model, or None for a noiseless channel
    :param np.random.Generator rng: random stream
    :returns: transmitted indices and received signal
    :rtype: TransmitRecord
    """

    indices = encode(random_bits(cb.J, cb.M, rng), cb)
    return TransmitRecord(indices, transmit(indices, cb, noise, rng))
