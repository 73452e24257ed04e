"""
spectral.py

Power-of-two discrete Fourier transforms (1-D and 2-D) and
convolution primitives.

Transforms are unnormalized forward / 1/N-normalized inverse, computed
with scipy.fft.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from pyscmadetect.exceptions import SpectrumError
from pyscmadetect.helpers import is_power_of_two


def _check_shape(shape: tuple):
    """
    Validate transform shape: 1-D, or 2-D square, power of two >= 2.

    :raises: SpectrumError
    """

    if len(shape) not in (1, 2):
        raise SpectrumError(f"Only 1-D and 2-D transforms supported, got shape {shape}")
    if len(shape) == 2 and shape[0] != shape[1]:
        raise SpectrumError(f"2-D transforms must be square, got shape {shape}")
    if shape[0] < 2 or not is_power_of_two(shape[0]):
        raise SpectrumError(
            f"Transform length must be a power of two >= 2, got {shape}"
        )


@dataclass(frozen=True)
class Spectrum:
    """
    Transform-domain sequence (1-D) or square matrix (2-D).
    """

    values: np.ndarray

    def __post_init__(self):
        _check_shape(np.shape(self.values))

    @property
    def dims(self) -> int:
        """1 or 2."""
        return self.values.ndim

    @property
    def length(self) -> int:
        """Transform length per dimension."""
        return self.values.shape[0]

    def __mul__(self, other: "Spectrum") -> "Spectrum":
        if self.values.shape != other.values.shape:
            raise SpectrumError(
                f"Spectrum shapes differ: {self.values.shape} vs {other.values.shape}"
            )
        return Spectrum(self.values * other.values)


def dft_forward(seq) -> Spectrum:
    """
    Forward (unnormalized) DFT.

    :param seq: real or complex sequence (1-D) or square matrix (2-D)
    :returns: spectrum
    :rtype: Spectrum
    :raises: SpectrumError
    """

    seq = np.asarray(seq)
    _check_shape(seq.shape)
    if seq.ndim == 1:
        return Spectrum(sfft.fft(seq))
    return Spectrum(sfft.fft2(seq))


def dft_inverse(sp: Spectrum) -> np.ndarray:
    """
    Inverse (1/N-normalized) DFT.

    :param Spectrum sp: spectrum
    :returns: complex sequence or matrix
    :rtype: np.ndarray
    """

    if sp.dims == 1:
        return sfft.ifft(sp.values)
    return sfft.ifft2(sp.values)


def pad(seq, N: int) -> np.ndarray:
    """
    Zero-pad a sequence (or square matrix) to length N per dimension.

    :param seq: 1-D or 2-D array
    :param int N: target length
    :returns: padded array
    :rtype: np.ndarray
    :raises: SpectrumError if seq is longer than N
    """

    seq = np.asarray(seq)
    if any(n > N for n in seq.shape):
        raise SpectrumError(f"Cannot pad shape {seq.shape} to length {N}")
    return np.pad(seq, [(0, N - n) for n in seq.shape])


def spectrum_product(spectra) -> Spectrum:
    """
    Pointwise product of spectra, multiplied left to right.

    :param spectra: iterable of Spectrum (at least one)
    :returns: product spectrum
    :rtype: Spectrum
    """

    spectra = iter(spectra)
    prod = next(spectra).values.copy()
    for sp in spectra:
        prod *= sp.values
    return Spectrum(prod)


def real_spectra(seqs, N: int, dims: int) -> np.ndarray:
    """
    Forward DFTs of a stack of real sequences (dims=1) or square matrices
    (dims=2), each zero-padded to length N per dimension.

    Leading axes index the stack. Only the non-negative frequency half of
    the last transform axis (N // 2 + 1 bins) is kept.

    :param seqs: real array, transform axes last
    :param int N: transform length per dimension
    :param int dims: 1 or 2
    :returns: half spectra
    :rtype: np.ndarray
    :raises: SpectrumError
    """

    seqs = np.asarray(seqs, dtype=float)
    _check_shape((N,) * dims)
    if seqs.ndim < dims or any(n > N for n in seqs.shape[seqs.ndim - dims :]):
        raise SpectrumError(f"Cannot pad shape {seqs.shape} to length {N}")
    return sfft.rfftn(seqs, s=(N,) * dims, axes=tuple(range(-dims, 0)))


def real_inverse(spectra, N: int, dims: int) -> np.ndarray:
    """
    Inverse (1/N-normalized) DFTs of a stack of half spectra from
    real_spectra.

    :param spectra: half spectra, transform axes last
    :param int N: transform length per dimension
    :param int dims: 1 or 2
    :returns: real sequences or matrices of length N per dimension
    :rtype: np.ndarray
    """

    return sfft.irfftn(spectra, s=(N,) * dims, axes=tuple(range(-dims, 0)))


def leave_one_out_product(stack) -> np.ndarray:
    """
    For every entry i along axis 0, the pointwise product of all other
    entries (ones for a single-entry stack).

    :param stack: array with at least one entry along axis 0
    :returns: array of the same shape
    :rtype: np.ndarray
    """

    stack = np.asarray(stack)
    ones = np.ones_like(stack[:1])
    before = np.cumprod(np.concatenate([ones, stack[:-1]]), axis=0)
    after = np.cumprod(np.concatenate([ones, stack[:0:-1]]), axis=0)[::-1]
    return before * after


def circular_convolve(a, b) -> np.ndarray:
    """
    Circular convolution via the convolution theorem.

    :param a: sequence (1-D) or square matrix (2-D)
    :param b: as a, same shape
    :returns: circular convolution; real if both inputs are real
    :rtype: np.ndarray
    :raises: SpectrumError on shape mismatch
    """

    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise SpectrumError(f"Sequence shapes differ: {a.shape} vs {b.shape}")
    out = dft_inverse(dft_forward(a) * dft_forward(b))
    if np.isrealobj(a) and np.isrealobj(b):
        return out.real
    return out


def linear_convolve_direct(a, b) -> np.ndarray:
    """
    Linear convolution by direct summation (reference implementation).

    Output length per dimension is len(a) + len(b) - 1.

    :param a: 1-D or 2-D array
    :param b: array with the same number of dimensions
    :returns: linear convolution
    :rtype: np.ndarray
    """

    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim:
        raise SpectrumError(f"Dimension mismatch: {a.ndim} vs {b.ndim}")
    shape = tuple(na + nb - 1 for na, nb in zip(a.shape, b.shape))
    out = np.zeros(shape, dtype=np.result_type(a, b, float))
    for idx in np.ndindex(a.shape):
        window = tuple(slice(i, i + n) for i, n in zip(idx, b.shape))
        out[window] += a[idx] * b
    return out
