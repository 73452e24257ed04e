"""
Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

from pyscmadetect._version import __version__
from pyscmadetect.bounds import (
    BoundInputs,
    ComplexityEstimate,
    abs_error_bound,
    abs_error_bound_complex,
    estimate_complexity,
    rel_error_bound,
    rel_error_bound_complex,
    suggest_w,
)
from pyscmadetect.channel import (
    NoiseModel,
    TransmitRecord,
    draw_transmission,
    encode,
    random_bits,
    superpose,
    transmit,
    trial_rng,
)
from pyscmadetect.codebook import (
    ChannelVectors,
    Codebook,
    Constellation,
    SeparableSplit,
    amplitude_bound,
    effective_codebook,
    generate_separable_codebook,
    is_separable,
    load_codebook,
    save_codebook,
    split_codebook,
)
from pyscmadetect.dmpa import (
    DiscretePdf,
    DiscretizationParams,
    convolve_all,
    detect_dmpa,
    discretize_layer_pdf,
    evaluate_g,
    padded_length,
    sample_noise_pdf,
    update_resource_messages_dmpa,
)
from pyscmadetect.exceptions import (
    CodebookError,
    DetectionError,
    DiscretizationError,
    FactorGraphError,
    ParameterError,
    SpectrumError,
)
from pyscmadetect.factorgraph import FactorGraph, build_regular_graph, from_codebook
from pyscmadetect.globals import *
from pyscmadetect.harness import (
    BlerRecord,
    DivergenceRecord,
    SimConfig,
    TimingRecord,
    emit_results,
    run_bler,
    run_divergence,
    run_timing,
    wilson_interval,
)
from pyscmadetect.mpa import (
    DetectionResult,
    Diagnostics,
    MessageSet,
    decide,
    detect_llr_mpa,
    detect_mpa,
    detect_split_mpa,
    init_messages,
    neighbour_combinations,
    update_layer_messages,
    update_resource_messages,
)
from pyscmadetect.spectral import (
    Spectrum,
    circular_convolve,
    dft_forward,
    dft_inverse,
    leave_one_out_product,
    linear_convolve_direct,
    real_inverse,
    real_spectra,
)

version = __version__  # pylint: disable=invalid-name
