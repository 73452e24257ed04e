"""
SCMA Detection Custom Exception Types

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""


class ParameterError(Exception):
    """Parameter Error Class."""


class CodebookError(Exception):
    """Codebook Parse or Validation Error Class."""


class FactorGraphError(Exception):
    """Factor Graph Construction Error Class."""


class SpectrumError(Exception):
    """Transform Length Error Class."""


class DiscretizationError(Exception):
    """PDF Discretization Error Class."""


class DetectionError(Exception):
    """Detector Precondition Error Class."""
