"""Von Neumann entropy in bits, for structured and dense spectra."""

from __future__ import annotations

import logging
from typing import Union

import numpy as np

from .errors import NegativeEigenvalueError
from .linalg import Spectrum
from .werner import StructuredSpectrum

log = logging.getLogger(__name__)

CLAMP_TOL = 1e-12
ERROR_TOL = 1e-9
NEGLIGIBLE = 1e-300


def _check_negative(value: float) -> None:
    # value < 0 here.
    if value < -ERROR_TOL:
        raise NegativeEigenvalueError(f"eigenvalue {value:.3e} is below -{ERROR_TOL:g}")
    if value < -CLAMP_TOL:
        log.warning("clamping eigenvalue %.3e to zero", value)


def _structured_entropy(spectrum: StructuredSpectrum) -> float:
    h = 0.0
    for entry in spectrum:
        if entry.multiplicity.exact == 0:
            continue
        value = entry.value
        if value.sign <= 0:
            if value.sign < 0:
                _check_negative(float(value))
            continue
        weight = float(entry.multiplicity.weight(value))
        if weight < NEGLIGIBLE:
            continue
        h -= weight * value.log2()
    return h + 0.0


def _dense_entropy(eigenvalues: np.ndarray) -> float:
    lam = np.asarray(eigenvalues, dtype=float)
    negative = lam[lam < 0]
    if negative.size:
        _check_negative(float(negative.min()))
    lam = lam[lam >= NEGLIGIBLE]
    return float(-(lam * np.log2(lam)).sum()) + 0.0


def shannon_entropy_bits(spectrum: Union[StructuredSpectrum, Spectrum, np.ndarray]) -> float:
    """``-sum(lam * log2(lam))`` with ``0 log 0 = 0``.

    Eigenvalues in ``[-1e-12, 0)`` count as zero; anything below ``-1e-9``
    raises :class:`NegativeEigenvalueError`. In between, the value is clamped
    with a logged warning.
    """
    if isinstance(spectrum, StructuredSpectrum):
        return _structured_entropy(spectrum)
    if isinstance(spectrum, Spectrum):
        return _dense_entropy(spectrum.eigenvalues)
    return _dense_entropy(spectrum)
