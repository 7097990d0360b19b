"""The generalized n-qubit Werner state ``p |GHZ><GHZ| + (1 - p) I / 2**n``.

Qubit ordering: subsystem B is the last (least significant) qubit and A is
the leading ``n - 1`` qubits, so every bipartite call uses ``dim_b = 2``.

Two representations are offered. The dense one is a ``2**n x 2**n`` matrix,
limited to ``n <= 12``. The structured one lists the exact eigenvalue
families with symbolic multiplicities and works for any ``n``.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Tuple, Union

import numpy as np

from .errors import CapacityError, ValidationError
from .linalg import MAX_DENSE_QUBITS, partial_trace_a
from .scaled import Multiplicity, Real, Scaled

P_CLAMP = 1e-12


@dataclass(frozen=True)
class WernerParams:
    """Qubit count ``n >= 2`` and mixing probability ``0 <= p <= 1``.

    ``p`` may be a float or a :class:`fractions.Fraction`; fractions keep the
    structured spectra exact. Values outside ``[0, 1]`` by at most ``1e-12``
    are clamped.
    """

    n: int
    p: Union[float, Fraction]

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral):
            raise ValidationError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ValidationError(f"n must be >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        p = self.p
        if isinstance(p, bool) or not isinstance(p, numbers.Real):
            raise ValidationError(f"p must be a real number, got {p!r}")
        if not isinstance(p, Fraction):
            p = float(p)
            if p != p:
                raise ValidationError("p is NaN")
        if p < 0:
            if p < -P_CLAMP:
                raise ValidationError(f"p must lie in [0, 1], got {p}")
            p = type(p)(0)
        elif p > 1:
            if p > 1 + P_CLAMP:
                raise ValidationError(f"p must lie in [0, 1], got {p}")
            p = type(p)(1)
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class SpectrumEntry:
    value: Scaled
    multiplicity: Multiplicity


@dataclass(frozen=True)
class StructuredSpectrum:
    """Eigenvalue families of a ``2**n``-dimensional operator."""

    entries: Tuple[SpectrumEntry, ...]
    n: int

    def __iter__(self) -> Iterator[SpectrumEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity.exact for e in self.entries)

    def total(self) -> Real:
        """Sum of all eigenvalues counted with multiplicity."""
        return sum(e.multiplicity.weight(e.value) for e in self.entries)

    def min_value(self) -> Scaled:
        live = [e.value for e in self.entries if e.multiplicity.exact > 0]
        return min(live, key=float)

    def to_array(self) -> np.ndarray:
        """Expanded eigenvalue list in descending order (dense-cap sizes only)."""
        if self.n > MAX_DENSE_QUBITS:
            raise CapacityError(f"refusing to expand a spectrum of 2^{self.n} values")
        parts = [
            np.full(e.multiplicity.exact, float(e.value)) for e in self.entries
        ]
        return np.sort(np.concatenate(parts))[::-1]


def _entry(value: Scaled, power, offset: int = 0) -> SpectrumEntry:
    return SpectrumEntry(value, Multiplicity(power, offset))


def ghz_mixture_spectrum(k: int, p: Real) -> StructuredSpectrum:
    """Spectrum of ``p |GHZ_k><GHZ_k| + (1 - p) I / 2**k``.

    ``(1 + (2**k - 1) p) / 2**k`` once and ``(1 - p) / 2**k`` with
    multiplicity ``2**k - 1``; the two merge to ``2**-k`` at ``p = 0``.
    """
    one = type(p)(1)
    if p == 0:
        return StructuredSpectrum((_entry(Scaled(one, -k), k),), k)
    top = Scaled.affine(p, one - p, k)
    rest = Scaled(one - p, -k)
    return StructuredSpectrum((_entry(top, None, 1), _entry(rest, k, -1)), k)


def build_ghz(n: int) -> np.ndarray:
    """Density matrix of ``(|0...0> + |1...1>) / sqrt(2)``."""
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense GHZ limited to n <= {MAX_DENSE_QUBITS}, got {n}")
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=np.complex128)
    rho[0, 0] = rho[0, -1] = rho[-1, 0] = rho[-1, -1] = 0.5
    return rho


def build_werner_dense(params: WernerParams) -> np.ndarray:
    n = params.n
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense Werner state limited to n <= {MAX_DENSE_QUBITS}, got {n}")
    p = float(params.p)
    rho = build_ghz(n)
    rho *= p
    idx = np.arange(params.dim)
    rho[idx, idx] += (1.0 - p) / params.dim
    return rho


def werner_spectrum(params: WernerParams) -> StructuredSpectrum:
    return ghz_mixture_spectrum(params.n, params.p)


def reduced_state_b(params: WernerParams) -> np.ndarray:
    """Single-qubit marginal of B; it is ``I / 2`` for every member of the family."""
    return np.eye(2, dtype=np.complex128) / 2


def reduced_state_b_dense(params: WernerParams) -> np.ndarray:
    """Marginal of B obtained by tracing A out of the dense state."""
    rho = build_werner_dense(params)
    return partial_trace_a(rho, params.dim // 2, 2)


def pt_spectrum(params: WernerParams) -> StructuredSpectrum:
    """Spectrum of the state partially transposed on B.

    ``(1 - p)/2**n - p/2`` once, ``(1 - p)/2**n + p/2`` three times and
    ``(1 - p)/2**n`` with multiplicity ``2**n - 4``.
    """
    n, p = params.n, params.p
    one = type(p)(1)
    half_p = p / 2
    return StructuredSpectrum(
        (
            _entry(Scaled.affine(-half_p, one - p, n), None, 1),
            _entry(Scaled.affine(half_p, one - p, n), None, 3),
            _entry(Scaled(one - p, -n), n, -4),
        ),
        n,
    )
