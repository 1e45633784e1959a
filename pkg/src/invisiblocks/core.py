"""Exact 2x2 transfer-matrix algebra for 1D scattering amplitudes.

Conventions: the transfer matrix maps left asymptotic plane-wave
coefficients (A-, B-) to right ones (A+, B+).  In terms of the left/right
reflection amplitudes rl, rr and the transmission amplitude t,

    M = [[t - rl*rr/t, rr/t],
         [-rl/t,       1/t ]],      det M = 1.

Wavenumbers are in rad/um, lengths in um, angles in radians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "ScatteringTriple",
    "TransferMatrix",
    "SpectralSingularityError",
    "DegenerateTimeReversalError",
    "amplitudes_to_matrix",
    "matrix_to_amplitudes",
    "compose",
    "transform_parity",
    "transform_translate",
    "transform_time_reversal",
]


class SpectralSingularityError(ValueError):
    """Raised when |m22| is too small for finite amplitudes (1/T diverges)."""

    def __init__(self, m22_magnitude: float):
        self.m22_magnitude = m22_magnitude
        super().__init__(
            f"spectral singularity: divergent amplitudes (|m22| = {m22_magnitude:.3e})"
        )


class DegenerateTimeReversalError(ValueError):
    """Raised when D = t^2 - rl*rr vanishes, so time reversal is undefined."""


def _require_finite(name: str, z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class ScatteringTriple:
    """Reflection/transmission amplitudes (rl, rr, t) at a single wavenumber k."""

    rl: complex
    rr: complex
    t: complex
    k: float

    def __post_init__(self):
        for name in ("rl", "rr", "t"):
            _require_finite(name, complex(getattr(self, name)))
        if self.t == 0:
            raise ValueError("divergent transmission not representable as triple")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"wavenumber must be positive and finite, got {self.k}")

    @property
    def d_invariant(self) -> complex:
        """D = t^2 - rl*rr, the combination entering time reversal."""
        return self.t * self.t - self.rl * self.rr


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22"):
            _require_finite(name, complex(getattr(self, name)))

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def norm(self) -> float:
        """Frobenius norm."""
        return math.sqrt(
            abs(self.m11) ** 2 + abs(self.m12) ** 2
            + abs(self.m21) ** 2 + abs(self.m22) ** 2
        )

    @classmethod
    def identity(cls) -> "TransferMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)


def amplitudes_to_matrix(s: ScatteringTriple) -> TransferMatrix:
    """Transfer matrix of a triple; the triple's t != 0 guarantees finiteness."""
    t, rl, rr = s.t, s.rl, s.rr
    return TransferMatrix(t - rl * rr / t, rr / t, -rl / t, 1.0 / t)


def matrix_to_amplitudes(
    m: TransferMatrix, k: float, singular_rel: float = 1e-10
) -> ScatteringTriple:
    """Invert the matrix form: t = 1/m22, rl = -m21/m22, rr = m12/m22.

    Raises SpectralSingularityError when |m22| < singular_rel * ||M||,
    i.e. when the design sits at (or numerically indistinguishably close to)
    a spectral singularity.
    """
    if abs(m.m22) <= singular_rel * m.norm:
        raise SpectralSingularityError(abs(m.m22))
    return ScatteringTriple(-m.m21 / m.m22, m.m12 / m.m22, 1.0 / m.m22, k)


def compose(m_right: TransferMatrix, m_left: TransferMatrix) -> TransferMatrix:
    """Transfer matrix of two potentials with support(m_left) left of support(m_right)."""
    a, b = m_right, m_left
    return TransferMatrix(
        a.m11 * b.m11 + a.m12 * b.m21,
        a.m11 * b.m12 + a.m12 * b.m22,
        a.m21 * b.m11 + a.m22 * b.m21,
        a.m21 * b.m12 + a.m22 * b.m22,
    )


def transform_parity(s: ScatteringTriple) -> ScatteringTriple:
    """Amplitudes of the spatially mirrored potential: rl and rr swap."""
    return ScatteringTriple(s.rr, s.rl, s.t, s.k)


def transform_translate(s: ScatteringTriple, a: float) -> ScatteringTriple:
    """Amplitudes after translating the potential by a (v(x) -> v(x - a))."""
    phase = cmath.exp(2j * a * s.k)
    return ScatteringTriple(phase * s.rl, s.rr / phase, s.t, s.k)


def transform_time_reversal(s: ScatteringTriple) -> ScatteringTriple:
    """Amplitudes of the complex-conjugated potential at the same real k."""
    d = s.d_invariant
    if d == 0:
        raise DegenerateTimeReversalError("degenerate time-reversal (D = 0)")
    dc = d.conjugate()
    return ScatteringTriple(
        -s.rr.conjugate() / dc,
        -s.rl.conjugate() / dc,
        s.t.conjugate() / dc,
        s.k,
    )
