"""Numerical scattering amplitudes by direct wave-equation integration.

Two independent routes are provided:

* the x-route: integrate psi'' = (v(x) - k^2) psi across the support and
  match to plane waves at the endpoints (works for any bounded potential
  and any k > 0);
* the S-route: the initial-value problem z^2 S'' + [v(z)/(4 k^2)] S = 0
  along the clockwise unit-circle arc z = e^{-2it}, from which the
  amplitudes follow by endpoint evaluation and a contour integral.  It is
  implemented for family blocks at their design wavenumber, where a
  closed form exists to check against.

For a PotentialSpec the x-route exploits that each block is periodic with
period pi/k0: one period is integrated and the block matrix is assembled
by translation conjugation and matrix powers.  This is exact up to the
integrator tolerance and makes 300-wavelength blocks cheap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .blocks import Block, PotentialSpec, block_support, family_value
from .core import (
    ScatteringTriple,
    SpectralSingularityError,
    TransferMatrix,
    matrix_to_amplitudes,
)

__all__ = [
    "PotentialFunction",
    "SpectrumTable",
    "IntegrationError",
    "transfer_matrix_numeric",
    "transfer_matrix_spec",
    "scattering_numeric",
    "scattering_spec",
    "scan_spectrum",
    "SContour",
    "s_solve",
    "amplitudes_from_s",
    "rl_residue_family",
]

T2_CAP = 1e12  # display cap for |T|^2 near spectral singularities
DEFAULT_TOL = 1e-9
STEPS_PER_WAVELENGTH = 50


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PotentialFunction:
    """A bounded finite-range potential: support interval plus a value map."""

    support: tuple[float, float]
    value: Callable[[float], complex]

    def __post_init__(self):
        a, b = self.support
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"invalid support {self.support}")


def _integrate_matrix(value, a: float, b: float, k: float, tol: float) -> np.ndarray:
    """Transfer matrix of the potential `value` restricted to [a, b]."""

    k2 = k * k

    def rhs(x, y):
        v = value(x)
        return (y[1], (v - k2) * y[0], y[3], (v - k2) * y[2])

    ea = cmath.exp(1j * k * a)
    y0 = np.array([ea, 1j * k * ea, 1.0 / ea, -1j * k / ea], dtype=complex)
    sol = solve_ivp(
        rhs,
        (a, b),
        y0,
        method="DOP853",
        rtol=tol,
        atol=tol,
        max_step=(2.0 * math.pi / k) / STEPS_PER_WAVELENGTH,
    )
    if not sol.success:
        raise IntegrationError(
            f"integration failed: potential too stiff at given tol ({sol.message})"
        )
    y = sol.y[:, -1]
    eb = cmath.exp(1j * k * b)
    m = np.empty((2, 2), dtype=complex)
    for col, (psi, dpsi) in enumerate(((y[0], y[1]), (y[2], y[3]))):
        m[0, col] = (psi + dpsi / (1j * k)) / (2.0 * eb)
        m[1, col] = (psi - dpsi / (1j * k)) * eb / 2.0
    return m


def _as_transfer_matrix(m: np.ndarray) -> TransferMatrix:
    return TransferMatrix(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def transfer_matrix_numeric(
    p: PotentialFunction, k: float, tol: float = DEFAULT_TOL
) -> TransferMatrix:
    """Transfer matrix at wavenumber k by direct integration over the support."""
    if k <= 0:
        raise ValueError("wavenumber must be positive")
    a, b = p.support
    return _as_transfer_matrix(_integrate_matrix(p.value, a, b, k, tol))


def _block_value(b: Block):
    def value(x):
        v = family_value(b.alpha, b.k0, x + b.d)
        return v.conjugate() if b.conjugated else v

    return value


def _block_matrix(b: Block, k: float, tol: float) -> np.ndarray:
    """Block transfer matrix via one-period integration and matrix powers."""
    p = math.pi / b.k0
    x0 = -b.d
    m_cell = _integrate_matrix(_block_value(b), x0, x0 + p, k, tol)
    # cell j is the cell-0 potential translated by j*p; translation by a
    # conjugates by D(a) = diag(e^{-ika}, e^{ika}), so the product over n
    # cells telescopes to D(n p) (D(-p) M_cell)^n.
    shift = np.diag([cmath.exp(1j * k * p), cmath.exp(-1j * k * p)])
    total = np.diag([cmath.exp(-1j * k * b.n * p), cmath.exp(1j * k * b.n * p)])
    return total @ np.linalg.matrix_power(shift @ m_cell, b.n)


def transfer_matrix_spec(
    spec: PotentialSpec, k: float, tol: float = DEFAULT_TOL
) -> TransferMatrix:
    """Transfer matrix of a block assembly (vacuum gaps contribute identity)."""
    if k <= 0:
        raise ValueError("wavenumber must be positive")
    total = np.eye(2, dtype=complex)
    for b in spec.blocks:
        total = _block_matrix(b, k, tol) @ total
    return _as_transfer_matrix(total)


def scattering_numeric(
    p: PotentialFunction, k: float, tol: float = DEFAULT_TOL
) -> ScatteringTriple:
    return matrix_to_amplitudes(transfer_matrix_numeric(p, k, tol), k)


def scattering_spec(
    spec: PotentialSpec, k: float, tol: float = DEFAULT_TOL
) -> ScatteringTriple:
    return matrix_to_amplitudes(transfer_matrix_spec(spec, k, tol), k)


@dataclass(frozen=True)
class SpectrumTable:
    """Scattering coefficients on a k-grid; |T|^2 capped at T2_CAP where flagged."""

    k: np.ndarray
    rl2: np.ndarray
    rr2: np.ndarray
    t2: np.ndarray
    arg_t: np.ndarray
    capped: np.ndarray  # bool per row

    def __len__(self):
        return len(self.k)


def scan_spectrum(
    spec: PotentialSpec,
    kmin: float,
    kmax: float,
    points: int,
    tol: float = DEFAULT_TOL,
) -> SpectrumTable:
    """Uniform k-grid scan; rows near a singularity are capped, not dropped."""
    if not (0 < kmin < kmax):
        raise ValueError("need 0 < kmin < kmax")
    if points < 2:
        raise ValueError("need at least 2 points")
    ks = np.linspace(kmin, kmax, points)
    rl2 = np.empty(points)
    rr2 = np.empty(points)
    t2 = np.empty(points)
    arg_t = np.empty(points)
    capped = np.zeros(points, dtype=bool)
    for i, k in enumerate(ks):
        m = transfer_matrix_spec(spec, float(k), tol)
        if m.m22 == 0:
            rl2[i] = rr2[i] = t2[i] = T2_CAP
            arg_t[i] = 0.0
            capped[i] = True
            continue
        t = 1.0 / m.m22
        rl = -m.m21 / m.m22
        rr = m.m12 / m.m22
        arg_t[i] = cmath.phase(t)
        for arr, amp in ((rl2, rl), (rr2, rr), (t2, t)):
            mag2 = abs(amp) ** 2
            if mag2 > T2_CAP:
                arr[i] = T2_CAP
                capped[i] = True
            else:
                arr[i] = mag2
    return SpectrumTable(ks, rl2, rr2, t2, arg_t, capped)


# --- S-route (contour formulation) ---------------------------------------


@dataclass(frozen=True)
class SContour:
    """Dense solution of the S initial-value problem along z = e^{-2it}."""

    t_end: float  # = k * L
    z_plus: complex
    eval_s: Callable[[float], tuple[complex, complex]]  # t -> (S, S')
    q: Callable[[complex], complex]  # q(z) = v(z)/(4 k^2)

    def s_pp(self, t: float) -> complex:
        """S''(z(t)) from the ODE itself."""
        s, _ = self.eval_s(t)
        z = cmath.exp(-2j * t)
        return -self.q(z) * s / (z * z)


def _family_q(alpha: float):
    """q(z) = v(z)/(4 k0^2) for the unconjugated family block at k = k0."""

    def q(z: complex) -> complex:
        return -2.0 * alpha * (3.0 * z - 2.0) * z / (1.0 + alpha * (z - 1.0) ** 2)

    return q


def s_solve(b: Block, k: float | None = None, tol: float = 1e-12) -> SContour:
    """Integrate the S initial-value problem for a family block at k = k0.

    Only the design wavenumber is supported on this route; pass k = None
    or k = b.k0.
    """
    if b.conjugated:
        raise ValueError("S-route is defined for unconjugated family blocks")
    if k is not None and abs(k - b.k0) > 1e-12 * b.k0:
        raise ValueError("S-route implemented at the design wavenumber only")
    q = _family_q(b.alpha)
    t_end = math.pi * b.n  # k0 * L_n

    def rhs(t, y):
        z = cmath.exp(-2j * t)
        s, sp = y
        # dS/dt = -2iz S';  dS'/dt = -2iz S'' = 2i q(z) S / z
        return (-2j * z * sp, 2j * q(z) * s / z)

    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        np.array([1.0 + 0j, 1.0 + 0j]),
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
        max_step=2.0 * math.pi / STEPS_PER_WAVELENGTH,
    )
    if not sol.success:
        raise IntegrationError(f"integration failed on the S contour ({sol.message})")

    def eval_s(t):
        y = sol.sol(t)
        if np.ndim(t) == 0:
            return complex(y[0]), complex(y[1])
        return y[0], y[1]

    return SContour(t_end=t_end, z_plus=cmath.exp(-2j * t_end), eval_s=eval_s, q=q)


def amplitudes_from_s(
    contour: SContour, k: float, quad_tol: float = 1e-10
) -> ScatteringTriple:
    """Amplitudes from the S-function: endpoint values give rr and t, the
    clockwise contour integral of S''/(S S'^2) gives rl."""
    s_end, sp_end = contour.eval_s(contour.t_end)
    if abs(sp_end) == 0:
        raise ValueError("contour passes through zero of S'; amplitudes ill-defined")
    t_amp = 1.0 / sp_end
    rr = s_end / sp_end - contour.z_plus

    revolutions = max(1, math.ceil(contour.t_end / (2.0 * math.pi)))
    nodes = 400 * revolutions

    def estimate(num: int) -> complex:
        ts = np.linspace(0.0, contour.t_end, num + 1)
        s, sp = contour.eval_s(ts)
        if np.min(np.abs(s)) < 1e-14 or np.min(np.abs(sp)) < 1e-14:
            raise ValueError("contour passes through zero of S; integral ill-defined")
        z = np.exp(-2j * ts)
        # dz = -2iz dt;  integrand -S''/(S S'^2) with S'' = -q S / z^2
        vals = -2j * contour.q(z) / (z * sp * sp)
        h = contour.t_end / num
        return complex(np.trapezoid(vals, dx=h))

    est = estimate(nodes)
    while True:
        nodes *= 2
        nxt = estimate(nodes)
        if abs(nxt - est) < quad_tol or nodes > 3_000_000:
            est = nxt
            break
        est = nxt
    return ScatteringTriple(est, rr, t_amp, 1.0 if k is None else k)


def rl_residue_family(alpha: float, n: int, radius: float = 0.1, nodes: int = 512) -> complex:
    """Left reflection amplitude of the family block via the residue at z = 0.

    The clockwise n-fold contour integral equals 2*pi*i*n times the residue
    of S''/(S S'^2) at the origin; the residue is computed by trapezoid
    quadrature on a small circle (spectrally accurate for analytic data).
    """
    if alpha <= -0.25:
        raise ValueError("family singular for alpha <= -1/4")
    # S = z [alpha (z-1)^2 + 1];  poles of the integrand besides z = 0 are the
    # other zeros of S and the zeros of S'.
    other = []
    if alpha != 0:
        other.extend(np.roots([alpha, -2.0 * alpha, alpha + 1.0]))  # S/z zeros
        other.extend(np.roots([3.0 * alpha, -4.0 * alpha, alpha + 1.0]))  # S' zeros
    for z in other:
        if abs(abs(z) - 1.0) < 1e-8:
            raise ValueError("pole detected on |z| = 1; contour ill-defined")
        if radius * 0.5 < abs(z) < 1.0:
            raise ValueError(
                "additional pole inside the unit circle; residue-at-origin "
                "evaluation not applicable"
            )

    def integrand(z: complex) -> complex:
        s = z * (alpha * (z - 1.0) ** 2 + 1.0)
        sp = alpha * (3.0 * z * z - 4.0 * z + 1.0) + 1.0
        spp = alpha * (6.0 * z - 4.0)
        return spp / (s * sp * sp)

    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    zs = radius * np.exp(1j * theta)
    residue = np.mean([integrand(z) * z for z in zs])
    return 2j * math.pi * n * residue


def spec_to_potential_function(spec: PotentialSpec) -> PotentialFunction:
    """Whole-assembly potential as a plain callable (for direct integration)."""
    from .blocks import evaluate_spec

    sup = spec.support
    if sup is None:
        raise ValueError("empty spec has no support")

    def value(x: float) -> complex:
        return complex(evaluate_spec(spec, x))

    return PotentialFunction(support=sup, value=value)
