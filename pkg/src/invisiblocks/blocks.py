"""The explicit family of unidirectionally invisible finite-range potentials.

A Block is one member of the family: parameters (alpha, n), design
wavenumber k0, a shift d, and an optional complex conjugation.  The
unconjugated block

    v(x) = k0^2 * f_alpha(x + d) on support [-d, L_n - d],  L_n = pi*n/k0,

is right-invisible at k0 (rr = 0, t = 1) with an exactly known left
reflection amplitude.  Conjugating it yields a left-invisible block.
Realizers invert the family: given any nonzero target amplitude they
return a Block achieving it exactly at k0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ScatteringTriple

__all__ = [
    "Block",
    "PotentialSpec",
    "block_length",
    "family_value",
    "family_rl",
    "solve_alpha",
    "phase_offset_right",
    "phase_offset_left",
    "realize_right_invisible",
    "realize_left_invisible",
    "block_support",
    "block_triple",
    "evaluate_spec",
    "refractive_index",
]

ALPHA_MIN = -0.25  # family develops a singularity at alpha = -1/4


def _check_alpha(alpha: float) -> None:
    if alpha <= ALPHA_MIN:
        raise ValueError(f"family singular for alpha <= -1/4 (got {alpha})")
    if alpha == 0:
        raise ValueError("alpha = 0 is the zero potential")


def block_length(n: int, k0: float) -> float:
    """Support length L_n = pi*n/k0."""
    return math.pi * n / k0


@dataclass(frozen=True)
class Block:
    """One building-block potential of the family."""

    alpha: float
    n: int
    k0: float
    d: float = 0.0
    conjugated: bool = False

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not (math.isfinite(self.k0) and self.k0 > 0):
            raise ValueError(f"k0 must be positive, got {self.k0}")

    @property
    def length(self) -> float:
        return block_length(self.n, self.k0)


def family_value(alpha: float, k0: float, x, n: int | None = None):
    """Potential value k0^2 * f_alpha(x), zero outside [0, L_n] when n is given.

    Vectorized over x.  Without n the raw (uncut) profile is returned.
    """
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    e2 = np.exp(2j * k0 * x)
    val = k0 ** 2 * (-8.0 * alpha * (3.0 - 2.0 * e2)) / (e2 ** 2 + alpha * (1.0 - e2) ** 2)
    if n is not None:
        inside = (x >= 0.0) & (x <= block_length(n, k0))
        val = np.where(inside, val, 0.0 + 0.0j)
    if val.ndim == 0:
        return complex(val)
    return val


def family_rl(alpha: float, n: int) -> complex:
    """Left reflection amplitude of the unshifted family block at k0."""
    _check_alpha(alpha)
    return -8j * math.pi * n * alpha / (alpha + 1.0) ** 3


def solve_alpha(magnitude: float, n: int, tol: float = 1e-12, max_iter: int = 100) -> float:
    """Smallest positive root of 8*pi*n*alpha = |R| * (alpha+1)^3.

    Newton iteration seeded at |R|/(8*pi*n).  The map alpha ->
    8*pi*n*alpha/(alpha+1)^3 peaks at alpha = 1/2; magnitudes above the
    peak value are not reachable at this n.
    """
    if magnitude <= 0:
        raise ValueError("target magnitude must be positive")
    c = 8.0 * math.pi * n
    peak = c * 0.5 / 1.5 ** 3
    if magnitude > peak:
        raise ValueError(
            f"target magnitude too large for chosen n; increase n "
            f"(|R| = {magnitude:.6g} > max {peak:.6g} at n = {n})"
        )
    a = magnitude / c
    for _ in range(max_iter):
        g = c * a - magnitude * (a + 1.0) ** 3
        dg = c - 3.0 * magnitude * (a + 1.0) ** 2
        step = g / dg
        a -= step
        if abs(step) < 1e-16 * max(a, 1e-300):
            break
    # clamp into the rising branch and verify the residual
    if not (0.0 < a <= 0.5):
        raise ValueError("target magnitude too large for chosen n; increase n")
    resid = abs(c * a / (a + 1.0) ** 3 - magnitude)
    if resid > tol * magnitude:
        raise ValueError(f"alpha solve did not converge (residual {resid:.3e})")
    return a


def phase_offset_right(phi: float, m: int, k0: float) -> float:
    """Shift d rotating the family block's rl phase from -pi/2 to phi.

    d = ((4m - 1)*pi - 2*phi) / (4*k0); m selects the half-wavelength branch.
    """
    return ((4 * m - 1) * math.pi - 2.0 * phi) / (4.0 * k0)


def phase_offset_left(phi: float, m: int, k0: float) -> float:
    """Shift d giving the conjugated block right reflection phase phi.

    d = (phi + pi/2 + 2*pi*m) / (2*k0).
    """
    return (phi + math.pi / 2.0 + 2.0 * math.pi * m) / (2.0 * k0)


_PHASE_EPS = 1e-12  # rounding guard at branch-cut boundaries


def _wrap_right_phase(phi: float) -> float:
    """Reduce a phase into (-pi, pi]; values rounded just below -pi land on +pi."""
    if phi <= -math.pi + _PHASE_EPS:
        phi += 2.0 * math.pi
    return phi


def _wrap_left_phase(phi: float) -> float:
    """Reduce a phase into (-3*pi/2, pi/2], the branch centered on the
    conjugated family's intrinsic phase -pi/2."""
    while phi > math.pi / 2.0 + _PHASE_EPS:
        phi -= 2.0 * math.pi
    while phi <= -1.5 * math.pi + _PHASE_EPS:
        phi += 2.0 * math.pi
    return phi


def realize_right_invisible(target_rl: complex, k0: float, n: int = 300, m: int = 0) -> Block:
    """Block with (rl, rr, t) = (target_rl, 0, 1) at k0."""
    target_rl = complex(target_rl)
    if target_rl == 0:
        raise ValueError("target amplitude must be nonzero")
    alpha = solve_alpha(abs(target_rl), n)
    phi = _wrap_right_phase(cmath.phase(target_rl))
    d = phase_offset_right(phi, m, k0)
    return Block(alpha=alpha, n=n, k0=k0, d=d, conjugated=False)


def realize_left_invisible(target_rr: complex, k0: float, n: int = 300, m: int = 0) -> Block:
    """Block with (rl, rr, t) = (0, target_rr, 1) at k0, via conjugation."""
    target_rr = complex(target_rr)
    if target_rr == 0:
        raise ValueError("target amplitude must be nonzero")
    alpha = solve_alpha(abs(target_rr), n)
    phi = _wrap_left_phase(cmath.phase(target_rr))
    d = phase_offset_left(phi, m, k0)
    return Block(alpha=alpha, n=n, k0=k0, d=d, conjugated=True)


def block_support(b: Block) -> tuple[float, float]:
    """Support interval [-d, L_n - d]."""
    return (-b.d, b.length - b.d)


def block_triple(b: Block) -> ScatteringTriple:
    """Exact analytic amplitudes of a Block at its design wavenumber k0."""
    base = family_rl(b.alpha, b.n)
    if b.conjugated:
        # conjugate of the shifted block: rr = e^{2 i d k0} * rl_family
        return ScatteringTriple(0.0, cmath.exp(2j * b.d * b.k0) * base, 1.0, b.k0)
    return ScatteringTriple(cmath.exp(-2j * b.d * b.k0) * base, 0.0, 1.0, b.k0)


@dataclass(frozen=True)
class PotentialSpec:
    """An ordered left-to-right assembly of blocks sharing one k0."""

    k0: float
    blocks: tuple[Block, ...]
    metadata: str = ""

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for b in self.blocks:
            if abs(b.k0 - self.k0) > 1e-12 * max(abs(self.k0), 1.0):
                raise ValueError("all blocks must share the spec's k0")
        eps = 1e-9
        for left, right in zip(self.blocks, self.blocks[1:]):
            if block_support(left)[1] > block_support(right)[0] + eps:
                raise ValueError(
                    "block supports must be pairwise disjoint and ordered "
                    f"left to right: {block_support(left)} overlaps {block_support(right)}"
                )

    @property
    def support(self) -> tuple[float, float] | None:
        if not self.blocks:
            return None
        return (block_support(self.blocks[0])[0], block_support(self.blocks[-1])[1])

    @property
    def extent(self) -> float:
        s = self.support
        return 0.0 if s is None else s[1] - s[0]


def evaluate_spec(spec: PotentialSpec, x):
    """Total potential value of the assembly at position(s) x."""
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    for b in spec.blocks:
        val = family_value(b.alpha, b.k0, x + b.d, b.n)
        val = np.asarray(val)
        if b.conjugated:
            val = np.conj(val)
        total = total + val
    if total.ndim == 0:
        return complex(total)
    return total


def refractive_index(spec: PotentialSpec, x):
    """Refractive index sqrt(1 - v(x)/k0^2); exactly 1 in vacuum regions."""
    v = np.asarray(evaluate_spec(spec, x))
    arg = 1.0 - v / spec.k0 ** 2
    if np.any(arg.real <= 0.0):
        raise ValueError(
            "refractive-index branch ambiguous (Re(1 - v/k^2) <= 0); "
            "potential outside the modeled weak-contrast regime"
        )
    out = np.sqrt(arg)
    if out.ndim == 0:
        return complex(out)
    return out
