"""Local inverse scattering: prescribed amplitudes at k0 -> block assembly.

Two planners reduce a target (rl, rr, t) to an ordered list of
unidirectionally invisible targets:

* plan_six: the outer pair carries rl and rr directly and a middle quartet,
  parametrized by a free nonzero complex number (r_script), realizes the
  bidirectionally reflectionless core diag(T, 1/T);
* plan_addendum: choosing r_script = rl/t (or (t-1)/rr) absorbs an outer
  block into the quartet, giving at most three blocks unless the target is
  bidirectionally reflectionless.

A separate entry point designs two-block potentials whose transmission
diverges at k0 (spectral singularity; the conjugated assembly is a
coherent perfect absorber).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .blocks import (
    Block,
    PotentialSpec,
    block_length,
    block_support,
    phase_offset_left,
    phase_offset_right,
    realize_left_invisible,
    realize_right_invisible,
    _wrap_left_phase,
    _wrap_right_phase,
)
from .core import ScatteringTriple, TransferMatrix, compose
from .solver import scattering_spec

__all__ = [
    "DesignTarget",
    "PlanEntry",
    "BlockPlan",
    "VerifyReport",
    "plan_six",
    "plan_addendum",
    "plan_matrix",
    "assemble",
    "solve_beta",
    "design_singularity",
    "conjugate_spec",
    "verify",
]


@dataclass(frozen=True)
class DesignTarget:
    """Prescribed finite amplitudes (rl, rr, t), t != 0, at wavenumber k0."""

    rl: complex
    rr: complex
    t: complex
    k0: float

    def __post_init__(self):
        if self.t == 0:
            raise ValueError("t must be nonzero (use design_singularity for poles)")
        if self.k0 <= 0:
            raise ValueError("k0 must be positive")

    def triple(self) -> ScatteringTriple:
        return ScatteringTriple(self.rl, self.rr, self.t, self.k0)


@dataclass(frozen=True)
class PlanEntry:
    side: str  # "right" (right-invisible, carries rl) or "left" (left-invisible, carries rr)
    amplitude: complex

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")
        if self.amplitude == 0:
            raise ValueError("plan entries must have nonzero amplitude")

    def matrix(self) -> TransferMatrix:
        if self.side == "right":
            return TransferMatrix(1.0, 0.0, -self.amplitude, 1.0)
        return TransferMatrix(1.0, self.amplitude, 0.0, 1.0)


@dataclass(frozen=True)
class BlockPlan:
    entries: tuple[PlanEntry, ...]
    r_script: complex
    target: DesignTarget


def _default_r_script(target: DesignTarget) -> complex:
    if target.rl == 0 and target.rr == 0:
        # reflectionless target t = eps^2 e^{i theta}: r_script = e^{-i theta}/eps
        eps = math.sqrt(abs(target.t))
        return cmath.exp(-1j * cmath.phase(target.t)) / eps
    return 1.0 + 0.0j


def _core_quartet(t: complex, r_script: complex) -> list[PlanEntry]:
    """Four invisible targets realizing the reflectionless core diag(T, 1/T)."""
    return [
        PlanEntry("right", -r_script * t),
        PlanEntry("left", (t - 1.0) / (r_script * t)),
        PlanEntry("right", r_script),
        PlanEntry("left", (1.0 - t) / r_script),
    ]


def plan_six(target: DesignTarget, r_script: complex | None = None) -> BlockPlan:
    """Up to six invisible targets: rl-carrier, core quartet, rr-carrier."""
    rs = _default_r_script(target) if r_script is None else complex(r_script)
    if rs == 0:
        raise ValueError("r_script must be nonzero")
    entries: list[PlanEntry] = []
    if target.rl != 0:
        entries.append(PlanEntry("right", target.rl))
    if target.t != 1.0:
        entries.extend(_core_quartet(target.t, rs))
    if target.rr != 0:
        entries.append(PlanEntry("left", target.rr))
    return BlockPlan(tuple(entries), rs, target)


def plan_addendum(target: DesignTarget) -> BlockPlan:
    """At most three invisible targets unless bidirectionally reflectionless."""
    rl, rr, t = target.rl, target.rr, target.t
    if t == 1.0:
        entries = []
        if rl != 0:
            entries.append(PlanEntry("right", rl))
        if rr != 0:
            entries.append(PlanEntry("left", rr))
        return BlockPlan(tuple(entries), 1.0 + 0.0j, target)
    if rl != 0:
        rs = rl / t
        entries = [
            PlanEntry("left", (t - 1.0) / (rs * t)),
            PlanEntry("right", rs),
        ]
        tail = rr + t * (1.0 - t) / rl
        if tail != 0:
            entries.append(PlanEntry("left", tail))
        return BlockPlan(tuple(entries), rs, target)
    if rr != 0:
        rs = (t - 1.0) / rr
        entries = []
        head = rl + t * (1.0 - t) / rr
        if head != 0:
            entries.append(PlanEntry("right", head))
        entries.append(PlanEntry("left", (t - 1.0) / (rs * t)))
        entries.append(PlanEntry("right", rs))
        return BlockPlan(tuple(entries), rs, target)
    rs = _default_r_script(target)
    return BlockPlan(tuple(_core_quartet(t, rs)), rs, target)


def plan_matrix(plan: BlockPlan) -> TransferMatrix:
    """Exact product of the plan's entry matrices (pure algebra, no integration)."""
    total = TransferMatrix.identity()
    for entry in plan.entries:
        total = compose(entry.matrix(), total)
    return total


def _branch_base_d(entry: PlanEntry, k0: float) -> float:
    """Shift at branch index m = 0 for this entry's realizer."""
    if entry.side == "right":
        return phase_offset_right(_wrap_right_phase(cmath.phase(entry.amplitude)), 0, k0)
    return phase_offset_left(_wrap_left_phase(cmath.phase(entry.amplitude)), 0, k0)


def _realize(entry: PlanEntry, k0: float, n: int, m: int) -> Block:
    if entry.side == "right":
        return realize_right_invisible(entry.amplitude, k0, n, m)
    return realize_left_invisible(entry.amplitude, k0, n, m)


def assemble(
    plan: BlockPlan,
    k0: float | None = None,
    n: int = 300,
    gap_min: float = 0.0,
    origin: float = 0.0,
    m_list: list[int] | None = None,
) -> PotentialSpec:
    """Realize a plan as a PotentialSpec with left-to-right disjoint supports.

    Branch indices are chosen to pack the blocks as tightly as the phase
    lattice allows (each index step moves a block by pi/k0), starting at
    `origin`; explicit m_list overrides reproduce published placements.
    """
    k0 = plan.target.k0 if k0 is None else k0
    if m_list is not None and len(m_list) != len(plan.entries):
        raise ValueError(
            f"m_list must have one entry per planned block "
            f"({len(plan.entries)} expected, got {len(m_list)})"
        )
    blocks: list[Block] = []
    cursor = origin
    step = math.pi / k0
    length = block_length(n, k0)
    for i, entry in enumerate(plan.entries):
        if m_list is not None:
            m = m_list[i]
        else:
            # support left edge is -d(m) = -(base + step*m); the largest m
            # with -d >= cursor packs tightest
            base = _branch_base_d(entry, k0)
            m = math.floor((-cursor - base) / step + 1e-9)
        block = _realize(entry, k0, n, m)
        left, right = block_support(block)
        if blocks and left + 1e-9 < cursor:
            raise ValueError(
                f"m_list places block {i} at {left:.6f} um, overlapping or "
                f"preceding the previous block (cursor {cursor:.6f} um)"
            )
        blocks.append(block)
        cursor = right + gap_min
    return PotentialSpec(k0=k0, blocks=tuple(blocks))


def solve_beta(alpha: float, m: int, n: int, max_iter: int = 100) -> float:
    """Small root of (alpha+1)^3 (beta+1)^3 + 64 pi^2 m n alpha beta = 0.

    This is the condition that the left and right block reflection
    amplitudes multiply to one, producing a transmission pole at k0.
    """
    if not (-0.25 < alpha) or alpha == 0:
        raise ValueError("alpha must be in (-1/4, 0) or (0, inf)")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive integers")
    a3 = (alpha + 1.0) ** 3
    c = 64.0 * math.pi ** 2 * m * n * alpha
    beta = -a3 / (c + 3.0 * a3)  # linearization of the small root
    for _ in range(max_iter):
        g = a3 * (beta + 1.0) ** 3 + c * beta
        dg = 3.0 * a3 * (beta + 1.0) ** 2 + c
        if dg == 0:
            break
        step = g / dg
        beta -= step
        if abs(step) < 1e-17 * max(abs(beta), 1e-12):
            break
    resid = abs(a3 * (beta + 1.0) ** 3 + c * beta) / max(
        abs(a3 * (beta + 1.0) ** 3), abs(c * beta), 1e-300
    )
    if beta <= -0.25 or resid > 1e-14:
        raise ValueError(
            f"no valid beta for given (alpha, m, n) "
            f"(beta = {beta:.6g}, residual {resid:.3e})"
        )
    return beta


def design_singularity(alpha: float, n: int, m: int, k0: float) -> PotentialSpec:
    """Two-block assembly with a spectral singularity at k0.

    The left block (support [-L_n, 0]) is the conjugated family member with
    parameter alpha; the right block (support [0, L_m]) carries the solved
    beta so the two reflection amplitudes multiply to one.
    """
    beta = solve_beta(alpha, m, n)
    w_plus = Block(alpha=alpha, n=n, k0=k0, d=block_length(n, k0), conjugated=True)
    w_minus = Block(alpha=beta, n=m, k0=k0, d=0.0, conjugated=False)
    return PotentialSpec(k0=k0, blocks=(w_plus, w_minus))


def conjugate_spec(spec: PotentialSpec) -> PotentialSpec:
    """Complex-conjugated assembly (spectral singularity -> CPA)."""
    return PotentialSpec(
        k0=spec.k0,
        blocks=tuple(
            Block(b.alpha, b.n, b.k0, b.d, not b.conjugated) for b in spec.blocks
        ),
        metadata=spec.metadata,
    )


@dataclass(frozen=True)
class VerifyReport:
    achieved: ScatteringTriple
    residual_rl: float
    residual_rr: float
    residual_t: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.residual_rl, self.residual_rr, self.residual_t) <= self.tolerance


def verify(spec: PotentialSpec, target: DesignTarget, tol: float = 1e-3) -> VerifyReport:
    """Numerically integrate the assembly at k0 and compare to the target."""
    if spec.blocks:
        achieved = scattering_spec(spec, target.k0)
    else:
        achieved = ScatteringTriple(0.0, 0.0, 1.0, target.k0)
    return VerifyReport(
        achieved=achieved,
        residual_rl=abs(achieved.rl - target.rl),
        residual_rr=abs(achieved.rr - target.rr),
        residual_t=abs(achieved.t - target.t),
        tolerance=tol,
    )
