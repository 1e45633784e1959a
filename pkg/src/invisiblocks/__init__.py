"""Inverse design of 1D complex scattering potentials from unidirectionally
invisible finite-range building blocks, with independent numerical
verification by wave-equation integration."""

from .blocks import (
    Block,
    PotentialSpec,
    block_support,
    block_triple,
    evaluate_spec,
    family_rl,
    family_value,
    realize_left_invisible,
    realize_right_invisible,
    refractive_index,
    solve_alpha,
)
from .core import (
    ScatteringTriple,
    SpectralSingularityError,
    TransferMatrix,
    amplitudes_to_matrix,
    compose,
    matrix_to_amplitudes,
    transform_parity,
    transform_time_reversal,
    transform_translate,
)
from .design import (
    BlockPlan,
    DesignTarget,
    assemble,
    conjugate_spec,
    design_singularity,
    plan_addendum,
    plan_six,
    solve_beta,
    verify,
)
from .solver import (
    PotentialFunction,
    SpectrumTable,
    scan_spectrum,
    scattering_numeric,
    scattering_spec,
    transfer_matrix_numeric,
    transfer_matrix_spec,
)

__version__ = "0.1.0"
