"""Canonical-transformation ladders on hypergeometric parameter lattices."""

__version__ = "0.1.0"

from .canonical import (
    Family,
    GenFnCoeffs,
    ModelSpec,
    ParamPoint,
    RationalFn,
    StepKind,
    chg,
    coeff_residuals,
    elementary_step,
    hg,
    model_at,
)
from .lattice import KnotIndex, StateVector, connection_matrix, resolve, transfer_matrix, walk
from .recurrence import (
    Direction,
    LadderStep,
    apply_lower,
    apply_raise,
    canonical_solution,
    compose,
    normalization_value,
    three_term,
)
