"""Exact Laurent arithmetic, the two models and their canonical steps."""

from .model import Family, ModelSpec, ParamPoint, StepKind, chg, exact, hg, model_at
from .rational import RationalFn
from .residuals import (
    CoeffResiduals,
    coeff_residuals,
    embed_scalar,
    generating_fn_eval,
    hamiltonian_eval,
    invariance_residual,
    matrix_coeff_residuals,
)
from .steps import (
    GenFnCoeffs,
    chg_alpha_step,
    chg_beta_step,
    elementary_step,
    hg_alpha_step,
    hg_beta_step,
    hg_zeta_step,
    invert,
    up_step,
)
