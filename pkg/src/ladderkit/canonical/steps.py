"""Generating-function coefficients of the elementary canonical steps.

Each elementary step ``K -> K~`` is generated by ``F = m S`` with

    S = (2 gamma q q~ - b q**2 - c q~**2) / (2 a),

where ``a, b, c`` are Laurent polynomials and ``gamma`` a constant.  The four
closed forms below are the unit raising steps; lowering steps are the
inverse maps (see :func:`invert`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import FamilyMismatchError
from .model import Family, ModelSpec, ParamPoint, StepKind, check_step, model_at, principal_sqrt
from .rational import RationalFn


@dataclass(frozen=True, eq=False)
class GenFnCoeffs:
    """``(a, b, c, gamma)`` of one elementary canonical transformation.

    ``gamma_sq`` (the radicand) is stored instead of ``gamma`` so that the
    quadratic coefficient equation can be checked exactly; ``gamma`` is its
    principal square root.
    """

    a: RationalFn
    b: RationalFn
    c: RationalFn
    gamma_sq: object
    source: ParamPoint
    step: StepKind

    @cached_property
    def gamma(self):
        return principal_sqrt(self.gamma_sq)

    @property
    def degenerate(self) -> bool:
        return self.gamma_sq == 0

    @property
    def target(self) -> ParamPoint:
        return self.source.step(self.step)

    @property
    def model(self) -> ModelSpec:
        return model_at(self.source)

    @cached_property
    def mass_ratio(self) -> RationalFn:
        """``m / m~`` between source and target knot."""
        return self.model.mass_ratio(self.step)

    def with_(self, **changes) -> "GenFnCoeffs":
        fields = dict(a=self.a, b=self.b, c=self.c, gamma_sq=self.gamma_sq,
                      source=self.source, step=self.step)
        fields.update(changes)
        return GenFnCoeffs(**fields)

    def __repr__(self) -> str:
        return (f"GenFnCoeffs({self.source} {self.step.token}: a={self.a!r}, b={self.b!r}, "
                f"c={self.c!r}, gamma^2={self.gamma_sq})")


def _C(k) -> RationalFn:
    return RationalFn.const(k)


def chg_alpha_step(alpha, beta) -> GenFnCoeffs:
    """Kummer ``alpha -> alpha + 1``: a = t, b = alpha, c = t + alpha - beta + 1."""
    t = RationalFn.t()
    return GenFnCoeffs(
        a=t,
        b=_C(alpha),
        c=t + (alpha - beta + 1),
        gamma_sq=alpha * (alpha - beta + 1),
        source=ParamPoint(Family.CHG, alpha, beta),
        step=StepKind.ALPHA_UP,
    )


def chg_beta_step(alpha, beta) -> GenFnCoeffs:
    """Kummer ``beta -> beta + 1``: a = 1, b = -1, c = -beta, gamma**2 = beta - alpha."""
    return GenFnCoeffs(
        a=_C(1),
        b=_C(-1),
        c=_C(-beta),
        gamma_sq=beta - alpha,
        source=ParamPoint(Family.CHG, alpha, beta),
        step=StepKind.BETA_UP,
    )


def hg_alpha_step(alpha, beta, zeta) -> GenFnCoeffs:
    """Gauss ``alpha -> alpha + 1``: a = t, b = alpha, c = alpha - zeta + 1 + beta t."""
    t = RationalFn.t()
    return GenFnCoeffs(
        a=t,
        b=_C(alpha),
        c=t.scale(beta) + (alpha - zeta + 1),
        gamma_sq=alpha * (alpha - zeta + 1),
        source=ParamPoint(Family.HG, alpha, beta, zeta),
        step=StepKind.ALPHA_UP,
    )


def hg_beta_step(alpha, beta, zeta) -> GenFnCoeffs:
    """Gauss ``beta -> beta + 1``, the alpha step with alpha and beta swapped."""
    swapped = hg_alpha_step(beta, alpha, zeta)
    return swapped.with_(source=ParamPoint(Family.HG, alpha, beta, zeta), step=StepKind.BETA_UP)


def hg_zeta_step(alpha, beta, zeta) -> GenFnCoeffs:
    """Gauss ``zeta -> zeta + 1``: a = 1 - t, b = zeta - alpha - beta, c = -zeta."""
    return GenFnCoeffs(
        a=RationalFn.one_minus_t(),
        b=_C(zeta - alpha - beta),
        c=_C(-zeta),
        gamma_sq=(zeta - alpha) * (beta - zeta),
        source=ParamPoint(Family.HG, alpha, beta, zeta),
        step=StepKind.ZETA_UP,
    )


_UP = {
    (Family.CHG, "alpha"): chg_alpha_step,
    (Family.CHG, "beta"): chg_beta_step,
    (Family.HG, "alpha"): hg_alpha_step,
    (Family.HG, "beta"): hg_beta_step,
    (Family.HG, "zeta"): hg_zeta_step,
}


def invert(coeffs: GenFnCoeffs) -> GenFnCoeffs:
    """Coefficients of the inverse transformation ``K~ -> K``.

    The inverse is generated by ``-F``; rewriting ``-m S`` as ``m~ S'`` gives
    ``a' = -a m~/m``, ``b' = c``, ``c' = b`` and the same ``gamma``.
    """
    return GenFnCoeffs(
        a=-(coeffs.a * coeffs.mass_ratio.inverse()),
        b=coeffs.c,
        c=coeffs.b,
        gamma_sq=coeffs.gamma_sq,
        source=coeffs.target,
        step=coeffs.step.inverse,
    )


def up_step(point: ParamPoint, param: str) -> GenFnCoeffs:
    check_step(point, StepKind.from_axis(param, 1))
    return _UP[(point.family, param)](*point.params)


def elementary_step(point: ParamPoint, kind: StepKind) -> GenFnCoeffs:
    """Coefficients for moving from ``point`` one unit along ``kind``.

    Down moves are the inverses of the up move from the lower neighbour.
    """
    check_step(point, kind)
    if kind.is_up:
        return up_step(point, kind.param)
    lower = point.step(kind)
    return invert(up_step(lower, kind.param))


def require_family(model: ModelSpec, coeffs: GenFnCoeffs) -> None:
    if model.point.family is not coeffs.source.family:
        raise FamilyMismatchError("coefficients and model belong to different families")
