"""Ladder maps, three-term relations, composition and normalisation.

The raising map of a step is ``(b + a d/dt) q = gamma q~`` and the lowering
map is ``(c - a (m~/m) d/dt) q~ = gamma q``.  Applied to a multiple of the
series solution, a step multiplies the series by a *contiguous factor*
``kappa / gamma``; the normalisation multipliers absorb exactly that factor so
that the canonical solutions ``mu(K) M(K)`` map onto each other.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

from . import specfun
from .canonical.model import Family, ParamPoint, StepKind, check_step
from .canonical.rational import RationalFn
from .canonical.steps import GenFnCoeffs, elementary_step
from .errors import ChainMismatchError, DegenerateStepError, PoleError, SingularEliminationError


class Direction(enum.Enum):
    RAISE = "raise"
    LOWER = "lower"


class _Values(NamedTuple):
    a: complex
    b: complex
    c: complex
    gamma: complex
    r: complex


def _combine(x1, x2, e, r) -> tuple:
    """Composite ``(A, B, C, gamma)`` from the two factors (see :func:`compose`)."""
    ra2 = r * x2.a
    return (
        ra2 * x1.a * e,
        e * ra2 * x1.b - (ra2 * x1.gamma) ** 2,
        e * x1.a * x2.c - (x1.a * x2.gamma) ** 2,
        ra2 * x1.a * x1.gamma * x2.gamma,
    )


@dataclass(frozen=True, eq=False)
class ComposedStep:
    """Generating form of the composite map ``K -> K~~`` (``gamma`` depends on ``t``).

    The Laurent coefficients are expanded on demand.  Pointwise evaluation
    goes through the factors instead: near ``t = 1`` the expanded basis
    cancels heavily, the factored form does not.
    """

    first: "Step"
    second: "Step"

    @property
    def source(self) -> ParamPoint:
        return self.first.source

    @property
    def target(self) -> ParamPoint:
        return self.second.target

    @property
    def path(self) -> tuple[StepKind, ...]:
        return _path(self.first) + _path(self.second)

    @cached_property
    def mass_ratio(self) -> RationalFn:
        return self.first.mass_ratio * self.second.mass_ratio

    @cached_property
    def _expanded(self) -> tuple[RationalFn, RationalFn, RationalFn, RationalFn]:
        x1, x2 = _laurent(self.first), _laurent(self.second)
        return _combine(x1, x2, _pivot(x1, x2), self.first.mass_ratio)

    @property
    def a(self) -> RationalFn:
        return self._expanded[0]

    @property
    def b(self) -> RationalFn:
        return self._expanded[1]

    @property
    def c(self) -> RationalFn:
        return self._expanded[2]

    @property
    def gamma_fn(self) -> RationalFn:
        return self._expanded[3]


Step = Union[GenFnCoeffs, ComposedStep]


@dataclass(frozen=True)
class LadderStep:
    coeffs: GenFnCoeffs
    direction: Direction = Direction.RAISE

    def __post_init__(self):
        if self.direction is Direction.LOWER and self.coeffs.degenerate:
            raise DegenerateStepError("lowering map needs gamma != 0")

    def apply(self, value, dvalue, t) -> complex:
        if self.direction is Direction.RAISE:
            return apply_raise(self.coeffs, value, dvalue, t)
        return apply_lower(self.coeffs, value, dvalue, t)


def _laurent(step: Step) -> _Values:
    g = step.gamma_fn if isinstance(step, ComposedStep) else RationalFn.const(step.gamma)
    return _Values(step.a, step.b, step.c, g, step.mass_ratio)


def _pivot(x1: _Values, x2: _Values):
    return x1.r * x2.a * x1.c + x1.a * x2.b


def _values(step: Step, t) -> _Values:
    """``(a, b, c, gamma, m/m~)`` at ``t``."""
    if isinstance(step, ComposedStep):
        x1, x2 = _values(step.first, t), _values(step.second, t)
        e = _pivot(x1, x2)
        return _Values(*_combine(x1, x2, e, x1.r), x1.r * x2.r)
    return _Values(step.a.evaluate(t), step.b.evaluate(t), step.c.evaluate(t),
                   complex(step.gamma), step.mass_ratio.evaluate(t))


def _nondegenerate(step: Step, t) -> _Values:
    if isinstance(step, GenFnCoeffs) and step.degenerate:
        raise DegenerateStepError(f"gamma = 0 for {step.step.token} at {step.source}")
    v = _values(step, t)
    if v.gamma == 0:
        raise DegenerateStepError("gamma vanishes")
    return v


def _unwrap(step) -> Step:
    return step.coeffs if isinstance(step, LadderStep) else step


def apply_raise(step, q, dq, t) -> complex:
    """``q~ = (b q + a q') / gamma``."""
    v = _nondegenerate(_unwrap(step), t)
    return (v.b * q + v.a * dq) / v.gamma


def apply_lower(step, q_next, dq_next, t) -> complex:
    """``q = (c q~ - a (m~/m) q~') / gamma``."""
    v = _nondegenerate(_unwrap(step), t)
    return (v.c * q_next - v.a / v.r * dq_next) / v.gamma


def propagate_derivative(step, q, q_next, t) -> complex:
    """``q~'`` from the lowering relation, given ``q`` and ``q~``."""
    v = _nondegenerate(_unwrap(step), t)
    if v.a == 0:
        raise ZeroDivisionError("a(t) = 0")
    return v.r * (v.c * q_next - v.gamma * q) / v.a


def _check_chain(first: Step, second: Step) -> None:
    if not second.source.matches(first.target):
        raise ChainMismatchError(
            f"second step starts at {second.source}, first ends at {first.target}"
        )


def three_term_coeffs(first: Step, second: Step) -> tuple[RationalFn, RationalFn, RationalFn]:
    """``(P, Q, R)`` with ``P q_K + Q q_K+1 + R q_K+2 = 0``.

    The ``m_K / m_K+1`` factor multiplies the first-step terms; it is 1 only
    when the mass does not depend on the stepped parameter.
    """
    first, second = _unwrap(first), _unwrap(second)
    _check_chain(first, second)
    x1, x2 = _laurent(first), _laurent(second)
    inv_a1, inv_a2 = x1.a.inverse(), x2.a.inverse()
    p = x1.r * x1.gamma * inv_a1
    mid = -(x1.r * x1.c * inv_a1 + x2.b * inv_a2)
    return p, mid, x2.gamma * inv_a2


def three_term(first, second, q_k, q_k1, t) -> complex:
    """Solve the derivative-free relation for ``q_K+2``."""
    first, second = _unwrap(first), _unwrap(second)
    _check_chain(first, second)
    x1 = _nondegenerate(first, t)
    x2 = _nondegenerate(second, t)
    if x1.a == 0 or x2.a == 0:
        raise ZeroDivisionError("a(t) = 0 in three-term relation")
    mid = x1.r * x1.c / x1.a + x2.b / x2.a
    return (mid * q_k1 - x1.r * x1.gamma / x1.a * q_k) * x2.a / x2.gamma


def _path(step: Step) -> tuple[StepKind, ...]:
    return step.path if isinstance(step, ComposedStep) else (step.step,)


def compose(first: Step, second: Step) -> ComposedStep:
    """Generating form of ``K -> K~ -> K~~`` with ``q~`` eliminated.

    Eliminating ``q~`` from ``F1 + F2`` by stationarity gives (``r = m/m~``)::

        E = r A2 C1 + A1 B2
        A = r A1 A2 E,   gamma = r A1 A2 gamma1 gamma2
        B = E r A2 B1 - (r A2 gamma1)**2,   C = E A1 C2 - (A1 gamma2)**2

    When ``E`` vanishes identically the stationarity condition is the linear
    relation ``source_coeff q + target_coeff q~~ = 0`` instead of a map.
    """
    first, second = _unwrap(first), _unwrap(second)
    _check_chain(first, second)
    x1, x2 = _laurent(first), _laurent(second)
    if _pivot(x1, x2).is_zero():
        raise SingularEliminationError(
            "intermediate coordinate cannot be eliminated",
            source_coeff=x1.r * x2.a * x1.gamma,
            target_coeff=x1.a * x2.gamma,
        )
    return ComposedStep(first, second)


# --- series oracle and normalisation --------------------------------------

def series(point: ParamPoint, t, deriv: int = 0, tol: float = specfun.DEFAULT_TOL) -> specfun.SeriesResult:
    """Regular series solution (Kummer or Gauss) at ``point``."""
    p = point.as_complex()
    if p.family is Family.CHG:
        return specfun.kummer(p.alpha, p.beta, t, tol, deriv=deriv)
    return specfun.gauss(p.alpha, p.beta, p.zeta, t, tol, deriv=deriv)


def contiguous_factor(point: ParamPoint, kind: StepKind) -> complex:
    """``kappa`` with ``(b + a d/dt) M(K) = kappa M(K')`` for ``elementary_step(point, kind)``."""
    check_step(point, kind)
    p = point.as_complex()
    if kind.is_up:
        if p.family is Family.CHG:
            return p.alpha if kind.param == "alpha" else (p.alpha - p.beta) / p.beta
        if kind.param == "zeta":
            return (p.zeta - p.alpha) * (p.zeta - p.beta) / p.zeta
        return p.get(kind.param)
    low = p.step(kind)
    if low.family is Family.CHG:
        return low.alpha - low.beta + 1 if kind.param == "alpha" else -low.beta
    if kind.param == "zeta":
        return -low.zeta
    return low.get(kind.param) - low.zeta + 1


def _phase(x: complex, scale: float) -> complex:
    """``exp(i pi scale x)``, exact when ``scale x`` is a real multiple of 1/2."""
    x = complex(x)
    u = scale * x.real
    return math.exp(-math.pi * scale * x.imag) * complex(specfun.cospi(u).real,
                                                         specfun.sinpi(u).real)


def _nonzero(value: complex, what: str) -> complex:
    if value == 0:
        raise PoleError(f"normalisation hits a gamma pole ({what})")
    return value


def normalization_value(kind: StepKind, point: ParamPoint) -> complex:
    """Multiplier ``mu`` of the canonical solution along ``kind``'s axis.

    * CHG alpha:  sqrt(G(alpha) / G(alpha - beta + 1))
    * CHG beta:   exp(i pi beta) sqrt(G(beta - alpha)) / G(beta)
    * HG alpha:   sqrt(G(alpha) / G(alpha - zeta + 1))   (beta: swap)
    * HG zeta:    exp(-i pi zeta / 2) sqrt(G(zeta - alpha) G(zeta - beta)) / G(zeta)

    The phases make ``mu(K') = mu(K) kappa / gamma`` hold with principal
    ``gamma`` where the gamma-function arguments are positive.
    """
    check_step(point, kind)
    p = point.as_complex()
    G, rG = specfun.gamma, specfun.rgamma
    axis = kind.param
    if p.family is Family.CHG:
        if axis == "alpha":
            n = G(p.alpha) * _nonzero(rG(p.alpha - p.beta + 1), "alpha - beta + 1")
            return cmath.sqrt(n)
        return _phase(p.beta, 1.0) * cmath.sqrt(G(p.beta - p.alpha)) * _nonzero(rG(p.beta), "beta")
    if axis in ("alpha", "beta"):
        x = p.get(axis)
        return cmath.sqrt(G(x) * _nonzero(rG(x - p.zeta + 1), f"{axis} - zeta + 1"))
    return (_phase(p.zeta, -0.5) * cmath.sqrt(G(p.zeta - p.alpha) * G(p.zeta - p.beta))
            * _nonzero(rG(p.zeta), "zeta"))


def normalization_squared(kind: StepKind, point: ParamPoint) -> complex:
    """``N = mu**2`` (the multiplier in the functional equations)."""
    return normalization_value(kind, point) ** 2


def functional_equation(kind: StepKind, point: ParamPoint) -> tuple[complex, complex]:
    """Both sides of the first-order functional equation for ``N`` along an axis.

    CHG alpha: ``alpha N(alpha) = (alpha - beta + 1) N(alpha + 1)``;
    CHG beta: ``beta**2 N(beta + 1) = (beta - alpha) N(beta)``;
    HG alpha/beta analogous to CHG alpha with ``zeta`` for ``beta``;
    HG zeta: ``zeta**2 N(zeta + 1) = (zeta - alpha)(beta - zeta) N(zeta)``.
    """
    up = kind.up
    p = point.as_complex()
    here = normalization_squared(up, point)
    there = normalization_squared(up, point.step(up))
    if p.family is Family.CHG:
        if up.param == "alpha":
            return p.alpha * here, (p.alpha - p.beta + 1) * there
        return p.beta**2 * there, (p.beta - p.alpha) * here
    if up.param == "zeta":
        return p.zeta**2 * there, (p.zeta - p.alpha) * (p.beta - p.zeta) * here
    x = p.get(up.param)
    return x * here, (x - p.zeta + 1) * there


def canonical_solution(point: ParamPoint, t, C=1, kind: StepKind = StepKind.ALPHA_UP,
                       tol: float = specfun.DEFAULT_TOL) -> complex:
    """``C * mu(K) * M(K, t)`` for the normalisation along ``kind``'s axis."""
    return C * normalization_value(kind, point) * series(point, t, tol=tol).value


def canonical_derivative(point: ParamPoint, t, C=1, kind: StepKind = StepKind.ALPHA_UP,
                         tol: float = specfun.DEFAULT_TOL) -> complex:
    return C * normalization_value(kind, point) * series(point, t, deriv=1, tol=tol).value


def ladder(point: ParamPoint, kind: StepKind) -> LadderStep:
    """The ladder map moving ``point`` one unit along ``kind``.

    Up moves use the raising map of the step at ``point``; down moves use
    the lowering map of the step at the lower neighbour.
    """
    if kind.is_up:
        return LadderStep(elementary_step(point, kind), Direction.RAISE)
    return LadderStep(elementary_step(point.step(kind), kind.up), Direction.LOWER)
