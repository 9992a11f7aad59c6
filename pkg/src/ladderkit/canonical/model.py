"""Parameter points, elementary moves and the two Lagrangian models.

Both families are written as ``L = (m/2) (qdot**2 + U q**2)`` with
``lambda = 0``:

* CHG (Kummer):  ``m = t**beta exp(-t)``,  ``U = alpha / t``
* HG (Gauss):    ``m = t**zeta (1-t)**(alpha+beta-zeta+1)``,  ``U = alpha beta / (t (1-t))``

Only ratios ``m / m~`` between neighbouring knots and the log-derivative
``mdot / m`` enter the coefficient systems; both are Laurent polynomials.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Number

import sympy

from ..errors import DomainError, FamilyMismatchError
from .rational import RationalFn


class Family(enum.Enum):
    CHG = "chg"
    HG = "hg"

    @property
    def params(self) -> tuple[str, ...]:
        return ("alpha", "beta") if self is Family.CHG else ("alpha", "beta", "zeta")


class StepKind(enum.Enum):
    ALPHA_UP = ("alpha", 1, "a+")
    ALPHA_DOWN = ("alpha", -1, "a-")
    BETA_UP = ("beta", 1, "b+")
    BETA_DOWN = ("beta", -1, "b-")
    ZETA_UP = ("zeta", 1, "z+")
    ZETA_DOWN = ("zeta", -1, "z-")

    @property
    def param(self) -> str:
        return self.value[0]

    @property
    def sign(self) -> int:
        return self.value[1]

    @property
    def token(self) -> str:
        return self.value[2]

    @property
    def is_up(self) -> bool:
        return self.sign > 0

    @property
    def up(self) -> "StepKind":
        return StepKind.from_axis(self.param, 1)

    @property
    def inverse(self) -> "StepKind":
        return StepKind.from_axis(self.param, -self.sign)

    @classmethod
    def from_axis(cls, param: str, sign: int) -> "StepKind":
        for kind in cls:
            if kind.param == param and kind.sign == sign:
                return kind
        raise ValueError(f"no step along {param!r} with sign {sign}")

    @classmethod
    def from_token(cls, token: str) -> "StepKind":
        for kind in cls:
            if kind.token == token.strip():
                return kind
        raise ValueError(f"unknown step token {token!r}; expected one of a+ a- b+ b- z+ z-")


def _same(x, y, rel: float = 1e-12) -> bool:
    if x == y:
        return True
    try:
        return cmath.isclose(complex(x), complex(y), rel_tol=rel, abs_tol=rel)
    except TypeError:
        return False


def exact(x):
    """Convert a parameter to an exact sympy number (decimal strings stay exact)."""
    if isinstance(x, sympy.Basic):
        return x
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, (int, str)):
        return sympy.Rational(x)
    if isinstance(x, float):
        return sympy.Rational(repr(x))
    if isinstance(x, complex):
        return sympy.Rational(repr(x.real)) + sympy.I * sympy.Rational(repr(x.imag))
    raise TypeError(f"cannot make {x!r} exact")


def principal_sqrt(x):
    """Principal square root; exact for sympy input, complex double otherwise."""
    if isinstance(x, sympy.Basic):
        return sympy.sqrt(x)
    if isinstance(x, Fraction):
        x = float(x)
    return cmath.sqrt(x)


@dataclass(frozen=True)
class ParamPoint:
    """A knot of the parameter grating."""

    family: Family
    alpha: object
    beta: object
    zeta: object = None

    def __post_init__(self):
        if self.family is Family.CHG and self.zeta is not None:
            raise FamilyMismatchError("CHG points carry exactly (alpha, beta)")
        if self.family is Family.HG and self.zeta is None:
            raise FamilyMismatchError("HG points carry exactly (alpha, beta, zeta)")

    @property
    def params(self) -> tuple:
        return tuple(getattr(self, name) for name in self.family.params)

    def get(self, name: str):
        if name not in self.family.params:
            raise FamilyMismatchError(f"{self.family.name} has no parameter {name!r}")
        return getattr(self, name)

    def shifted(self, name: str, delta: int) -> "ParamPoint":
        return replace(self, **{name: self.get(name) + delta})

    def step(self, kind: StepKind) -> "ParamPoint":
        return self.shifted(kind.param, kind.sign)

    def matches(self, other: "ParamPoint", rel: float = 1e-12) -> bool:
        return self.family is other.family and all(
            _same(x, y, rel) for x, y in zip(self.params, other.params)
        )

    def as_exact(self) -> "ParamPoint":
        return ParamPoint(self.family, *(exact(x) for x in self.params))

    def as_complex(self) -> "ParamPoint":
        return ParamPoint(self.family, *(complex(x) for x in self.params))

    def is_exact(self) -> bool:
        return all(isinstance(x, (sympy.Basic, int, Fraction)) for x in self.params)

    def __str__(self) -> str:
        inner = ", ".join(f"{n}={v}" for n, v in zip(self.family.params, self.params))
        return f"{self.family.name}({inner})"


def chg(alpha, beta) -> ParamPoint:
    return ParamPoint(Family.CHG, alpha, beta)


def hg(alpha, beta, zeta) -> ParamPoint:
    return ParamPoint(Family.HG, alpha, beta, zeta)


def check_step(point: ParamPoint, kind: StepKind) -> None:
    if kind.param == "zeta" and point.family is not Family.HG:
        raise FamilyMismatchError(f"step {kind.token} needs the HG family")


# exponent shifts (d log_t m, d log_(1-t) m) per unit increase of a parameter
_MASS_EXPONENT_SHIFT = {
    (Family.CHG, "alpha"): (0, 0),
    (Family.CHG, "beta"): (1, 0),
    (Family.HG, "alpha"): (0, 1),
    (Family.HG, "beta"): (0, 1),
    (Family.HG, "zeta"): (1, -1),
}


@dataclass(frozen=True)
class ModelSpec:
    """The Lagrangian data of one knot, as Laurent polynomials."""

    point: ParamPoint
    log_deriv_m: RationalFn
    U: RationalFn
    lam: Number = 0

    def mass_ratio(self, kind: StepKind) -> RationalFn:
        """``m / m~`` for a unit step; transcendental factors cancel."""
        check_step(self.point, kind)
        di, dj = _MASS_EXPONENT_SHIFT[(self.point.family, kind.param)]
        return RationalFn({(-kind.sign * di, -kind.sign * dj): 1})

    def mass(self, t) -> complex:
        """Closed-form ``m(t)`` with principal powers."""
        t = _check_real_domain(self.point.family, t)
        p = self.point.as_complex()
        if p.family is Family.CHG:
            return t**p.beta * math.exp(-t.real)
        return t**p.zeta * (1 - t) ** (p.alpha + p.beta - p.zeta + 1)

    def potential(self, t) -> complex:
        return self.U.evaluate(t)


def model_at(point: ParamPoint) -> ModelSpec:
    one = RationalFn.const(1)
    if point.family is Family.CHG:
        a, b = point.alpha, point.beta
        return ModelSpec(point, RationalFn({(-1, 0): b}) - one, RationalFn({(-1, 0): a}))
    a, b, z = point.alpha, point.beta, point.zeta
    log_deriv = RationalFn({(-1, 0): z}) - RationalFn({(0, -1): a + b - z + 1})
    return ModelSpec(point, log_deriv, RationalFn({(-1, -1): a * b}))


def _check_real_domain(family: Family, t) -> complex:
    t = complex(t)
    if t.imag != 0:
        raise DomainError("closed-form mass needs real t")
    if family is Family.CHG and not t.real > 0:
        raise DomainError("CHG mass needs t > 0")
    if family is Family.HG and not 0 < t.real < 1:
        raise DomainError("HG mass needs 0 < t < 1")
    return t
