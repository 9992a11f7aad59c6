"""Residuals of alternative printed forms of the ladder relations.

Each row evaluates one relation in two forms on series values: the form the
library adopts and a variant that differs by a sign, a shift or a mass
ratio.  A variant with an O(1) residual is ruled out.

    python3 scripts/variant_residuals.py
"""

from __future__ import annotations

import cmath

from ladderkit import specfun
from ladderkit.canonical import Family, ParamPoint, StepKind, elementary_step
from ladderkit.recurrence import contiguous_factor, normalization_value

A, B, Z, T = 1.3, 0.7, 2.6, 0.37


def M(a, b, t=T, d=0):
    return specfun.kummer(a, b, t, deriv=d).value


def F(a, b, z, t=T, d=0):
    return specfun.gauss(a, b, z, t, deriv=d).value


def rel(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def rows():
    a, b, t = A, B, T
    # CHG alpha lowering: (alpha - beta + t +- 1 - t d/dt) M(alpha+1) = (alpha - beta + 1) M(alpha)
    for label, shift in (("adopted +1", 1), ("variant -1", -1)):
        lhs = (a - b + t + shift) * M(a + 1, b) - t * M(a + 1, b, d=1)
        yield "CHG a- shift", label, rel(lhs, (a - b + 1) * M(a, b))
    # CHG beta raising: beta (-1 + d/dt) M(beta) = +-(alpha - beta) M(beta+1)
    for label, sgn in (("adopted (a-b)", 1), ("variant (b-a)", -1)):
        lhs = b * (M(a, b, d=1) - M(a, b))
        yield "CHG b+ sign", label, rel(lhs, sgn * (a - b) * M(a, b + 1))
    # CHG beta lowering: -(beta + t d/dt) M(beta+1) = -+beta M(beta)
    for label, sgn in (("adopted -beta", -1), ("variant +beta", 1)):
        lhs = -(b * M(a, b + 1) + t * M(a, b + 1, d=1))
        yield "CHG b- sign", label, rel(lhs, sgn * b * M(a, b))
    # lowering map mass ratio for CHG beta: a * (m~/m) = t versus m/m~ = 1/t
    for label, weight in (("adopted m~/m", t), ("variant m/m~", 1 / t)):
        lhs = -b * M(a, b + 1) - weight * M(a, b + 1, d=1)
        yield "lowering ratio", label, rel(lhs, -b * M(a, b))
    # HG alpha lowering: (alpha - zeta + 1 +- beta t - t(1-t) d/dt) F(alpha+1) = (alpha - zeta + 1) F(alpha)
    z = Z
    for label, sgn in (("adopted +beta t", 1), ("variant -beta t", -1)):
        lhs = (a - z + 1 + sgn * b * t) * F(a + 1, b, z) - t * (1 - t) * F(a + 1, b, z, d=1)
        yield "HG a- sign", label, rel(lhs, (a - z + 1) * F(a, b, z))
    # CHG beta coefficients from the power-law ansatz at beta~ = beta + 1
    p = ParamPoint(Family.CHG, a, b)
    step = elementary_step(p, StepKind.BETA_UP)
    qb, dqb = M(a, b), M(a, b, d=1)
    target = contiguous_factor(p, StepKind.BETA_UP) * M(a, b + 1)
    yield "CHG b+ coeffs", "adopted (1, -1, -beta)", rel(step.b.evaluate(t) * qb + dqb, target)
    yield "CHG b+ coeffs", "variant (b = 0)", rel(dqb, target)
    # normalisation multipliers: mu(K+1) = mu(K) kappa / gamma
    # (points chosen where every gamma argument is positive)
    for kind, point, variant in (
        (StepKind.BETA_UP, ParamPoint(Family.CHG, 0.6, 1.7),
         lambda q: specfun.gamma(q.beta) / cmath.sqrt(specfun.gamma(q.beta - q.alpha))),
        (StepKind.ZETA_UP, ParamPoint(Family.HG, 0.6, 0.9, 2.3),
         lambda q: (specfun.gamma(q.zeta - q.alpha) * specfun.gamma(q.zeta - q.beta)
                    / specfun.gamma(q.zeta)) ** 0.5),
    ):
        step = elementary_step(point, kind)
        factor = contiguous_factor(point, kind) / complex(step.gamma)
        for label, mu in (("adopted", lambda q: normalization_value(kind, q)), ("variant", variant)):
            yield f"{point.family.name} {kind.token} multiplier", label, rel(mu(point) * factor, mu(step.target))


def main():
    print(f"{'relation':<24}{'form':<26}{'rel residual':>14}")
    for name, label, value in rows():
        print(f"{name:<24}{label:<26}{value:>14.3e}")


if __name__ == "__main__":
    main()
