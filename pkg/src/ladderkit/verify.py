"""Verification suites: each returns a list of :class:`Check` records.

The suites drive the residual operations of the library over parameter
grids and compare against the series oracle.  They back both the
``ladderkit verify`` command and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import lattice, recurrence, specfun
from .canonical.model import Family, ParamPoint, StepKind, model_at
from .canonical.residuals import coeff_residuals, invariance_residual
from .canonical.steps import elementary_step
from .errors import DegenerateStepError

SUITES = ("coeffs", "invariance", "ladder", "trinomial", "normalization", "zero-curvature")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    max_residual: float
    threshold: float
    count: int

    @property
    def passed(self) -> bool:
        return self.count > 0 and self.max_residual < self.threshold


@dataclass(frozen=True)
class VerifyConfig:
    """Grids and thresholds of the verification run."""

    # half-integer grid for the coefficient and invariance checks
    coeff_grid: tuple[float, ...] = (0.5, 1.5, 2.5, 3.5)
    # generic values for anything touching gamma functions or series
    value_grid: tuple[float, ...] = (0.35, 0.9, 1.6, 2.45, 3.2)
    t_grid: tuple[float, ...] = (0.12, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.88, 0.95)
    random_t: int = 20
    seed: int = 20240607
    coeff_tol: float = 1e-10
    ladder_tol: float = 1e-9
    normalization_tol: float = 1e-12
    curvature_tol: float = 1e-10
    curvature_points: tuple[ParamPoint, ...] = field(default_factory=lambda: (
        ParamPoint(Family.CHG, 2, 5),
        ParamPoint(Family.CHG, 3.5, 1.5),
        ParamPoint(Family.CHG, 2.5, 0.5),
        ParamPoint(Family.HG, 2, 1, 3),
        ParamPoint(Family.HG, 0.5, 1.5, 3.5),
        ParamPoint(Family.HG, 2.5, 1.5, 0.5),
        ParamPoint(Family.HG, 1.25, 0.75, 2.5),
    ))
    # test hook: shifts ``b`` of every coefficient set by this constant
    corrupt_b: float = 0.0

    def random_ts(self, lo: float = 0.1, hi: float = 0.9) -> list[float]:
        rng = random.Random(self.seed)
        return [rng.uniform(lo, hi) for _ in range(self.random_t)]


def _kinds(family: Family, up_only: bool = False) -> list[StepKind]:
    kinds = [k for k in StepKind if k.param in family.params]
    return [k for k in kinds if k.is_up] if up_only else kinds


def _points(family: Family, grid) -> Iterator[ParamPoint]:
    for values in itertools.product(grid, repeat=len(family.params)):
        yield ParamPoint(family, *values)


def _rel(x: complex, ref: complex) -> float:
    return abs(x - ref) / max(1.0, abs(ref))


def in_branch_region(point: ParamPoint, kind: StepKind) -> bool:
    """Whether the principal-branch multipliers at ``point`` and its
    ``kind``-neighbour are mutually consistent (all gamma arguments positive)."""
    low = point if kind.is_up else point.step(kind)
    a, b = low.alpha, low.beta
    if low.family is Family.CHG:
        return (a > 0 and a - b + 1 > 0) if kind.param == "alpha" else (b > a and b > 0)
    z = low.zeta
    if kind.param == "zeta":
        return z > a and z > b and z > 0
    x = low.get(kind.param)
    return x > 0 and x - z + 1 > 0


def ladder_cases(cfg: VerifyConfig, family: Family, kind: StepKind) -> list[tuple[ParamPoint, float]]:
    pts = [p for p in _points(family, cfg.value_grid) if in_branch_region(p, kind)]
    return [(p, t) for p in pts for t in cfg.t_grid]


def _canonical(point: ParamPoint, kind: StepKind, t) -> tuple[complex, complex]:
    mu = recurrence.normalization_value(kind.up, point)
    return (mu * recurrence.series(point, t).value, mu * recurrence.series(point, t, deriv=1).value)


# --- suites -------------------------------------------------------------------

def suite_coeffs(cfg: VerifyConfig) -> list[Check]:
    ts = cfg.random_ts()
    out = []
    for family in Family:
        for kind in _kinds(family):
            structural = 0.0
            pointwise = 0.0
            n = 0
            for p in _points(family, cfg.coeff_grid):
                for exact in (True, False):
                    point = p.as_exact() if exact else p
                    coeffs = elementary_step(point, kind)
                    if cfg.corrupt_b:
                        coeffs = coeffs.with_(b=coeffs.b + cfg.corrupt_b)
                    res = coeff_residuals(model_at(point), kind, coeffs)
                    if exact:
                        structural = max(structural, 0.0 if res.is_zero() else 1.0)
                    else:
                        for r in res:
                            pointwise = max(pointwise, max(abs(r.evaluate(t)) for t in ts))
                    n += 1
            out.append(Check("coeffs", f"{family.name} {kind.token} structural", structural, 0.5, n))
            out.append(Check("coeffs", f"{family.name} {kind.token} pointwise", pointwise,
                             cfg.coeff_tol, n))
    return out


def suite_invariance(cfg: VerifyConfig) -> list[Check]:
    rng = random.Random(cfg.seed + 1)
    out = []
    for family in Family:
        for kind in _kinds(family):
            worst, n = 0.0, 0
            for p in _points(family, cfg.coeff_grid):
                coeffs = elementary_step(p, kind)
                if cfg.corrupt_b:
                    coeffs = coeffs.with_(b=coeffs.b + cfg.corrupt_b)
                model = model_at(p)
                for _ in range(3):
                    t = rng.uniform(0.1, 0.9)
                    q, qn = rng.uniform(-1, 1), rng.uniform(-1, 1)
                    worst = max(worst, abs(invariance_residual(coeffs, model, q, qn, t)))
                    n += 1
            out.append(Check("invariance", f"{family.name} {kind.token}", worst, 1e-9, n))
    return out


def suite_ladder(cfg: VerifyConfig) -> list[Check]:
    out = []
    for family in Family:
        for kind in _kinds(family):
            raise_worst = trip_worst = 0.0
            cases = ladder_cases(cfg, family, kind)
            for point, t in cases:
                q, dq = _canonical(point, kind, t)
                target = point.step(kind)
                expected, dexpected = _canonical(target, kind, t)
                step = recurrence.ladder(point, kind)
                raise_worst = max(raise_worst, _rel(step.apply(q, dq, t), expected))
                back = recurrence.ladder(target, kind.inverse).apply(expected, dexpected, t)
                trip_worst = max(trip_worst, _rel(back, q))
            out.append(Check("ladder", f"{family.name} {kind.token} vs oracle", raise_worst,
                             cfg.ladder_tol, len(cases)))
            out.append(Check("ladder", f"{family.name} {kind.token} round trip", trip_worst,
                             cfg.ladder_tol, len(cases)))
    return out


def suite_trinomial(cfg: VerifyConfig) -> list[Check]:
    out = []
    for family in Family:
        for kind in _kinds(family, up_only=True):
            three_worst = comp_worst = 0.0
            n = 0
            for point, t in ladder_cases(cfg, family, kind):
                s1 = elementary_step(point, kind)
                s2 = elementary_step(s1.target, kind)
                if s1.degenerate or s2.degenerate:
                    continue
                q, dq = _canonical(point, kind, t)
                q1 = recurrence.apply_raise(s1, q, dq, t)
                dq1 = q1 * (recurrence.series(s1.target, t, deriv=1).value
                            / recurrence.series(s1.target, t).value)
                two = recurrence.apply_raise(s2, q1, dq1, t)
                three_worst = max(three_worst, _rel(recurrence.three_term(s1, s2, q, q1, t), two))
                comp_worst = max(comp_worst, _rel(recurrence.apply_raise(
                    recurrence.compose(s1, s2), q, dq, t), two))
                n += 1
            out.append(Check("trinomial", f"{family.name} {kind.token} three-term", three_worst,
                             cfg.ladder_tol, n))
            out.append(Check("trinomial", f"{family.name} {kind.token} composed", comp_worst,
                             cfg.ladder_tol, n))
    return out


def suite_normalization(cfg: VerifyConfig) -> list[Check]:
    out = []
    for family in Family:
        for kind in _kinds(family, up_only=True):
            worst, n = 0.0, 0
            for point in _points(family, cfg.value_grid):
                if not in_branch_region(point, kind):
                    continue
                lhs, rhs = recurrence.functional_equation(kind, point)
                worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
                n += 1
            out.append(Check("normalization", f"{family.name} {kind.token} functional equation",
                             worst, cfg.normalization_tol, n))
    # the CHG alpha-chain invariant G(alpha - beta + 1) N(alpha) / G(alpha)
    worst, n = 0.0, 0
    for alpha, beta in itertools.product(cfg.value_grid, repeat=2):
        if alpha - beta + 1 <= 0:
            continue
        vals = []
        for k in range(3):
            p = ParamPoint(Family.CHG, alpha + k, beta)
            N = recurrence.normalization_squared(StepKind.ALPHA_UP, p)
            vals.append(specfun.gamma(alpha + k - beta + 1) * N / specfun.gamma(alpha + k))
        worst = max(worst, max(abs(v - vals[0]) / abs(vals[0]) for v in vals))
        n += 1
    out.append(Check("normalization", "CHG a+ chain constant", worst, cfg.normalization_tol, n))
    return out


def suite_zero_curvature(cfg: VerifyConfig) -> list[Check]:
    ts = cfg.random_ts()
    out = []
    for point in cfg.curvature_points:
        for kind in _kinds(point.family):
            try:
                exact = lattice.zero_curvature_for(point.as_exact(), kind)
                numeric = lattice.zero_curvature_for(point, kind)
            except DegenerateStepError:
                continue
            entries = [abs(e) for t in ts for row in numeric.evaluate(t) for e in row]
            label = f"{point} {kind.token}"
            out.append(Check("zero-curvature", f"{label} structural",
                             0.0 if exact.is_zero() else 1.0, 0.5, 4))
            out.append(Check("zero-curvature", f"{label} pointwise", max(entries),
                             cfg.curvature_tol, len(entries)))
    return out


_SUITES: dict[str, Callable[[VerifyConfig], list[Check]]] = {
    "coeffs": suite_coeffs,
    "invariance": suite_invariance,
    "ladder": suite_ladder,
    "trinomial": suite_trinomial,
    "normalization": suite_normalization,
    "zero-curvature": suite_zero_curvature,
}


def run(suite: str, cfg: VerifyConfig | None = None) -> list[Check]:
    cfg = cfg or VerifyConfig()
    if suite == "all":
        return [c for name in SUITES for c in _SUITES[name](cfg)]
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}, all")
    return _SUITES[suite](cfg)
