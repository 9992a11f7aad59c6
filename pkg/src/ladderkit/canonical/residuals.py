"""Residuals of the defining equations for canonical steps.

Scalar system for ``F = m S`` (``r = m / m~``, ``l = mdot / m``)::

    r1 = adot - l a - r c + b
    r2 = r cdot + bdot - (lam - lam~ + U~ - U) a
    r3 = a bdot - (lam - U) a**2 - r (b c - gamma**2)

A coefficient set generates an invariance-preserving canonical map iff all
three vanish identically.  The general ``s``-dimensional system is checked by
:func:`matrix_coeff_residuals`.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Sequence

from ..errors import DomainError, FamilyMismatchError
from .model import ModelSpec, StepKind, model_at
from .rational import RationalFn
from .steps import GenFnCoeffs, require_family


class CoeffResiduals(NamedTuple):
    r1: RationalFn
    r2: RationalFn
    r3: RationalFn

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self)


def coeff_residuals(model: ModelSpec, step: StepKind, coeffs: GenFnCoeffs) -> CoeffResiduals:
    require_family(model, coeffs)
    if coeffs.step is not step:
        raise FamilyMismatchError(f"coefficients are for {coeffs.step.token}, not {step.token}")
    if not coeffs.source.matches(model.point):
        raise FamilyMismatchError("coefficients were built at a different parameter point")
    target = model_at(coeffs.source.step(step))
    r = model.mass_ratio(step)
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    adot, bdot, cdot = a.diff(), b.diff(), c.diff()
    lam, lam_t = model.lam, target.lam
    r1 = adot - model.log_deriv_m * a - r * c + b
    r2 = r * cdot + bdot - (target.U - model.U + (lam - lam_t)) * a
    r3 = a * bdot - (RationalFn.const(lam) - model.U) * a * a - r * (b * c - coeffs.gamma_sq)
    return CoeffResiduals(r1, r2, r3)


def _quadratic_parts(coeffs: GenFnCoeffs, t):
    a = coeffs.a.evaluate(t)
    if a == 0:
        raise ZeroDivisionError("a(t) = 0: generating function undefined")
    return a, coeffs.b.evaluate(t), coeffs.c.evaluate(t), complex(coeffs.gamma)


def generating_fn_eval(coeffs: GenFnCoeffs, model: ModelSpec, q, q_next, t) -> complex:
    """``F = m(t) (2 gamma q q~ - b q**2 - c q~**2) / (2 a)``."""
    require_family(model, coeffs)
    m = model.mass(t)
    a, b, c, g = _quadratic_parts(coeffs, t)
    return m * (2 * g * q * q_next - b * q * q - c * q_next * q_next) / (2 * a)


def hamiltonian_eval(p, q, t, model: ModelSpec) -> complex:
    """``H = p**2 / (2m) - (m/2)(U - lam) q**2``."""
    m = model.mass(t)
    return p * p / (2 * m) - 0.5 * m * (model.potential(t) - model.lam) * q * q


def invariance_residual(coeffs: GenFnCoeffs, model: ModelSpec, q, q_next, t) -> complex:
    """Pointwise residual of the Hamilton-Jacobi type equation for ``S``.

    ``(2/m) d(mS)/dt + S_q**2 - (m/m~) S_q~**2 + (lam - U) q**2 - (m~/m)(lam~ - U~) q~**2``
    """
    require_family(model, coeffs)
    model.mass(t)  # domain check
    target = model_at(coeffs.target)
    r = coeffs.mass_ratio.evaluate(t)
    a, b, c, g = _quadratic_parts(coeffs, t)
    adot, bdot, cdot = (x.diff().evaluate(t) for x in (coeffs.a, coeffs.b, coeffs.c))
    quad = 2 * g * q * q_next - b * q * q - c * q_next * q_next
    S = quad / (2 * a)
    S_t = (-bdot * q * q - cdot * q_next * q_next) / (2 * a) - quad * adot / (2 * a * a)
    S_q = (g * q_next - b * q) / a
    S_qn = (g * q - c * q_next) / a
    U, U_t = model.potential(t), target.potential(t)
    return (
        2 * (model.log_deriv_m.evaluate(t) * S + S_t)
        + S_q * S_q
        - r * S_qn * S_qn
        + (model.lam - U) * q * q
        - (target.lam - U_t) * q_next * q_next / r
    )


# --- general s-dimensional system -------------------------------------------

Matrix = Sequence[Sequence[RationalFn]]


def _shape(m: Matrix) -> int:
    s = len(m)
    if any(len(row) != s for row in m):
        raise DomainError("matrices must be square")
    return s


def _mat(m: Matrix) -> list[list[RationalFn]]:
    return [[RationalFn.coerce(x) for x in row] for row in m]


def mat_mul(x: Matrix, y: Matrix) -> list[list[RationalFn]]:
    n, k, p = len(x), len(y), len(y[0])
    return [[sum((x[i][l] * y[l][j] for l in range(k)), RationalFn()) for j in range(p)]
            for i in range(n)]


def mat_add(x: Matrix, y: Matrix, sign: int = 1) -> list[list[RationalFn]]:
    return [[x[i][j] + y[i][j].scale(sign) for j in range(len(x[0]))] for i in range(len(x))]


def transpose(x: Matrix) -> list[list[RationalFn]]:
    return [list(col) for col in zip(*x)]


def determinant(x: Matrix) -> RationalFn:
    s = _shape(x)
    total = RationalFn()
    for perm in itertools.permutations(range(s)):
        inversions = sum(1 for i in range(s) for j in range(i + 1, s) if perm[i] > perm[j])
        term = RationalFn.const(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * x[i][j]
        total = total + term
    return total


def mat_inverse(x: Matrix) -> list[list[RationalFn]]:
    """Inverse over the Laurent ring; needs ``det`` to be a unit."""
    s = _shape(x)
    det = determinant(x)
    if det.is_zero():
        raise DomainError("singular metric: det g is identically zero")
    inv_det = det.inverse()
    if s == 1:
        return [[inv_det]]
    out = [[RationalFn()] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            minor = [[x[r][c] for c in range(s) if c != j] for r in range(s) if r != i]
            sign = -1 if (i + j) % 2 else 1
            out[j][i] = determinant(minor).scale(sign) * inv_det
    return out


def _ddt(x: Matrix, weight_log_deriv: RationalFn) -> list[list[RationalFn]]:
    return [[e.diff() + weight_log_deriv * e for e in row] for row in x]


def _scaled(x: Matrix, k) -> list[list[RationalFn]]:
    return [[e.scale(k) for e in row] for row in x]


def matrix_coeff_residuals(g: Matrix, U: Matrix, g_next: Matrix, U_next: Matrix,
                           gamma: Matrix, b: Matrix, c: Matrix, lam=0, lam_next=0,
                           weight_log_deriv: RationalFn | None = None):
    """Left-minus-right sides of the coefficient equations for ``s`` coordinates.

    With ``F = (2 q.gamma.q~ - q.b.q - q~.c.q~) / 2`` (``b``, ``c`` symmetric)
    the invariance condition splits into::

        R_cross = gammadot - b g^-1 gamma + gamma g~^-1 c
        R_qq    = -bdot + b g^-1 b + lam g - U - gamma g~^-1 gamma^T
        R_q~q~  = -cdot + gamma^T g^-1 gamma - c g~^-1 c + U~ - lam~ g~

    Every matrix may carry a common scalar weight ``w(t)`` that is not a
    Laurent polynomial (e.g. ``t**beta exp(-t)``).  Pass the reduced
    matrices (actual / w) and ``weight_log_deriv = wdot / w``; the returned
    residuals are then the actual residuals divided by ``w``.
    """
    g, U, g_next, U_next, gamma, b, c = map(_mat, (g, U, g_next, U_next, gamma, b, c))
    s = _shape(g)
    for m in (U, g_next, U_next, gamma, b, c):
        if _shape(m) != s:
            raise DomainError("all matrices must share the dimension s")
    w = weight_log_deriv if weight_log_deriv is not None else RationalFn()
    g_inv = mat_inverse(g)
    gn_inv = mat_inverse(g_next)
    gamma_t = transpose(gamma)

    r_cross = mat_add(
        mat_add(_ddt(gamma, w), mat_mul(mat_mul(b, g_inv), gamma), -1),
        mat_mul(mat_mul(gamma, gn_inv), c),
    )
    r_qq = mat_add(
        mat_add(
            mat_add(_scaled(_ddt(b, w), -1), mat_mul(mat_mul(b, g_inv), b)),
            _scaled(g, lam),
        ),
        mat_add(U, mat_mul(mat_mul(gamma, gn_inv), gamma_t)),
        -1,
    )
    r_nn = mat_add(
        mat_add(
            mat_add(_scaled(_ddt(c, w), -1), mat_mul(mat_mul(gamma_t, g_inv), gamma)),
            mat_mul(mat_mul(c, gn_inv), c),
            -1,
        ),
        mat_add(U_next, _scaled(g_next, lam_next), -1),
    )
    return r_cross, r_qq, r_nn


def embed_scalar(coeffs: GenFnCoeffs):
    """1x1 reduced matrices (and weight log-derivative) for a scalar step.

    With weight ``m``: ``g = 1``, ``g~ = m~/m``, ``U -> U``, ``U~ -> (m~/m) U~``
    and ``(gamma, b, c) -> (gamma, b, c) / a``.
    """
    model = coeffs.model
    target = model_at(coeffs.target)
    inv_r = coeffs.mass_ratio.inverse()
    inv_a = coeffs.a.inverse()
    one = RationalFn.const(1)
    return dict(
        g=[[one]],
        U=[[model.U]],
        g_next=[[inv_r]],
        U_next=[[inv_r * target.U]],
        gamma=[[inv_a.scale(coeffs.gamma)]],
        b=[[coeffs.b * inv_a]],
        c=[[coeffs.c * inv_a]],
        lam=model.lam,
        lam_next=target.lam,
        weight_log_deriv=model.log_deriv_m,
    )
