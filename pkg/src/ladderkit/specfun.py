"""Reference evaluations: gamma function and hypergeometric series.

These are the oracles the ladder machinery is checked against, so they are
deliberately plain: a Lanczos gamma with reflection, and direct power series
summed until the next term is negligible.  All arithmetic is complex double.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError

TERM_CAP = 10_000
DEFAULT_TOL = 1e-16
_FLOOR = 1e-300

# Lanczos approximation, g = 607/128, 15 terms
_LANCZOS_G = 607 / 128
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    abs_error_bound: float
    terms_used: int


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def sinpi(z: complex) -> complex:
    """``sin(pi z)`` with the real part reduced exactly mod 2."""
    z = complex(z)
    x = z.real - 2.0 * round(z.real / 2.0)
    y = z.imag
    if y == 0:
        if x == round(x):
            return 0j
        return complex(math.sin(math.pi * x), 0.0)
    return complex(math.sin(math.pi * x) * math.cosh(math.pi * y),
                   math.cos(math.pi * x) * math.sinh(math.pi * y))


def cospi(z: complex) -> complex:
    """``cos(pi z)``, exactly zero at half-integers."""
    return sinpi(complex(z) + 0.5)


def _gamma_right(z: complex) -> complex:
    x = z - 1
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (x + k)
    base = x + _LANCZOS_G + 0.5
    return cmath.exp(_HALF_LOG_2PI + (x + 0.5) * cmath.log(base) - base) * acc


def gamma(z) -> complex:
    """Gamma function for complex ``z``; raises :class:`PoleError` at 0, -1, -2, ..."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (sinpi(z) * _gamma_right(1 - z))
    value = _gamma_right(z)
    if z.imag == 0:
        value = complex(value.real, 0.0)
    return value


def rgamma(z) -> complex:
    """``1 / gamma(z)``, zero at the poles."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    return 1 / gamma(z)


def _series(upper: tuple[complex, ...], lower: tuple[complex, ...], t: complex,
            tol: float, deriv: int, cap: int) -> SeriesResult:
    # deriv-th term-wise derivative of sum_n prod(u)_n / prod(l)_n t^n / n!
    # is the same series with every parameter shifted by deriv, times the
    # leading Pochhammer ratio
    lead = 1 + 0j
    for k in range(deriv):
        for u in upper:
            lead *= u + k
        for l in lower:
            lead /= l + k
    up = tuple(u + deriv for u in upper)
    lo = tuple(l + deriv for l in lower)
    term = lead
    total = lead
    n = 0
    while True:
        ratio = t / (n + 1)
        for u in up:
            ratio *= u + n
        for l in lo:
            ratio /= l + n
        nxt = term * ratio
        if abs(nxt) < tol * max(abs(total), _FLOOR):
            return SeriesResult(total, abs(nxt), n + 1)
        total += nxt
        term = nxt
        n += 1
        if n + 1 > cap:
            raise ConvergenceError(f"series did not converge within {cap} terms")


def _check_tol(tol: float) -> None:
    if not tol > 0:
        raise ValueError("tol must be positive")


def kummer(alpha, beta, t, tol: float = DEFAULT_TOL, *, deriv: int = 0,
           cap: int = TERM_CAP) -> SeriesResult:
    """Kummer's ``M(alpha, beta, t) = sum (alpha)_n / (beta)_n t^n / n!``."""
    _check_tol(tol)
    alpha, beta, t = complex(alpha), complex(beta), complex(t)
    if _is_nonpositive_integer(beta):
        raise PoleError("kummer: beta is a nonpositive integer")
    return _series((alpha,), (beta,), t, tol, deriv, cap)


def kummer_dt(alpha, beta, t, tol: float = DEFAULT_TOL, **kw) -> SeriesResult:
    return kummer(alpha, beta, t, tol, deriv=1, **kw)


def kummer_d2t(alpha, beta, t, tol: float = DEFAULT_TOL, **kw) -> SeriesResult:
    return kummer(alpha, beta, t, tol, deriv=2, **kw)


def gauss(alpha, beta, zeta, t, tol: float = DEFAULT_TOL, *, deriv: int = 0,
          cap: int = TERM_CAP) -> SeriesResult:
    """Gauss ``2F1(alpha, beta; zeta; t)`` inside the unit disc."""
    _check_tol(tol)
    alpha, beta, zeta, t = complex(alpha), complex(beta), complex(zeta), complex(t)
    if abs(t) >= 1:
        raise DomainError("gauss series needs |t| < 1")
    if _is_nonpositive_integer(zeta):
        raise PoleError("gauss: zeta is a nonpositive integer")
    return _series((alpha, beta), (zeta,), t, tol, deriv, cap)


def gauss_dt(alpha, beta, zeta, t, tol: float = DEFAULT_TOL, **kw) -> SeriesResult:
    return gauss(alpha, beta, zeta, t, tol, deriv=1, **kw)


def gauss_d2t(alpha, beta, zeta, t, tol: float = DEFAULT_TOL, **kw) -> SeriesResult:
    return gauss(alpha, beta, zeta, t, tol, deriv=2, **kw)


def ode_residual_chg(q, dq, ddq, alpha, beta, t) -> complex:
    """``t q'' + (beta - t) q' - alpha q``."""
    return t * ddq + (beta - t) * dq - alpha * q


def ode_residual_hg(q, dq, ddq, alpha, beta, zeta, t) -> complex:
    """``t (1 - t) q'' - ((alpha + beta + 1) t - zeta) q' - alpha beta q``."""
    return t * (1 - t) * ddq - ((alpha + beta + 1) * t - zeta) * dq - alpha * beta * q
