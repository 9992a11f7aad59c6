"""Exact arithmetic on Laurent polynomials in ``t`` and ``1 - t``.

A :class:`RationalFn` is a finite sum ``sum k_ij * t**i * (1 - t)**j`` with
integer exponents.  These functions form the ring ``C[t, 1/t, 1/(1-t)]``, and
the family ``t**i`` (any integer ``i``) together with ``(1 - t)**-n`` (``n >= 1``)
is a basis of that ring (partial fractions).  Every object is stored in that
basis, so two objects are equal as functions iff their term maps are equal.

Coefficients may be any numbers closed under ``+`` and ``*``: ``int``,
``fractions.Fraction``, ``float``/``complex``, or sympy expressions.  Only the
exact types give exact structural zeros; sympy coefficients are expanded on
every canonicalisation so that algebraic numbers such as ``sqrt(6)/sqrt(2)``
collapse to a unique form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Number
from typing import Iterable, Mapping

import sympy

from ..errors import DomainError, NotInvertibleError

Key = tuple[int, int]


def _is_exact_zero(k) -> bool:
    return k == 0


def _tidy(k):
    if isinstance(k, sympy.Basic):
        return sympy.expand(k)
    return k


@lru_cache(maxsize=None)
def _reduce(i: int, j: int) -> tuple[tuple[Key, int], ...]:
    """Integer expansion of ``t**i (1-t)**j`` in the canonical basis."""
    if j == 0 or (i == 0 and j < 0):
        return (((i, j), 1),)
    if j > 0:
        return tuple(((i + k, 0), (-1) ** k * comb(j, k)) for k in range(j + 1))
    n = -j
    out: dict[Key, int] = {}
    if i > 0:
        # t**i = (1 - s)**i with s = 1 - t
        for k in range(i + 1):
            c = (-1) ** k * comb(i, k)
            for key, v in _reduce(0, k - n):
                out[key] = out.get(key, 0) + c * v
    else:
        # 1 / (t**p s**n) = 1 / (t**(p-1) s**n) + 1 / (t**p s**(n-1))
        for key, v in _reduce(i + 1, j) + _reduce(i, j + 1):
            out[key] = out.get(key, 0) + v
    return tuple((k, v) for k, v in sorted(out.items()) if v != 0)


def is_canonical_key(key: Key) -> bool:
    i, j = key
    return j == 0 or (i == 0 and j < 0)


class RationalFn:
    """Immutable Laurent polynomial in ``t`` and ``1 - t``."""

    __slots__ = ("_terms", "_numeric")

    def __init__(self, terms: Mapping[Key, object] | Iterable[tuple[Key, object]] | None = None):
        acc: dict[Key, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for (i, j), k in items:
            if _is_exact_zero(k):
                continue
            for key, mult in _reduce(int(i), int(j)):
                acc[key] = acc[key] + mult * k if key in acc else mult * k
        clean = {}
        for key, k in acc.items():
            k = _tidy(k)
            if not _is_exact_zero(k):
                clean[key] = k
        self._terms = dict(sorted(clean.items()))
        self._numeric = None

    @classmethod
    def _from_canonical(cls, terms: dict[Key, object]) -> "RationalFn":
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._numeric = None
        return obj

    # constructors
    @classmethod
    def const(cls, k) -> "RationalFn":
        return cls({(0, 0): k})

    @classmethod
    def monomial(cls, k, i: int = 0, j: int = 0) -> "RationalFn":
        return cls({(i, j): k})

    @classmethod
    def t(cls, power: int = 1) -> "RationalFn":
        return cls({(power, 0): 1})

    @classmethod
    def one_minus_t(cls, power: int = 1) -> "RationalFn":
        return cls({(0, power): 1})

    @staticmethod
    def coerce(x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, (Number, sympy.Basic)):
            return RationalFn.const(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as RationalFn")

    @property
    def terms(self) -> dict[Key, object]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def constant_term(self):
        return self._terms.get((0, 0), 0)

    # ring operations
    def __add__(self, other) -> "RationalFn":
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for key, k in other._terms.items():
            s = _tidy(out[key] + k) if key in out else k
            if _is_exact_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return RationalFn._from_canonical(out)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn._from_canonical({key: -k for key, k in self._terms.items()})

    def __sub__(self, other) -> "RationalFn":
        try:
            other = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) - self

    def __mul__(self, other) -> "RationalFn":
        if isinstance(other, (Number, sympy.Basic)):
            return self.scale(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        pairs = []
        for (i1, j1), k1 in self._terms.items():
            for (i2, j2), k2 in other._terms.items():
                pairs.append(((i1 + i2, j1 + j2), k1 * k2))
        return RationalFn(pairs)

    __rmul__ = __mul__

    def scale(self, k) -> "RationalFn":
        if _is_exact_zero(k):
            return RationalFn()
        out = {}
        for key, v in self._terms.items():
            s = _tidy(v * k)
            if not _is_exact_zero(s):
                out[key] = s
        return RationalFn._from_canonical(out)

    def __truediv__(self, other) -> "RationalFn":
        if isinstance(other, (Number, sympy.Basic)):
            if _is_exact_zero(other):
                raise ZeroDivisionError("division of RationalFn by zero")
            return self.scale(_reciprocal(other))
        if isinstance(other, RationalFn):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFn":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFn.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self) -> "RationalFn":
        """d/dt, closed on the ring."""
        pairs = []
        for (i, j), k in self._terms.items():
            if j == 0 and i != 0:
                pairs.append(((i - 1, 0), i * k))
            elif j < 0:
                # d/dt (1-t)**j = -j (1-t)**(j-1)
                pairs.append(((0, j - 1), -j * k))
        return RationalFn(pairs)

    def inverse(self) -> "RationalFn":
        """Multiplicative inverse; exists only for ``c * t**x * (1-t)**y``."""
        if self.is_zero():
            raise ZeroDivisionError("zero RationalFn has no inverse")
        if len(self._terms) == 1:
            (i, j), k = next(iter(self._terms.items()))
            return RationalFn({(-i, -j): _reciprocal(k)})
        c, x, y = self._unit_factor()
        return RationalFn({(-x, -y): _reciprocal(c)})

    def _unit_factor(self):
        # write self = N(t) / (t**p (1-t)**n) with N a polynomial, then peel
        # factors t and (1-t) off N; a unit leaves a constant behind
        p = max([-i for (i, j) in self._terms if j == 0 and i < 0] + [0])
        n = max([-j for (i, j) in self._terms if j < 0] + [0])
        num = self * RationalFn({(p, n): 1})
        if any(j != 0 or i < 0 for (i, j) in num._terms):
            raise NotInvertibleError("unexpected non-polynomial numerator")
        deg = max(i for (i, _) in num._terms)
        poly = [num._terms.get((i, 0), 0) for i in range(deg + 1)]
        x = 0
        while poly and _is_exact_zero(poly[0]):
            poly.pop(0)
            x += 1
        y = 0
        while len(poly) > 1 and _is_exact_zero(_tidy(sum(poly))):
            # synthetic division by (1 - t): poly = (1 - t) * quot
            quot = []
            acc = 0
            for coeff in poly[:-1]:
                acc = _tidy(acc + coeff)
                quot.append(acc)
            poly = quot
            y += 1
        if len(poly) != 1:
            raise NotInvertibleError(f"{self!r} is not a unit of the Laurent ring")
        return poly[0], x - p, y - n

    # evaluation
    def __call__(self, t) -> complex:
        return self.evaluate(t)

    def evaluate(self, t) -> complex:
        t = complex(t)
        if t == 0 and any(i < 0 for i, _ in self._terms):
            raise DomainError("pole at t = 0")
        if t == 1 and any(j < 0 for _, j in self._terms):
            raise DomainError("pole at t = 1")
        if self._numeric is None:
            self._numeric = tuple((i, j, complex(k)) for (i, j), k in self._terms.items())
        s = 1 - t
        return sum((k * t**i * s**j for i, j, k in self._numeric), 0j)

    def chop(self, tol: float) -> "RationalFn":
        """Drop terms with ``|k| <= tol`` (for inexact coefficients)."""
        return RationalFn._from_canonical(
            {key: k for key, k in self._terms.items() if abs(complex(k)) > tol}
        )

    def max_abs_coeff(self) -> float:
        return max((abs(complex(k)) for k in self._terms.values()), default=0.0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Number, sympy.Basic)):
            other = RationalFn.const(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self._terms.keys() != other._terms.keys():
            return False
        return all(_is_exact_zero(_tidy(self._terms[k] - other._terms[k])) for k in self._terms)

    def __hash__(self):
        return hash(tuple(self._terms))

    def __repr__(self) -> str:
        if not self._terms:
            return "RationalFn(0)"
        parts = []
        for (i, j), k in self._terms.items():
            fac = []
            if i:
                fac.append("t" if i == 1 else f"t^{i}")
            if j:
                fac.append(f"(1-t)^{j}")
            parts.append(f"({k})" + ("*" + "*".join(fac) if fac else ""))
        return "RationalFn(" + " + ".join(parts) + ")"


def _reciprocal(k):
    if isinstance(k, int):
        return Fraction(1, k)
    return 1 / k


ZERO = RationalFn()
ONE = RationalFn.const(1)
T = RationalFn.t()


def rfn_add(x: RationalFn, y: RationalFn) -> RationalFn:
    return x + y


def rfn_mul(x: RationalFn, y: RationalFn) -> RationalFn:
    return x * y


def rfn_scale(x: RationalFn, k) -> RationalFn:
    return x.scale(k)


def rfn_diff(x: RationalFn) -> RationalFn:
    return x.diff()


def rfn_eval(x: RationalFn, t) -> complex:
    return x.evaluate(t)
