"""Knots on the parameter grating, walks, and the matrix (Lax-type) form.

Along a fixed direction the pair ``Q_K = (q_K, q_K+1)`` evolves in ``t`` by a
connection matrix and shifts two knots by a transfer matrix::

    dQ_K/dt = A_K Q_K,        Q_K+2 = B_K Q_K

and compatibility of the two is the zero-curvature condition
``dB/dt + B A_K - A_K+2 B = 0``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import recurrence
from .canonical.model import ParamPoint, StepKind, check_step
from .canonical.rational import RationalFn
from .canonical.steps import GenFnCoeffs, elementary_step
from .errors import ChainMismatchError, DegenerateStepError, DomainError, FamilyMismatchError

MAX_OFFSET = 32


@dataclass(frozen=True)
class KnotIndex:
    """A knot as ``base`` plus an integer offset per parameter."""

    base: ParamPoint
    offsets: tuple[int, ...] = ()
    max_offset: int = field(default=MAX_OFFSET, compare=False)

    def __post_init__(self):
        n = len(self.base.params)
        offsets = tuple(self.offsets) or (0,) * n
        if len(offsets) != n:
            raise FamilyMismatchError(
                f"{self.base.family.name} knots need {n} offsets, got {len(offsets)}"
            )
        if any(not isinstance(o, int) for o in offsets):
            raise TypeError("offsets must be integers")
        if any(abs(o) > self.max_offset for o in offsets):
            raise DomainError(f"offset beyond +-{self.max_offset}")
        object.__setattr__(self, "offsets", offsets)

    def step(self, kind: StepKind) -> "KnotIndex":
        check_step(self.base, kind)
        i = self.base.family.params.index(kind.param)
        offsets = list(self.offsets)
        offsets[i] += kind.sign
        return replace(self, offsets=tuple(offsets))


def resolve(k: KnotIndex) -> ParamPoint:
    point = k.base
    for name, off in zip(k.base.family.params, k.offsets):
        if off:
            point = point.shifted(name, off)
    return point


@dataclass(frozen=True)
class StateVector:
    """``(q_K, q_K+1)`` at time ``t``."""

    q: complex
    q_next: complex
    t: complex

    def __post_init__(self):
        if not all(cmath.isfinite(complex(x)) for x in (self.q, self.q_next)):
            raise DomainError("state entries must be finite")

    def as_tuple(self) -> tuple[complex, complex]:
        return (self.q, self.q_next)


# --- 2x2 matrices over the Laurent ring -------------------------------------

@dataclass(frozen=True)
class RfnMatrix:
    entries: tuple[tuple[RationalFn, RationalFn], tuple[RationalFn, RationalFn]]

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "RfnMatrix":
        rows = tuple(tuple(RationalFn.coerce(x) for x in row) for row in rows)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise DomainError("expected a 2x2 matrix")
        return cls(rows)

    @classmethod
    def identity(cls) -> "RfnMatrix":
        return cls.of([[1, 0], [0, 1]])

    def __getitem__(self, ij: tuple[int, int]) -> RationalFn:
        i, j = ij
        return self.entries[i][j]

    def _zip(self, other: "RfnMatrix", op) -> list[list[RationalFn]]:
        return [[op(self[i, j], other[i, j]) for j in range(2)] for i in range(2)]

    def __add__(self, other: "RfnMatrix") -> "RfnMatrix":
        return RfnMatrix.of(self._zip(other, lambda x, y: x + y))

    def __sub__(self, other: "RfnMatrix") -> "RfnMatrix":
        return RfnMatrix.of(self._zip(other, lambda x, y: x - y))

    def __matmul__(self, other: "RfnMatrix") -> "RfnMatrix":
        return RfnMatrix.of(
            [[self[i, 0] * other[0, j] + self[i, 1] * other[1, j] for j in range(2)]
             for i in range(2)]
        )

    def diff(self) -> "RfnMatrix":
        return RfnMatrix.of([[e.diff() for e in row] for row in self.entries])

    def det(self) -> RationalFn:
        return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]

    def evaluate(self, t) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return tuple(tuple(e.evaluate(t) for e in row) for row in self.entries)

    def apply(self, state: StateVector) -> StateVector:
        (m00, m01), (m10, m11) = self.evaluate(state.t)
        q, qn = state.q, state.q_next
        return StateVector(m00 * q + m01 * qn, m10 * q + m11 * qn, state.t)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def with_entry(self, i: int, j: int, value) -> "RfnMatrix":
        rows = [list(row) for row in self.entries]
        rows[i][j] = RationalFn.coerce(value)
        return RfnMatrix.of(rows)


class ConnectionMatrix(RfnMatrix):
    """``A_K``: ``d/dt (q, q~) = A_K (q, q~)``."""


class TransferMatrix(RfnMatrix):
    """``B_K``: ``(q_K+2, q_K+3) = B_K (q_K, q_K+1)``."""


def _as(cls, m: RfnMatrix):
    return cls(m.entries)


def connection_matrix(coeffs: GenFnCoeffs) -> ConnectionMatrix:
    """``A_K = (1/a) [[-b, gamma], [-r gamma, r c]]`` with ``r = m_K / m_K+1``.

    The first row is the raising map solved for ``q'``; the second is the
    lowering map solved for ``q~'``.  Only the coefficients of the step
    ``K -> K+1`` enter.
    """
    inv_a = coeffs.a.inverse()
    r = coeffs.mass_ratio
    g = RationalFn.const(coeffs.gamma)
    return ConnectionMatrix.of([
        [-(coeffs.b * inv_a), g * inv_a],
        [-(r * g * inv_a), r * coeffs.c * inv_a],
    ])


def _shift_matrix(first: GenFnCoeffs, second: GenFnCoeffs) -> RfnMatrix:
    # (q_j, q_j+1) -> (q_j+1, q_j+2) from the three-term relation
    if second.degenerate:
        raise DegenerateStepError(f"gamma = 0 for {second.step.token} at {second.source}")
    p, mid, last = recurrence.three_term_coeffs(first, second)
    inv_last = last.inverse()
    return RfnMatrix.of([[0, 1], [-(p * inv_last), -(mid * inv_last)]])


def transfer_matrix(chain: Sequence[GenFnCoeffs]) -> TransferMatrix:
    """``B_K`` from the steps ``K -> K+1 -> K+2 -> K+3``.

    Two three-term eliminations give ``q_K+2`` and ``q_K+3``; the product of
    the two one-knot shift matrices is ``B_K``.
    """
    if len(chain) != 3:
        raise ChainMismatchError("transfer_matrix needs exactly three chained steps")
    _check_direction(chain)
    s0 = _shift_matrix(chain[0], chain[1])
    s1 = _shift_matrix(chain[1], chain[2])
    return _as(TransferMatrix, s1 @ s0)


def _check_direction(chain: Sequence[GenFnCoeffs]) -> None:
    kinds = {c.step for c in chain}
    if len(kinds) != 1:
        raise ChainMismatchError("all steps of a chain must share one direction")
    for first, second in zip(chain, chain[1:]):
        if not second.source.matches(first.target):
            raise ChainMismatchError(f"{second.source} does not follow {first.target}")


def zero_curvature_residual(B: RfnMatrix, A_K: RfnMatrix, A_K2: RfnMatrix) -> RfnMatrix:
    """``dB/dt + B A_K - A_K+2 B``, entry-wise in exact Laurent arithmetic."""
    return B.diff() + B @ A_K - A_K2 @ B


def direction_chain(point: ParamPoint, kind: StepKind, length: int = 3) -> list[GenFnCoeffs]:
    """``length`` consecutive steps of one kind starting at ``point``."""
    out = []
    for _ in range(length):
        c = elementary_step(point, kind)
        out.append(c)
        point = c.target
    return out


def zero_curvature_for(point: ParamPoint, kind: StepKind) -> RfnMatrix:
    chain = direction_chain(point, kind, 3)
    B = transfer_matrix(chain)
    return zero_curvature_residual(B, connection_matrix(chain[0]), connection_matrix(chain[2]))


# --- walks --------------------------------------------------------------------

@dataclass(frozen=True)
class KnotRecord:
    """One knot visited by a walk; ``expected`` is the series-oracle value."""

    index: int
    point: ParamPoint
    token: str
    q: complex
    dq: complex
    expected: complex

    @property
    def deviation(self) -> float:
        return abs(self.q - self.expected) / max(1.0, abs(self.expected))


def _series_pair(point: ParamPoint, t) -> tuple[complex, complex]:
    return (recurrence.series(point, t).value, recurrence.series(point, t, deriv=1).value)


def walk_trace(seed_q, seed_dq, start: KnotIndex, path: Sequence[StepKind], t,
               crosscheck: bool = True) -> list[KnotRecord]:
    """Walk along ``path``; one record per knot, seed first.

    The expected value at each knot is ``s_K M(K)``, where ``s`` starts as
    ``seed_q / M(start)`` and picks up ``kappa / gamma`` per step.  With
    ``crosscheck`` the derivative at each knot is rebuilt from the series
    (``q M'/M``); otherwise it is propagated by the lowering relation.
    """
    point = resolve(start)
    for kind in path:
        if not isinstance(kind, StepKind):
            raise TypeError(f"path entries must be StepKind, got {kind!r}")
        check_step(point, kind)
    q, dq = complex(seed_q), complex(seed_dq)
    m0, _ = _series_pair(point, t)
    scale = q / m0
    records = [KnotRecord(0, point, "", q, dq, q)]
    for i, kind in enumerate(path, 1):
        coeffs = elementary_step(point, kind)
        q_next = recurrence.apply_raise(coeffs, q, dq, t)
        scale *= recurrence.contiguous_factor(point, kind) / complex(coeffs.gamma)
        point = coeffs.target
        m, dm = _series_pair(point, t)
        if crosscheck:
            dq = q_next * dm / m
        else:
            dq = recurrence.propagate_derivative(coeffs, q, q_next, t)
        q = q_next
        records.append(KnotRecord(i, point, kind.token, q, dq, scale * m))
    return records


def walk(seed_q, seed_dq, start: KnotIndex, path: Sequence[StepKind], t,
         crosscheck: bool = True) -> complex:
    if not path:
        return complex(seed_q)
    return walk_trace(seed_q, seed_dq, start, path, t, crosscheck)[-1].q


def parse_path(text: str) -> list[StepKind]:
    """``"a+,b-"`` -> ``[ALPHA_UP, BETA_DOWN]``; empty text is the empty path."""
    tokens = [tok for tok in (s.strip() for s in text.split(",")) if tok]
    return [StepKind.from_token(tok) for tok in tokens]
