import pytest
import sympy

from ladderkit import lattice as L
from ladderkit import recurrence as R
from ladderkit.canonical import RationalFn, StepKind, chg, elementary_step, hg
from ladderkit.errors import (
    ChainMismatchError,
    DegenerateStepError,
    DomainError,
    FamilyMismatchError,
)

from conftest import rel

A_UP, A_DOWN, B_UP, Z_UP = StepKind.ALPHA_UP, StepKind.ALPHA_DOWN, StepKind.BETA_UP, StepKind.ZETA_UP


def test_resolve():
    base = chg(1, 2)
    assert L.resolve(L.KnotIndex(base)) == base
    assert L.resolve(L.KnotIndex(base, (2, -1))) == chg(3, 1)
    assert L.resolve(L.KnotIndex(hg(1, 2, 3), (0, 0, 1))) == hg(1, 2, 4)
    assert L.KnotIndex(base).step(B_UP).offsets == (0, 1)


def test_knot_index_validation():
    with pytest.raises(FamilyMismatchError):
        L.KnotIndex(chg(1, 2), (0, 0, 1))
    with pytest.raises(DomainError):
        L.KnotIndex(chg(1, 2), (33, 0))
    assert L.KnotIndex(chg(1, 2), (40, 0), max_offset=64).offsets == (40, 0)


def test_state_vector_must_be_finite():
    with pytest.raises(DomainError):
        L.StateVector(float("nan"), 0, 0.5)


def _oracle_state(point, kind, t):
    nxt = point.step(kind)
    return L.StateVector(R.canonical_solution(point, t, kind=kind),
                         R.canonical_solution(nxt, t, kind=kind), t)


@pytest.mark.parametrize("point,kind", [(chg(2, 1), A_UP), (chg(0.4, 1.3), B_UP),
                                        (hg(0.3, 0.4, 1.7), Z_UP), (hg(2.3, 1.4, 1.1), A_DOWN)])
def test_connection_matrix_generates_the_flow(point, kind):
    A = L.connection_matrix(elementary_step(point, kind))
    h, t = 1e-4, 0.45
    Q = _oracle_state(point, kind, t)
    lo, hi = _oracle_state(point, kind, t - h), _oracle_state(point, kind, t + h)
    dQ = ((hi.q - lo.q) / (2 * h), (hi.q_next - lo.q_next) / (2 * h))
    AQ = A.apply(Q)
    assert rel(AQ.q, dQ[0]) < 1e-5 and rel(AQ.q_next, dQ[1]) < 1e-5
    exact = (R.canonical_derivative(point, t, kind=kind),
             R.canonical_derivative(point.step(kind), t, kind=kind))
    assert rel(AQ.q, exact[0]) < 1e-8 and rel(AQ.q_next, exact[1]) < 1e-8


def test_connection_matrix_entries():
    c = elementary_step(chg(2, 1), A_UP)
    A = L.connection_matrix(c)
    assert A[0, 0] == -(c.b * c.a.inverse())
    assert abs(A.det()(0.5)) < float("inf")


@pytest.mark.parametrize("point,kind", [(chg(2, 1), A_UP), (chg(0.4, 1.3), B_UP),
                                        (hg(0.3, 0.4, 1.7), Z_UP), (hg(2.3, 1.4, 1.1), StepKind.BETA_UP)])
def test_transfer_matrix_shifts_two_knots(point, kind):
    chain = L.direction_chain(point, kind, 3)
    B = L.transfer_matrix(chain)
    t = 0.6
    out = B.apply(_oracle_state(point, kind, t))
    ref = _oracle_state(chain[2].source, kind, t)
    assert rel(out.q, ref.q) < 1e-8 and rel(out.q_next, ref.q_next) < 1e-8
    zero = B.apply(L.StateVector(0, 0, t))
    assert zero.as_tuple() == (0, 0)


def test_transfer_first_row_is_the_three_term_relation():
    chain = L.direction_chain(chg(sympy.Integer(2), sympy.Integer(1)), A_UP, 3)
    B = L.transfer_matrix(chain)
    p, mid, last = R.three_term_coeffs(chain[0], chain[1])
    assert B[0, 0] * last == -p and B[0, 1] * last == -mid


def test_transfer_matrix_rejects_bad_chains():
    chain = L.direction_chain(chg(2, 1), A_UP, 3)
    with pytest.raises(ChainMismatchError):
        L.transfer_matrix(chain[:2])
    with pytest.raises(ChainMismatchError):
        L.transfer_matrix([chain[0], chain[2], chain[1]])
    with pytest.raises(DegenerateStepError):
        L.transfer_matrix(L.direction_chain(chg(2, 5), A_UP, 3))


@pytest.mark.parametrize("point,kind", [
    (chg(2, 1), A_UP), (chg(2, 5), B_UP), (chg(sympy.Rational(9, 2), sympy.Rational(1, 2)), A_DOWN), (chg(3.5, 1.5), StepKind.BETA_DOWN),
    (hg(2, 1, 3), Z_UP), (hg(2, 1, 3), A_UP), (hg(sympy.Rational(1, 2), sympy.Rational(3, 2), sympy.Rational(7, 2)), StepKind.BETA_DOWN),
])
def test_zero_curvature_is_structural(point, kind, random_ts):
    exact = L.zero_curvature_for(point.as_exact(), kind)
    assert exact.is_zero()
    numeric = L.zero_curvature_for(point.as_complex(), kind)
    assert max(abs(e) for t in random_ts for row in numeric.evaluate(t) for e in row) < 1e-10


def test_zero_curvature_trivial_and_perturbed():
    A = L.connection_matrix(elementary_step(chg(2, 1), A_UP))
    assert L.zero_curvature_residual(L.RfnMatrix.identity(), A, A).is_zero()
    chain = L.direction_chain(chg(sympy.Integer(2), sympy.Integer(1)), A_UP, 3)
    B = L.transfer_matrix(chain)
    A0, A2 = L.connection_matrix(chain[0]), L.connection_matrix(chain[2])
    bumped = B.with_entry(0, 0, B[0, 0] + 1)
    res = L.zero_curvature_residual(bumped, A0, A2)
    assert not res.is_zero()
    # the extra term is E00 A0 - A2 E00 for the unit matrix E00
    E = L.RfnMatrix.of([[1, 0], [0, 0]])
    assert res == E @ A0 - A2 @ E


def test_walk_empty_path_echoes_seed():
    assert L.walk(1.5 + 2j, 0.3, L.KnotIndex(chg(2, 1)), [], 0.5) == 1.5 + 2j


def test_walk_round_trip_and_three_term():
    start, t = L.KnotIndex(chg(2, 1)), 0.7
    q, dq = R.canonical_solution(chg(2, 1), t), R.canonical_derivative(chg(2, 1), t)
    assert rel(L.walk(q, dq, start, [A_UP, A_DOWN], t), q) < 1e-9
    s1, s2 = L.direction_chain(chg(2, 1), A_UP, 2)
    q1 = R.apply_raise(s1, q, dq, t)
    assert rel(L.walk(q, dq, start, [A_UP, A_UP], t), R.three_term(s1, s2, q, q1, t)) < 1e-9


@pytest.mark.parametrize("crosscheck", [True, False])
def test_walk_trace_tracks_the_oracle(crosscheck):
    p, t = hg(0.6, 0.9, 2.2), 0.35
    q, dq = R.series(p, t).value, R.series(p, t, deriv=1).value
    path = L.parse_path("a+,z+,b+,a-,z-")
    trace = L.walk_trace(q, dq, L.KnotIndex(p), path, t, crosscheck)
    assert [r.token for r in trace] == ["", "a+", "z+", "b+", "a-", "z-"]
    assert max(r.deviation for r in trace) < (1e-10 if crosscheck else 1e-8)


def test_path_independence_for_commuting_steps():
    p, t = chg(1.5, 3.25), 0.8
    seed = (R.canonical_solution(p, t), R.canonical_derivative(p, t))
    ab = L.walk(*seed, L.KnotIndex(p), [A_UP, B_UP], t)
    ba = L.walk(*seed, L.KnotIndex(p), [B_UP, A_UP], t)
    assert rel(ab, ba) < 1e-8


def test_walk_rejects_foreign_steps():
    with pytest.raises(FamilyMismatchError):
        L.walk(1, 1, L.KnotIndex(chg(2, 1)), [Z_UP], 0.5)
    with pytest.raises(ValueError):
        L.parse_path("a+,x-")
    with pytest.raises(DegenerateStepError):
        L.walk(1, 1, L.KnotIndex(chg(1, 2)), [A_UP], 0.5)
