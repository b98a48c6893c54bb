from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings

from algcalc import catalog
from algcalc.algebra import FiniteAlgebra, Signature, decode
from algcalc.congruence import con
from algcalc.errors import AlgebraError, SignatureError
from algcalc.matrix_power import (
    TermTuple,
    separation_formula_holds,
    is_generated_operation,
    m_t_table,
    matrix_power,
    verify_lambda_embedding,
)
from algcalc.terms import Apply, Var

from conftest import algebras


def test_square_of_three_set(set3):
    M = matrix_power(set3, 2)
    assert M.size == 9
    assert M.result.signature.names == ("splice", "shift", "arrow", "backarrow", "box")


def test_exponent_one(b2):
    M = matrix_power(b2, 1)
    for sym in b2.signature.names:
        assert np.array_equal(M.result.op(sym), b2.op(sym))
    assert M.result.flat_table("splice") == [0, 1, 0, 1]  # splice(x, y) = y
    assert M.result.flat_table("shift") == [0, 1]
    assert "box" not in M.result.signature


def test_box_swaps(b2):
    M = matrix_power(b2, 2)
    assert M.encode((1, 0)) == 2
    assert M.result.apply("box", 2) == 1


def test_codec(cycle3):
    M = matrix_power(cycle3, 3)
    assert M.size == 27
    assert [M.decode(M.encode(t)) for t in [(2, 0, 1), (0, 0, 2)]] == [(2, 0, 1), (0, 0, 2)]
    with pytest.raises(AlgebraError):
        M.encode((1, 2))


def test_lifted_constant(b2):
    R = matrix_power(b2, 3).result
    assert decode(int(R.op("one")), 2, 3) == (1, 1, 1)


def test_reserved_names_rejected():
    A = FiniteAlgebra(2, Signature((("box", 1),)), [[1, 0]])
    with pytest.raises(SignatureError):
        matrix_power(A, 2)
    with pytest.raises(AlgebraError):
        matrix_power(A, 0)


def _naive_coords(M, sym, args):
    """Brute-force expectation from the coordinate definitions."""
    A, n = M.base, M.exponent
    xs = [M.decode(a) for a in args]
    if sym == "splice":
        return (xs[1][0],) + xs[0][1:]
    if sym == "shift":
        return xs[0][1:] + xs[0][:1]
    if sym == "arrow":
        return (xs[0][0], xs[1][0])
    if sym == "backarrow":
        return (xs[0][1], xs[1][1])
    if sym == "box":
        return (xs[0][1], xs[0][0])
    return tuple(A.apply(sym, *(x[i] for x in xs)) for i in range(n))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("make", [catalog.boolean, catalog.cycle3, lambda: catalog.empty_set(2)])
def test_operations_match_coordinate_definitions(make, n):
    M = matrix_power(make(), n)
    for sym, k in M.result.signature:
        for args in product(range(M.size), repeat=k):
            assert M.decode(M.result.apply(sym, *args)) == _naive_coords(M, sym, args)


# -- m_t ---------------------------------------------------------------------

def test_m_t_box(b2):
    M = matrix_power(b2, 2)
    assert np.array_equal(m_t_table(b2, 2, TermTuple((Var(1), Var(0)), 1)), M.result.op("box"))


def test_m_t_arrow(b2):
    M = matrix_power(b2, 2)
    assert np.array_equal(m_t_table(b2, 2, TermTuple((Var(0), Var(2)), 2)), M.result.op("arrow"))


def test_m_t_identity(b2):
    assert m_t_table(b2, 2, TermTuple((Var(0), Var(1)), 1)).tolist() == [0, 1, 2, 3]


def test_m_t_arity_errors(b2):
    with pytest.raises(AlgebraError):
        TermTuple((Var(0), Var(2)), 1)
    with pytest.raises(AlgebraError):
        m_t_table(b2, 3, TermTuple((Var(0), Var(1)), 1))


def _defining_tuples(A, n):
    """TermTuple for every basic operation of the finite signature."""
    out = {}
    for sym, k in A.signature:
        if k == 0:
            continue
        out[sym] = TermTuple(tuple(Apply(sym, tuple(Var(j * n + i) for j in range(k))) for i in range(n)), k)
    out["splice"] = TermTuple((Var(n),) + tuple(Var(i) for i in range(1, n)), 2)
    out["shift"] = TermTuple(tuple(Var((i + 1) % n) for i in range(n)), 1)
    if n == 2:
        out["arrow"] = TermTuple((Var(0), Var(2)), 2)
        out["backarrow"] = TermTuple((Var(1), Var(3)), 2)
        out["box"] = TermTuple((Var(1), Var(0)), 1)
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("make", [catalog.boolean, catalog.cycle3, catalog.lattice, lambda: catalog.empty_set(3)])
def test_basic_operations_are_m_t(make, n):
    A = make()
    M = matrix_power(A, n)
    for sym, t in _defining_tuples(A, n).items():
        assert np.array_equal(m_t_table(A, n, t), M.result.op(sym)), sym


def test_generated_box_depth_one(set3):
    M = matrix_power(set3, 2)
    assert is_generated_operation(M, M.result.op("box"), 1)


def test_backarrow_from_arrow_and_box(b2):
    M = matrix_power(b2, 2)
    # backarrow(x, y) = arrow(box x, box y) on every pair
    R = M.result
    for u, v in product(range(4), repeat=2):
        assert R.apply("backarrow", u, v) == R.apply("arrow", R.apply("box", u), R.apply("box", v))
    assert is_generated_operation(M.restrict(["arrow", "box"]), R.op("backarrow"), 2)


def test_arrow_from_splice_and_shift(set3):
    M = matrix_power(set3, 2)
    assert is_generated_operation(M.restrict(["splice", "shift"]), M.result.op("arrow"), 3)


def test_non_term_table_is_rejected(set3):
    M = matrix_power(set3, 2)
    # Over an empty base signature each coordinate of a unary term operation
    # is a projection, so <0,0> can only go to <0,0>; this table sends it to <2,2>.
    table = np.arange(9)[::-1].copy()
    assert not is_generated_operation(M, table, 2)


def test_generated_operation_shape_check(set3):
    M = matrix_power(set3, 2)
    with pytest.raises(AlgebraError):
        is_generated_operation(M, np.zeros((3,), dtype=int), 1)


def _random_tuple(rng, A, n, k, depth):
    arity = k * n
    ops = [(s, a) for s, a in A.signature]

    def term(d):
        if d == 0 or not ops or rng.random() < 0.35:
            return Var(int(rng.integers(arity)))
        s, a = ops[int(rng.integers(len(ops)))]
        return Apply(s, tuple(term(d - 1) for _ in range(a)))

    return TermTuple(tuple(term(depth) for _ in range(n)), k)


def test_sampled_m_t_generated_on_cycle_square(cycle3):
    rng = np.random.default_rng(7)
    M = matrix_power(cycle3, 2)
    for _ in range(4):
        t = _random_tuple(rng, cycle3, 2, 1, 2)
        assert is_generated_operation(M, m_t_table(cycle3, 2, t), 4)


def test_appending_m_t_keeps_congruences(cycle3):
    rng = np.random.default_rng(11)
    M = matrix_power(cycle3, 2)
    base = [p.pairs for p in con(M.result)]
    for _ in range(3):
        t = _random_tuple(rng, cycle3, 2, 2, 2)
        extended = M.result.expand("mt", m_t_table(cycle3, 2, t))
        assert [p.pairs for p in con(extended)] == base


# -- separation formula and lambda --------------------------------------------------

@pytest.mark.parametrize("A", catalog.default_catalog(), ids=lambda A: A.name)
def test_separation_formula_on_catalog(A):
    assert separation_formula_holds(matrix_power(A, 2))


def test_separation_formula_needs_square(b2):
    with pytest.raises(AlgebraError):
        separation_formula_holds(matrix_power(b2, 3))


@settings(max_examples=25, deadline=None)
@given(algebras(max_size=3))
def test_separation_formula_on_random_algebras(A):
    assert separation_formula_holds(matrix_power(A, 2))


def test_lambda_three_set(set3):
    report = verify_lambda_embedding(set3)
    assert report.ok and report.congruences == 5 and report.violations == []


def test_lambda_trivial():
    assert verify_lambda_embedding(catalog.trivial()).ok


def test_lambda_lattice(lattice2):
    report = verify_lambda_embedding(lattice2)
    assert report.ok and report.congruences == 2


@settings(max_examples=20, deadline=None)
@given(algebras(max_size=3))
def test_lambda_on_random_algebras(A):
    assert verify_lambda_embedding(A).ok
