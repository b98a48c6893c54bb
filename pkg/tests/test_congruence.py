from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algcalc import catalog
from algcalc.congruence import (
    BinRel,
    Partition,
    con,
    extract_chain,
    is_congruence,
    lam,
    rel_combine,
    tensor,
    theta,
)
from algcalc.errors import AlgebraError, NotDerivable, SizeBoundError

from conftest import algebras
from oracles import brute_congruences, brute_theta, compose, equivalence_closure


def test_theta_on_set_is_equivalence_closure(set3):
    assert theta(set3, [(0, 1)]).blocks() == [(0, 1), (2,)]


def test_theta_on_chain_lattice():
    L3 = catalog.lattice(3)
    assert theta(L3, [(0, 2)]) == Partition.full(3)
    assert theta(L3, [(0, 1)]).blocks() == [(0, 1), (2,)]


def test_theta_on_cycle_is_everything(cycle3):
    assert theta(cycle3, [(0, 1)]) == Partition.full(3)


def test_theta_of_nothing_is_diagonal(b2):
    assert theta(b2, []) == Partition.identity(2)


def test_theta_rejects_bad_pairs(set3):
    with pytest.raises(AlgebraError):
        theta(set3, [(0, 3)])


@settings(max_examples=80, deadline=None)
@given(algebras(), st.data())
def test_theta_matches_brute_force(A, data):
    seeds = data.draw(st.lists(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)), max_size=3))
    assert theta(A, seeds).pairs == brute_theta(A, seeds)


# -- Partition ---------------------------------------------------------------

def test_partition_canonical_form():
    p = Partition.from_blocks(4, [[3, 1], [2], [0]])
    assert p.block_of == (0, 1, 2, 1)
    assert str(p) == "|0|1 3|2|"
    assert p == Partition.from_pairs(4, [(3, 1)])


def test_partition_lattice_operations():
    a = Partition.from_blocks(4, [[0, 1], [2, 3]])
    b = Partition.from_blocks(4, [[1, 2], [0], [3]])
    assert a.join(b) == Partition.full(4)
    assert a.meet(b) == Partition.identity(4)
    assert a.meet(a) == a and a <= a.join(b)


def test_partition_rejects_non_equivalence():
    with pytest.raises(AlgebraError):
        Partition.from_relation(BinRel(2, frozenset({(0, 1)})))


# -- Con(A) ------------------------------------------------------------------

def test_con_two_element_lattice(lattice2):
    assert [str(p) for p in con(lattice2)] == ["|0|1|", "|0 1|"]


def test_con_set3_order(set3):
    L = con(set3)
    assert [str(p) for p in L] == ["|0|1|2|", "|0 1|2|", "|0 2|1|", "|0|1 2|", "|0 1 2|"]
    assert L.bottom == Partition.identity(3) and L.top == Partition.full(3)
    assert sorted(L.covers()) == [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]


def test_con_simple_cycle(cycle3):
    assert len(con(cycle3)) == 2


def test_con_bound(set3):
    with pytest.raises(SizeBoundError):
        con(catalog.empty_set(5), bound=4)


@settings(max_examples=60, deadline=None)
@given(algebras())
def test_con_matches_brute_force(A):
    got = [p.pairs for p in con(A)]
    assert len(got) == len(set(got))
    assert set(got) == set(brute_congruences(A))


@settings(max_examples=40, deadline=None)
@given(algebras(max_size=4))
def test_con_is_a_lattice(A):
    L = con(A)
    for i, j in product(range(len(L)), repeat=2):
        m, jn = L.meet(i, j), L.join(i, j)
        assert L.leq[m, i] and L.leq[m, j] and L.leq[i, jn] and L.leq[j, jn]
        assert L[jn].pairs == theta(A, L[i].pairs | L[j].pairs).pairs


@settings(max_examples=60, deadline=None)
@given(algebras(), st.data())
def test_is_congruence_matches_brute_force(A, data):
    pairs = data.draw(st.sets(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)), max_size=6))
    rel = equivalence_closure(A.size, pairs)
    assert is_congruence(A, BinRel(A.size, rel)) == (rel in brute_congruences(A))


def test_non_equivalence_is_not_congruence(set3):
    assert not is_congruence(set3, BinRel(3, frozenset({(0, 0), (1, 1), (2, 2), (0, 1)})))


# -- chains ------------------------------------------------------------------

def test_chain_on_chain_lattice():
    L3 = catalog.lattice(3)
    chain = extract_chain(L3, [(0, 1)], 0, 1)
    assert chain.replay(L3, [(0, 1)])
    assert chain.endpoints == (0, 1)


def test_chain_trivial(set3):
    assert len(extract_chain(set3, [], 2, 2)) == 0


def test_chain_not_derivable(set3):
    with pytest.raises(NotDerivable):
        extract_chain(set3, [(0, 1)], 0, 2)


@settings(max_examples=80, deadline=None)
@given(algebras(), st.data())
def test_chain_replays(A, data):
    n = A.size
    seeds = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=3))
    closure = brute_theta(A, seeds)
    a, c = data.draw(st.sampled_from(sorted(closure)))
    chain = extract_chain(A, seeds, a, c)
    assert chain.replay(A, seeds)
    assert chain.endpoints == (a, c)


def test_tampered_chain_fails_replay():
    L3 = catalog.lattice(3)
    chain = extract_chain(L3, [(1, 2)], 1, 2)
    assert len(chain) == 1
    from dataclasses import replace

    step = replace(chain.steps[0], target=0)
    bad = replace(chain, steps=(step,), endpoints=(1, 0))
    assert not bad.replay(L3)
    assert not chain.replay(L3, [(0, 1)])


# -- Rel(A) and tensors ------------------------------------------------------

def test_compose_example(set3):
    a = Partition.from_blocks(3, [[0, 1], [2]])
    b = Partition.from_blocks(3, [[1, 2], [0]])
    got = rel_combine("compose", set3, a, b)
    assert (0, 2) in got and (2, 0) not in got
    assert got.pairs == compose(a.pairs, b.pairs)


def test_relation_join_on_non_congruence(lattice2):
    r = BinRel(2, frozenset({(0, 1)}))
    assert rel_combine("join", lattice2, r, BinRel.identity(2)) == BinRel.full(2)


def test_unknown_relation_operation(set3):
    with pytest.raises(AlgebraError):
        rel_combine("union", set3, BinRel.identity(3), BinRel.identity(3))


@settings(max_examples=50, deadline=None)
@given(algebras(max_size=3), st.data())
def test_rel_operations_match_oracle(A, data):
    n = A.size
    rels = st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5)
    r, s = (BinRel(n, frozenset(data.draw(rels))) for _ in range(2))
    assert rel_combine("meet", A, r, s).pairs == r.pairs & s.pairs
    assert rel_combine("compose", A, r, s).pairs == compose(r.pairs, s.pairs)
    assert rel_combine("join", A, r, s).pairs == brute_theta(A, r.pairs | s.pairs)


def test_tensor_coding():
    a = Partition.from_blocks(2, [[0, 1]])
    t = tensor(a, BinRel.identity(2))
    assert t.size == 4
    # (0,1) ~ (1,1): codes 1 and 3
    assert (1, 3) in t and (0, 1) not in t


def test_lambda_of_full_and_identity():
    assert lam(Partition.full(3)) == BinRel.full(9)
    assert lam(Partition.identity(3)) == BinRel.identity(9)
