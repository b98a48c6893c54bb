"""Binary relations, partitions, congruence generation and congruence lattices."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra
from .config import DEFAULT_CON_BOUND
from .errors import AlgebraError, NotDerivable, SizeBoundError
from .terms import Polynomial

Pair = tuple[int, int]


@dataclass(frozen=True)
class BinRel:
    size: int
    pairs: frozenset[Pair]

    def __post_init__(self):
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        for a, b in pairs:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise AlgebraError(f"pair {(a, b)} outside a universe of size {self.size}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def identity(cls, n: int) -> BinRel:
        return cls(n, frozenset((a, a) for a in range(n)))

    @classmethod
    def full(cls, n: int) -> BinRel:
        return cls(n, frozenset((a, b) for a in range(n) for b in range(n)))

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> BinRel:
        rows, cols = np.nonzero(m)
        return cls(m.shape[0], frozenset(zip(rows.tolist(), cols.tolist())))

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        if self.pairs:
            idx = np.asarray(sorted(self.pairs))
            m[idx[:, 0], idx[:, 1]] = True
        return m

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __le__(self, other: BinRel) -> bool:
        return self.pairs <= other.pairs

    def is_equivalence(self) -> bool:
        m = self.matrix()
        if not m.diagonal().all() or not (m == m.T).all():
            return False
        return not ((m.astype(np.int64) @ m.astype(np.int64) > 0) & ~m).any()


@dataclass(frozen=True)
class Partition:
    """An equivalence relation, stored as each element's least block-mate."""

    size: int
    block_of: tuple[int, ...]

    def __post_init__(self):
        b = tuple(int(x) for x in self.block_of)
        if len(b) != self.size:
            raise AlgebraError("block_of must list every element")
        for x, r in enumerate(b):
            if r > x or b[r] != r:
                raise AlgebraError(f"block_of is not canonical at element {x}")
        object.__setattr__(self, "block_of", b)

    @classmethod
    def identity(cls, n: int) -> Partition:
        return cls(n, tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> Partition:
        return cls(n, (0,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Pair]) -> Partition:
        """Equivalence closure of ``pairs``."""
        uf = _UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return uf.partition()

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        pairs = []
        for block in blocks:
            block = list(block)
            pairs += [(block[0], x) for x in block[1:]]
        return cls.from_pairs(n, pairs)

    @classmethod
    def from_relation(cls, rel: BinRel) -> Partition:
        if not rel.is_equivalence():
            raise AlgebraError("relation is not an equivalence")
        return cls.from_pairs(rel.size, rel.pairs)

    @cached_property
    def pairs(self) -> frozenset[Pair]:
        groups = self.blocks()
        return frozenset((a, b) for g in groups for a in g for b in g)

    def relation(self) -> BinRel:
        return BinRel(self.size, self.pairs)

    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.block_of):
            out.setdefault(r, []).append(x)
        return [tuple(v) for v in out.values()]

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.block_of[a] == self.block_of[b]

    def __le__(self, other: Partition) -> bool:
        return all(other.block_of[x] == other.block_of[r] for x, r in enumerate(self.block_of))

    def meet(self, other: Partition) -> Partition:
        seen: dict[tuple[int, int], int] = {}
        out = []
        for x in range(self.size):
            out.append(seen.setdefault((self.block_of[x], other.block_of[x]), x))
        return Partition(self.size, tuple(out))

    def join(self, other: Partition) -> Partition:
        """Equivalence join; for two congruences this is again a congruence."""
        uf = _UnionFind(self.size)
        for x in range(self.size):
            uf.union(x, self.block_of[x])
            uf.union(x, other.block_of[x])
        return uf.partition()

    def sort_key(self):
        return (len(self.pairs), self.block_of)

    def __str__(self) -> str:
        return "|" + "|".join(" ".join(map(str, b)) for b in self.blocks()) + "|"


Relation = Union[BinRel, Partition]


def as_relation(r: Relation) -> BinRel:
    return r.relation() if isinstance(r, Partition) else r


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def partition(self) -> Partition:
        n = len(self.parent)
        least: dict[int, int] = {}
        for x in range(n):
            least.setdefault(self.find(x), x)
        return Partition(n, tuple(least[self.find(x)] for x in range(n)))


# -- congruence generation ---------------------------------------------------

@dataclass(frozen=True)
class _Edge:
    u: int
    v: int
    generator: Pair
    witness: Polynomial  # witness(generator[0]) == u, witness(generator[1]) == v


def _check_pairs(A: FiniteAlgebra, pairs) -> list[Pair]:
    out = sorted({(int(a), int(b)) for a, b in pairs})
    for a, b in out:
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise AlgebraError(f"pair {(a, b)} outside the universe of size {A.size}")
    return out


def _generate(A: FiniteAlgebra, seeds: Sequence[Pair], record: bool):
    """Union-find closure under unary translations of merged pairs.

    Each union is logged as an edge; when ``record`` is set the edge carries
    a unary polynomial sending its generating seed pair onto it.
    """
    uf = _UnionFind(A.size)
    edges: list[_Edge] = []
    queue: deque = deque()
    for e, g in seeds:
        if uf.union(e, g):
            edge = _Edge(e, g, (e, g), Polynomial.identity()) if record else None
            edges.append(edge)
            queue.append((e, g, edge))
    ops = [(sym, k, table) for sym, k, table in A.operations() if k > 0]
    while queue:
        a, b, parent = queue.popleft()
        for sym, k, table in ops:
            for p in range(k):
                ra = np.take(table, a, axis=p).ravel()
                rb = np.take(table, b, axis=p).ravel()
                for idx in np.flatnonzero(ra != rb).tolist():
                    u, v = int(ra[idx]), int(rb[idx])
                    if not uf.union(u, v):
                        continue
                    edge = None
                    if record:
                        fillers = np.unravel_index(idx, (A.size,) * (k - 1)) if k > 1 else ()
                        poly = parent.witness.translate(sym, p, [int(f) for f in fillers])
                        edge = _Edge(u, v, parent.generator, poly)
                    edges.append(edge)
                    queue.append((u, v, edge))
    return uf, edges


def theta(A: FiniteAlgebra, seeds: Iterable[Pair]) -> Partition:
    """Least congruence of ``A`` containing ``seeds``."""
    uf, _ = _generate(A, _check_pairs(A, seeds), record=False)
    return uf.partition()


@dataclass(frozen=True)
class ChainStep:
    source: int
    target: int
    generator: Pair
    direction: str  # "forward" or "reverse"
    witness: Polynomial

    def oriented(self) -> Pair:
        e, g = self.generator
        return (e, g) if self.direction == "forward" else (g, e)


@dataclass(frozen=True)
class DerivationChain:
    endpoints: Pair
    steps: tuple[ChainStep, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.steps)

    def replay(self, A: FiniteAlgebra, seeds: Iterable[Pair] | None = None) -> bool:
        """Re-evaluate every witness; optionally require generators among ``seeds``."""
        allowed = None if seeds is None else set(map(tuple, seeds))
        at = self.endpoints[0]
        for s in self.steps:
            if s.direction not in ("forward", "reverse"):
                return False
            if allowed is not None and s.generator not in allowed:
                return False
            if len(s.witness.free_variables - {0}) or s.source != at:
                return False
            e, g = s.oriented()
            if s.witness(A, e) != s.source or s.witness(A, g) != s.target:
                return False
            at = s.target
        return at == self.endpoints[1]


def extract_chain(A: FiniteAlgebra, seeds: Iterable[Pair], a: int, c: int) -> DerivationChain:
    """A chain of polynomial images of seed pairs linking ``a`` to ``c``."""
    seeds = _check_pairs(A, seeds)
    if not (0 <= a < A.size and 0 <= c < A.size):
        raise AlgebraError("query elements outside the universe")
    if a == c:
        return DerivationChain((a, c))
    _, edges = _generate(A, seeds, record=True)
    adjacent: dict[int, list[tuple[int, _Edge, bool]]] = {}
    for edge in edges:
        adjacent.setdefault(edge.u, []).append((edge.v, edge, True))
        adjacent.setdefault(edge.v, []).append((edge.u, edge, False))
    back: dict[int, tuple[int, _Edge, bool]] = {a: None}
    todo = deque([a])
    while todo and c not in back:
        x = todo.popleft()
        for y, edge, fwd in adjacent.get(x, ()):
            if y not in back:
                back[y] = (x, edge, fwd)
                todo.append(y)
    if c not in back:
        raise NotDerivable(f"{(a, c)} is not in the congruence generated by {seeds}")
    steps = []
    x = c
    while back[x] is not None:
        prev, edge, fwd = back[x]
        steps.append(ChainStep(prev, x, edge.generator, "forward" if fwd else "reverse", edge.witness))
        x = prev
    return DerivationChain((a, c), tuple(reversed(steps)))


def is_congruence(A: FiniteAlgebra, rel: Relation) -> bool:
    rel = as_relation(rel)
    if rel.size != A.size or not rel.is_equivalence():
        return False
    block = np.asarray(Partition.from_pairs(A.size, rel.pairs).block_of)
    movers = [x for x in range(A.size) if block[x] != x]
    for _, k, table in A.operations():
        for p in range(k):
            for x in movers:
                if not np.array_equal(block[np.take(table, x, axis=p)], block[np.take(table, block[x], axis=p)]):
                    return False
    return True


# -- lattices ----------------------------------------------------------------

@dataclass(frozen=True)
class ConLattice:
    congruences: tuple[Partition, ...]
    leq: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __getitem__(self, i) -> Partition:
        return self.congruences[i]

    def index(self, p: Partition) -> int:
        return self.congruences.index(p)

    @property
    def bottom(self) -> Partition:
        return self.congruences[0]

    @property
    def top(self) -> Partition:
        return self.congruences[-1]

    def meet(self, i: int, j: int) -> int:
        return self.index(self.congruences[i].meet(self.congruences[j]))

    def join(self, i: int, j: int) -> int:
        return self.index(self.congruences[i].join(self.congruences[j]))

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(lower, upper)``."""
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i, j] and not any(
                    k not in (i, j) and self.leq[i, k] and self.leq[k, j] for k in range(n)
                ):
                    out.append((i, j))
        return out


def con(A: FiniteAlgebra, bound: int = DEFAULT_CON_BOUND) -> ConLattice:
    """All congruences: principal ones closed under joins, plus the diagonal."""
    if A.size > bound:
        raise SizeBoundError(f"Con() is limited to universes of size {bound}, got {A.size}")
    found = {Partition.identity(A.size)}
    for a in range(A.size):
        for b in range(a + 1, A.size):
            found.add(theta(A, [(a, b)]))
    frontier = list(found)
    while frontier:
        fresh = []
        current = list(found)
        for p in frontier:
            for q in current:
                # joins of congruences are plain equivalence joins
                j = p.join(q)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
                    current.append(j)
        frontier = fresh
    ordered = tuple(sorted(found, key=Partition.sort_key))
    leq = np.array([[p <= q for q in ordered] for p in ordered], dtype=bool)
    return ConLattice(ordered, leq)


# -- Rel(A) ------------------------------------------------------------------

def rel_combine(op: str, A: FiniteAlgebra, alpha: Relation, beta: Relation) -> BinRel:
    """Meet, join or relational product in the relation algebra of ``A``.

    Join is the congruence generated by the union and accepts arbitrary
    relations, not just congruences.
    """
    alpha, beta = as_relation(alpha), as_relation(beta)
    if alpha.size != A.size or beta.size != A.size:
        raise AlgebraError("relations must live on the algebra's universe")
    if op == "meet":
        return BinRel(A.size, alpha.pairs & beta.pairs)
    if op == "compose":
        prod = alpha.matrix().astype(np.int64) @ beta.matrix().astype(np.int64)
        return BinRel.from_matrix(prod > 0)
    if op == "join":
        return theta(A, alpha.pairs | beta.pairs).relation()
    raise AlgebraError(f"unknown relation operation {op!r}")


def tensor(alpha: Relation, beta: Relation) -> BinRel:
    """Pairs of pairs related coordinatewise; tuple ``(a, b)`` is coded ``a*n + b``."""
    alpha, beta = as_relation(alpha), as_relation(beta)
    if alpha.size != beta.size:
        raise AlgebraError("tensor needs relations on the same universe")
    n = alpha.size
    return BinRel(
        n * n,
        frozenset((a * n + b, c * n + d) for a, c in alpha.pairs for b, d in beta.pairs),
    )


def lam(alpha: Relation) -> BinRel:
    """The diagonal tensor ``alpha ⊗ alpha``."""
    return tensor(alpha, alpha)
