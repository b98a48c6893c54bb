"""Finite algebras stored as row-major operation tables.

The universe of every algebra is ``{0, .., size-1}``. A table for a k-ary
symbol is a numpy array of shape ``(size,) * k``; its C-order ravel is the
flat table, so the argument tuple ``(a_1, .., a_k)`` sits at flat index
``sum(a_i * size**(k - i))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from . import config
from .errors import AlgebraError, Inconclusive, SignatureError, SizeBoundError
from .terms import Apply, Term, Var, check_term, depth

_INT = np.int64


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        syms = tuple((str(n), int(k)) for n, k in self.symbols)
        names = [n for n, _ in syms]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate symbol names in {names}")
        if any(k < 0 for _, k in syms):
            raise SignatureError("arities must be non-negative")
        object.__setattr__(self, "symbols", syms)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def arity(self, name: str) -> int:
        for n, k in self.symbols:
            if n == name:
                return k
        raise SignatureError(f"unknown symbol {name!r}")

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.symbols):
            if n == name:
                return i
        raise SignatureError(f"unknown symbol {name!r}")


def encode(coords: Sequence[int], base: int) -> int:
    code = 0
    for c in coords:
        code = code * base + int(c)
    return code


def decode(code: int, base: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        code, r = divmod(code, base)
        out.append(r)
    return tuple(reversed(out))


def check_size(size: int, what: str = "algebra") -> None:
    bound = config.universe_bound()
    if size > bound:
        raise SizeBoundError(f"{what} of size {size} exceeds the universe bound {bound}")


class FiniteAlgebra:
    """An algebra on ``{0..size-1}`` with one table per signature symbol.

    Instances are immutable: tables are stored as read-only arrays.
    ``name`` is a label for I/O and does not take part in equality.
    """

    __slots__ = ("size", "signature", "tables", "name", "_hash")

    def __init__(self, size: int, signature: Signature, tables: Sequence, name: str = ""):
        size = int(size)
        if size < 1:
            raise AlgebraError("an algebra needs at least one element")
        check_size(size)
        if not isinstance(signature, Signature):
            signature = Signature(tuple(signature))
        if len(tables) != len(signature):
            raise AlgebraError(f"{len(signature)} symbols but {len(tables)} tables")
        frozen = []
        for (sym, k), raw in zip(signature, tables):
            arr = np.asarray(raw, dtype=_INT)
            if arr.size != size**k:
                raise AlgebraError(
                    f"table for {sym!r} (arity {k}) has {arr.size} entries, expected {size**k}"
                )
            arr = arr.reshape((size,) * k).copy()
            if arr.size and (arr.min() < 0 or arr.max() >= size):
                raise AlgebraError(f"table for {sym!r} has entries outside 0..{size - 1}")
            arr.flags.writeable = False
            frozen.append(arr)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "tables", tuple(frozen))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("FiniteAlgebra is immutable")

    @classmethod
    def from_operations(cls, size: int, operations: Sequence[tuple[str, int, Sequence[int]]], name: str = ""):
        """Build from ``(symbol, arity, flat_table)`` triples."""
        sig = Signature(tuple((s, k) for s, k, _ in operations))
        return cls(size, sig, [t for _, _, t in operations], name=name)

    @classmethod
    def from_functions(cls, size: int, operations: Mapping[str, tuple[int, Callable]], name: str = ""):
        """Tabulate Python callables, e.g. ``{"and": (2, min)}``."""
        sig, tables = [], []
        for sym, (k, fn) in operations.items():
            sig.append((sym, k))
            tables.append([fn(*args) for args in product(range(size), repeat=k)])
        return cls(size, Signature(tuple(sig)), tables, name=name)

    def op(self, symbol: str) -> np.ndarray:
        return self.tables[self.signature.index(symbol)]

    def flat_table(self, symbol: str) -> list[int]:
        return self.op(symbol).ravel().tolist()

    def apply(self, symbol: str, *args: int) -> int:
        table = self.op(symbol)
        if len(args) != table.ndim:
            raise SignatureError(f"{symbol!r} takes {table.ndim} arguments, got {len(args)}")
        return int(table[tuple(args)])

    def operations(self) -> Iterator[tuple[str, int, np.ndarray]]:
        for (sym, k), table in zip(self.signature, self.tables):
            yield sym, k, table

    def reduct(self, symbols: Sequence[str], name: str | None = None) -> FiniteAlgebra:
        keep = [s for s in self.signature.names if s in set(symbols)]
        missing = set(symbols) - set(keep)
        if missing:
            raise SignatureError(f"unknown symbols {sorted(missing)}")
        sig = Signature(tuple((s, self.signature.arity(s)) for s in keep))
        return FiniteAlgebra(self.size, sig, [self.op(s) for s in keep], name=self.name if name is None else name)

    def expand(self, symbol: str, table, name: str | None = None) -> FiniteAlgebra:
        """Return a copy with one extra basic operation appended."""
        arr = np.asarray(table)
        sig = Signature(self.signature.symbols + ((symbol, arr.ndim),))
        return FiniteAlgebra(self.size, sig, [*self.tables, arr], name=self.name if name is None else name)

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (
            self.size == other.size
            and self.signature == other.signature
            and all(np.array_equal(a, b) for a, b in zip(self.tables, other.tables))
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.size, self.signature, tuple(t.tobytes() for t in self.tables)))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"FiniteAlgebra({label}size={self.size}, signature={list(self.signature.symbols)})"


def same_signature(algebras: Sequence[FiniteAlgebra]) -> Signature:
    sig = algebras[0].signature
    for i, A in enumerate(algebras[1:], 1):
        if A.signature != sig:
            raise SignatureError(
                f"algebra {i} has signature {A.signature.symbols}, expected {sig.symbols}"
            )
    return sig


# -- term evaluation ---------------------------------------------------------

def eval_term(A: FiniteAlgebra, t: Term, env: Sequence[int] | Mapping[int, int]) -> int:
    """Value of the term function of ``t`` at the assignment ``env``."""
    if isinstance(t, Var):
        try:
            value = env[t.index]
        except (IndexError, KeyError):
            raise AlgebraError(f"no value for variable x{t.index}") from None
        if not 0 <= value < A.size:
            raise AlgebraError(f"value {value} of x{t.index} is outside the universe")
        return int(value)
    if t.symbol not in A.signature:
        raise SignatureError(f"unknown symbol {t.symbol!r}")
    table = A.op(t.symbol)
    if table.ndim != len(t.args):
        raise SignatureError(f"{t.symbol!r} has arity {table.ndim}, applied to {len(t.args)} arguments")
    return int(table[tuple(eval_term(A, a, env) for a in t.args)])


def term_values(A: FiniteAlgebra, t: Term, env: Mapping[int, np.ndarray] | Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate ``t`` pointwise over arrays of assignments.

    Every variable's value is an integer array; all arrays share a shape and
    the result has that shape too.
    """
    values = list(env.values()) if isinstance(env, Mapping) else list(env)
    shape = np.broadcast_shapes(*(np.shape(v) for v in values)) if values else ()
    cache: dict[Term, np.ndarray] = {}

    def go(s: Term) -> np.ndarray:
        hit = cache.get(s)
        if hit is not None:
            return hit
        if isinstance(s, Var):
            try:
                out = np.broadcast_to(np.asarray(env[s.index], dtype=_INT), shape)
            except (IndexError, KeyError):
                raise AlgebraError(f"no value for variable x{s.index}") from None
        else:
            if s.symbol not in A.signature:
                raise SignatureError(f"unknown symbol {s.symbol!r}")
            table = A.op(s.symbol)
            if table.ndim != len(s.args):
                raise SignatureError(f"{s.symbol!r} has arity {table.ndim}, applied to {len(s.args)} arguments")
            if not s.args:
                out = np.full(shape, table[()], dtype=_INT)
            else:
                out = table[tuple(go(a) for a in s.args)]
        cache[s] = out
        return out

    return go(t)


def assignment_grid(size: int, arity: int) -> list[np.ndarray]:
    """Coordinate arrays enumerating ``size**arity`` assignments row-major."""
    if arity == 0:
        return []
    grids = np.indices((size,) * arity, dtype=_INT).reshape(arity, -1)
    return list(grids)


def term_function(A: FiniteAlgebra, t: Term, arity: int) -> np.ndarray:
    """Flat row-major table of the ``arity``-ary term function of ``t``."""
    if any(i >= arity for i in _vars(t)):
        raise AlgebraError(f"term {t} uses a variable outside x0..x{arity - 1}")
    grid = assignment_grid(A.size, arity)
    if not grid:
        return np.asarray([eval_term(A, t, ())], dtype=_INT)
    return np.ascontiguousarray(term_values(A, t, grid))


def _vars(t: Term):
    if isinstance(t, Var):
        yield t.index
    else:
        for a in t.args:
            yield from _vars(a)


# -- constructions -----------------------------------------------------------

def direct_power(A: FiniteAlgebra, k: int) -> FiniteAlgebra:
    """``A**k`` with coordinatewise operations and row-major tuple codes."""
    if k < 1:
        raise AlgebraError("exponent must be at least 1")
    N = A.size**k
    check_size(N, f"direct power {A.size}^{k}")
    coords = np.indices((A.size,) * k, dtype=_INT).reshape(k, N)
    weights = A.size ** np.arange(k - 1, -1, -1, dtype=_INT)
    tables = []
    for _, r, table in A.operations():
        check_size(N**r, f"table of arity {r} over {N} elements")
        out = np.zeros((N,) * r, dtype=_INT)
        for i in range(k):
            args = tuple(coords[i].reshape((1,) * j + (N,) + (1,) * (r - j - 1)) for j in range(r))
            out = out + table[args] * weights[i]
        tables.append(out)
    return FiniteAlgebra(N, A.signature, tables, name=f"{A.name}^{k}" if A.name else "")


class _Closure(NamedTuple):
    elements: list
    origin: list  # None for seeds, else (symbol, argument indices)
    results: dict  # symbol -> {argument indices: result index}


def _close(seeds: Sequence, ops, bound: int) -> _Closure:
    """Semi-naive closure of ``seeds`` under ``ops``.

    ``ops`` yields ``(symbol, arity, fn)`` with ``fn`` taking a tuple of
    elements. Every argument tuple over the final set is applied exactly
    once, so ``results`` is a complete operation table.
    """
    elements: list = []
    index: dict = {}
    origin: list = []
    results: dict = {sym: {} for sym, _, _ in ops}

    def add(e, how):
        i = index.get(e)
        if i is None:
            i = index[e] = len(elements)
            elements.append(e)
            origin.append(how)
            if len(elements) > bound:
                raise SizeBoundError(f"generated subalgebra exceeds the bound {bound}")
        return i

    for s in seeds:
        add(s, None)
    for sym, arity, fn in ops:
        if arity == 0:
            results[sym][()] = add(fn(()), (sym, ()))
    done = 0
    while done < len(elements):
        start, end = done, len(elements)
        for sym, arity, fn in ops:
            if arity == 0:
                continue
            for p in range(arity):
                ranges = [range(start)] * p + [range(start, end)] + [range(end)] * (arity - p - 1)
                for combo in product(*ranges):
                    results[sym][combo] = add(fn(tuple(elements[i] for i in combo)), (sym, combo))
        done = end
    return _Closure(elements, origin, results)


def _closure_tables(closure: _Closure, signature: Signature) -> list[np.ndarray]:
    m = len(closure.elements)
    tables = []
    for sym, k in signature:
        table = np.zeros((m,) * k, dtype=_INT)
        for combo, r in closure.results[sym].items():
            table[combo] = r
        tables.append(table)
    return tables


class Subalgebra(NamedTuple):
    universe: tuple[int, ...]
    algebra: FiniteAlgebra
    embedding: dict[int, int]  # element of the parent -> element of ``algebra``


def generated_subalgebra(A: FiniteAlgebra, seeds) -> Subalgebra:
    """Least subuniverse containing ``seeds`` (and all constants), relabelled in order."""
    seeds = sorted(set(int(s) for s in seeds))
    if any(not 0 <= s < A.size for s in seeds):
        raise AlgebraError(f"seeds {seeds} outside the universe of size {A.size}")
    if not seeds and not any(k == 0 for _, k in A.signature):
        raise AlgebraError("empty seed set generates the empty subuniverse")
    ops = [(sym, k, (lambda args, T=table: int(T[args]))) for sym, k, table in A.operations()]
    closure = _close(seeds, ops, A.size)
    universe = tuple(sorted(closure.elements))
    relabel = np.full(A.size, -1, dtype=_INT)
    relabel[list(universe)] = np.arange(len(universe))
    sub = np.asarray(universe, dtype=_INT)
    tables = []
    for _, k, table in A.operations():
        tables.append(relabel[table[np.ix_(*[sub] * k)]] if k else relabel[table])
    B = FiniteAlgebra(len(universe), A.signature, tables, name=f"Sg({A.name})" if A.name else "")
    return Subalgebra(universe, B, {a: int(relabel[a]) for a in universe})


@dataclass(frozen=True)
class FreeAlgebra:
    """Free algebra on two generators in the variety generated by ``base``.

    Element ``i`` is the binary term function ``functions[i]`` of ``base``,
    a flat row-major table over ``base``'s universe squared, and ``terms[i]``
    is a term in ``x0, x1`` inducing it.
    """

    algebra: FiniteAlgebra
    gen_x: int
    gen_y: int
    functions: np.ndarray
    terms: tuple[Term, ...]
    base: FiniteAlgebra

    def __iter__(self):
        return iter((self.algebra, self.gen_x, self.gen_y))

    def element_of(self, table) -> int:
        key = tuple(np.asarray(table, dtype=_INT).ravel().tolist())
        for i, row in enumerate(self.functions):
            if tuple(row.tolist()) == key:
                return i
        raise AlgebraError("table is not a binary term function of the base algebra")


def free_algebra_2gen(A: FiniteAlgebra) -> FreeAlgebra:
    """Subalgebra of ``A**(A x A)`` generated by the two projections.

    Built by closing the projections under coordinatewise operations; the
    full power is never materialised.
    """
    gx, gy = (tuple(g.tolist()) for g in assignment_grid(A.size, 2))
    ops = []
    for sym, k, table in A.operations():
        if k == 0:
            const = tuple([int(table[()])] * (A.size * A.size))
            ops.append((sym, 0, lambda args, c=const: c))
        else:
            ops.append((sym, k, lambda args, T=table: tuple(T[tuple(np.asarray(a) for a in args)].tolist())))
    closure = _close([gx, gy], ops, config.universe_bound())
    F = FiniteAlgebra(
        len(closure.elements), A.signature, _closure_tables(closure, A.signature),
        name=f"F2({A.name})" if A.name else "",
    )
    terms: list[Term] = []
    gens = {gx: Var(0), gy: Var(1)}
    for e, how in zip(closure.elements, closure.origin):
        if how is None:
            terms.append(gens[e])
        else:
            sym, combo = how
            terms.append(Apply(sym, tuple(terms[i] for i in combo)))
    functions = np.asarray(closure.elements, dtype=_INT)
    functions.flags.writeable = False
    idx = {e: i for i, e in enumerate(closure.elements)}
    return FreeAlgebra(F, idx[gx], idx[gy], functions, tuple(terms), A)


def is_idempotent(A: FiniteAlgebra) -> bool:
    """Every basic operation fixes constant tuples.

    A nullary symbol passes only on a one-element universe: ``c ≈ x`` cannot
    hold for every ``x`` once there are two elements.
    """
    diag = np.arange(A.size)
    for _, k, table in A.operations():
        if k == 0:
            if A.size > 1:
                return False
        elif not np.array_equal(table[(diag,) * k], diag):
            return False
    return True


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h) -> bool:
    if A.signature != B.signature:
        raise SignatureError("homomorphisms need a shared signature")
    if isinstance(h, Mapping):
        h = [h[a] for a in range(A.size)]
    h = np.asarray(h, dtype=_INT)
    if h.shape != (A.size,) or h.min() < 0 or h.max() >= B.size:
        raise AlgebraError("map must send every element of A into B")
    for (_, k, ta), tb in zip(A.operations(), B.tables):
        lhs = h[ta]
        rhs = tb[np.ix_(*[h] * k)] if k else tb
        if not np.array_equal(lhs, rhs):
            return False
    return True


# -- clone enumeration -------------------------------------------------------

def iter_term_functions(
    A: FiniteAlgebra, arity: int, depth_bound: int, budget: int | None = None
) -> Iterator[tuple[Term, np.ndarray]]:
    """Yield ``(term, flat table)`` for each new term function, canonically.

    Level ``d`` applies the symbols in signature order to argument tuples of
    earlier representatives, taken lexicographically, keeping only tuples
    that reach depth ``d``. Raises ``Inconclusive`` once more than ``budget``
    candidate terms have been evaluated.
    """
    if arity < 1:
        raise AlgebraError("arity must be at least 1")
    if depth_bound < 0:
        raise AlgebraError("depth must be non-negative")
    budget = config.DEFAULT_ENUMERATION_BUDGET if budget is None else budget
    grid = assignment_grid(A.size, arity)
    check_size(len(grid[0]), f"term-function table over {A.size}^{arity}")
    seen: set[bytes] = set()
    reps: list[tuple[Term, np.ndarray, int]] = []
    spent = 0

    def offer(t: Term, values: np.ndarray, d: int):
        key = values.tobytes()
        if key in seen:
            return None
        seen.add(key)
        values = np.ascontiguousarray(values)
        values.flags.writeable = False
        reps.append((t, values, d))
        return t, values

    for i in range(arity):
        got = offer(Var(i), grid[i], 0)
        if got:
            yield got
    for d in range(1, depth_bound + 1):
        before = len(reps)
        pool = list(reps)
        for sym, k, table in A.operations():
            if k == 0:
                if d == 1:
                    spent += 1
                    got = offer(Apply(sym), np.full(len(grid[0]), table[()], dtype=_INT), 1)
                    if got:
                        yield got
                continue
            for combo in product(range(len(pool)), repeat=k):
                if max(pool[i][2] for i in combo) != d - 1:
                    continue
                spent += 1
                if spent > budget:
                    raise Inconclusive(f"term enumeration exceeded its budget of {budget} candidates")
                values = table[tuple(pool[i][1] for i in combo)]
                got = offer(Apply(sym, tuple(pool[i][0] for i in combo)), values, d)
                if got:
                    yield got
        if len(reps) == before:
            # nothing new at this depth, so nothing new at any deeper one
            return


def distinct_term_functions(
    A: FiniteAlgebra, arity: int, depth_bound: int, budget: int | None = None
) -> list[tuple[Term, np.ndarray]]:
    return list(iter_term_functions(A, arity, depth_bound, budget))


def validate_term(A: FiniteAlgebra, t: Term, arity: int | None = None) -> None:
    check_term(t, A.signature)
    if arity is not None and any(i >= arity for i in _vars(t)):
        raise AlgebraError(f"term {t} uses a variable outside x0..x{arity - 1}")


__all__ = [
    "Signature", "FiniteAlgebra", "FreeAlgebra", "Subalgebra", "encode", "decode",
    "eval_term", "term_values", "term_function", "assignment_grid", "direct_power",
    "generated_subalgebra", "free_algebra_2gen", "is_idempotent", "is_homomorphism",
    "iter_term_functions", "distinct_term_functions", "same_signature", "validate_term",
    "depth",
]
