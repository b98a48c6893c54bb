"""Matrix powers ``A^[n]`` presented by a finite generating set of operations.

The full matrix power has one basic operation ``m_t`` for every tuple of
``k*n``-ary terms. Here it is presented by the coordinatewise lifts of the
base operations together with ``splice`` and ``shift``, which between them
generate every ``m_t``. For ``n = 2`` the three operations ``arrow``,
``backarrow`` and ``box`` used for the transformer witness are added under
their own names.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Signature,
    check_size,
    decode,
    encode,
    iter_term_functions,
    term_function,
)
from .congruence import BinRel, con, is_congruence, lam, rel_combine
from .errors import AlgebraError, SignatureError
from .terms import Term, check_term, max_var

_INT = np.int64

STRUCTURAL = ("splice", "shift")
SQUARE_ONLY = ("arrow", "backarrow", "box")


@dataclass(frozen=True)
class MatrixPowerAlgebra:
    base: FiniteAlgebra
    exponent: int
    result: FiniteAlgebra

    @property
    def size(self) -> int:
        return self.result.size

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.exponent:
            raise AlgebraError(f"expected a {self.exponent}-tuple, got {tuple(coords)}")
        return encode(coords, self.base.size)

    def decode(self, code: int) -> tuple[int, ...]:
        return decode(code, self.base.size, self.exponent)

    def restrict(self, symbols: Sequence[str]) -> MatrixPowerAlgebra:
        """Same universe, only the listed basic operations."""
        return MatrixPowerAlgebra(self.base, self.exponent, self.result.reduct(symbols))


@dataclass(frozen=True)
class TermTuple:
    """``n`` terms of arity ``k*n`` defining the operation ``m_t`` of arity ``k``."""

    terms: tuple[Term, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.k < 1:
            raise AlgebraError("m_t needs a positive k")
        bound = self.k * len(self.terms)
        for t in self.terms:
            if max_var(t) >= bound:
                raise AlgebraError(f"term {t} uses a variable beyond arity {bound}")

    @property
    def n(self) -> int:
        return len(self.terms)


def _coords(base: int, n: int) -> np.ndarray:
    return np.indices((base,) * n, dtype=_INT).reshape(n, -1)


def _assemble(coord_values: Sequence[np.ndarray], base: int) -> np.ndarray:
    out = np.zeros_like(coord_values[0])
    for v in coord_values:
        out = out * base + v
    return out


def matrix_power(A: FiniteAlgebra, n: int) -> MatrixPowerAlgebra:
    """``A^[n]`` on row-major coded ``n``-tuples."""
    if n < 1:
        raise AlgebraError("matrix powers need n >= 1")
    extra = STRUCTURAL + (SQUARE_ONLY if n == 2 else ())
    clash = set(extra) & set(A.signature.names)
    if clash:
        raise SignatureError(f"base signature already uses the reserved names {sorted(clash)}")
    N = A.size**n
    check_size(N, f"matrix power {A.size}^[{n}]")
    c = _coords(A.size, n)  # c[i][x] is coordinate i of tuple x
    sym, tables = [], []

    for name, k, table in A.operations():
        check_size(N**k, f"lifted table of arity {k}")
        if k == 0:
            out = np.asarray(encode([int(table[()])] * n, A.size), dtype=_INT)
        else:
            parts = []
            for i in range(n):
                args = tuple(c[i].reshape((1,) * j + (N,) + (1,) * (k - j - 1)) for j in range(k))
                parts.append(table[args])
            out = _assemble(parts, A.size)
        sym.append((name, k))
        tables.append(out)

    x, y = c[:, :, None], c[:, None, :]
    xs = [np.broadcast_to(x[i], (N, N)) for i in range(n)]
    ys = [np.broadcast_to(y[i], (N, N)) for i in range(n)]
    sym.append(("splice", 2))
    tables.append(_assemble([ys[0], *xs[1:]], A.size))
    sym.append(("shift", 1))
    tables.append(_assemble([*c[1:], c[0]], A.size))
    if n == 2:
        sym += [("arrow", 2), ("backarrow", 2), ("box", 1)]
        tables.append(_assemble([xs[0], ys[0]], A.size))
        tables.append(_assemble([xs[1], ys[1]], A.size))
        tables.append(_assemble([c[1], c[0]], A.size))

    name = f"{A.name}^[{n}]" if A.name else ""
    result = FiniteAlgebra(N, Signature(tuple(sym)), tables, name=name)
    return MatrixPowerAlgebra(A, n, result)


def m_t_table(A: FiniteAlgebra, n: int, t: TermTuple) -> np.ndarray:
    """Table of ``m_t`` as an array of shape ``(|A|**n,) * k``.

    Because tuple codes are row-major, the flat index of the concatenated
    coordinates of ``k`` tuples equals the flat index of their codes, so each
    component is one term-function table.
    """
    if t.n != n:
        raise AlgebraError(f"a term tuple for A^[{n}] needs {n} terms, got {t.n}")
    for term in t.terms:
        check_term(term, A.signature)
    arity = t.k * n
    check_size(A.size**arity, f"term table of arity {arity}")
    parts = [term_function(A, term, arity) for term in t.terms]
    N = A.size**n
    return _assemble(parts, A.size).reshape((N,) * t.k)


def is_generated_operation(M, table, depth: int, budget: int | None = None) -> bool:
    """Whether some term of depth <= ``depth`` over ``M``'s signature induces ``table``.

    ``M`` is a ``MatrixPowerAlgebra`` or a plain ``FiniteAlgebra``. An
    exhausted budget raises ``Inconclusive`` rather than answering False.
    """
    alg = M.result if isinstance(M, MatrixPowerAlgebra) else M
    table = np.asarray(table, dtype=_INT)
    if table.ndim < 1 or table.shape != (alg.size,) * table.ndim:
        raise AlgebraError("table must be indexed by the algebra's universe")
    target = table.ravel()
    for _, values in iter_term_functions(alg, table.ndim, depth, budget):
        if np.array_equal(values, target):
            return True
    return False


# -- verification ------------------------------------------------------------

def separation_formula_holds(M: MatrixPowerAlgebra) -> bool:
    """``arrow(u,v) = box(arrow(u,v))`` and the same for ``backarrow`` iff ``u = v``."""
    if M.exponent != 2:
        raise AlgebraError("the box/arrow formula concerns the matrix square")
    R = M.result
    box = R.op("box")
    fixed = np.ones((R.size, R.size), dtype=bool)
    for name in ("arrow", "backarrow"):
        T = R.op(name)
        fixed &= T == box[T]
    return bool(np.array_equal(fixed, np.eye(R.size, dtype=bool)))


@dataclass
class LambdaReport:
    algebra: str
    congruences: int
    checks: dict[str, bool]
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "congruences": self.congruences,
            "checks": dict(self.checks),
            "violations": list(self.violations),
        }


def verify_lambda_embedding(A: FiniteAlgebra, relations: Sequence | None = None) -> LambdaReport:
    """Check that ``alpha -> alpha ⊗ alpha`` embeds the relation algebra.

    Runs over ``Con(A)`` unless ``relations`` is given; meet, product and
    join are compared with the same operations computed in ``A^[2]``.
    """
    M = matrix_power(A, 2)
    sq = M.result
    if relations is None:
        lattice = con(A)
        rels = [p.relation() for p in lattice]
        labels = [str(p) for p in lattice]
    else:
        rels = [r.relation() if hasattr(r, "relation") else r for r in relations]
        labels = [str(sorted(r.pairs)) for r in rels]
    lifted = [lam(r) for r in rels]
    checks = {name: True for name in ("congruence", "injective", "meet", "compose", "join")}
    violations: list[dict] = []

    def fail(check, **detail):
        checks[check] = False
        violations.append({"check": check, **detail})

    for i, (r, L) in enumerate(zip(rels, lifted)):
        if r.is_equivalence() and is_congruence(A, r) and not is_congruence(sq, L):
            fail("congruence", alpha=labels[i])
    seen: dict[BinRel, int] = {}
    for i, L in enumerate(lifted):
        j = seen.setdefault(L, i)
        if j != i and rels[j] != rels[i]:
            fail("injective", alpha=labels[j], beta=labels[i])
    for i, (a, La) in enumerate(zip(rels, lifted)):
        for j, (b, Lb) in enumerate(zip(rels, lifted)):
            for op in ("meet", "compose", "join"):
                lhs = lam(rel_combine(op, A, a, b))
                rhs = rel_combine(op, sq, La, Lb)
                if lhs != rhs:
                    fail(op, alpha=labels[i], beta=labels[j])
    return LambdaReport(A.name or f"size-{A.size}", len(rels), checks, violations)
