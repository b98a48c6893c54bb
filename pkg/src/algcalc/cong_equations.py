"""Congruence equations in meet ``^``, relational product ``*`` and join ``+``.

Grammar::

    equation := expr "=" expr
    expr     := product ("+" product)*
    product  := meet ("*" meet)*
    meet     := atom ("^" atom)*
    atom     := name | "(" expr ")"
    name     := [a-z][a-z0-9]*

Variables range over congruences; intermediate values are arbitrary
relations, so join is congruence generation of the union.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence, Union

import numpy as np

from . import config
from .algebra import FiniteAlgebra
from .algebraize import Verdict, check_transformers
from .catalog import box_witness
from .congruence import BinRel, Partition, as_relation, con, is_congruence, lam, theta
from .errors import AlgebraError, Inconclusive, LiftError
from .matrix_power import matrix_power, separation_formula_holds


@dataclass(frozen=True)
class CVar:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Meet:
    left: CongTerm
    right: CongTerm
    symbol = "^"
    level = 3


@dataclass(frozen=True)
class Compose:
    left: CongTerm
    right: CongTerm
    symbol = "*"
    level = 2


@dataclass(frozen=True)
class Join:
    left: CongTerm
    right: CongTerm
    symbol = "+"
    level = 1


CongTerm = Union[CVar, Meet, Compose, Join]


def format_cong_term(t: CongTerm) -> str:
    if isinstance(t, CVar):
        return t.name

    def side(s, right):
        text = format_cong_term(s)
        if not isinstance(s, CVar) and (s.level < t.level or (right and s.level == t.level)):
            return f"({text})"
        return text

    return f"{side(t.left, False)} {t.symbol} {side(t.right, True)}"


for _cls in (Meet, Compose, Join):
    _cls.__str__ = format_cong_term


def cong_variables(t: CongTerm) -> list[str]:
    if isinstance(t, CVar):
        return [t.name]
    out = cong_variables(t.left)
    out += [v for v in cong_variables(t.right) if v not in out]
    return out


@dataclass(frozen=True)
class CongEquation:
    lhs: CongTerm
    rhs: CongTerm

    @property
    def variables(self) -> tuple[str, ...]:
        names = cong_variables(self.lhs)
        names += [v for v in cong_variables(self.rhs) if v not in names]
        return tuple(names)

    def __str__(self):
        return f"{format_cong_term(self.lhs)} = {format_cong_term(self.rhs)}"


class EquationSyntaxError(AlgebraError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKENS = re.compile(r"\s*(?:([a-z][a-z0-9]*)|([\^*+()=]))")


def _tokenize(text: str):
    pos, out = 0, []
    end = len(text.rstrip())
    while pos < end:
        m = _TOKENS.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise EquationSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = "name" if m.group(1) else m.group(2)
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", end))
    return out


def parse_cong_equation(text: str) -> CongEquation:
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind):
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise EquationSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        pos += 1
        return tok

    def binary(sub, symbol, cls):
        def parse():
            nonlocal pos
            left = sub()
            while peek()[0] == symbol:
                pos += 1
                left = cls(left, sub())
            return left
        return parse

    def atom():
        nonlocal pos
        kind, value, at = peek()
        if kind == "name":
            pos += 1
            return CVar(value)
        if kind == "(":
            pos += 1
            inner = expr()
            take(")")
            return inner
        if kind in ("=", "end"):
            raise EquationSyntaxError("empty side of equation", at)
        raise EquationSyntaxError(f"unexpected {value!r}", at)

    meet = binary(atom, "^", Meet)
    compose = binary(meet, "*", Compose)
    expr = binary(compose, "+", Join)

    lhs = expr()
    take("=")
    rhs = expr()
    take("end")
    return CongEquation(lhs, rhs)


# -- evaluation --------------------------------------------------------------

def _matrix(r) -> np.ndarray:
    if isinstance(r, Partition):
        b = np.asarray(r.block_of)
        return b[:, None] == b[None, :]
    return as_relation(r).matrix()


def _eval(A: FiniteAlgebra, t: CongTerm, env: Mapping[str, np.ndarray]) -> np.ndarray:
    if isinstance(t, CVar):
        try:
            return env[t.name]
        except KeyError:
            raise AlgebraError(f"variable {t.name!r} is not assigned") from None
    left, right = _eval(A, t.left, env), _eval(A, t.right, env)
    if isinstance(t, Meet):
        return left & right
    if isinstance(t, Compose):
        return (left.astype(np.int64) @ right.astype(np.int64)) > 0
    rows, cols = np.nonzero(left | right)
    b = np.asarray(theta(A, zip(rows.tolist(), cols.tolist())).block_of)
    return b[:, None] == b[None, :]


def eval_cong_term(A: FiniteAlgebra, t: CongTerm, env: Mapping[str, object]) -> BinRel:
    """Value of ``t`` when each variable is read as the given relation."""
    mats = {}
    for name, r in env.items():
        m = _matrix(r)
        if m.shape != (A.size, A.size):
            raise AlgebraError(f"value of {name!r} is not a relation on the universe")
        mats[name] = m
    return BinRel.from_matrix(_eval(A, t, mats))


@dataclass(frozen=True)
class FailureCertificate:
    algebra: FiniteAlgebra
    equation: CongEquation
    assignment: Mapping[str, Partition]
    lhs: BinRel
    rhs: BinRel
    discrepancy: tuple[int, int]

    def __hash__(self):
        return hash((self.equation, tuple(sorted(self.assignment.items())), self.discrepancy))

    def validate(self) -> bool:
        """Recompute both sides and confirm the discrepancy separates them."""
        names = set(self.equation.variables)
        if set(self.assignment) != names:
            return False
        if not all(is_congruence(self.algebra, p) for p in self.assignment.values()):
            return False
        lhs = eval_cong_term(self.algebra, self.equation.lhs, self.assignment)
        rhs = eval_cong_term(self.algebra, self.equation.rhs, self.assignment)
        if lhs != self.lhs or rhs != self.rhs:
            return False
        return (self.discrepancy in lhs) != (self.discrepancy in rhs)


def _certificate(A, eq, assignment, lhs: np.ndarray, rhs: np.ndarray) -> FailureCertificate:
    diff = np.argwhere(lhs != rhs)
    pair = (int(diff[0][0]), int(diff[0][1]))
    return FailureCertificate(A, eq, dict(assignment), BinRel.from_matrix(lhs), BinRel.from_matrix(rhs), pair)


def check_equation(A: FiniteAlgebra, eq: CongEquation, budget: int | None = None) -> Verdict:
    """Try every assignment of congruences, lexicographically in ``Con(A)`` order.

    The first variable varies slowest. The witness is a ``FailureCertificate``.
    """
    budget = config.DEFAULT_ASSIGNMENT_BUDGET if budget is None else budget
    lattice = con(A)
    names = eq.variables
    total = len(lattice) ** len(names)
    if total > budget:
        raise Inconclusive(f"{total} assignments exceed the budget of {budget}")
    mats = [_matrix(p) for p in lattice]
    for choice in product(range(len(lattice)), repeat=len(names)):
        env = {v: mats[i] for v, i in zip(names, choice)}
        lhs, rhs = _eval(A, eq.lhs, env), _eval(A, eq.rhs, env)
        if not np.array_equal(lhs, rhs):
            assignment = {v: lattice[i] for v, i in zip(names, choice)}
            return Verdict(False, _certificate(A, eq, assignment, lhs, rhs))
    return Verdict(True)


def find_failure(catalog: Sequence[FiniteAlgebra], eq: CongEquation) -> FailureCertificate | None:
    """First certificate along the catalog; None only means it held there."""
    for A in catalog:
        verdict = check_equation(A, eq)
        if not verdict:
            return verdict.witness
    return None


# -- lifting -----------------------------------------------------------------

@dataclass(frozen=True)
class LiftReport:
    original: FailureCertificate
    lifted: FailureCertificate
    transformers: Verdict
    separation_formula: bool

    @property
    def ok(self) -> bool:
        return self.lifted.validate() and self.transformers.holds and self.separation_formula


def lift_failure_check(cert: FailureCertificate) -> LiftReport:
    """Push a failure into the matrix square along ``alpha -> alpha ⊗ alpha``.

    Also confirms the box/arrow transformer witness on the square, so the
    equation is seen to fail in an algebra generating a variety of logic.
    """
    if not cert.validate():
        raise AlgebraError("the certificate does not re-validate on its algebra")
    A = cert.algebra
    M = matrix_power(A, 2)
    sq = M.result
    lifted_env = {}
    for name, p in cert.assignment.items():
        L = lam(p)
        if not is_congruence(sq, L):
            raise LiftError(f"lambda({name}) is not a congruence of the matrix square")
        lifted_env[name] = Partition.from_relation(L)
    mats = {v: _matrix(p) for v, p in lifted_env.items()}
    lhs, rhs = _eval(sq, cert.equation.lhs, mats), _eval(sq, cert.equation.rhs, mats)
    if np.array_equal(lhs, rhs):
        raise LiftError("the equation holds in the matrix square under the lifted assignment")
    a, b = cert.discrepancy
    n = A.size
    pair = (a * n + a, b * n + b)
    if lhs[pair] == rhs[pair]:
        raise LiftError(f"diagonal image {pair} of the discrepancy does not separate the sides")
    lifted = FailureCertificate(
        sq, cert.equation, lifted_env, BinRel.from_matrix(lhs), BinRel.from_matrix(rhs), pair
    )
    tau, rho = box_witness()
    return LiftReport(cert, lifted, check_transformers(sq, tau, rho), separation_formula_holds(M))
