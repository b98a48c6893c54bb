"""Terms over a finite pool of indexed variables, plus unary polynomials.

Terms print and parse in parenthesized prefix form: ``(imp x0 (not x1))``.
A bare identifier is a nullary symbol when the signature has one by that
name, otherwise it must look like ``x<digits>`` and is a variable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import AlgebraError, SignatureError


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise AlgebraError(f"negative variable index {self.index}")

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return "(" + " ".join([self.symbol, *map(str, self.args)]) + ")"


Term = Union[Var, Apply]


def var(i: int) -> Var:
    return Var(i)


def app(symbol: str, *args: Term) -> Apply:
    return Apply(symbol, tuple(args))


X, Y = Var(0), Var(1)


def depth(t: Term) -> int:
    """Variables have depth 0; a nullary symbol has depth 1."""
    if isinstance(t, Var):
        return 0
    return 1 + max((depth(a) for a in t.args), default=0)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def max_var(t: Term) -> int:
    """Largest variable index in ``t``, or -1 for ground terms."""
    return max(variables(t), default=-1)


def symbols(t: Term) -> set[str]:
    if isinstance(t, Var):
        return set()
    out = {t.symbol}
    for a in t.args:
        out |= symbols(a)
    return out


def substitute(t: Term, mapping: Mapping[int, Term]) -> Term:
    """Simultaneously replace variables; unmapped variables stay put."""
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    return Apply(t.symbol, tuple(substitute(a, mapping) for a in t.args))


def check_term(t: Term, signature) -> None:
    """Raise ``SignatureError`` unless every Apply matches ``signature``."""
    if isinstance(t, Var):
        return
    arity = signature.arity(t.symbol)
    if arity != len(t.args):
        raise SignatureError(
            f"symbol {t.symbol!r} has arity {arity}, applied to {len(t.args)} arguments"
        )
    for a in t.args:
        check_term(a, signature)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_VARNAME = re.compile(r"x(\d+)\Z")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise AlgebraError(f"cannot tokenize term at position {pos}: {text!r}")
        kind = "(" if m.group(1) else ")" if m.group(2) else "id"
        yield kind, m.group(m.lastindex), m.start(m.lastindex)
        pos = m.end()


def parse_term(text: str, signature) -> Term:
    """Parse a prefix-form term against ``signature``."""
    toks = list(_tokens(text))
    if not toks:
        raise AlgebraError("empty term")
    pos = 0

    def atom(name: str, at: int) -> Term:
        if name in signature:
            if signature.arity(name) != 0:
                raise SignatureError(f"symbol {name!r} at {at} needs arguments")
            return Apply(name)
        m = _VARNAME.match(name)
        if m is None:
            raise SignatureError(f"unknown identifier {name!r} at position {at}")
        return Var(int(m.group(1)))

    def parse() -> Term:
        nonlocal pos
        if pos >= len(toks):
            raise AlgebraError("unexpected end of term")
        kind, value, at = toks[pos]
        pos += 1
        if kind == "id":
            return atom(value, at)
        if kind == ")":
            raise AlgebraError(f"unexpected ')' at position {at}")
        if pos >= len(toks) or toks[pos][0] != "id":
            raise AlgebraError(f"expected a symbol after '(' at position {at}")
        _, head, head_at = toks[pos]
        pos += 1
        args = []
        while pos < len(toks) and toks[pos][0] != ")":
            args.append(parse())
        if pos >= len(toks):
            raise AlgebraError(f"unclosed '(' at position {at}")
        pos += 1
        if not args:
            return atom(head, head_at)
        if head not in signature:
            raise SignatureError(f"unknown symbol {head!r} at position {head_at}")
        t = Apply(head, tuple(args))
        check_term(t, signature)
        return t

    t = parse()
    if pos != len(toks):
        raise AlgebraError(f"trailing input at position {toks[pos][2]}")
    return t


@dataclass(frozen=True)
class Polynomial:
    """A term whose variables split into free ones and frozen constants.

    ``constants`` maps variable indices to fixed elements; every other
    variable in ``term`` is free. Unary polynomials keep their free
    variable at index 0.
    """

    term: Term
    constants: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constants", dict(self.constants))

    def __hash__(self):
        return hash((self.term, tuple(sorted(self.constants.items()))))

    @property
    def free_variables(self) -> set[int]:
        return variables(self.term) - set(self.constants)

    @classmethod
    def identity(cls) -> Polynomial:
        return cls(Var(0))

    def __call__(self, algebra, *free: int) -> int:
        from .algebra import eval_term

        env = dict(self.constants)
        for i, v in enumerate(free):
            if i in env:
                raise AlgebraError(f"variable {i} is frozen as a constant")
            env[i] = v
        return eval_term(algebra, self.term, env)

    def translate(self, symbol: str, position: int, fillers: Sequence[int]) -> Polynomial:
        """Wrap as ``symbol(c_1, .., self, .., c_k)`` with ``self`` at ``position``.

        ``fillers`` are the constants for the other argument slots, in order.
        """
        base = max([0, *variables(self.term), *self.constants]) + 1
        consts = dict(self.constants)
        args: list[Term] = []
        it = iter(fillers)
        for p in range(len(fillers) + 1):
            if p == position:
                args.append(self.term)
            else:
                consts[base] = next(it)
                args.append(Var(base))
                base += 1
        return Polynomial(Apply(symbol, tuple(args)), consts)

    def __str__(self) -> str:
        if not self.constants:
            return str(self.term)
        binds = ", ".join(f"x{i}:={c}" for i, c in sorted(self.constants.items()))
        return f"{self.term} [{binds}]"


def format_terms(ts: Iterable[Term]) -> list[str]:
    return [str(t) for t in ts]
