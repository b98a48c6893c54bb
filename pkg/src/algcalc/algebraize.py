"""Transformer witnesses, the induced consequence relation, and Maltsev schemes.

A transformer witness is a finite family ``tau`` of pairs of unary terms and
a finite family ``rho`` of binary terms such that, in an algebra ``A``,

    delta_i(rho_j(a, b)) = epsilon_i(rho_j(a, b)) for all i, j   iff   a = b.

Given ``tau`` and a class ``K``, a term ``phi`` follows from ``Gamma`` when
every assignment into a member of ``K`` that makes ``delta_i(gamma) =
epsilon_i(gamma)`` for all premises does the same for ``phi``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from . import config
from .algebra import (
    FiniteAlgebra,
    assignment_grid,
    distinct_term_functions,
    eval_term,
    free_algebra_2gen,
    same_signature,
    term_function,
    term_values,
    validate_term,
)
from .congruence import extract_chain, theta
from .errors import AlgebraError, Inconclusive, NotDerivable
from .terms import Apply, Term, Var, depth, substitute


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: ``holds`` plus the first counterexample, if any."""

    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class TransformerTau:
    pairs: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        pairs = tuple((d, e) for d, e in self.pairs)
        if not pairs:
            raise AlgebraError("tau needs at least one pair")
        for d, e in pairs:
            for t in (d, e):
                if any(i != 0 for i in _vars(t)):
                    raise AlgebraError(f"tau term {t} must be unary in x0")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class TransformerRho:
    terms: tuple[Term, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise AlgebraError("rho needs at least one term")
        for t in terms:
            if any(i > 1 for i in _vars(t)):
                raise AlgebraError(f"rho term {t} must be binary in x0, x1")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)


def _vars(t: Term):
    if isinstance(t, Var):
        yield t.index
    else:
        for a in t.args:
            yield from _vars(a)


def _tau_tables(A: FiniteAlgebra, tau: TransformerTau):
    for d, e in tau.pairs:
        validate_term(A, d, 1)
        validate_term(A, e, 1)
    return [(term_function(A, d, 1), term_function(A, e, 1)) for d, e in tau.pairs]


def _left_side(A: FiniteAlgebra, tau: TransformerTau, rho: TransformerRho) -> np.ndarray:
    """Boolean matrix: does the conjunction of equations hold at ``(a, b)``?"""
    n = A.size
    pairs = _tau_tables(A, tau)
    left = np.ones((n, n), dtype=bool)
    for r in rho.terms:
        validate_term(A, r, 2)
        R = term_function(A, r, 2).reshape(n, n)
        for D, E in pairs:
            left &= D[R] == E[R]
    return left


def check_transformers(A: FiniteAlgebra, tau: TransformerTau, rho: TransformerRho) -> Verdict:
    """Whether the witness is valid in ``A``; the witness is a violating pair."""
    left = _left_side(A, tau, rho)
    bad = np.argwhere(left != np.eye(A.size, dtype=bool))
    if len(bad):
        return Verdict(False, (int(bad[0][0]), int(bad[0][1])))
    return Verdict(True)


def check_transformers_class(algebras: Sequence[FiniteAlgebra], tau, rho) -> Verdict:
    """Conjunction over a class; the witness is ``(algebra index, pair)``."""
    if not algebras:
        raise AlgebraError("the class must be nonempty")
    same_signature(algebras)
    for i, A in enumerate(algebras):
        v = check_transformers(A, tau, rho)
        if not v:
            return Verdict(False, (i, v.witness))
    return Verdict(True)


def search_transformers(
    A: FiniteAlgebra, depth_bound: int, max_i: int, max_j: int, budget: int | None = None
) -> tuple[TransformerTau, TransformerRho] | None:
    """First witness in canonical order, or None if none exists within bounds.

    Candidates are built from representatives of distinct unary and binary
    term functions and ordered by maximum term depth, then ``|tau|``, then
    ``|rho|``, then lexicographically. A candidate whose equations already
    fail on the diagonal is skipped. ``None`` is exhaustive for the bounds
    given and says nothing about deeper terms or the generated variety.
    """
    if max_i < 1 or max_j < 1:
        raise AlgebraError("max_i and max_j must be positive")
    budget = config.DEFAULT_SEARCH_BUDGET if budget is None else budget
    n = A.size
    unary = distinct_term_functions(A, 1, depth_bound)
    binary = distinct_term_functions(A, 2, depth_bound)
    pairs = [
        (d, e, max(depth(d), depth(e)), D, E)
        for d, D in unary
        for e, E in unary
    ]
    rhos = [(r, depth(r), R.reshape(n, n)) for r, R in binary]
    eq = [[D[R] == E[R] for _, _, R in rhos] for _, _, _, D, E in pairs]
    diag_ok = [[bool(m.diagonal().all()) for m in row] for row in eq]
    target = np.eye(n, dtype=bool)
    spent = 0
    for d in range(depth_bound + 1):
        for ti in range(1, max_i + 1):
            for rj in range(1, max_j + 1):
                for tc in combinations(range(len(pairs)), ti):
                    tdepth = max(pairs[p][2] for p in tc)
                    if tdepth > d:
                        continue
                    usable = [b for b in range(len(rhos)) if all(diag_ok[p][b] for p in tc)]
                    for rc in combinations(usable, rj):
                        if max(tdepth, max(rhos[b][1] for b in rc)) != d:
                            continue
                        spent += 1
                        if spent > budget:
                            raise Inconclusive(f"transformer search exceeded its budget of {budget} candidates")
                        left = np.ones((n, n), dtype=bool)
                        for p in tc:
                            for b in rc:
                                left &= eq[p][b]
                        if np.array_equal(left, target):
                            tau = TransformerTau(tuple((pairs[p][0], pairs[p][1]) for p in tc))
                            rho = TransformerRho(tuple(rhos[b][0] for b in rc))
                            return tau, rho
    return None


# -- consequence -------------------------------------------------------------

@dataclass(frozen=True)
class ConsequenceQuery:
    algebras: tuple[FiniteAlgebra, ...]
    tau: TransformerTau
    gamma: tuple[Term, ...]
    phi: Term
    var_count: int

    def __post_init__(self):
        object.__setattr__(self, "algebras", tuple(self.algebras))
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if not self.algebras:
            raise AlgebraError("K must be nonempty")


@dataclass(frozen=True)
class Countermodel:
    algebra_index: int
    assignment: tuple[int, ...]


def _satisfied(A, tables, term, grid) -> np.ndarray:
    vals = np.atleast_1d(term_values(A, term, grid)) if grid else np.asarray([eval_term(A, term, ())])
    ok = np.ones(vals.shape, dtype=bool)
    for D, E in tables:
        ok &= D[vals] == E[vals]
    return ok


def entails(q: ConsequenceQuery) -> Verdict:
    """Decide ``gamma |- phi``; the witness is a ``Countermodel``."""
    same_signature(q.algebras)
    for t in (*q.gamma, q.phi):
        validate_term(q.algebras[0], t, q.var_count)
    for k, A in enumerate(q.algebras):
        tables = _tau_tables(A, q.tau)
        grid = assignment_grid(A.size, q.var_count)
        premises = np.ones(A.size**q.var_count, dtype=bool)
        for g in q.gamma:
            premises &= _satisfied(A, tables, g, grid)
        bad = np.flatnonzero(premises & ~_satisfied(A, tables, q.phi, grid))
        if len(bad):
            idx = int(bad[0])
            assignment = tuple(int(g[idx]) for g in grid)
            return Verdict(False, Countermodel(k, assignment))
    return Verdict(True)


def derives(algebras, tau, gamma, phi, var_count: int) -> bool:
    return entails(ConsequenceQuery(tuple(algebras), tau, tuple(gamma), phi, var_count)).holds


def shrink_premises(algebras, tau, gamma, phi, var_count: int) -> tuple[Term, ...]:
    """Greedily drop premises while the consequence still holds."""
    kept = list(gamma)
    if not derives(algebras, tau, kept, phi, var_count):
        raise AlgebraError("the consequence does not hold to begin with")
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        if derives(algebras, tau, trial, phi, var_count):
            kept = trial
        else:
            i += 1
    return tuple(kept)


def random_term(rng: random.Random, signature, var_count: int, max_depth: int) -> Term:
    ops = [(s, k) for s, k in signature]
    if max_depth == 0 or not ops or rng.random() < 0.3:
        if var_count == 0 or (ops and rng.random() < 0.15):
            nullary = [s for s, k in ops if k == 0]
            if nullary:
                return Apply(rng.choice(nullary))
        if var_count == 0:
            raise AlgebraError("cannot build a term without variables or constants")
        return Var(rng.randrange(var_count))
    s, k = rng.choice(ops)
    return Apply(s, tuple(random_term(rng, signature, var_count, max_depth - 1) for _ in range(k)))


@dataclass
class PropertyReport:
    seed: int
    trials: int
    var_count: int
    checked: dict[str, int] = field(default_factory=dict)
    nonvacuous: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "var_count": self.var_count,
            "checked": dict(self.checked),
            "nonvacuous": dict(self.nonvacuous),
            "violations": list(self.violations),
        }


def consequence_properties_check(
    algebras: Sequence[FiniteAlgebra],
    tau: TransformerTau,
    trials: int,
    seed: int,
    var_count: int = 3,
    max_depth: int = 2,
) -> PropertyReport:
    """Sample reflexivity, cut and substitution instances of the consequence.

    Instances for cut and substitution are drawn so that their hypotheses
    hold, which keeps the checks from being vacuous. Any violation is a bug.
    """
    rng = random.Random(seed)
    algebras = tuple(algebras)
    sig = same_signature(algebras)
    report = PropertyReport(seed, trials, var_count)
    for name in ("reflexivity", "cut", "substitution"):
        report.checked[name] = report.nonvacuous[name] = 0

    def rt():
        return random_term(rng, sig, var_count, max_depth)

    def follows(gamma, phi):
        return derives(algebras, tau, gamma, phi, var_count)

    def show(ts):
        return [str(t) for t in ts]

    for trial in range(trials):
        gamma = [rt() for _ in range(rng.randint(1, 3))]
        phi = rng.choice(gamma)
        report.checked["reflexivity"] += 1
        report.nonvacuous["reflexivity"] += 1
        if not follows(gamma, phi):
            report.violations.append({"property": "reflexivity", "trial": trial, "gamma": show(gamma), "phi": str(phi)})

        gamma = [rt() for _ in range(rng.randint(0, 2))]
        pool = [rt() for _ in range(6)]
        psi = [t for t in pool if follows(gamma, t)][:3]
        conclusions = [t for t in [rt() for _ in range(6)] + pool if follows(psi, t)]
        report.checked["cut"] += 1
        if conclusions:
            phi = conclusions[0]
            report.nonvacuous["cut"] += 1
            if not follows(gamma, phi):
                report.violations.append({
                    "property": "cut", "trial": trial, "gamma": show(gamma),
                    "psi": show(psi), "phi": str(phi),
                })

        gamma = [rt() for _ in range(rng.randint(0, 2))]
        candidates = [t for t in [rt() for _ in range(6)] if follows(gamma, t)]
        phi = candidates[0] if candidates else (gamma[0] if gamma else None)
        report.checked["substitution"] += 1
        if phi is not None:
            h = {i: rt() for i in range(var_count)}
            report.nonvacuous["substitution"] += 1
            image = [substitute(g, h) for g in gamma]
            if not follows(image, substitute(phi, h)):
                report.violations.append({
                    "property": "substitution", "trial": trial, "gamma": show(gamma), "phi": str(phi),
                    "h": {f"x{i}": str(t) for i, t in h.items()},
                })
    return report


# -- Maltsev schemes ---------------------------------------------------------

@dataclass(frozen=True)
class MaltsevScheme:
    """Chain terms ``t_1..t_k`` in ``2 + 2*|tau|*|rho|`` variables.

    Variables ``x0, x1`` stand for ``x, y``; the next ``|tau|*|rho|`` are the
    first tuple slot and the last ``|tau|*|rho|`` the second. Slot ``s`` of a
    tuple holds ``delta_i(rho_j(x, y))`` (or ``epsilon_i``) with
    ``s = j*|tau| + i``.
    """

    tau: TransformerTau
    rho: TransformerRho
    chain: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))
        if not self.chain:
            raise AlgebraError("a scheme needs at least one chain term")
        for t in self.chain:
            if any(i >= self.arity for i in _vars(t)):
                raise AlgebraError(f"chain term {t} exceeds the scheme arity {self.arity}")

    @property
    def slots(self) -> int:
        return len(self.tau) * len(self.rho)

    @property
    def arity(self) -> int:
        return 2 + 2 * self.slots

    def __len__(self):
        return len(self.chain)


@dataclass(frozen=True)
class SchemeViolation:
    identity: str
    pair: tuple[int, int]
    lhs: int
    rhs: int


def _slot_values(A, tau, rho, X, Y):
    deltas, epsilons = [], []
    for r in rho.terms:
        R = term_values(A, r, [X, Y])
        for d, e in tau.pairs:
            deltas.append(term_values(A, d, [R]))
            epsilons.append(term_values(A, e, [R]))
    return deltas, epsilons


def maltsev_scheme_check(A: FiniteAlgebra, scheme: MaltsevScheme) -> Verdict:
    """Check the diagonal equations and every chain identity over ``A x A``."""
    for d, e in scheme.tau.pairs:
        validate_term(A, d, 1)
        validate_term(A, e, 1)
    for r in scheme.rho.terms:
        validate_term(A, r, 2)
    for t in scheme.chain:
        validate_term(A, t, scheme.arity)

    n = A.size
    diag = np.arange(n)
    dd, ee = _slot_values(A, scheme.tau, scheme.rho, diag, diag)
    for s, (D, E) in enumerate(zip(dd, ee)):
        bad = np.flatnonzero(D != E)
        if len(bad):
            a = int(bad[0])
            return Verdict(False, SchemeViolation(f"diagonal slot {s}", (a, a), int(D[a]), int(E[a])))

    X, Y = assignment_grid(n, 2)
    DR, ER = _slot_values(A, scheme.tau, scheme.rho, X, Y)
    straight = [term_values(A, t, [X, Y, *DR, *ER]) for t in scheme.chain]
    swapped = [term_values(A, t, [X, Y, *ER, *DR]) for t in scheme.chain]

    identities = [("x = t1(x,y,dr,er)", X, straight[0])]
    for r in range(len(scheme.chain) - 1):
        identities.append((f"t{r + 1}(x,y,er,dr) = t{r + 2}(x,y,dr,er)", swapped[r], straight[r + 1]))
    identities.append((f"t{len(scheme.chain)}(x,y,er,dr) = y", swapped[-1], Y))
    for label, lhs, rhs in identities:
        bad = np.flatnonzero(np.broadcast_to(lhs, X.shape) != np.broadcast_to(rhs, X.shape))
        if len(bad):
            i = int(bad[0])
            return Verdict(False, SchemeViolation(label, (int(X[i]), int(Y[i])), int(np.broadcast_to(lhs, X.shape)[i]), int(np.broadcast_to(rhs, X.shape)[i])))
    return Verdict(True)


def derive_maltsev_scheme(A: FiniteAlgebra, tau: TransformerTau, rho: TransformerRho) -> MaltsevScheme:
    """Read a chain scheme off a congruence derivation in the free algebra.

    In the free algebra ``F`` on ``x, y`` the pairs
    ``(delta_i(rho_j(x,y)), epsilon_i(rho_j(x,y)))`` must generate a
    congruence containing ``(x, y)``. Each step of the derivation is a unary
    polynomial of ``F`` applied to one generating pair; its constants are
    binary term functions and become terms in ``x, y``.
    """
    if not check_transformers(A, tau, rho):
        raise AlgebraError("the transformers are not valid in the algebra")
    free = free_algebra_2gen(A)
    F, gx, gy = free.algebra, free.gen_x, free.gen_y
    generators = {0: gx, 1: gy}
    seeds = []
    for r in rho.terms:
        for d, e in tau.pairs:
            seeds.append((
                eval_term(F, substitute(d, {0: r}), generators),
                eval_term(F, substitute(e, {0: r}), generators),
            ))
    if (gx, gy) not in theta(F, seeds):
        raise NotDerivable("the transformer formula fails in the variety generated by the algebra")

    m = len(seeds)
    chain = extract_chain(F, seeds, gx, gy)
    terms: list[Term] = []
    for step in chain.steps:
        slot = seeds.index(step.generator)
        hole = 2 + slot if step.direction == "forward" else 2 + m + slot
        mapping = {0: Var(hole)}
        mapping.update({i: free.terms[c] for i, c in step.witness.constants.items()})
        terms.append(substitute(step.witness.term, mapping))
    scheme = MaltsevScheme(tau, rho, tuple(terms) or (Var(0),))
    verdict = maltsev_scheme_check(A, scheme)
    if not verdict:
        raise RuntimeError(f"derived scheme failed its own check: {verdict.witness}")
    return scheme
