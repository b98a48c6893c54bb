"""Small algebras used throughout the tests, demos and CLI."""
from __future__ import annotations

from .algebra import FiniteAlgebra, Signature
from .algebraize import TransformerRho, TransformerTau
from .terms import X, Y, app


def empty_set(n: int) -> FiniteAlgebra:
    """An ``n``-element set with no operations."""
    return FiniteAlgebra(n, Signature(), [], name=f"set{n}")


def trivial(signature: Signature | None = None) -> FiniteAlgebra:
    """The one-element algebra, optionally in a given signature."""
    sig = signature or Signature()
    return FiniteAlgebra(1, sig, [[0] for _ in sig], name="trivial")


def boolean() -> FiniteAlgebra:
    """Two-element Boolean algebra with implication and top."""
    return FiniteAlgebra.from_functions(
        2,
        {
            "and": (2, min),
            "or": (2, max),
            "not": (1, lambda a: 1 - a),
            "imp": (2, lambda a, b: max(1 - a, b)),
            "one": (0, lambda: 1),
        },
        name="b2",
    )


def semilattice() -> FiniteAlgebra:
    """Two-element meet semilattice."""
    return FiniteAlgebra.from_functions(2, {"and": (2, min)}, name="semilattice2")


def lattice(n: int = 2) -> FiniteAlgebra:
    """The ``n``-element chain as a lattice."""
    return FiniteAlgebra.from_functions(n, {"and": (2, min), "or": (2, max)}, name=f"lattice{n}")


def cycle3() -> FiniteAlgebra:
    """Three elements with the successor map ``x -> x+1 mod 3``."""
    return FiniteAlgebra.from_functions(3, {"succ": (1, lambda a: (a + 1) % 3)}, name="cycle3")


def default_catalog() -> list[FiniteAlgebra]:
    return [*(empty_set(n) for n in range(1, 5)), lattice(), boolean(), cycle3()]


BUILTIN = {
    "set1": lambda: empty_set(1),
    "set2": lambda: empty_set(2),
    "set3": lambda: empty_set(3),
    "set4": lambda: empty_set(4),
    "trivial": trivial,
    "b2": boolean,
    "semilattice2": semilattice,
    "lattice2": lattice,
    "lattice3": lambda: lattice(3),
    "cycle3": cycle3,
}


def boolean_witness() -> tuple[TransformerTau, TransformerRho]:
    """``x -> y = 1`` and ``y -> x = 1`` iff ``x = y``."""
    return (
        TransformerTau(((X, app("one")),)),
        TransformerRho((app("imp", X, Y), app("imp", Y, X))),
    )


def box_witness() -> tuple[TransformerTau, TransformerRho]:
    """The witness valid in every matrix square: ``tau = {(x, box x)}``, ``rho = {arrow, backarrow}``."""
    return (
        TransformerTau(((X, app("box", X)),)),
        TransformerRho((app("arrow", X, Y), app("backarrow", X, Y))),
    )
