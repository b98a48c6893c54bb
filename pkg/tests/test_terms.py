import pytest

from algcalc import catalog
from algcalc.errors import AlgebraError, SignatureError
from algcalc.terms import Apply, Polynomial, Var, app, depth, parse_term, substitute, variables


@pytest.fixture
def sig():
    return catalog.boolean().signature


@pytest.mark.parametrize(
    "text",
    ["x0", "one", "(imp x0 x1)", "(and (not x3) (or one x0))", "(imp (imp x0 x1) x1)"],
)
def test_print_parse_round_trip(sig, text):
    t = parse_term(text, sig)
    assert str(t) == text
    assert parse_term(str(t), sig) == t


def test_parenthesized_constant_and_whitespace(sig):
    assert parse_term("  ( one ) ", sig) == Apply("one")
    assert parse_term("(not\n x2)", sig) == app("not", Var(2))


@pytest.mark.parametrize(
    "text, exc",
    [
        ("(imp x0)", SignatureError),
        ("(frob x0 x1)", SignatureError),
        ("y", SignatureError),
        ("(imp x0 x1", AlgebraError),
        ("x0 x1", AlgebraError),
        (")", AlgebraError),
        ("", AlgebraError),
        ("(not)", SignatureError),
    ],
)
def test_parse_errors(sig, text, exc):
    with pytest.raises(exc):
        parse_term(text, sig)


def test_depth_and_variables():
    t = app("and", Var(0), app("not", Var(3)))
    assert depth(Var(0)) == 0
    assert depth(app("one")) == 1
    assert depth(t) == 2
    assert variables(t) == {0, 3}


def test_substitution_is_simultaneous():
    t = app("imp", Var(0), Var(1))
    assert substitute(t, {0: Var(1), 1: Var(0)}) == app("imp", Var(1), Var(0))


def test_polynomial_translate_and_evaluate(b2):
    p = Polynomial.identity().translate("imp", 1, [0])  # imp(c, x) with c := 0
    assert p.free_variables == {0}
    assert [p(b2, a) for a in (0, 1)] == [1, 1]
    q = p.translate("and", 0, [1]).translate("not", 0, [])
    # not(and(imp(0, x), 1)) is constantly 0
    assert [q(b2, a) for a in (0, 1)] == [0, 0]
    with pytest.raises(AlgebraError):
        Polynomial(Var(0), {0: 1})(b2, 0)
