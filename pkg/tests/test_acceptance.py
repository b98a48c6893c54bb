"""Acceptance criteria, one test each, with wall-clock limits.

Every test appends one ``[criterion N] PASS/FAIL`` line, printed in the
terminal summary.
"""
import contextlib
import json
import random
import time

import numpy as np

from algcalc import catalog
from algcalc.algebra import FiniteAlgebra, Signature
from algcalc.algebraize import (
    ConsequenceQuery,
    Countermodel,
    MaltsevScheme,
    TransformerRho,
    TransformerTau,
    check_transformers,
    consequence_properties_check,
    derive_maltsev_scheme,
    entails,
    maltsev_scheme_check,
    search_transformers,
)
from algcalc.cli import main
from algcalc.congruence import con, extract_chain, theta
from algcalc.cong_equations import (
    FailureCertificate,
    check_equation,
    eval_cong_term,
    lift_failure_check,
    parse_cong_equation,
)
from algcalc.congruence import Partition
from algcalc.io import certificate_to_dict
from algcalc.matrix_power import (
    TermTuple,
    is_generated_operation,
    m_t_table,
    matrix_power,
    verify_lambda_embedding,
)
from algcalc.terms import Var, app

import conftest
from oracles import brute_theta

X, Y = Var(0), Var(1)
DISTRIBUTIVE = "a ^ (b + c) = (a ^ b) + (a ^ c)"
MODULAR = "a ^ (b + (a ^ c)) = (a ^ b) + (a ^ c)"
COMMUTE = "a * b = b * a"


@contextlib.contextmanager
def criterion(number, limit, label):
    start = time.perf_counter()
    passed = False
    try:
        yield
        passed = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if passed and within else "FAIL"
        conftest.ACCEPTANCE_LINES.append(
            f"[criterion {number:>2}] {status} ({elapsed:.2f} s, limit {limit:g} s) {label}"
        )
    assert within, f"criterion {number} took {elapsed:.2f} s, over the {limit} s limit"


def bool_tau():
    return TransformerTau(((X, app("one")),))


def bool_rho():
    return TransformerRho((app("imp", X, Y), app("imp", Y, X)))


def random_algebra(rng, max_size=4):
    n = int(rng.integers(1, max_size + 1))
    arities = rng.choice([0, 1, 2], size=int(rng.integers(0, 4)))
    tables = [rng.integers(0, n, size=n ** int(k)).tolist() for k in arities]
    sig = Signature(tuple((f"f{i}", int(k)) for i, k in enumerate(arities)))
    return FiniteAlgebra(n, sig, tables)


def test_criterion_01_boolean_witness(tmp_path, capsys):
    with criterion(1, 1.0, "Boolean witness holds in B2"):
        b2 = catalog.boolean()
        assert check_transformers(b2, bool_tau(), bool_rho())
        (tmp_path / "b2.tau").write_text("x0 | one\n")
        (tmp_path / "b2.rho").write_text("(imp x0 x1)\n(imp x1 x0)\n")
        code = main(["check-transformers", "builtin:b2", "--tau", str(tmp_path / "b2.tau"),
                     "--rho", str(tmp_path / "b2.rho")])
        capsys.readouterr()
        assert code == 0


def test_criterion_02_matrix_power_witness():
    with criterion(2, 10.0, "box/arrow witness on A^[2] for every catalog algebra"):
        tau, rho = catalog.box_witness()
        sizes = set()
        for A in catalog.default_catalog():
            sizes.add(A.size)
            assert check_transformers(matrix_power(A, 2).result, tau, rho), A.name
        assert sizes == {1, 2, 3, 4}


def test_criterion_03_idempotence_obstruction():
    with criterion(3, 60.0, "no transformers for the 2-element lattice at depth 4"):
        assert search_transformers(catalog.lattice(), 4, 2, 2) is None


def test_criterion_04_lambda_suite():
    with criterion(4, 120.0, "lambda embedding checks over Con(A), |A| <= 4"):
        for A in catalog.default_catalog():
            assert A.size <= 4
            report = verify_lambda_embedding(A)
            assert report.ok, (A.name, report.violations)
            assert set(report.checks) == {"congruence", "injective", "meet", "compose", "join"}


def _assert_lifts(cert):
    report = lift_failure_check(cert)
    assert report.ok
    n = cert.algebra.size
    assert report.lifted.algebra.size == n * n
    assert report.lifted.validate()
    return report


def test_criterion_05_failures_lift():
    with criterion(5, 120.0, "distributive, commuting, modular laws fail in A and in A^[2]"):
        set3, set4 = catalog.empty_set(3), catalog.empty_set(4)
        for text, A in ((DISTRIBUTIVE, set3), (COMMUTE, set3), (MODULAR, set4)):
            v = check_equation(A, parse_cong_equation(text))
            assert not v, text
            _assert_lifts(v.witness)
        # named commuting witness a = eq{(0,1)}, b = eq{(1,2)} lifts to ((0,0),(2,2))
        eq = parse_cong_equation(COMMUTE)
        env = {"a": Partition.from_blocks(3, [[0, 1], [2]]), "b": Partition.from_blocks(3, [[1, 2], [0]])}
        cert = FailureCertificate(set3, eq, env, eval_cong_term(set3, eq.lhs, env),
                                  eval_cong_term(set3, eq.rhs, env), (0, 2))
        assert _assert_lifts(cert).lifted.discrepancy == (0, 8)
        assert check_equation(catalog.empty_set(3), parse_cong_equation(MODULAR))


def test_criterion_06_lift_pipeline(tmp_path, capsys):
    with criterion(6, 60.0, "ceq lift emits the lifted failure and the transformer check"):
        cert = check_equation(catalog.empty_set(3), parse_cong_equation(DISTRIBUTIVE)).witness
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(certificate_to_dict(cert)))
        code = main(["--json", "ceq", "lift", str(path)])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0
        assert rep["lifted_size"] == 9
        lifted = rep["lifted_certificate"]
        assert lifted["discrepancy"] == [0, 4]
        assert lifted["lhs"] != lifted["rhs"]
        assert rep["transformer_check"]["verdict"] == "holds"
        assert rep["separation_formula"] is True


def test_criterion_07_theta_oracle():
    with criterion(7, 120.0, "theta equals the brute-force least congruence, 200 cases"):
        rng = np.random.default_rng(20261018)
        for _ in range(200):
            A = random_algebra(rng)
            m = int(rng.integers(0, 4))
            seeds = [tuple(int(v) for v in rng.integers(0, A.size, size=2)) for _ in range(m)]
            assert theta(A, seeds).pairs == brute_theta(A, seeds)


def test_criterion_08_chain_soundness():
    with criterion(8, 60.0, "100 extracted chains replay"):
        rng = np.random.default_rng(8)
        done = 0
        while done < 100:
            A = random_algebra(rng)
            seeds = [tuple(int(v) for v in rng.integers(0, A.size, size=2)) for _ in range(int(rng.integers(1, 4)))]
            pairs = sorted(theta(A, seeds).pairs)
            # prefer off-diagonal pairs so most chains have steps
            pairs = [p for p in pairs if p[0] != p[1]] or pairs
            a, c = pairs[int(rng.integers(len(pairs)))]
            chain = extract_chain(A, seeds, a, c)
            assert chain.endpoints == (a, c)
            assert chain.replay(A, seeds)
            done += 1


def test_criterion_09_consequence():
    with criterion(9, 60.0, "consequence properties, modus ponens, countermodel"):
        b2 = catalog.boolean()
        report = consequence_properties_check([b2], bool_tau(), trials=100, seed=9)
        assert report.ok, report.violations
        assert all(report.checked[p] == 100 for p in ("reflexivity", "cut", "substitution"))
        assert entails(ConsequenceQuery((b2,), bool_tau(), (X, app("imp", X, Y)), Y, 2))
        v = entails(ConsequenceQuery((b2,), bool_tau(), (), X, 1))
        assert not v and v.witness == Countermodel(0, (0,))


def test_criterion_10_maltsev_round_trip():
    with criterion(10, 60.0, "derived and hand-written Boolean schemes check"):
        b2 = catalog.boolean()
        scheme = derive_maltsev_scheme(b2, bool_tau(), bool_rho())
        assert maltsev_scheme_check(b2, scheme)

        def iff(p, q):
            return app("and", app("imp", p, q), app("imp", q, p))

        hand = MaltsevScheme(bool_tau(), bool_rho(), (iff(app("and", Var(2), Var(3)), Y),))
        assert maltsev_scheme_check(b2, hand)


def test_criterion_11_generation_evidence():
    with criterion(11, 300.0, "20 sampled m_t on (3-set)^[2] generated at depth <= 3, Con unchanged"):
        set3 = catalog.empty_set(3)
        M = matrix_power(set3, 2)
        base = [p.pairs for p in con(M.result)]
        rng = random.Random(11)
        for _ in range(20):
            k = rng.choice([1, 2])
            t = TermTuple(tuple(Var(rng.randrange(2 * k)) for _ in range(2)), k)
            table = m_t_table(set3, 2, t)
            assert is_generated_operation(M, table, 3), t
            assert [p.pairs for p in con(M.result.expand("mt", table))] == base
