"""JSON documents for algebras, schemes and certificates; transformer text files.

Algebra document::

    {"name": "b2", "size": 2,
     "operations": [{"symbol": "and", "arity": 2, "table": [0, 0, 0, 1]}, ...]}

Tables are flat and row-major. A tau file has one ``delta | epsilon`` pair
per line and a rho file one binary term per line; terms use prefix form and
``#`` starts a comment.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import FiniteAlgebra
from .algebraize import MaltsevScheme, TransformerRho, TransformerTau
from .catalog import BUILTIN
from .cong_equations import FailureCertificate, parse_cong_equation
from .congruence import BinRel, Partition
from .errors import AlgebraError
from .terms import parse_term

BUILTIN_PREFIX = "builtin:"


def algebra_to_dict(A: FiniteAlgebra) -> dict:
    return {
        "name": A.name,
        "size": A.size,
        "operations": [
            {"symbol": sym, "arity": k, "table": table.ravel().tolist()}
            for sym, k, table in A.operations()
        ],
    }


def algebra_from_dict(doc: dict) -> FiniteAlgebra:
    try:
        ops = [(o["symbol"], int(o["arity"]), list(o["table"])) for o in doc["operations"]]
        return FiniteAlgebra.from_operations(int(doc["size"]), ops, name=doc.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra document: {exc}") from None


def save_algebra(A: FiniteAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_dict(A), indent=1) + "\n")


def load_algebra(source) -> FiniteAlgebra:
    """Read an algebra document, or ``builtin:<name>`` from the catalog."""
    source = str(source)
    if source.startswith(BUILTIN_PREFIX):
        key = source[len(BUILTIN_PREFIX):]
        if key not in BUILTIN:
            raise AlgebraError(f"no builtin algebra {key!r}; choose from {sorted(BUILTIN)}")
        return BUILTIN[key]()
    try:
        doc = json.loads(Path(source).read_text())
    except OSError as exc:
        raise AlgebraError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{source}: not valid JSON ({exc})") from None
    A = algebra_from_dict(doc)
    if not A.name:
        A = FiniteAlgebra(A.size, A.signature, A.tables, name=Path(source).stem)
    return A


def _lines(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def parse_tau(text: str, signature) -> TransformerTau:
    pairs = []
    for line in _lines(text):
        if line.count("|") != 1:
            raise AlgebraError(f"tau line needs exactly one '|': {line!r}")
        d, e = line.split("|")
        pairs.append((parse_term(d, signature), parse_term(e, signature)))
    return TransformerTau(tuple(pairs))


def parse_rho(text: str, signature) -> TransformerRho:
    return TransformerRho(tuple(parse_term(line, signature) for line in _lines(text)))


def format_tau(tau: TransformerTau) -> str:
    return "".join(f"{d} | {e}\n" for d, e in tau.pairs)


def format_rho(rho: TransformerRho) -> str:
    return "".join(f"{r}\n" for r in rho.terms)


def scheme_to_dict(scheme: MaltsevScheme) -> dict:
    return {
        "tau": [[str(d), str(e)] for d, e in scheme.tau.pairs],
        "rho": [str(r) for r in scheme.rho.terms],
        "chain": [str(t) for t in scheme.chain],
    }


def scheme_from_dict(doc: dict, signature) -> MaltsevScheme:
    try:
        tau = TransformerTau(tuple((parse_term(d, signature), parse_term(e, signature)) for d, e in doc["tau"]))
        rho = TransformerRho(tuple(parse_term(r, signature) for r in doc["rho"]))
        chain = tuple(parse_term(t, signature) for t in doc["chain"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(f"malformed scheme document: {exc}") from None
    return MaltsevScheme(tau, rho, chain)


def partition_to_list(p: Partition) -> list[int]:
    return list(p.block_of)


def certificate_to_dict(cert: FailureCertificate) -> dict:
    return {
        "algebra": algebra_to_dict(cert.algebra),
        "equation": str(cert.equation),
        "assignment": {v: partition_to_list(p) for v, p in cert.assignment.items()},
        "assignment_blocks": {v: [list(b) for b in p.blocks()] for v, p in cert.assignment.items()},
        "lhs": sorted(list(p) for p in cert.lhs.pairs),
        "rhs": sorted(list(p) for p in cert.rhs.pairs),
        "discrepancy": list(cert.discrepancy),
    }


def certificate_from_dict(doc: dict) -> FailureCertificate:
    """Rebuild a certificate and re-validate it; raises on any mismatch."""
    if "certificate" in doc and "algebra" not in doc:
        doc = doc["certificate"]
    try:
        A = algebra_from_dict(doc["algebra"])
        eq = parse_cong_equation(doc["equation"])
        assignment = {v: Partition(A.size, tuple(b)) for v, b in doc["assignment"].items()}
        cert = FailureCertificate(
            A, eq, assignment,
            BinRel(A.size, frozenset(map(tuple, doc["lhs"]))),
            BinRel(A.size, frozenset(map(tuple, doc["rhs"]))),
            tuple(doc["discrepancy"]),
        )
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed certificate: {exc}") from None
    if not cert.validate():
        raise AlgebraError("certificate does not re-validate")
    return cert
