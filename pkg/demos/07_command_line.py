"""
The command line
================

Everything above is also reachable from ``algcalc``. This script drives the
entry point in-process and shows the exit codes.
"""

import json
import tempfile
from pathlib import Path

from algcalc.cli import main

work = Path(tempfile.mkdtemp())
main(["catalog", str(work / "cat")])

# %%
# 1 means the equation fails; the certificate is written out for lifting.
code = main(["ceq", "find", "a ^ (b + c) = (a ^ b) + (a ^ c)", "--catalog", str(work / "cat"),
             "-o", str(work / "cert.json")])
print("exit", code)

# %%
code = main(["--json", "ceq", "lift", str(work / "cert.json")])
print("exit", code)

# %%
(work / "bool.tau").write_text("x0 | one\n")
(work / "bool.rho").write_text("(imp x0 x1)\n(imp x1 x0)\n")
print("exit", main(["check-transformers", "builtin:b2", "--tau", str(work / "bool.tau"),
                    "--rho", str(work / "bool.rho")]))
print(json.loads((work / "cat" / "b2.json").read_text())["operations"][0])
