#!/usr/bin/env python3
"""DIMACS front end for the solvers bundled with python-sat.

Usage: pysat_solve.py FILE.cnf

The engine defaults to CaDiCaL 1.5.3; set PYSAT_ENGINE to another python-sat
solver name (kissat404, cadical195, ...) to override it.

Prints the competition output grammar ("s SATISFIABLE" / "s UNSATISFIABLE"
plus "v" model lines) and exits 10 (SAT) or 20 (UNSAT).
"""
import os
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main(argv):
    if len(argv) != 2:
        print("usage: pysat_solve.py FILE.cnf", file=sys.stderr)
        return 1
    formula = CNF(from_file=argv[1])
    engine = os.environ.get("PYSAT_ENGINE", "cadical153")
    with Solver(name=engine, bootstrap_with=formula.clauses) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        model = solver.get_model() or []
        assigned = {abs(lit): lit for lit in model}
        values = [assigned.get(v, -v) for v in range(1, formula.nv + 1)]
        print("s SATISFIABLE")
        for i in range(0, len(values), 16):
            print("v " + " ".join(str(x) for x in values[i:i + 16]))
        print("v 0")
        return 10


if __name__ == "__main__":
    sys.exit(main(sys.argv))
