#!/usr/bin/env python3
"""Cross-checks mono-square's exact search against the CaDiCaL solver.

    pysat_cross_check.py CLI     run the checks (exit 77 if pysat is missing)
    pysat_cross_check.py --solve FILE.cnf
                                 act as a DIMACS solver with SAT-competition output
"""

import json
import os
import random
import shlex
import subprocess
import sys
import tempfile

try:
    from pysat.formula import CNF
    from pysat.solvers import Cadical153
except ImportError:
    print("pysat not installed; skipping")
    sys.exit(77)


def solve(path):
    cnf = CNF(from_file=path)
    with Cadical153(bootstrap_with=cnf.clauses) as s:
        if not s.solve():
            return None
        return s.get_model()


def solve_main(path):
    model = solve(path)
    if model is None:
        print("s UNSATISFIABLE")
    else:
        print("s SATISFIABLE")
        print("v " + " ".join(map(str, model)) + " 0")


def cli(exe, *args):
    out = subprocess.run([exe, *map(str, args)], check=True, capture_output=True, text=True).stdout
    return json.loads(out)["result"]


def colouring_file(n, model, size, path):
    colours = ["+1"] * size
    for lit in model:
        if 1 <= abs(lit) <= size:
            colours[abs(lit) - 1] = "+1" if lit > 0 else "-1"
    segments = []
    for i, c in enumerate(colours):
        if segments and segments[-1]["colour"] == c:
            segments[-1]["to"] = n + i
        else:
            segments.append({"from": n + i, "to": n + i, "colour": c})
    with open(path, "w") as f:
        json.dump({"domain": [n, n + size - 1], "rule": {"type": "piecewise", "segments": segments}}, f)


def main(exe):
    failures = 0
    S = {n: cli(exe, "threshold", "--n", n, "--cap", 1000)["S"] for n in range(1, 6)}
    rng = random.Random(2024)
    cases = [(n, S[n] - 1) for n in S] + [(n, S[n]) for n in S]
    while len(cases) < 30:
        n = rng.randint(1, 5)
        cases.append((n, rng.randint(n, 200)))
    with tempfile.TemporaryDirectory() as tmp:
        cnf_path = os.path.join(tmp, "x.cnf")
        col_path = os.path.join(tmp, "w.json")
        for n, m in cases:
            cli(exe, "export-sat", "--n", n, "--m", m, "--out", cnf_path)
            model = solve(cnf_path)
            expected = m < S[n]
            ok = (model is not None) == expected
            if ok and model is not None:
                colouring_file(n, model, m - n + 1, col_path)
                ok = cli(exe, "oracle", "--file", col_path)["count"] == 0
            print(f"[{n}, {m}] cadical={'sat' if model else 'unsat'} backtracker={'sat' if expected else 'unsat'}"
                  f" {'ok' if ok else 'MISMATCH'}")
            failures += not ok

    solver = f"{shlex.quote(sys.executable)} {shlex.quote(os.path.abspath(__file__))} --solve"
    for n in range(1, 6):
        r = cli(exe, "threshold", "--n", n, "--mode", "external-solver", "--solver", solver)
        ok = r["S"] == S[n] and r["method"] == "external-solver"
        print(f"external S({n}) = {r['S']} {'ok' if ok else 'MISMATCH'}")
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    if len(sys.argv) == 3 and sys.argv[1] == "--solve":
        solve_main(sys.argv[2])
        sys.exit(0)
    if len(sys.argv) != 2:
        print(__doc__)
        sys.exit(2)
    sys.exit(main(sys.argv[1]))
