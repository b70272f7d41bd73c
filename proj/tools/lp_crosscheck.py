#!/usr/bin/env python3
"""Cross-check exported LP files against the combinatorial solver.

Reads an LP file produced by `nestsolve solve --emit-lp` (objective `z`,
one `link` row `v0 z - y1 - ... - ym >= 0`, candidate rows
`ni_ck: yi + b z >= a`, all variables free), solves it with scipy's HiGHS
backend, and compares the optimum against an expected value.

Usage:
    lp_crosscheck.py FILE.lp --expect Z [--rtol 1e-6]

Exit codes: 0 match, 1 mismatch or bad input, 77 scipy unavailable.
"""

import argparse
import re
import sys


def parse_lp(path):
    """Returns (v0, [(nest, b, a), ...], m) from our LP writer's output."""
    text = open(path).read()
    body = text.split("Subject To", 1)[1].split("Bounds", 1)[0]
    # Collapse folded continuation lines: a row ends at the next `name:` or at
    # the section end, so just strip newlines and split on named rows.
    body = " ".join(line.strip() for line in body.strip().splitlines())
    rows = re.findall(r"(\w+):\s*([^:]*?)(?=\s+\w+:|$)", body)
    v0 = None
    cuts = []
    m = 0
    for name, expr in rows:
        expr = expr.strip()
        if name == "link":
            match = re.match(r"([-\d.eE+]+)\s+z((?:\s*-\s*y\d+)+)\s*>=\s*0", expr)
            if not match:
                raise ValueError(f"unrecognized link row: {expr!r}")
            v0 = float(match.group(1))
            m = len(re.findall(r"y\d+", match.group(2)))
        else:
            match = re.match(r"y(\d+)\s*\+\s*([-\d.eE+]+)\s+z\s*>=\s*([-\d.eE+]+)", expr)
            if not match:
                raise ValueError(f"unrecognized candidate row {name}: {expr!r}")
            cuts.append((int(match.group(1)) - 1, float(match.group(2)), float(match.group(3))))
    if v0 is None:
        raise ValueError("no link row found")
    return v0, cuts, m


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("lp_file")
    parser.add_argument("--expect", type=float, required=True,
                        help="expected optimal z (e.g. the solver's z_star)")
    parser.add_argument("--rtol", type=float, default=1e-6)
    args = parser.parse_args()

    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:
        print("scipy not available; skipping", file=sys.stderr)
        return 77

    v0, cuts, m = parse_lp(args.lp_file)

    # Variables x = [z, y1..ym]; minimize z with A_ub x <= b_ub.
    num_vars = 1 + m
    c = np.zeros(num_vars)
    c[0] = 1.0
    a_ub = []
    b_ub = []
    # link: v0 z - sum y_i >= 0  ->  -v0 z + sum y_i <= 0
    row = np.zeros(num_vars)
    row[0] = -v0
    row[1:] = 1.0
    a_ub.append(row)
    b_ub.append(0.0)
    # cuts: y_i + b z >= a  ->  -y_i - b z <= -a
    for nest, b, a in cuts:
        row = np.zeros(num_vars)
        row[0] = -b
        row[1 + nest] = -1.0
        a_ub.append(row)
        b_ub.append(-a)

    result = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                     bounds=[(None, None)] * num_vars, method="highs")
    if not result.success:
        print(f"LP solve failed: {result.message}", file=sys.stderr)
        return 1

    z = result.x[0]
    gap = abs(z - args.expect) / max(1.0, abs(args.expect))
    print(f"lp optimum:      {z:.15g}")
    print(f"expected z_star: {args.expect:.15g}")
    print(f"relative gap:    {gap:.3e}")
    if gap > args.rtol:
        print(f"MISMATCH (tolerance {args.rtol:g})")
        return 1
    print(f"match (tolerance {args.rtol:g})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
