#!/usr/bin/env python3
"""Scan homotopy classes of maps to the circle and tally the verdicts.

Usage:
    python scripts/circle_scan.py [--n N] [--m M] [--window W]

Enumerates every class tuple with entries in [-W, W], decides the
Borsuk-Ulam property for each, cross-checks against the brute-force
feasibility search, and prints the failing patterns found.
"""
import argparse
import sys
from itertools import product

from braidbu.decide import circle_solver, decide_circle


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2, help="order of the cyclic action")
    parser.add_argument("--m", type=int, default=1, help="number of conjugate blocks")
    parser.add_argument("--window", type=int, default=3)
    args = parser.parse_args()
    n, m, w = args.n, args.m, args.window

    length = n * m + 1
    total = failing = disagreements = 0
    examples = []
    for cls in product(range(-w, w + 1), repeat=length):
        total += 1
        verdict = decide_circle(cls, n, m)
        brute = circle_solver(cls, n, m)
        if verdict.holds == brute:
            disagreements += 1
        if not verdict.holds:
            failing += 1
            if len(examples) < 10:
                examples.append(cls)

    print(f"scanned {total} classes of maps to the circle (n={n}, m={m})")
    print(f"property fails for {failing} classes; solver disagreements: {disagreements}")
    print("sample failing classes (leading entry = 1 mod n, constant blocks):")
    for cls in examples:
        print(f"  {cls}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
