#!/usr/bin/env python3
"""Print the full generator bookkeeping for a given particle count.

Usage:
    python scripts/generator_tables.py [--m M] [--skip-oracles]

Shows the critical-cell census, the selected edges, the free bases of both
fundamental groups, and the iota/p1/theta images of every basis element,
with the independent oracle value next to each closed form.
"""
import argparse
import math
import sys

from braidbu.fundgroup import get_system
from braidbu.morse import edge_data
from braidbu.oracle import chi_oracle
from braidbu.words import FreeWord


def fmt(word: FreeWord) -> str:
    return word.format(lambda g: g.name())


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument(
        "--skip-oracles", action="store_true", help="print closed forms only"
    )
    args = parser.parse_args()
    system = get_system(args.m)
    m = args.m

    print(f"== particle count m = {m} ==")
    for label, cx, fld in (
        ("ordered", system.fm, system.field_fm),
        ("quotient", system.quotient, system.field_q),
    ):
        cells = {d: cx.num_cells(d) for d in cx.cells_by_dim}
        print(f"{label}: cells {cells}, chi {chi_oracle(cx)}")
        print(
            f"  critical: {len(fld.critical(0))} vertices, {len(fld.critical(1))} edges"
        )

    print(f"\nselected edges, ordered space ({math.factorial(m) - 1} expected):")
    for cell in sorted(system.selected_fm, key=system.fm.sort_key):
        sigma, b = edge_data(cell, system.graph, m)
        print(f"  {cell}  type={b} sigma={sigma}")

    print("\nbasis and maps, ordered space:")
    for gen in system.basis_fm:
        line = f"  {gen.name():18} iota = {fmt(system.iota_closed_form(gen))}"
        if not args.skip_oracles:
            agree = system.iota_closed_form(gen) == system.iota_oracle(gen)
            line += f"  [oracle {'ok' if agree else 'MISMATCH'}]"
        line += f"  p1 = {system.p1_closed_form(gen)}"
        print(line)

    print("\nbasis and theta, quotient space:")
    for gen in system.basis_q:
        line = f"  {gen.name():18} theta = {system.theta_closed_form(gen)}"
        if not args.skip_oracles:
            agree = system.theta_closed_form(gen) == system.theta_oracle(FreeWord.gen(gen))
            line += f"  [oracle {'ok' if agree else 'MISMATCH'}]"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
