"""Mod-p reductions of collection members and line bundles against a standard basis.

    python3 scripts/congruence_tables.py projective:4 2
    python3 scripts/congruence_tables.py grassmannian:2:4 2
"""

import argparse

from cyclok.congruence import coefficients, line_bundle_table, match_line_bundle, reduce_coefficients
from cyclok.exceptional import standard_collection
from cyclok.localization import space_and_t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("space")
    ap.add_argument("p", type=int)
    args = ap.parse_args()
    space, t0 = space_and_t0(args.space)
    basis = standard_collection(space, t0)
    table = line_bundle_table(space, t0, basis, args.p)
    print(f"{args.space} mod {args.p}; basis {[b.label for b in basis]}")
    print("line bundles:")
    for label, red, _ in table.entries:
        print(f"  {label:>12}  {list(red)}")
    print("members:")
    for e in basis:
        red = reduce_coefficients(coefficients(space, t0, basis, e, check_basis=False), args.p)
        hit = match_line_bundle(red, table)
        m = "-" if hit is None else f"{'+' if hit[1] > 0 else '-'}{hit[0]}"
        print(f"  {e.label:>12}  rk {e.rank}  {red}  line bundle {m}")


if __name__ == "__main__":
    main()
