"""Table of N_i, dim G/P_i, the parity obstruction and the available element for each node.

    python3 scripts/parity_table.py [--kinds G2 F4 E6 E7 E8] [--search-bound 12]
"""

import argparse
import time

from cyclok.rootdata import (
    UnsupportedFamily,
    bounded_star_search,
    build_root_system,
    check_star_conditions,
    construct_root_t0,
    n_index,
    parity_obstruction,
)


def row(rs, i, bound):
    dim = rs.flag_dimension(i)
    obs = parity_obstruction(rs, i)
    if obs is not None:
        status = f"obstructed (omega order {obs.order_mod_qi})"
    else:
        try:
            t0 = construct_root_t0(rs.kind, rs.rank, i)
            status = f"constructed, order {t0.order}, star {'pass' if check_star_conditions(rs, i, t0).passed else 'FAIL'}"
        except UnsupportedFamily:
            if bound:
                t = time.perf_counter()
                rep = bounded_star_search(rs, i, bound)
                where = "complete" if rep.complete else f"skipped orders {rep.orders_skipped[0]}..{rep.orders_skipped[-1]}"
                hit = f"found {len(rep.found)}" if rep.found else "none found"
                status = f"search <= {bound}: {hit} ({where}, {time.perf_counter() - t:.1f}s)"
            else:
                status = "open"
    return f"{rs.name:>4} node {i}: N = {n_index(rs, i):3d}, dim = {dim:3d}  {status}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kinds", nargs="+", default=["G2", "F4", "E6", "E7", "E8"])
    ap.add_argument("--search-bound", type=int, default=12, help="0 disables the search")
    args = ap.parse_args()
    for kind in args.kinds:
        rs = build_root_system(kind)
        for i in range(1, rs.rank + 1):
            print(row(rs, i, args.search_bound))


if __name__ == "__main__":
    main()
