"""Exhaustive search for torus elements satisfying the fixed-point condition on G/P_i.

    python3 scripts/bounded_search.py F4 2 --order-bound 24
    python3 scripts/bounded_search.py B 4 2 --order-bound 16
"""

import argparse
import json
import time

from cyclok.rootdata import bounded_star_search, build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("kind")
    ap.add_argument("args", nargs="+", type=int, help="[rank] node")
    ap.add_argument("--order-bound", type=int, default=24)
    ap.add_argument("--max-points", type=int, default=2_000_000)
    ap.add_argument("--keep", type=int, default=5)
    a = ap.parse_args()
    rank, node = (a.args if len(a.args) == 2 else (None, a.args[0]))
    rs = build_root_system(a.kind, rank)
    t = time.perf_counter()
    rep = bounded_star_search(rs, node, a.order_bound, a.max_points, a.keep)
    out = rep.to_json()
    out["seconds"] = round(time.perf_counter() - t, 2)
    out["space"] = f"{rs.name} node {node}"
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
