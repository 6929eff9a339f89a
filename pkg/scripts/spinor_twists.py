"""Which torus twists of the spinor classes give an orthonormal quadric collection.

    python3 scripts/spinor_twists.py --dims 3 4 5 6 --bound 6
"""

import argparse

from cyclok.exceptional import _raw_spinor, line_bundle_class, spinor_class
from cyclok.localization import gram_matrix, space_and_t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", nargs="+", type=int, default=[3, 4, 5, 6, 7, 8])
    ap.add_argument("--bound", type=int, default=6)
    args = ap.parse_args()
    for d in args.dims:
        desc = f"quadric-{'even' if d % 2 == 0 else 'odd'}:{d}"
        space, t0 = space_and_t0(desc)
        k = space.root[1]
        top = 2 * k - 3 if d % 2 == 0 else 2 * k - 2
        lines = [line_bundle_class(space, t0, m) for m in range(0, top + 1)]
        signs = (1, -1) if d % 2 == 0 else (1,)
        good = []
        for m in range(-args.bound, args.bound + 1):
            coll = lines[:1] + [_raw_spinor(space, t0, s, m) for s in signs] + lines[1:]
            if gram_matrix(space, t0, coll).is_identity:
                good.append(m)
        pinned = spinor_class(space, t0).twist
        print(f"{desc}: orthonormal twists {good}; pinned {pinned}")


if __name__ == "__main__":
    main()
