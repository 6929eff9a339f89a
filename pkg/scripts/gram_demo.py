"""Print Gram matrices of the standard collections at their torus elements.

    python3 scripts/gram_demo.py projective:4 grassmannian:2:4 quadric-even:4 hirzebruch:2
"""

import argparse

from cyclok.exceptional import standard_collection
from cyclok.localization import gram_matrix, space_and_t0

DEFAULT = ["projective:4", "grassmannian:2:4", "quadric-even:4", "quadric-odd:5", "hirzebruch:2",
           "prod(projective:2;projective:3)"]


def short(z):
    q = z.to_rational()
    return str(q) if q is not None else "*"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spaces", nargs="*", default=DEFAULT)
    args = ap.parse_args()
    for desc in args.spaces:
        space, t0 = space_and_t0(desc)
        classes = standard_collection(space, t0)
        g = gram_matrix(space, t0, classes)
        print(f"{desc}  (order {t0.order}, {len(space)} fixed points)  identity: {g.is_identity}")
        width = max(len(c.label) for c in classes)
        for c, row in zip(classes, g.entries):
            print(f"  {c.label:>{width}}  " + " ".join(f"{short(x):>3}" for x in row))
        print()


if __name__ == "__main__":
    main()
