"""Localized classes of standard full exceptional collections.

Covered: line bundles, Beilinson on projective space, Kapranov on
Grassmannians (Schur functors of the dual tautological bundle), quadrics with
spinor bundles, Hirzebruch surfaces, and external products of these.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cyclotomic import Cyclotomic
from .descriptors import DescriptorError, split_top_level
from .linalg import cyclotomic_determinant
from .localization import (
    LocalizedClass,
    SpaceModel,
    central_values,
    class_from_fibers,
    gram_matrix,
    product_class,
    space_and_t0,
)
from .rootdata import TorusElement, UnsupportedFamily, Weight

Partition = tuple[int, ...]


class UnsupportedTwist(ValueError):
    pass


class NormalizationFailure(RuntimeError):
    pass


# -- central characters ---------------------------------------------------------------


@dataclass(frozen=True)
class CentralCharacter:
    """Exponents (mod 1) of the central elements of the space on a class."""

    family: str
    values: tuple[Fraction, ...]

    @property
    def label(self) -> str:
        return _character_label(self.family, self.values)

    def __mul__(self, other: CentralCharacter) -> CentralCharacter:
        if len(self.values) != len(other.values):
            raise ValueError("characters of different groups")
        return CentralCharacter(self.family, tuple((a + b) % 1 for a, b in zip(self.values, other.values)))


def _character_label(family: str, values: tuple[Fraction, ...]) -> str:
    if family == "GL":
        (x,) = values
        return f"m/n={x}"
    if family == "D":
        z0, c = values
        if z0 == 0:
            return "trivial" if c == 0 else "chi0"
        return "chi+/-"
    if family in ("B", "C"):
        return "trivial" if values[0] == 0 else "nontrivial"
    return ",".join(str(v) for v in values)


def _center_family(space: SpaceModel) -> str:
    if space.family in ("projective", "grassmannian", "A"):
        return "GL"
    if space.root is not None:
        return space.root[0]
    return space.family


def central_character(space: SpaceModel, v: LocalizedClass) -> CentralCharacter | None:
    if v.central is None:
        return None
    return CentralCharacter(_center_family(space), v.central)


def gl_residue(space: SpaceModel, v: LocalizedClass) -> int:
    """m(V) mod n for a class on a GL_n-space."""
    n = space.torus_rank
    (x,) = v.central
    return int(x * n) % n


def spin_character_name(space: SpaceModel, v: LocalizedClass) -> str:
    """trivial / chi0 / chi+ / chi- for Spin(2k); trivial / nontrivial otherwise."""
    if v.central is None:
        raise ValueError(f"{v.label} has no central character")
    kind, k = space.root[0], space.root[1]
    if kind != "D":
        return "trivial" if v.central[0] == 0 else "nontrivial"
    z0, c = v.central
    if z0 == 0:
        return "trivial" if c == 0 else "chi0"
    # on the spin lift c of -1, chi+ takes the value i^k
    return "chi+" if (c - Fraction(k, 4)) % 1 == 0 else "chi-"


# -- line bundles ---------------------------------------------------------------------------


def _as_twist(space: SpaceModel, twist) -> tuple[int, ...]:
    t = (twist,) if isinstance(twist, int) else tuple(twist)
    if len(t) != len(space.generators):
        raise UnsupportedTwist(
            f"{space.descriptor} has Picard generators {space.generator_names}; got twist {t}"
        )
    return t


def line_bundle_class(space: SpaceModel, t0: TorusElement, twist) -> LocalizedClass:
    t = _as_twist(space, twist)
    fibers = [[w] for w in space.line_fibers(t)]
    label = f"O({','.join(map(str, t))})"
    degree = _gl_degree(space, fibers[0]) if _center_family(space) == "GL" else None
    return class_from_fibers(
        space, t0, fibers, label, rank=1, degree=degree, central=central_values(space, fibers[0])
    )


def _gl_degree(space: SpaceModel, fiber: Sequence[Weight]) -> Fraction:
    k = sum(space.fixed_points[0].key)
    return sum((sum(w) for w in fiber), Fraction(0)) / k


def beilinson_collection(n: int) -> tuple[SpaceModel, TorusElement, list[LocalizedClass]]:
    """O, O(1), ..., O(n-1) on the projective space of lines in an n-dimensional space."""
    if n < 2:
        raise UnsupportedFamily("Beilinson collection needs n >= 2")
    space, t0 = space_and_t0(f"projective:{n}")
    return space, t0, [line_bundle_class(space, t0, m) for m in range(n)]


# -- Schur functors ------------------------------------------------------------------------


def complete_homogeneous(values: Sequence[Cyclotomic], degree: int) -> list[Cyclotomic]:
    """[h_0, ..., h_degree] of the values, by the recursion over variables."""
    h = [Cyclotomic.rational(1)] + [Cyclotomic.rational(0)] * degree
    for x in values:
        # h^{(j)}_d = h^{(j-1)}_d + x * h^{(j)}_{d-1}
        for d in range(1, degree + 1):
            h[d] = h[d] + x * h[d - 1]
    return h


def schur_evaluate(partition: Sequence[int], values: Sequence[Cyclotomic]) -> Cyclotomic:
    """s_lambda(values) via the Jacobi-Trudi determinant det(h_{lambda_i - i + j})."""
    lam = [p for p in partition if p]
    if any(a < b for a, b in zip(lam, lam[1:])) or any(p < 0 for p in partition):
        raise ValueError(f"{tuple(partition)} is not a partition")
    if len(lam) > len(values):
        return Cyclotomic.rational(0)
    if not lam:
        return Cyclotomic.rational(1)
    top = lam[0] + len(lam)
    h = complete_homogeneous(values, top)
    zero = Cyclotomic.rational(0)
    m = len(lam)
    matrix = [[h[lam[i] - i + j] if lam[i] - i + j >= 0 else zero for j in range(m)] for i in range(m)]
    return cyclotomic_determinant(matrix)


def hook_content(partition: Sequence[int], k: int) -> int:
    """dim of the GL_k irreducible with highest weight lambda: prod (k + c(x)) / h(x)."""
    lam = [p for p in partition if p]
    if len(lam) > k:
        return 0
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    num = den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= k + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    value = Fraction(num, den)
    assert value.denominator == 1, f"hook-content quotient {value} is not integral"
    return int(value)


def box_partitions(rows: int, cols: int) -> list[Partition]:
    """Partitions with at most ``rows`` parts, each <= cols, ordered lexicographically."""
    parts = [p for p in itertools.product(range(cols + 1), repeat=rows) if all(a >= b for a, b in zip(p, p[1:]))]
    return sorted(parts)


def schur_class(space: SpaceModel, t0: TorusElement, partition: Sequence[int]) -> LocalizedClass:
    """Sigma^lambda of the dual tautological bundle on a Grassmannian or projective space."""
    if _center_family(space) != "GL":
        raise UnsupportedFamily(f"Schur functors are modelled on GL-spaces, not {space.descriptor}")
    n = space.torus_rank
    k = int(sum(space.fixed_points[0].key))
    lam = tuple(partition) + (0,) * (k - len(partition))
    if len(lam) > k:
        raise ValueError(f"partition {tuple(partition)} has more than {k} parts")
    x = [t0.evaluate(tuple(Fraction(int(i == j)) for j in range(n))) for i in range(n)]
    values = []
    for p in space.fixed_points:
        values.append(schur_evaluate(lam, [x[i] for i in range(n) if p.key[i]]))
    rank = hook_content(lam, k)
    size = sum(lam)
    central = (Fraction(size, n) % 1,)
    label = "schur[" + ",".join(map(str, lam)) + "]"
    return LocalizedClass(space.descriptor, tuple(values), label, rank, Fraction(rank * size, k), central)


def kapranov_collection(k: int, n: int) -> tuple[SpaceModel, TorusElement, list[LocalizedClass]]:
    space, t0 = space_and_t0(f"grassmannian:{k}:{n}")
    return space, t0, [schur_class(space, t0, lam) for lam in box_partitions(k, n - k)]


def straightens_to_zero(partition: Sequence[int], n: int) -> bool:
    """True when lambda_i - i = lambda_j - j mod n for some i != j."""
    shifted = [(p - i) % n for i, p in enumerate(partition)]
    return len(set(shifted)) < len(shifted)


# -- quadrics -------------------------------------------------------------------------------


def _spinor_fibers(space: SpaceModel, sign: int, twist: int) -> list[list[Weight]]:
    kind, k, _ = space.root
    fibers = []
    for p in space.fixed_points:
        j = next(i for i, c in enumerate(p.key) if c)
        s = p.key[j]
        ws = []
        for signs in itertools.product((1, -1), repeat=k):
            # half-spin weights whose coefficient along the point direction is +1/2
            if signs[j] != s:
                continue
            if kind == "D" and signs.count(-1) % 2 != (0 if sign > 0 else 1):
                continue
            ws.append(tuple(Fraction(x, 2) + twist * p.key[i] for i, x in enumerate(signs)))
        fibers.append(ws)
    return fibers


def _quadric_k(space: SpaceModel) -> tuple[str, int]:
    if space.family not in ("quadric-even", "quadric-odd"):
        raise UnsupportedFamily(f"spinor bundles are modelled on quadrics, not {space.descriptor}")
    return space.root[0], space.root[1]


def _raw_spinor(space: SpaceModel, t0: TorusElement, sign: int, twist: int) -> LocalizedClass:
    kind, _ = _quadric_k(space)
    fibers = _spinor_fibers(space, sign, twist)
    name = "spinor" if kind == "B" else ("spinor+" if sign > 0 else "spinor-")
    return class_from_fibers(
        space, t0, fibers, name, central=central_values(space, fibers[0]), twist=twist
    )


def _twist_order(bound: int) -> list[int]:
    out = [0]
    for m in range(1, bound + 1):
        out += [m, -m]
    return out


@lru_cache(maxsize=None)
def _pinned_twist(descriptor: str) -> int:
    space, t0 = space_and_t0(descriptor)
    kind, k = _quadric_k(space)
    lines = [line_bundle_class(space, t0, m) for m in range(1, 2 * k - 2 if kind == "D" else 2 * k - 1)]
    o = line_bundle_class(space, t0, 0)
    for m in _twist_order(2 * k):
        signs = (1, -1) if kind == "D" else (1,)
        coll = [o] + [_raw_spinor(space, t0, s, m) for s in signs] + lines
        if gram_matrix(space, t0, coll).is_identity:
            return m
    raise NormalizationFailure(f"no twist in [-{2 * k}, {2 * k}] makes the spinor classes orthonormal")


def spinor_class(space: SpaceModel, t0: TorusElement, sign: int = 1, twist: int | None = None) -> LocalizedClass:
    """Spinor bundle on a quadric; the twist defaults to the pinned normalization."""
    if twist is None:
        twist = _pinned_twist(space.descriptor)
    return _raw_spinor(space, t0, sign, twist)


def quadric_collection(dim: int) -> tuple[SpaceModel, TorusElement, list[LocalizedClass]]:
    """(O, S+, S-, O(1), ..., O(2k-3)) on Q^{2k-2}, or (O, S, O(1), ..., O(2k-2)) on Q^{2k-1}."""
    desc = f"quadric-even:{dim}" if dim % 2 == 0 else f"quadric-odd:{dim}"
    space, t0 = space_and_t0(desc)
    kind, k = _quadric_k(space)
    spinors = [spinor_class(space, t0, 1), spinor_class(space, t0, -1)] if kind == "D" else [spinor_class(space, t0)]
    top = 2 * k - 3 if kind == "D" else 2 * k - 2
    lines = [line_bundle_class(space, t0, m) for m in range(1, top + 1)]
    return space, t0, [line_bundle_class(space, t0, 0)] + spinors + lines


# -- Hirzebruch surfaces ------------------------------------------------------------------------


def hirzebruch_collection(n: int) -> tuple[SpaceModel, TorusElement, list[LocalizedClass]]:
    """O, pi*O(1), O_F(1), O_F(1) (x) pi*O(1); twists are (base, relative)."""
    space, t0 = space_and_t0(f"hirzebruch:{n}")
    classes = [line_bundle_class(space, t0, t) for t in ((0, 0), (1, 0), (0, 1), (1, 1))]
    report = gram_matrix(space, t0, classes)
    if not report.is_identity:
        raise NormalizationFailure(f"Hirzebruch collection on F_{n} is not orthonormal: {report.violations[:2]}")
    return space, t0, classes


# -- dispatch ------------------------------------------------------------------------------------


def standard_collection(space: SpaceModel, t0: TorusElement) -> list[LocalizedClass]:
    fam = space.family
    if fam == "projective":
        return [line_bundle_class(space, t0, m) for m in range(space.params[0])]
    if fam == "grassmannian":
        k, n = space.params
        return [schur_class(space, t0, lam) for lam in box_partitions(k, n - k)]
    if fam in ("quadric-even", "quadric-odd"):
        return quadric_collection(space.params[0])[2]
    if fam == "hirzebruch":
        return [line_bundle_class(space, t0, t) for t in ((0, 0), (1, 0), (0, 1), (1, 1))]
    if fam == "prod":
        factor_t0 = split_t0(space, t0)
        per_factor = [standard_collection(f, t) for f, t in zip(space.factors, factor_t0)]
        return [product_class(space, combo) for combo in itertools.product(*per_factor)]
    raise UnsupportedFamily(f"no standard full exceptional collection is modelled for {space.descriptor}")


def split_t0(space: SpaceModel, t0: TorusElement) -> list[TorusElement]:
    out = []
    off = 0
    for f in space.factors:
        blocks = tuple((o - off, s) for o, s in t0.spin_blocks if off <= o < off + f.torus_rank)
        out.append(TorusElement(t0.coweight[off : off + f.torus_rank], blocks, None))
        off += f.torus_rank
    return out


_LINE = re.compile(r"O\((-?\d+(?:,-?\d+)*)\)")
_SCHUR = re.compile(r"schur\[(\d+(?:,\d+)*)?\]")


def bundle_class(space: SpaceModel, t0: TorusElement, text: str) -> LocalizedClass:
    """Class of a bundle descriptor: O(3), O(1,2), schur[2,1], spinor+, spinor-, spinor, prod(...)."""
    text = text.strip()
    if text.startswith("prod(") and text.endswith(")"):
        parts = split_top_level(text[5:-1])
        if space.family != "prod" or len(parts) != len(space.factors):
            raise DescriptorError(f"{text} does not match the factors of {space.descriptor}")
        subs = [bundle_class(f, t, p) for f, t, p in zip(space.factors, split_t0(space, t0), parts)]
        return product_class(space, subs, text)
    m = _LINE.fullmatch(text)
    if m:
        return line_bundle_class(space, t0, tuple(int(x) for x in m.group(1).split(",")))
    m = _SCHUR.fullmatch(text)
    if m:
        lam = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
        return schur_class(space, t0, lam)
    if text in ("spinor", "spinor+", "spinor-"):
        return spinor_class(space, t0, -1 if text == "spinor-" else 1)
    raise DescriptorError(f"cannot parse bundle descriptor {text!r}")
