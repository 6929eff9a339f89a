"""Torus fixed-point models, Lefschetz coefficients and the specialized Euler pairing.

A space is described by its isolated torus fixed points. Each point carries the
multiset of tangent weights and the fiber weight of every Picard generator.
A K-theory class is a vector of traces, one cyclotomic number per fixed point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic
from .descriptors import SpaceDescriptor, parse_space
from .linalg import cyclotomic_determinant
from .rootdata import (
    HALF,
    StarReport,
    TorusElement,
    UnsupportedFamily,
    Weight,
    add,
    build_root_system,
    construct_t0,
    fmt_weight,
    inverting_signed_permutation,
    scale,
    unit,
)


class SingularLocalization(ValueError):
    def __init__(self, message: str, points: list[tuple[str, str]]):
        super().__init__(message)
        self.points = points


class SpaceMismatch(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


ZERO = Fraction(0)


@dataclass(frozen=True)
class FixedPoint:
    label: str
    key: Weight
    tangent: tuple[Weight, ...]


@dataclass(frozen=True)
class SpaceModel:
    """Fixed-point data of a supported variety.

    ``generators`` holds, per Picard generator, its fiber weight at each point.
    ``symmetry`` lists coordinate blocks (kind, offset, size) whose Weyl group
    acts by signed permutations; ``center`` lists central torus elements.
    """

    descriptor: str
    family: str
    params: tuple[int, ...]
    fixed_points: tuple[FixedPoint, ...]
    torus_rank: int
    spin_blocks: tuple[tuple[int, int], ...] = ()
    generator_names: tuple[str, ...] = ("O(1)",)
    generators: tuple[tuple[Weight, ...], ...] = ()
    symmetry: tuple[tuple[str, int, int], ...] = ()
    center: tuple[tuple[str, Weight], ...] = ()
    factors: tuple[SpaceModel, ...] = ()
    root: tuple[str, int, int] | None = None

    @property
    def dimension(self) -> int:
        return len(self.fixed_points[0].tangent)

    def __len__(self) -> int:
        return len(self.fixed_points)

    def point_index(self, key: Weight) -> int:
        return self._key_index[key]

    @property
    def _key_index(self) -> dict[Weight, int]:
        cache = self.__dict__.get("_keys")
        if cache is None:
            cache = {p.key: i for i, p in enumerate(self.fixed_points)}
            object.__setattr__(self, "_keys", cache)
        return cache

    def line_fibers(self, twist: Sequence[int]) -> tuple[Weight, ...]:
        if len(twist) != len(self.generators):
            raise ValueError(f"{self.descriptor} has {len(self.generators)} Picard generator(s), got {len(twist)}")
        out = []
        for i in range(len(self)):
            w = tuple([ZERO] * self.torus_rank)
            for m, gen in zip(twist, self.generators):
                w = add(w, scale(m, gen[i]))
            out.append(w)
        return tuple(out)

    def summary(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "dimension": self.dimension,
            "fixed_points": len(self),
        }


@dataclass(frozen=True)
class LocalizedClass:
    """Traces v_p = Tr(t0, F|_p) at the fixed points of ``space``."""

    space: str
    values: tuple[Cyclotomic, ...]
    label: str = ""
    rank: int | None = None
    degree: Fraction | None = None
    central: tuple[Fraction, ...] | None = None
    twist: int | None = None

    def scaled(self, c: Cyclotomic, label: str | None = None) -> LocalizedClass:
        return LocalizedClass(
            self.space, tuple(c * v for v in self.values), label or f"{c}*{self.label}", None, None, None, self.twist
        )

    def __add__(self, other: LocalizedClass) -> LocalizedClass:
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        rank = self.rank + other.rank if self.rank is not None and other.rank is not None else None
        central = self.central if self.central == other.central else None
        return LocalizedClass(
            self.space, tuple(a + b for a, b in zip(self.values, other.values)), f"{self.label}+{other.label}", rank, None, central
        )


# -- models --------------------------------------------------------------------------


def _gl_model(parsed: SpaceDescriptor, k: int, n: int) -> SpaceModel:
    points = []
    for S in itertools.combinations(range(n), k):
        key = tuple(Fraction(int(i in S)) for i in range(n))
        tangent = tuple(add(unit(n, j), unit(n, i, -1)) for i in S for j in range(n) if j not in S)
        label = "{" + ",".join(map(str, S)) + "}"
        points.append(FixedPoint(label, key, tangent))
    return SpaceModel(
        str(parsed),
        parsed.family,
        parsed.params,
        tuple(points),
        n,
        generators=(tuple(p.key for p in points),),
        symmetry=(("S", 0, n),),
        center=(("scalar", tuple([Fraction(1, n)] * n)),),
    )


_SPIN_KINDS = ("B", "D")


def _root_model(parsed: SpaceDescriptor, kind: str, rank: int, node: int, generator: str = "O(1)") -> SpaceModel:
    rs = build_root_system(kind, rank)
    rs._check_node(node)
    om = rs.fundamental_weights[node - 1]
    points = []
    for mu in rs.orbit(om):
        tangent = tuple(tuple(-c for c in b) for b in rs.roots if sum(x * y for x, y in zip(b, mu)) > 0)
        points.append(FixedPoint(fmt_weight(mu), mu, tangent))
    spin = ((0, rank),) if kind in _SPIN_KINDS else ()
    symmetry: tuple = ()
    center: tuple = ()
    if kind in ("B", "C", "D"):
        symmetry = ((kind, 0, rank),)
    if kind == "D":
        center = (("z0", unit(rank, 0)), ("c", tuple([HALF] * rank)))
    elif kind == "B":
        center = (("z0", unit(rank, 0)),)
    elif kind == "C":
        center = (("z", tuple([HALF] * rank)),)
    return SpaceModel(
        str(parsed),
        parsed.family,
        parsed.params,
        tuple(points),
        len(om),
        spin,
        (generator,),
        (tuple(p.key for p in points),),
        symmetry,
        center,
        root=(kind, rank, node),
    )


def _hirzebruch_model(parsed: SpaceDescriptor, n: int) -> SpaceModel:
    e1, e2, eu = unit(3, 0), unit(3, 1), unit(3, 2)
    fiber1 = add(scale(n, e1), eu)
    fiber2 = add(scale(n, e2), eu)
    base12 = add(e1, scale(-1, e2))
    neg = lambda w: scale(-1, w)  # noqa: E731
    zero = tuple([ZERO] * 3)
    # (label, tangent, pullback O(1) fiber, relative O_F(1) fiber)
    rows = [
        ("p1:0", (fiber1, base12), e2, zero),
        ("p1:inf", (neg(fiber1), base12), e2, fiber1),
        ("p2:0", (fiber2, neg(base12)), e1, zero),
        ("p2:inf", (neg(fiber2), neg(base12)), e1, fiber2),
    ]
    # the pullback part is scaled past n so the four keys stay distinct
    points = tuple(FixedPoint(lab, add(scale(n + 3, pb), rel), tan) for lab, tan, pb, rel in rows)
    return SpaceModel(
        str(parsed),
        "hirzebruch",
        (n,),
        points,
        3,
        generator_names=("pi*O(1)", "O_F(1)"),
        generators=(tuple(r[2] for r in rows), tuple(r[3] for r in rows)),
        symmetry=(("S", 0, 2), ("fixed", 2, 1)),
    )


def product_space(spaces: Sequence[SpaceModel]) -> SpaceModel:
    if len(spaces) < 2:
        raise ArityMismatch("a product needs at least two factors")
    total = sum(s.torus_rank for s in spaces)
    offsets = list(itertools.accumulate([0] + [s.torus_rank for s in spaces]))[:-1]

    def embed(w: Weight, off: int) -> Weight:
        return tuple([ZERO] * off) + tuple(w) + tuple([ZERO] * (total - off - len(w)))

    points = []
    for combo in itertools.product(*(s.fixed_points for s in spaces)):
        key: Weight = ()
        tangent: list[Weight] = []
        for p, off in zip(combo, offsets):
            key += tuple(p.key)
            tangent.extend(embed(t, off) for t in p.tangent)
        points.append(FixedPoint("|".join(p.label for p in combo), key, tuple(tangent)))
    generators = []
    names = []
    sizes = [len(s) for s in spaces]
    for f, (s, off) in enumerate(zip(spaces, offsets)):
        for name, gen in zip(s.generator_names, s.generators):
            names.append(f"{name}[{f}]")
            fibers = []
            for idx in itertools.product(*(range(m) for m in sizes)):
                fibers.append(embed(gen[idx[f]], off))
            generators.append(tuple(fibers))
    return SpaceModel(
        "prod(" + ";".join(s.descriptor for s in spaces) + ")",
        "prod",
        (),
        tuple(points),
        total,
        tuple((o + off, sz) for s, off in zip(spaces, offsets) for o, sz in s.spin_blocks),
        tuple(names),
        tuple(generators),
        tuple((k, o + off, sz) for s, off in zip(spaces, offsets) for k, o, sz in s.symmetry),
        tuple((f"{name}[{f}]", embed(z, off)) for f, (s, off) in enumerate(zip(spaces, offsets)) for name, z in s.center),
        tuple(spaces),
    )


def build_space(descriptor) -> SpaceModel:
    parsed = parse_space(descriptor) if isinstance(descriptor, str) else descriptor
    fam, params = parsed.family, parsed.params
    if fam == "prod":
        return product_space([build_space(f) for f in parsed.factors])
    if fam == "projective":
        if params[0] < 2:
            raise UnsupportedFamily("projective:n needs n >= 2")
        return _gl_model(parsed, 1, params[0])
    if fam == "grassmannian":
        k, n = params
        if not 1 <= k < n:
            raise UnsupportedFamily(f"G({k},{n}) needs 1 <= k < n")
        return _gl_model(parsed, k, n)
    if fam == "quadric-even":
        d = params[0]
        if d < 4 or d % 2:
            raise UnsupportedFamily(f"quadric-even:{d} needs an even dimension >= 4")
        return _root_model(parsed, "D", (d + 2) // 2, 1)
    if fam == "quadric-odd":
        d = params[0]
        if d < 3 or d % 2 == 0:
            raise UnsupportedFamily(f"quadric-odd:{d} needs an odd dimension >= 3")
        return _root_model(parsed, "B", (d + 1) // 2, 1)
    if fam == "og":
        if params[0] < 2:
            raise UnsupportedFamily("og:k needs k >= 2")
        return _root_model(parsed, "D", params[0], params[0])
    if fam == "sg":
        if params[0] < 1:
            raise UnsupportedFamily("sg:k needs k >= 1")
        return _root_model(parsed, "C", params[0], params[0])
    if fam == "hirzebruch":
        return _hirzebruch_model(parsed, params[0])
    rank, node = params
    if fam == "A":
        # A_n / P_i is the Grassmannian G(i, n+1), modelled with the GL torus
        build_root_system("A", rank)._check_node(node)
        model = _gl_model(SpaceDescriptor("grassmannian", (node, rank + 1)), node, rank + 1)
        return SpaceModel(str(parsed), fam, params, model.fixed_points, model.torus_rank,
                          generators=model.generators, symmetry=model.symmetry, center=model.center,
                          root=("A", rank, node))
    return _root_model(parsed, fam, rank, node)


def space_and_t0(descriptor) -> tuple[SpaceModel, TorusElement]:
    parsed = parse_space(descriptor) if isinstance(descriptor, str) else descriptor
    return build_space(parsed), construct_t0(parsed)


# -- classes -----------------------------------------------------------------------------


def class_from_fibers(
    space: SpaceModel, t0: TorusElement, fibers: Sequence[Sequence[Weight]], label: str = "", **meta
) -> LocalizedClass:
    """Class whose fiber at point p is the torus representation with weights fibers[p]."""
    if len(fibers) != len(space):
        raise ArityMismatch(f"{len(fibers)} fibers for {len(space)} fixed points")
    values = []
    for ws in fibers:
        total = Cyclotomic.rational(0)
        for w in ws:
            total = total + t0.evaluate(w)
        values.append(total)
    rank = meta.pop("rank", len(fibers[0]))
    return LocalizedClass(space.descriptor, tuple(values), label, rank, **meta)


def central_values(space: SpaceModel, fiber: Sequence[Weight]) -> tuple[Fraction, ...] | None:
    """Exponents (mod 1) by which each central element acts on a fiber."""
    if not space.center:
        return None
    out = []
    for name, z in space.center:
        vals = {sum((a * b for a, b in zip(z, w)), ZERO) % 1 for w in fiber}
        if len(vals) != 1:
            return None
        out.append(vals.pop())
    return tuple(out)


def product_class(space: SpaceModel, classes: Sequence[LocalizedClass], label: str | None = None) -> LocalizedClass:
    """External tensor product of one class per factor."""
    if len(classes) != len(space.factors):
        raise ArityMismatch(f"{len(classes)} classes for {len(space.factors)} factors")
    for c, f in zip(classes, space.factors):
        if c.space != f.descriptor:
            raise SpaceMismatch(f"class on {c.space} given for factor {f.descriptor}")
    values = []
    for combo in itertools.product(*(c.values for c in classes)):
        v = Cyclotomic.rational(1)
        for x in combo:
            v = v * x
        values.append(v)
    rank = None
    if all(c.rank is not None for c in classes):
        rank = 1
        for c in classes:
            rank *= c.rank
    central = None
    if all(c.central is not None or not f.center for c, f in zip(classes, space.factors)):
        central = tuple(x for c in classes for x in (c.central or ()))
    return LocalizedClass(
        space.descriptor, tuple(values), label or "(" + ";".join(c.label for c in classes) + ")", rank, None, central
    )


# -- the fixed-point condition and Lefschetz sums ---------------------------------------------


def verify_star_direct(space: SpaceModel, t0: TorusElement) -> StarReport:
    failed_weights: list[Weight] = []
    failed_points: list[str] = []
    violations: list[str] = []
    det_ok = True
    sign = Cyclotomic.rational((-1) ** space.dimension)
    for p in space.fixed_points:
        bad = False
        det = Cyclotomic.rational(1)
        for a in p.tangent:
            value = t0.evaluate(a)
            det = det * value
            if (1 - value).is_zero():
                bad = True
                if a not in failed_weights:
                    failed_weights.append(a)
                violations.append(f"{p.label}: weight {fmt_weight(a)} takes the value 1")
        if det != sign:
            det_ok = False
            bad = True
            violations.append(f"{p.label}: det(t0, T_p) = {det} != (-1)^{space.dimension}")
        if bad:
            failed_points.append(p.label)
    passed = not failed_points
    return StarReport(passed, failed_weights, True, det_ok, t0.order, violations, failed_points)


def lefschetz_coefficients(space: SpaceModel, t0: TorusElement) -> tuple[Cyclotomic, ...]:
    """c_p = prod over tangent weights of (1 - alpha(t0))^{-1}."""
    out = []
    singular = []
    for p in space.fixed_points:
        d = Cyclotomic.rational(1)
        for a in p.tangent:
            d = d * (1 - t0.evaluate(a))
        if d.is_zero():
            bad = [a for a in p.tangent if t0.pairing(a).denominator == 1]
            singular.append((p.label, fmt_weight(bad[0])))
            continue
        out.append(d.inverse())
    if singular:
        raise SingularLocalization(f"1 is an eigenvalue of t0 on {len(singular)} tangent space(s)", singular)
    return tuple(out)


def _check_same(space: SpaceModel, *classes: LocalizedClass) -> None:
    for c in classes:
        if c.space != space.descriptor or len(c.values) != len(space):
            raise SpaceMismatch(f"class {c.label!r} lives on {c.space}, not {space.descriptor}")


def euler_pairing(
    space: SpaceModel, t0: TorusElement, v: LocalizedClass, w: LocalizedClass, coeffs: Sequence[Cyclotomic] | None = None
) -> Cyclotomic:
    """H(v, w) = sum_p c_p * conj(v_p) * w_p."""
    _check_same(space, v, w)
    coeffs = coeffs if coeffs is not None else lefschetz_coefficients(space, t0)
    total = Cyclotomic.rational(0)
    for c, a, b in zip(coeffs, v.values, w.values):
        if not a.is_zero() and not b.is_zero():
            total = total + c * a.conjugate() * b
    return total


def euler_characteristic(
    space: SpaceModel, t0: TorusElement, v: LocalizedClass, coeffs: Sequence[Cyclotomic] | None = None
) -> Cyclotomic:
    _check_same(space, v)
    coeffs = coeffs if coeffs is not None else lefschetz_coefficients(space, t0)
    total = Cyclotomic.rational(0)
    for c, a in zip(coeffs, v.values):
        total = total + c * a
    return total


@dataclass
class GramReport:
    entries: list[list[Cyclotomic]]
    hermitian: bool
    is_identity: bool
    violations: list[str] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "entries": [[str(x) for x in row] for row in self.entries],
            "hermitian": self.hermitian,
            "identity": self.is_identity,
            "violations": list(self.violations),
        }


def gram_matrix(space: SpaceModel, t0: TorusElement, classes: Sequence[LocalizedClass]) -> GramReport:
    coeffs = lefschetz_coefficients(space, t0)
    n = len(classes)
    entries = [[euler_pairing(space, t0, classes[i], classes[j], coeffs) for j in range(n)] for i in range(n)]
    violations = []
    hermitian = True
    identity = True
    for i in range(n):
        for j in range(n):
            e = entries[i][j]
            if e != entries[j][i].conjugate():
                hermitian = False
                if i < j:
                    violations.append(f"H({i},{j}) != conj H({j},{i})")
            if e != (1 if i == j else 0):
                identity = False
                violations.append(f"H({classes[i].label},{classes[j].label}) = {e}")
    return GramReport(entries, hermitian, identity, violations, [c.label for c in classes])


def restriction_determinant(classes: Sequence[LocalizedClass]) -> Cyclotomic:
    """Determinant of the matrix (v_i)_p; nonzero iff the classes span K after localization."""
    return cyclotomic_determinant([list(c.values) for c in classes])


# -- realness ----------------------------------------------------------------------------------


def realness_involution(space: SpaceModel, t0: TorusElement) -> list[int] | None:
    """Point permutation p -> w(p) for a signed permutation w with w(t0) = t0^{-1}.

    Type A uses the permutation of coordinates sending zeta^j to zeta^{-j};
    the other families prefer the longest element when it works.
    """
    if not space.symmetry:
        return None
    t = TorusElement(t0.coweight, t0.spin_blocks, None)
    w = inverting_signed_permutation(t, space.symmetry)
    if w is None:
        return None
    return [space.point_index(w.apply(p.key)) for p in space.fixed_points]


def realness_check(involution: Sequence[int], v: LocalizedClass) -> bool:
    """conj(v_{w p}) == v_p for every fixed point p."""
    return all(v.values[q].conjugate() == v.values[p] for p, q in enumerate(involution))
