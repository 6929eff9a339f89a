"""Mod-p consequences of orthonormality: coefficients, reductions, slopes and central blocks."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic
from .exceptional import hook_content, line_bundle_class
from .localization import LocalizedClass, SpaceModel, euler_pairing, gram_matrix, lefschetz_coefficients
from .rootdata import TorusElement


class NotOrthonormalBasis(ValueError):
    pass


class AmbiguousMatch(RuntimeError):
    pass


class NonInvertibleRank(ValueError):
    pass


class NotProportional(ValueError):
    pass


class NotInteger(ValueError):
    pass


@dataclass
class CoefficientVector:
    labels: list[str]
    coeffs: list[Cyclotomic]
    reduced: list[int] | None = None

    def to_json(self) -> dict:
        out = {"basis": list(self.labels), "coefficients": [str(c) for c in self.coeffs]}
        if self.reduced is not None:
            out["reduced"] = list(self.reduced)
        return out


def coefficients(
    space: SpaceModel, t0: TorusElement, basis: Sequence[LocalizedClass], v: LocalizedClass, check_basis: bool = True
) -> CoefficientVector:
    """a_i = H(basis_i, v), with the reconstruction sum a_i basis_i = v checked pointwise."""
    if check_basis:
        report = gram_matrix(space, t0, basis)
        if not report.is_identity:
            raise NotOrthonormalBasis(report.violations[0])
    c = lefschetz_coefficients(space, t0)
    coeffs = [euler_pairing(space, t0, b, v, c) for b in basis]
    for p in range(len(space)):
        total = Cyclotomic.rational(0)
        for a, b in zip(coeffs, basis):
            total = total + a * b.values[p]
        if total != v.values[p]:
            raise NotOrthonormalBasis(f"reconstruction fails at {space.fixed_points[p].label}")
    return CoefficientVector([b.label for b in basis], coeffs)


def reduce_coefficients(cv: CoefficientVector, p: int) -> list[int]:
    cv.reduced = [a.reduce_mod_p(p) for a in cv.coeffs]
    return cv.reduced


def rank_law(reduced: Sequence[int], ranks: Sequence[int], rank: int, p: int) -> bool:
    """sum rho(a_i) rk(E_i) = rk(V) mod p."""
    return (sum(a * r for a, r in zip(reduced, ranks)) - rank) % p == 0


def signed_unit(reduced: Sequence[int], p: int) -> tuple[int, int] | None:
    """(i, sign) when the reduced vector is +-e_i mod p."""
    support = [i for i, a in enumerate(reduced) if a % p]
    if len(support) != 1:
        return None
    a = reduced[support[0]] % p
    if a == 1:
        return support[0], 1
    if a == p - 1:
        return support[0], -1
    return None


@dataclass
class LineBundleTable:
    p: int
    entries: list[tuple[str, tuple[int, ...], tuple[Cyclotomic, ...]]] = field(default_factory=list)

    def add(self, label: str, cv: CoefficientVector) -> None:
        reduced = tuple(a.reduce_mod_p(self.p) for a in cv.coeffs)
        self.entries.append((label, reduced, tuple(cv.coeffs)))


def build_line_table(
    space: SpaceModel, t0: TorusElement, basis: Sequence[LocalizedClass], lines: Sequence[LocalizedClass], p: int
) -> LineBundleTable:
    table = LineBundleTable(p)
    for line in lines:
        table.add(line.label, coefficients(space, t0, basis, line, check_basis=False))
    return table


def reduction_periods(space: SpaceModel, t0: TorusElement, basis: Sequence[LocalizedClass], p: int) -> list[int]:
    """Per generator, the least m > 0 with rho(O(m e_g)) = +-rho(O)."""
    r = len(space.generators)
    base = tuple(a.reduce_mod_p(p) for a in coefficients(space, t0, basis, line_bundle_class(space, t0, (0,) * r), False).coeffs)
    periods = []
    for g in range(r):
        for m in range(1, t0.order + 1):
            tw = tuple(m if j == g else 0 for j in range(r))
            red = coefficients(space, t0, basis, line_bundle_class(space, t0, tw), False).coeffs
            red = tuple(a.reduce_mod_p(p) for a in red)
            if red == base or red == tuple((-a) % p for a in base):
                periods.append(m)
                break
        else:
            periods.append(t0.order)
    return periods


def line_bundle_table(space: SpaceModel, t0: TorusElement, basis: Sequence[LocalizedClass], p: int) -> LineBundleTable:
    """Line bundles over one reduction period per generator; reductions checked pairwise distinct."""
    periods = reduction_periods(space, t0, basis, p)
    lines = [line_bundle_class(space, t0, tw) for tw in itertools.product(*(range(m) for m in periods))]
    table = build_line_table(space, t0, basis, lines, p)
    seen: dict[tuple[int, ...], str] = {}
    for label, red, _ in table.entries:
        for key in (red, tuple((-a) % p for a in red)):
            if key in seen:
                raise AmbiguousMatch(f"{label} and {seen[key]} have the same reduction mod {p}")
        seen[red] = label
    return table


def match_line_bundle(reduced: Sequence[int], table: LineBundleTable) -> tuple[str, int] | None:
    """The line bundle whose reduction is +-reduced, if any.

    Line bundles with identical classes (periodicity) count once; two
    different classes with the same reduction raise AmbiguousMatch.
    """
    p = table.p
    target = tuple(a % p for a in reduced)
    if not any(target):
        return None
    hits: dict[tuple[Cyclotomic, ...], tuple[str, int]] = {}
    for label, red, exact in table.entries:
        for sign in (1, -1):
            if tuple((sign * a) % p for a in red) == target:
                hits.setdefault(exact, (label, sign))
                break
    if len(hits) > 1:
        labels = sorted(h[0] for h in hits.values())
        raise AmbiguousMatch(f"reduction matches several line bundles: {labels}")
    return next(iter(hits.values()), None)


@dataclass
class SlopeReport:
    modulus: int
    slopes: list[int]
    complete: bool
    collisions: list[tuple[str, str, int]]
    ranks_unit: bool

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "slopes": self.slopes,
            "complete": self.complete,
            "collisions": [list(c) for c in self.collisions],
            "ranks_unit": self.ranks_unit,
        }


def slope_residue_check(collection: Sequence[LocalizedClass], p: int, k: int) -> SlopeReport:
    """deg/rk mod p^k for each member; complete iff the slopes hit every residue once."""
    q = p**k
    slopes = []
    seen: dict[int, str] = {}
    collisions = []
    for e in collection:
        if e.rank is None or e.degree is None or e.degree.denominator != 1:
            raise ValueError(f"{e.label} has no integral (rank, degree) data")
        if math.gcd(e.rank, q) != 1:
            raise NonInvertibleRank(f"rk({e.label}) = {e.rank} is not invertible mod {q}")
        s = int(e.degree) * pow(e.rank, -1, q) % q
        if s in seen:
            collisions.append((seen[s], e.label, s))
        seen.setdefault(s, e.label)
        slopes.append(s)
    complete = sorted(slopes) == list(range(q))
    ranks_unit = all(e.rank % p in (1, p - 1) for e in collection)
    return SlopeReport(q, slopes, complete, collisions, ranks_unit)


def hook_content_rank(partition: Sequence[int], k: int) -> int:
    return hook_content(partition, k)


def coprime_to(n: int, p: int) -> bool:
    return math.gcd(n, p) == 1


@dataclass
class CentralReport:
    blocks: dict[str, list[str]]
    violations: list[tuple[str, str, str]]

    @property
    def sizes(self) -> list[int]:
        return sorted((len(v) for v in self.blocks.values()), reverse=True)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "blocks": {k: list(v) for k, v in sorted(self.blocks.items())},
            "sizes": self.sizes,
            "violations": [list(v) for v in self.violations],
        }


def central_orthogonality_check(space: SpaceModel, t0: TorusElement, classes: Sequence[LocalizedClass]) -> CentralReport:
    """Group by central character; pairings across groups must vanish exactly."""
    blocks: dict[str, list[str]] = defaultdict(list)
    for c in classes:
        if c.central is None:
            raise ValueError(f"{c.label} has no central character")
        blocks[",".join(map(str, c.central))].append(c.label)
    coeffs = lefschetz_coefficients(space, t0)
    violations = []
    for i, a in enumerate(classes):
        for b in classes[i + 1 :]:
            if a.central != b.central:
                h = euler_pairing(space, t0, a, b, coeffs)
                if not h.is_zero():
                    violations.append((a.label, b.label, str(h)))
    return CentralReport(dict(blocks), violations)


def decompose_central(space: SpaceModel, t0: TorusElement, v: LocalizedClass, line: LocalizedClass) -> int:
    """a(V) with v = a(V) * v(O(m(V))), where ``line`` is O(m(V))."""
    a = euler_pairing(space, t0, line, v)
    q = a.to_rational()
    if q is None or q.denominator != 1:
        raise NotInteger(f"H(O(m), V) = {a} is not a rational integer")
    for p, (x, y) in enumerate(zip(v.values, line.values)):
        if x != q * y:
            raise NotProportional(f"{v.label} is not {q} * {line.label} at {space.fixed_points[p].label}")
    return int(q)


def m_deg_consistent(m: int, rank: int, degree: Fraction, k: int, n: int) -> bool:
    """m(V) rk(V) = k deg(V) mod n."""
    return degree.denominator == 1 and (m * rank - k * int(degree)) % n == 0


def reduced_gram(space: SpaceModel, t0: TorusElement, classes: Sequence[LocalizedClass], p: int) -> list[list[int]]:
    report = gram_matrix(space, t0, classes)
    return [[x.reduce_mod_p(p) for x in row] for row in report.entries]
