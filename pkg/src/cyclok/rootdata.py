"""Root systems in Bourbaki coordinates, finite-order torus elements, and the
root-theoretic form of the fixed-point condition for G/P with P maximal."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .descriptors import parse_space
from .linalg import hermite_basis, in_lattice, inverse_matrix

Weight = tuple[Fraction, ...]

HALF = Fraction(1, 2)


class UnsupportedType(ValueError):
    pass


class UnsupportedFamily(ValueError):
    pass


class OddHirzebruchIndex(UnsupportedFamily):
    pass


class SpinWeightWithoutSpinCoordinate(ValueError):
    pass


class MalformedSolution(ValueError):
    pass


def weight(*coords) -> Weight:
    return tuple(Fraction(c) for c in coords)


def unit(n: int, i: int, c=1) -> Weight:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(n))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch {len(x)} != {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Weight, y: Weight) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Weight, y: Weight) -> Weight:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Weight) -> Weight:
    return tuple(c * a for a in x)


def is_integral(x: Sequence[Fraction]) -> bool:
    return all(Fraction(a).denominator == 1 for a in x)


def fmt_weight(w: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(Fraction(a)) for a in w) + ")"


# -- torus elements ----------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Coordinate j of the image is sign_j times coordinate src_j."""

    images: tuple[tuple[int, int], ...]

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple((j, 1) for j in range(n)))

    @classmethod
    def flips(cls, n: int, flipped: Sequence[int]) -> SignedPermutation:
        return cls(tuple((j, -1 if j in flipped else 1) for j in range(n)))

    def apply(self, x: Sequence[Fraction]) -> Weight:
        return tuple(s * Fraction(x[src]) for src, s in self.images)

    def flipped_count(self) -> int:
        return sum(1 for _, s in self.images if s < 0)

    @staticmethod
    def block_sum(parts: Sequence[SignedPermutation]) -> SignedPermutation:
        images: list[tuple[int, int]] = []
        offset = 0
        for p in parts:
            images.extend((src + offset, s) for src, s in p.images)
            offset += len(p.images)
        return SignedPermutation(tuple(images))


@dataclass(frozen=True)
class TorusElement:
    """A finite-order torus point t = exp(2 pi i * coweight).

    A weight w takes the value exp(2 pi i <coweight, w>). Coordinates inside a
    spin block carry the extra character (sum of eps)/2, i.e. the coordinate x
    with x^2 = prod x_i; its exponent is the block sum of the coweight over 2.
    When ``lattice`` is given it lists generators of the character lattice
    (used for the order and for equality), and any rational weight may be
    evaluated.
    """

    coweight: Weight
    spin_blocks: tuple[tuple[int, int], ...] = ()
    lattice: tuple[Weight, ...] | None = None

    @classmethod
    def from_exponents(cls, exponents: Sequence, spin=None) -> TorusElement:
        """Torus point (e(q_1), ..., e(q_r); e(q)) with 2q = sum q_i mod 1."""
        lam = [Fraction(q) for q in exponents]
        if spin is None:
            return cls(tuple(lam))
        q = Fraction(spin)
        gap = q - sum(lam) / 2
        if (2 * gap).denominator != 1:
            raise ValueError(f"spin exponent {q} is not a square root of the product")
        if gap.denominator != 1:
            lam[0] += 1
        return cls(tuple(lam), ((0, len(lam)),))

    @classmethod
    def with_square_root(cls, exponents: Sequence) -> TorusElement:
        """Spin torus point whose x-coordinate exponent is (sum q_i)/2 reduced mod 1."""
        lam = [Fraction(q) % 1 for q in exponents]
        return cls.from_exponents(lam, (sum(lam) / 2) % 1)

    @property
    def rank(self) -> int:
        return len(self.coweight)

    def pairing(self, w: Sequence[Fraction]) -> Fraction:
        return dot(self.coweight, w)

    def _check_weight(self, w: Sequence[Fraction]) -> None:
        if self.lattice is not None:
            return
        in_spin = set()
        for off, size in self.spin_blocks:
            block = [Fraction(a) for a in w[off : off + size]]
            in_spin.update(range(off, off + size))
            if not (is_integral(block) or is_integral([a - HALF for a in block])):
                raise SpinWeightWithoutSpinCoordinate(
                    f"weight {fmt_weight(w)} is not a character of this torus"
                )
        for j, a in enumerate(w):
            if j not in in_spin and Fraction(a).denominator != 1:
                raise SpinWeightWithoutSpinCoordinate(
                    f"weight {fmt_weight(w)} needs a spin coordinate at position {j}"
                )

    def evaluate(self, w: Sequence[Fraction]) -> Cyclotomic:
        self._check_weight(w)
        return Cyclotomic.root_of_unity(self.pairing(w))

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(q % 1 for q in self.coweight)

    @property
    def spin_exponents(self) -> tuple[Fraction, ...]:
        return tuple((sum(self.coweight[o : o + s]) / 2) % 1 for o, s in self.spin_blocks)

    def _generator_pairings(self) -> list[Fraction]:
        if self.lattice is not None:
            return [self.pairing(g) for g in self.lattice]
        return list(self.coweight) + [sum(self.coweight[o : o + s]) / 2 for o, s in self.spin_blocks]

    @property
    def order(self) -> int:
        return math.lcm(1, *(Fraction(q).denominator for q in self._generator_pairings()))

    def inverse(self) -> TorusElement:
        return TorusElement(tuple(-q for q in self.coweight), self.spin_blocks, self.lattice)

    def __mul__(self, other: TorusElement) -> TorusElement:
        return TorusElement(add(self.coweight, other.coweight), self.spin_blocks, self.lattice)

    def act(self, w: SignedPermutation) -> TorusElement:
        return TorusElement(w.apply(self.coweight), self.spin_blocks, self.lattice)

    def same_point(self, other: TorusElement) -> bool:
        diff = TorusElement(sub(self.coweight, other.coweight), self.spin_blocks, self.lattice)
        return all(Fraction(q).denominator == 1 for q in diff._generator_pairings())

    @staticmethod
    def product(parts: Sequence[TorusElement]) -> TorusElement:
        coweight: list[Fraction] = []
        blocks: list[tuple[int, int]] = []
        lattice: list[Weight] | None = [] if any(p.lattice is not None for p in parts) else None
        total = sum(p.rank for p in parts)
        for p in parts:
            off = len(coweight)
            blocks.extend((o + off, s) for o, s in p.spin_blocks)
            if lattice is not None:
                gens = p.lattice
                if gens is None:
                    gens = [unit(p.rank, j) for j in range(p.rank)]
                    gens += [tuple(HALF if o <= j < o + s else Fraction(0) for j in range(p.rank)) for o, s in p.spin_blocks]
                for g in gens:
                    lattice.append(tuple([Fraction(0)] * off + list(g) + [Fraction(0)] * (total - off - p.rank)))
            coweight.extend(p.coweight)
        return TorusElement(tuple(coweight), tuple(blocks), tuple(lattice) if lattice is not None else None)

    def to_json(self) -> dict:
        out = {
            "exponents": [str(q) for q in self.exponents],
            "order": self.order,
        }
        if self.spin_blocks:
            out["spin_exponents"] = [str(q) for q in self.spin_exponents]
        return out


def evaluate_character(t0: TorusElement, w: Sequence[Fraction]) -> Cyclotomic:
    return t0.evaluate(w)


# -- root systems -------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    fundamental_weights: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...] = field(repr=False)

    @property
    def ambient(self) -> int:
        return len(self.simple_roots[0])

    @property
    def name(self) -> str:
        return self.kind if self.kind in ("E6", "E7", "E8", "F4", "G2") else f"{self.kind}{self.rank}"

    def inner(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return dot(x, y)

    def coroot(self, a: Weight) -> Weight:
        return scale(2 / dot(a, a), a)

    def omega_coords(self, w: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of w in the fundamental-weight basis: <w, alpha_j^vee>."""
        return tuple(dot(w, self.coroot(a)) for a in self.simple_roots)

    def _check_node(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise ValueError(f"node {i} out of range for {self.name}")

    @cached_property
    def _node_data(self) -> tuple[tuple[Fraction, int], ...]:
        out = []
        for om in self.fundamental_weights:
            norm = dot(om, om)
            pairings = [dot(a, om) for a in self.positive_roots]
            # roots with (alpha, omega) > 0 are positive, and negatives never contribute
            n = sum((x / norm for x in pairings if x > 0), Fraction(0))
            out.append((n, sum(1 for x in pairings if x > 0)))
        return tuple(out)

    def n_index(self, i: int) -> Fraction:
        self._check_node(i)
        return self._node_data[i - 1][0]

    def flag_dimension(self, i: int) -> int:
        self._check_node(i)
        return self._node_data[i - 1][1]

    def same_length_roots(self, i: int) -> tuple[Weight, ...]:
        self._check_node(i)
        a_i = self.simple_roots[i - 1]
        n = dot(a_i, a_i)
        return tuple(a for a in self.roots if dot(a, a) == n)

    def reflect(self, a: Weight, w: Weight) -> Weight:
        return sub(w, scale(dot(w, self.coroot(a)), a))

    def orbit(self, w: Weight) -> list[Weight]:
        """Weyl orbit of w, in breadth-first order from w via simple reflections."""
        seen = {w}
        order = [w]
        frontier = [w]
        while frontier:
            nxt = []
            for v in frontier:
                for a in self.simple_roots:
                    u = self.reflect(a, v)
                    if u not in seen:
                        seen.add(u)
                        order.append(u)
                        nxt.append(u)
            frontier = nxt
        return order


def _pm_pairs(n: int, short: bool, long2: bool) -> list[Weight]:
    roots = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * n
            v[i], v[j] = Fraction(si), Fraction(sj)
            roots.append(tuple(v))
    for i in range(n):
        for s in (1, -1):
            if short:
                roots.append(unit(n, i, s))
            if long2:
                roots.append(unit(n, i, 2 * s))
    return roots


def _e8_roots() -> list[Weight]:
    roots = _pm_pairs(8, False, False)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(Fraction(s, 2) for s in signs))
    return roots


def _e_simple(rank: int) -> list[Weight]:
    a1 = tuple(Fraction(c, 2) for c in (1, -1, -1, -1, -1, -1, -1, 1))
    simple = [a1, add(unit(8, 0), unit(8, 1))]
    for j in range(rank - 2):
        simple.append(sub(unit(8, j + 1), unit(8, j)))
    return simple


def _fundamental(simple: Sequence[Weight]) -> tuple[Weight, ...]:
    r = len(simple)
    cartan = [[2 * dot(simple[k], simple[j]) / dot(simple[j], simple[j]) for j in range(r)] for k in range(r)]
    inv = inverse_matrix(cartan)
    n = len(simple[0])
    return tuple(
        tuple(sum((inv[i][k] * simple[k][c] for k in range(r)), Fraction(0)) for c in range(n)) for i in range(r)
    )


_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


@lru_cache(maxsize=None)
def build_root_system(kind: str, rank: int | None = None) -> RootSystem:
    kind = kind.upper()
    if kind in _FIXED_RANK:
        if rank is not None and rank != _FIXED_RANK[kind]:
            raise UnsupportedType(f"{kind} has rank {_FIXED_RANK[kind]}, not {rank}")
        rank = _FIXED_RANK[kind]
    if rank is None or rank < 1:
        raise UnsupportedType(f"{kind} needs a positive rank")
    n = rank
    if kind == "A":
        d = n + 1
        roots = [sub(unit(d, i), unit(d, j)) for i in range(d) for j in range(d) if i != j]
        simple = [sub(unit(d, i), unit(d, i + 1)) for i in range(n)]
    elif kind == "B":
        roots = _pm_pairs(n, True, False)
        simple = [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [unit(n, n - 1)]
    elif kind == "C":
        roots = _pm_pairs(n, False, True)
        simple = [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [unit(n, n - 1, 2)]
    elif kind == "D" and n >= 2:
        roots = _pm_pairs(n, False, False)
        simple = [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)] + [add(unit(n, n - 2), unit(n, n - 1))]
    elif kind == "E8":
        roots = _e8_roots()
        simple = _e_simple(8)
    elif kind == "E7":
        v = add(unit(8, 6), unit(8, 7))
        roots = [a for a in _e8_roots() if dot(a, v) == 0]
        simple = _e_simple(7)
    elif kind == "E6":
        v1, v2 = sub(unit(8, 5), unit(8, 6)), add(unit(8, 6), unit(8, 7))
        roots = [a for a in _e8_roots() if dot(a, v1) == 0 and dot(a, v2) == 0]
        simple = _e_simple(6)
    elif kind == "F4":
        roots = _pm_pairs(4, True, False)
        roots += [tuple(Fraction(s, 2) for s in signs) for signs in itertools.product((1, -1), repeat=4)]
        simple = [
            weight(0, 1, -1, 0),
            weight(0, 0, 1, -1),
            weight(0, 0, 0, 1),
            weight(HALF, -HALF, -HALF, -HALF),
        ]
    elif kind == "G2":
        roots = []
        for i, j in itertools.permutations(range(3), 2):
            roots.append(sub(unit(3, i), unit(3, j)))
        for i in range(3):
            for s in (1, -1):
                v = [Fraction(-s)] * 3
                v[i] = Fraction(2 * s)
                roots.append(tuple(v))
        simple = [weight(1, -1, 0), weight(-2, 1, 1)]
    else:
        raise UnsupportedType(f"unsupported root system {kind}{rank}")
    fundamental = _fundamental(simple)
    rho = tuple(sum(c) for c in zip(*fundamental))
    positive = tuple(a for a in roots if dot(a, rho) > 0)
    return RootSystem(kind, rank, tuple(roots), tuple(simple), fundamental, positive)


def n_index(rs: RootSystem, i: int) -> int:
    value = rs.n_index(i)
    assert value.denominator == 1, f"N_{i} = {value} is not an integer"
    return int(value)


# -- the fixed-point condition ------------------------------------------------


@dataclass
class StarReport:
    passed: bool
    failed_roots: list[Weight]
    weight_power_check: bool
    determinant_sign_check: bool
    order: int
    violations: list[str] = field(default_factory=list)
    failed_points: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failed_roots": [fmt_weight(a) for a in self.failed_roots],
            "weight_power_check": self.weight_power_check,
            "determinant_sign_check": self.determinant_sign_check,
            "order": self.order,
            "violations": list(self.violations),
            "failed_points": list(self.failed_points),
        }


def check_star_conditions(rs: RootSystem, i: int, t0: TorusElement) -> StarReport:
    """Conditions (a) and (b) for G/P_i, expressed on exponents mod 1."""
    N = n_index(rs, i)
    dim = rs.flag_dimension(i)
    om = rs.fundamental_weights[i - 1]
    violations = []
    failed = []
    for a in rs.positive_roots:
        if t0.pairing(a).denominator == 1:
            failed.append(a)
            violations.append(f"root {fmt_weight(a)} takes the value 1")
    det_ok = (N * t0.pairing(om) - Fraction(dim, 2)).denominator == 1
    if not det_ok:
        violations.append(f"omega_{i}(t0)^{N} != (-1)^{dim}")
    power_ok = True
    for a in rs.same_length_roots(i):
        if (N * t0.pairing(a)).denominator != 1:
            power_ok = False
            violations.append(f"root {fmt_weight(a)}: alpha(t0)^{N} != 1")
            break
    return StarReport(not failed and det_ok and power_ok, failed, power_ok, det_ok, t0.order, violations)


@dataclass(frozen=True)
class ParityObstruction:
    node: int
    dimension: int
    order_mod_qi: int

    def to_json(self) -> dict:
        return {"node": self.node, "dimension": self.dimension, "order_mod_Qi": self.order_mod_qi}


def omega_order_mod_same_length(rs: RootSystem, i: int) -> int:
    rows = [[int(c) for c in rs.omega_coords(a)] for a in rs.same_length_roots(i)]
    hnf = hermite_basis(rows)
    e = [0] * rs.rank
    for m in range(1, 10_000):
        e[i - 1] = m
        if in_lattice(e, hnf):
            return m
    raise RuntimeError("same-length root lattice has infinite index")  # pragma: no cover


def parity_obstruction(rs: RootSystem, i: int) -> ParityObstruction | None:
    dim = rs.flag_dimension(i)
    if dim % 2 == 0:
        return None
    order = omega_order_mod_same_length(rs, i)
    if order % 2 == 1:
        return ParityObstruction(i, dim, order)
    return None


@dataclass
class SearchReport:
    bound: int
    orders_searched: list[int]
    orders_skipped: list[int]
    elements_checked: int
    found: list[Weight]

    @property
    def complete(self) -> bool:
        return not self.orders_skipped

    def to_json(self) -> dict:
        return {
            "kind": "bounded search",
            "bound": self.bound,
            "orders_searched": self.orders_searched,
            "orders_skipped": self.orders_skipped,
            "elements_checked": self.elements_checked,
            "found": [fmt_weight(w) for w in self.found],
        }


def bounded_star_search(
    rs: RootSystem, i: int, order_bound: int = 24, max_points: int = 2_000_000, keep: int = 5
) -> SearchReport:
    """Enumerate t = exp(2 pi i sum c_j alpha_j^vee / n) for n <= order_bound and
    c in [0, n)^rank, returning the (⋆)-elements found (at most ``keep``)."""
    r = rs.rank
    N = n_index(rs, i)
    dim = rs.flag_dimension(i)
    all_roots = np.array([[int(c) for c in rs.omega_coords(a)] for a in rs.positive_roots], dtype=np.int64)
    same = np.array([[int(c) for c in rs.omega_coords(a)] for a in rs.same_length_roots(i)], dtype=np.int64)
    report = SearchReport(order_bound, [], [], 0, [])
    coroots = [rs.coroot(a) for a in rs.simple_roots]
    for n in range(1, order_bound + 1):
        if n**r > max_points:
            report.orders_skipped.append(n)
            continue
        report.orders_searched.append(n)
        grid = np.indices((n,) * r, dtype=np.int64).reshape(r, -1).T
        report.elements_checked += len(grid)
        # omega_i(t)^N = (-1)^dim  <=>  2 N c_i = dim * n  (mod 2n)
        ok = (2 * N * grid[:, i - 1] - dim * n) % (2 * n) == 0
        grid = grid[ok]
        if len(grid):
            grid = grid[np.all((N * (grid @ same.T)) % n == 0, axis=1)]
        if len(grid):
            grid = grid[np.all((grid @ all_roots.T) % n != 0, axis=1)]
        for c in grid[: keep - len(report.found)]:
            lam = [Fraction(0)] * rs.ambient
            for cj, cor in zip(c, coroots):
                lam = [x + Fraction(int(cj), n) * y for x, y in zip(lam, cor)]
            report.found.append(tuple(lam))
    return report


# -- explicit elements ----------------------------------------------------------


E6_SOLUTION = (0, 1, 2, 3, 4, 11)
E7_SOLUTIONS = ((0, 1, 2, 3, 4, 5, 16), (0, 1, 2, 3, 4, 5, 17))


def _classical_t0(kind: str, n: int, i: int) -> TorusElement:
    F = Fraction
    if kind == "A":
        s = i * (n + 1 - i)
        # all (n+1)-th roots of (-1)^s, in increasing exponent order
        return TorusElement(tuple(F(s, 2 * (n + 1)) + F(j, n + 1) for j in range(n + 1)))
    if kind == "B" and i == 1:
        # x_1 = -1, then the lesser member of each conjugate pair of (2n-1)-th roots of -1
        exps = [HALF] + [F(2 * j + 1, 2 * (2 * n - 1)) for j in range(n - 1)]
        return TorusElement.with_square_root(exps)
    if kind == "B" and i == n:
        return TorusElement.with_square_root([F(k, 2 * n) for k in range(1, n + 1)])
    if kind == "C" and i == 1:
        return TorusElement(tuple(F(2 * j + 1, 4 * n) for j in range(n)))
    if kind == "C" and i == n:
        return TorusElement(tuple(F(k, 2 * n + 2) for k in range(1, n + 1)))
    if kind == "D" and i in (1, n - 1, n):
        return TorusElement.with_square_root([F(n - k, 2 * n - 2) for k in range(1, n + 1)])
    raise UnsupportedFamily(f"no element for {kind}{n} node {i}")


def e_series_coweight(kind: str, solution: Sequence) -> Weight:
    """The rational coweight encoded by an E6/E7 solution (a_1, ..., ; c)."""
    sol = [Fraction(x) for x in solution]
    if kind == "E6":
        if len(sol) != 6:
            raise MalformedSolution("E6 solutions have the form (a_1..a_5; c)")
        a, c = sol[:5], sol[5]
        b = (2 * c - sum(a)) / 3
        return tuple(x / 12 for x in a + [-b, -b, b])
    if kind == "E7":
        if len(sol) != 7:
            raise MalformedSolution("E7 solutions have the form (a_1..a_6; c)")
        a, c = sol[:6], sol[6]
        b = c - sum(a) / 2
        return tuple(x / 18 for x in a + [-b, b])
    raise MalformedSolution(f"no E-series encoding for {kind}")


def e_series_t0(kind: str, solution: Sequence) -> TorusElement:
    rs = build_root_system(kind)
    return TorusElement(e_series_coweight(kind, solution), (), rs.fundamental_weights)


def construct_root_t0(kind: str, rank: int, node: int) -> TorusElement:
    kind = kind.upper()
    if kind == "E6" and node in (1, 6):
        return e_series_t0("E6", E6_SOLUTION)
    if kind == "E7" and node == 7:
        return e_series_t0("E7", E7_SOLUTIONS[0])
    if kind in ("A", "B", "C", "D"):
        return _classical_t0(kind, rank, node)
    raise UnsupportedFamily(f"no element satisfying the condition is constructed for {kind} node {node}")


def _quadric_even_t0(k: int) -> TorusElement:
    n = 2 * k - 2
    return TorusElement.with_square_root([Fraction(j, n) for j in range(k)])


def _quadric_odd_t0(k: int) -> TorusElement:
    m = 2 * k - 1
    exps = [HALF] + [HALF + Fraction(j, m) for j in range(1, k)]
    # x_0 = i^k * zeta_{2k-1}^{k^2 (k-1)/2}
    spin = (Fraction(k, 4) + Fraction(k * k * (k - 1), 2 * m)) % 1
    return TorusElement.from_exponents(exps, spin)


def _hirzebruch_t0(n: int) -> TorusElement:
    if n % 2:
        raise OddHirzebruchIndex(f"F_{n}: no element of the required kind for odd n")
    if n % 4 == 2:
        return TorusElement(weight(Fraction(1, 4), Fraction(n + 1, 4) % 1, 0))
    return TorusElement(weight(Fraction(1, 4), Fraction(n - 1, 4) % 1, HALF))


def construct_t0(descriptor) -> TorusElement:
    """The torus element attached to a space descriptor (string or SpaceDescriptor)."""
    parsed = parse_space(descriptor) if isinstance(descriptor, str) else descriptor
    fam, params = parsed.family, parsed.params
    if fam == "prod":
        return TorusElement.product([construct_t0(f) for f in parsed.factors])
    if fam == "projective":
        (n,) = params
        if n < 2:
            raise UnsupportedFamily("projective:n needs n >= 2")
        return TorusElement(tuple(Fraction(j, n) for j in range(n)))
    if fam == "grassmannian":
        k, n = params
        if not 1 <= k < n:
            raise UnsupportedFamily(f"G({k},{n}) needs 1 <= k < n")
        return TorusElement(tuple(Fraction(j, n) for j in range(n)))
    if fam == "quadric-even":
        (d,) = params
        if d < 4 or d % 2:
            raise UnsupportedFamily(f"quadric-even:{d} needs an even dimension >= 4")
        return _quadric_even_t0((d + 2) // 2)
    if fam == "quadric-odd":
        (d,) = params
        if d < 3 or d % 2 == 0:
            raise UnsupportedFamily(f"quadric-odd:{d} needs an odd dimension >= 3")
        return _quadric_odd_t0((d + 1) // 2)
    if fam == "og":
        (k,) = params
        if k < 2:
            raise UnsupportedFamily("og:k needs k >= 2")
        return _quadric_even_t0(k)
    if fam == "sg":
        (k,) = params
        if k < 1:
            raise UnsupportedFamily("sg:k needs k >= 1")
        return _classical_t0("C", k, k)
    if fam == "hirzebruch":
        return _hirzebruch_t0(params[0])
    rank, node = params
    build_root_system(fam, rank)._check_node(node)
    return construct_root_t0(fam, rank, node)


# -- E-series congruence clauses ------------------------------------------------


@dataclass
class Clause:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ESeriesReport:
    kind: str
    solution: tuple[Fraction, ...]
    clauses: list[Clause]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def violated(self) -> list[str]:
        return [c.name for c in self.clauses if not c.passed]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "solution": [str(x) for x in self.solution],
            "passed": self.passed,
            "clauses": [{"name": c.name, "passed": c.passed, "witness": c.witness} for c in self.clauses],
        }


def _first_failure(items, pred) -> str | None:
    for item in items:
        if not pred(item):
            return str(item)
    return None


def verify_e_series_solution(kind: str, solution: Sequence, w0_relations: bool = True) -> ESeriesReport:
    kind = kind.upper()
    sol = tuple(Fraction(x) for x in solution)
    size = {"E6": 6, "E7": 7}.get(kind)
    if size is None or len(sol) != size:
        raise MalformedSolution(f"{kind} solution must have {size} entries, got {len(sol)}")
    a, c = list(sol[:-1]), sol[-1]
    modulus = 12 if kind == "E6" else 18
    clauses: list[Clause] = []

    def add_clause(name: str, bad: str | None) -> None:
        clauses.append(Clause(name, bad is None, bad or ""))

    def mod_eq(x: Fraction, y: Fraction) -> bool:
        return ((x - y) / modulus).denominator == 1

    add_clause("a_i in Z/2", _first_failure(a, lambda x: (2 * x).denominator == 1))
    add_clause("a_i = a_j mod Z", _first_failure(a, lambda x: (x - a[0]).denominator == 1))
    pairs = list(itertools.combinations(range(len(a)), 2))
    add_clause(
        f"a_i != +-a_j mod {modulus}",
        _first_failure(pairs, lambda ij: not (mod_eq(a[ij[0]], a[ij[1]]) or mod_eq(a[ij[0]], -a[ij[1]]))),
    )
    if kind == "E6":
        add_clause("c in Z", None if c.denominator == 1 else str(c))
        subsets = [S for r in range(0, 6, 2) for S in itertools.combinations(range(5), r)]
        add_clause(
            "c != sum_S a_i mod 12, |S| even",
            _first_failure(subsets, lambda S: not mod_eq(c, sum((a[j] for j in S), Fraction(0)))),
        )
        if w0_relations:
            add_clause("a_2 - a_1 = a_4 - a_3", None if a[1] - a[0] == a[3] - a[2] else f"{a[1]-a[0]} != {a[3]-a[2]}")
            rhs = a[1] + a[2] + 2 * a[4]
            add_clause("c = a_2 + a_3 + 2 a_5", None if c == rhs else f"{c} != {rhs}")
    else:
        add_clause("sum a_i = 1 mod 2", None if ((sum(a) - 1) / 2).denominator == 1 else str(sum(a)))
        add_clause("c = a_6 mod Z", None if (c - a[5]).denominator == 1 else str(c - a[5]))
        add_clause("2c != sum a_i mod 18", None if not mod_eq(2 * c, sum(a)) else f"2c = {2*c}")
        subsets = [S for r in range(1, 7, 2) for S in itertools.combinations(range(6), r)]
        add_clause(
            "c != sum_S a_i mod 18, |S| odd",
            _first_failure(subsets, lambda S: not mod_eq(c, sum((a[j] for j in S), Fraction(0)))),
        )
    # the coordinates must describe a torus point on which every root has order dividing the modulus
    rs = build_root_system(kind)
    lam = e_series_coweight(kind, sol)
    bad = _first_failure(
        range(1, rs.rank + 1), lambda j: (modulus * dot(lam, rs.simple_roots[j - 1])).denominator == 1
    )
    add_clause("root pairings integral", None if bad is None else f"node {bad}")
    return ESeriesReport(kind, sol, clauses)


# -- Weyl relations ---------------------------------------------------------------


@dataclass(frozen=True)
class WeylRelation:
    """w(t0) = z * t0 (z central) or, with ``invert``, w(t0) = t0^{-1}."""

    name: str
    w: SignedPermutation
    central: TorusElement | None = None
    invert: bool = False


def weyl_relation_check(relation: WeylRelation, t0: TorusElement) -> bool:
    image = t0.act(relation.w)
    if relation.invert:
        return image.same_point(t0.inverse())
    z = relation.central
    if z is None:
        return image.same_point(t0)
    return image.same_point(TorusElement(add(z.coweight, t0.coweight), t0.spin_blocks, t0.lattice))


def spin_center_z0(k: int) -> TorusElement:
    """Kernel of Spin -> SO: all x_i = 1, x = -1."""
    return TorusElement.from_exponents([0] * k, HALF)


def quadric_w1(k: int) -> WeylRelation:
    return WeylRelation("w1", SignedPermutation.flips(k, [0, k - 1]), spin_center_z0(k))


def quadric_w2(k: int) -> WeylRelation:
    eps = 1 if k % 2 == 0 else -1
    images = [(k - 1, 1)] + [(k - 1 - j, -1) for j in range(1, k - 1)] + [(0, eps)]
    n = 2 * k - 2
    z = TorusElement.from_exponents([HALF] * k, (HALF - Fraction(k * (k - 1), 2 * n)) % 1)
    return WeylRelation("w2", SignedPermutation(tuple(images)), z)


def odd_quadric_w1(k: int) -> WeylRelation:
    return WeylRelation("w1", SignedPermutation.flips(k, [0]), spin_center_z0(k))


def symplectic_w1(k: int) -> WeylRelation:
    z = TorusElement(tuple([HALF] * k))
    return WeylRelation("w1", SignedPermutation(tuple((k - 1 - j, -1) for j in range(k))), z)


def longest_element(kind: str, n: int) -> SignedPermutation:
    if kind in ("B", "C") or (kind == "D" and n % 2 == 0):
        return SignedPermutation.flips(n, range(n))
    if kind == "D":
        return SignedPermutation.flips(n, range(n - 1))
    raise UnsupportedType(f"longest element as a signed permutation is not provided for {kind}")


def w0_relation(kind: str, n: int) -> WeylRelation:
    return WeylRelation("w0", longest_element(kind, n), invert=True)


def inverting_signed_permutation(t0: TorusElement, groups: Sequence[tuple[str, int, int]]) -> SignedPermutation | None:
    """Find w in the product of the given coordinate groups with w(t0) = t0^{-1}.

    Each group is (kind, offset, size) with kind in S (permutations), B/C
    (signed permutations), D (even number of sign changes) or fixed.
    The sign-free candidate with all coordinates negated is tried first.
    """
    parts: list[SignedPermutation] = []
    for kind, off, size in groups:
        sub_t = TorusElement(
            t0.coweight[off : off + size],
            tuple((o - off, s) for o, s in t0.spin_blocks if off <= o < off + size),
            None,
        )
        found = _search_block(sub_t, kind, size)
        if found is None:
            return None
        parts.append(found)
    return SignedPermutation.block_sum(parts)


def _search_block(t: TorusElement, kind: str, size: int) -> SignedPermutation | None:
    target = t.inverse()
    if kind == "fixed":
        w = SignedPermutation.identity(size)
        return w if t.act(w).same_point(target) else None
    signs = (1,) if kind == "S" else (1, -1)
    if kind != "S":
        w = SignedPermutation.flips(size, range(size))
        if (kind != "D" or size % 2 == 0) and t.act(w).same_point(target):
            return w
    q = [x % 1 for x in t.coweight]
    # backtrack: coordinate j of w(t) must equal -q_j mod 1
    choices: list[tuple[int, int]] = []
    used: set[int] = set()

    def rec(j: int) -> SignedPermutation | None:
        if j == size:
            w = SignedPermutation(tuple(choices))
            if kind == "D" and w.flipped_count() % 2:
                return None
            return w if t.act(w).same_point(target) else None
        for src in range(size):
            if src in used:
                continue
            for s in signs:
                if (s * q[src] + q[j]) % 1 == 0:
                    used.add(src)
                    choices.append((src, s))
                    res = rec(j + 1)
                    if res is not None:
                        return res
                    used.discard(src)
                    choices.pop()
        return None

    return rec(0)
