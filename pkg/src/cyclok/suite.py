"""The acceptance matrix: fourteen exact checks with witnesses, runnable as a whole or by family."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .congruence import (
    line_bundle_table,
    central_orthogonality_check,
    coefficients,
    coprime_to,
    hook_content_rank,
    match_line_bundle,
    reduce_coefficients,
    slope_residue_check,
)
from .cyclotomic import Cyclotomic, NotUnitLength, UnitVector, classify_unit_vector
from .exceptional import (
    box_partitions,
    gl_residue,
    line_bundle_class,
    quadric_collection,
    schur_class,
    spinor_class,
    standard_collection,
)
from .localization import (
    LocalizedClass,
    SpaceModel,
    euler_pairing,
    gram_matrix,
    lefschetz_coefficients,
    realness_check,
    realness_involution,
    space_and_t0,
    verify_star_direct,
)
from .rootdata import (
    E6_SOLUTION,
    E7_SOLUTIONS,
    TorusElement,
    build_root_system,
    check_star_conditions,
    construct_t0,
    odd_quadric_w1,
    parity_obstruction,
    quadric_w1,
    quadric_w2,
    symplectic_w1,
    verify_e_series_solution,
    w0_relation,
    weyl_relation_check,
)

FAULTS = ("spinor-sign",)


@dataclass
class SuiteConfig:
    family: str | None = None
    fault: str | None = None
    seed: int = 20240601


@dataclass
class CriterionResult:
    id: int
    name: str
    families: tuple[str, ...]
    passed: bool
    witnesses: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "families": list(self.families),
            "passed": self.passed,
            "witnesses": list(self.witnesses),
            "details": self.details,
        }


class _Context:
    """Shared builders; applies fault injection to spinor classes."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self._cache: dict[str, tuple[SpaceModel, TorusElement, list[LocalizedClass]]] = {}

    def inject(self, v: LocalizedClass) -> LocalizedClass:
        if self.config.fault == "spinor-sign" and v.label.startswith("spinor"):
            values = (-v.values[0],) + v.values[1:]
            return LocalizedClass(v.space, values, v.label, v.rank, v.degree, v.central, v.twist)
        return v

    def collection(self, descriptor: str) -> tuple[SpaceModel, TorusElement, list[LocalizedClass]]:
        if descriptor not in self._cache:
            space, t0 = space_and_t0(descriptor)
            if space.family in ("quadric-even", "quadric-odd"):
                classes = quadric_collection(space.params[0])[2]
            else:
                classes = standard_collection(space, t0)
            self._cache[descriptor] = (space, t0, [self.inject(c) for c in classes])
        return self._cache[descriptor]

    def spinor(self, space: SpaceModel, t0: TorusElement, sign: int, twist: int | None = None) -> LocalizedClass:
        return self.inject(spinor_class(space, t0, sign, twist))

    def wants(self, family: str) -> bool:
        return self.config.family is None or self.config.family == family


def _family_of(descriptor: str) -> str:
    if descriptor.startswith("prod("):
        return "product"
    head = descriptor.split(":")[0]
    return {"quadric-even": "quadric", "quadric-odd": "quadric"}.get(head, head)


# -- criteria ---------------------------------------------------------------------------------


def c1_beilinson(ctx: _Context) -> CriterionResult:
    wit = []
    for n in range(2, 9):
        space, t0, classes = ctx.collection(f"projective:{n}")
        g = gram_matrix(space, t0, classes)
        if not g.is_identity:
            wit.append(f"projective:{n}: {g.violations[0]}")
    return CriterionResult(1, "Beilinson orthonormality, n = 2..8", ("projective",), not wit, wit)


def c2_kapranov(ctx: _Context) -> CriterionResult:
    wit = []
    sizes = {}
    for k, n in ((2, 4), (2, 5), (3, 6)):
        space, t0, classes = ctx.collection(f"grassmannian:{k}:{n}")
        sizes[f"G({k},{n})"] = len(classes)
        g = gram_matrix(space, t0, classes)
        if not g.is_identity:
            wit.append(f"G({k},{n}): {g.violations[0]}")
        if len(classes) != math.comb(n, k):
            wit.append(f"G({k},{n}): {len(classes)} classes")
    return CriterionResult(2, "Kapranov orthonormality", ("grassmannian",), not wit, wit, {"sizes": sizes})


def c3_quadrics(ctx: _Context) -> CriterionResult:
    wit = []
    twists = {}
    for d in (3, 4, 5, 6):
        desc = f"quadric-{'even' if d % 2 == 0 else 'odd'}:{d}"
        space, t0, classes = ctx.collection(desc)
        twists[desc] = [c.twist for c in classes if c.label.startswith("spinor")]
        g = gram_matrix(space, t0, classes)
        if not g.is_identity:
            wit.append(f"{desc}: {g.violations[0]}")
    space, t0, q4 = ctx.collection("quadric-even:4")
    gspace, gt0, g24 = ctx.collection("grassmannian:2:4")
    if not gram_matrix(gspace, gt0, g24).is_identity:
        wit.append("G(2,4) Gram is not the identity")
    ranks = [c.rank for c in q4 if c.label.startswith("spinor")]
    if ranks != [2, 2]:
        wit.append(f"spinor ranks on Q^4 are {ranks}")
    return CriterionResult(3, "quadric orthonormality and Q^4 = G(2,4)", ("quadric", "grassmannian"), not wit, wit,
                           {"spinor_twists": twists})


HERMITIAN_SPACES = (
    "projective:3",
    "projective:4",
    "grassmannian:2:4",
    "grassmannian:2:5",
    "quadric-even:4",
    "quadric-even:6",
    "quadric-odd:3",
    "quadric-odd:5",
    "hirzebruch:2",
    "hirzebruch:4",
    "prod(hirzebruch:2;projective:2)",
    "prod(projective:2;projective:4)",
)


def _random_class(ctx: _Context, rng: random.Random, space: SpaceModel, t0: TorusElement) -> LocalizedClass:
    fam = space.family
    choice = rng.random()
    if fam in ("projective", "grassmannian") and choice < 0.5:
        k = int(sum(space.fixed_points[0].key))
        lam = sorted((rng.randint(0, 5) for _ in range(k)), reverse=True)
        return schur_class(space, t0, lam)
    if fam in ("quadric-even", "quadric-odd") and choice < 0.5:
        sign = rng.choice((1, -1)) if fam == "quadric-even" else 1
        return ctx.spinor(space, t0, sign, rng.randint(-3, 3))
    twist = tuple(rng.randint(-6, 6) for _ in space.generators)
    return line_bundle_class(space, t0, twist)


def c4_hermitian(ctx: _Context) -> CriterionResult:
    rng = random.Random(ctx.config.seed)
    wit = []
    checked = {}
    for desc in HERMITIAN_SPACES:
        if not (ctx.wants(_family_of(desc))):
            continue
        space, t0 = space_and_t0(desc)
        coeffs = lefschetz_coefficients(space, t0)
        for _ in range(50):
            v = _random_class(ctx, rng, space, t0)
            w = _random_class(ctx, rng, space, t0)
            if euler_pairing(space, t0, v, w, coeffs) != euler_pairing(space, t0, w, v, coeffs).conjugate():
                wit.append(f"{desc}: H({v.label},{w.label}) != conj H({w.label},{v.label})")
        checked[desc] = 50
    return CriterionResult(4, "Hermitian law on random pairs", ("all",), not wit, wit[:10], {"pairs": checked})


def c5_slopes(ctx: _Context) -> CriterionResult:
    wit = []
    details = {}
    for n, p, k in ((4, 2, 2), (9, 3, 2)):
        space, t0, classes = ctx.collection(f"projective:{n}")
        rep = slope_residue_check(classes, p, k)
        details[f"projective:{n}"] = rep.to_json()
        if not rep.complete:
            wit.append(f"projective:{n}: slopes {rep.slopes} not complete mod {p}^{k}")
        if not rep.ranks_unit:
            wit.append(f"projective:{n}: a rank is not +-1 mod {p}")
        for e in classes:
            red = reduce_coefficients(coefficients(space, t0, classes, e, check_basis=False), p)
            if sum(1 for a in red if a) != 1 or (sum(red) % p) not in (1, p - 1):
                wit.append(f"projective:{n}: {e.label} reduces to {red}")
    return CriterionResult(5, "slopes form complete residue systems", ("projective",), not wit, wit, details)


def c6_hook_content(ctx: _Context) -> CriterionResult:
    wit = []
    counts = {}
    for p in (3, 5, 7):
        for k in range(1, p):
            box = box_partitions(k, p - k)
            counts[f"G({k},{p})"] = len(box)
            if len(box) != math.comb(p, k):
                wit.append(f"G({k},{p}): {len(box)} partitions")
            for lam in box:
                r = hook_content_rank(lam, k)
                if not coprime_to(r, p):
                    wit.append(f"G({k},{p}) {lam}: rank {r} divisible by {p}")
    return CriterionResult(6, "hook-content ranks coprime to p", ("grassmannian",), not wit, wit, {"counts": counts})


def c7_grassmann_blocks(ctx: _Context) -> CriterionResult:
    wit = []
    space, t0, classes = ctx.collection("grassmannian:2:5")
    rep = central_orthogonality_check(space, t0, classes)
    if rep.sizes != [2] * 5:
        wit.append(f"G(2,5) block sizes {rep.sizes}")
    wit += [f"G(2,5): H({a},{b}) = {h}" for a, b, h in rep.violations]
    space, t0, classes = ctx.collection("grassmannian:2:4")
    for e in classes:
        m = gl_residue(space, e)
        if (e.rank - m - 1) % 2:
            wit.append(f"G(2,4) {e.label}: rk {e.rank}, m {m}")
    return CriterionResult(7, "Grassmannian central blocks and rk = m + 1 mod 2", ("grassmannian",), not wit, wit,
                           {"G(2,5)": rep.to_json()})


def c8_quadric_blocks(ctx: _Context) -> CriterionResult:
    wit = []
    details = {}
    for k in (3, 4, 5):
        d = 2 * k - 2
        space, t0, classes = ctx.collection(f"quadric-even:{d}")
        rep = central_orthogonality_check(space, t0, classes)
        details[f"Q^{d}"] = rep.sizes
        if rep.sizes != sorted([k - 1, k - 1, 1, 1], reverse=True):
            wit.append(f"Q^{d}: block sizes {rep.sizes}")
        wit += [f"Q^{d}: H({a},{b}) = {h}" for a, b, h in rep.violations]
        for rel in (quadric_w1(k), quadric_w2(k)):
            if not weyl_relation_check(rel, t0):
                wit.append(f"Q^{d}: relation {rel.name} fails")
    for k in (2, 3, 4):
        d = 2 * k - 1
        space, t0, classes = ctx.collection(f"quadric-odd:{d}")
        rep = central_orthogonality_check(space, t0, classes)
        details[f"Q^{d}"] = rep.sizes
        if rep.sizes != [2 * k - 1, 1]:
            wit.append(f"Q^{d}: block sizes {rep.sizes}")
        wit += [f"Q^{d}: H({a},{b}) = {h}" for a, b, h in rep.violations]
        if not weyl_relation_check(odd_quadric_w1(k), t0):
            wit.append(f"Q^{d}: relation w1 fails")
    return CriterionResult(8, "quadric central blocks", ("quadric",), not wit, wit, {"sizes": details})


MOD2_SPACES = ("hirzebruch:2", "hirzebruch:4", "prod(hirzebruch:2;projective:2)", "prod(projective:2;projective:4)")


def c9_mod2_lines(ctx: _Context) -> CriterionResult:
    wit = []
    matches = {}
    for desc in MOD2_SPACES:
        if not (ctx.wants(_family_of(desc)) or ctx.wants("hirzebruch")):
            continue
        space, t0, classes = ctx.collection(desc)
        table = line_bundle_table(space, t0, classes, 2)
        found = {}
        for e in classes:
            red = reduce_coefficients(coefficients(space, t0, classes, e, check_basis=False), 2)
            hit = match_line_bundle(red, table)
            found[e.label] = hit[0] if hit else None
            if hit is None:
                wit.append(f"{desc}: {e.label} reduces to {red}, no line bundle")
            if e.rank % 2 == 0:
                wit.append(f"{desc}: {e.label} has even rank")
        matches[desc] = found
    return CriterionResult(9, "mod-2 classes are line bundles", ("hirzebruch", "product"), not wit, wit,
                           {"matches": matches})


EXPECTED_PARITY = {"G2": {1, 2}, "F4": {1, 4}, "E7": {1, 3, 4}, "E8": {6, 7, 8}}


def _t0_cases() -> list[tuple[str, tuple[str, int, int] | None]]:
    cases: list[tuple[str, tuple[str, int, int] | None]] = []
    for n in range(1, 9):
        cases += [(f"A:{n}:{i}", ("A", n, i)) for i in range(1, n + 1)]
    for kind in ("B", "C"):
        for n in range(1, 7):
            cases += [(f"{kind}:{n}:{i}", (kind, n, i)) for i in (1, n)]
    for n in range(3, 7):
        cases += [(f"D:{n}:{i}", ("D", n, i)) for i in (1, n - 1, n)]
    for k in range(1, 6):
        cases.append((f"sg:{k}", ("C", k, k)))
    for k in range(2, 6):
        cases.append((f"og:{k}", ("D", k, k)))
    for d in range(3, 9):
        fam = "quadric-even" if d % 2 == 0 else "quadric-odd"
        k = (d + 2) // 2 if d % 2 == 0 else (d + 1) // 2
        cases.append((f"{fam}:{d}", ("D" if d % 2 == 0 else "B", k, 1)))
    cases += [("E6:6:1", ("E6", 6, 1)), ("E6:6:6", ("E6", 6, 6)), ("E7:7:7", ("E7", 7, 7))]
    return cases


def c10_constructions(ctx: _Context) -> CriterionResult:
    wit = []
    count = 0
    for desc, root in _t0_cases():
        space, t0 = space_and_t0(desc)
        direct = verify_star_direct(space, t0)
        if not direct.passed:
            wit.append(f"{desc}: {direct.violations[0]}")
        rs = build_root_system(root[0], root[1])
        root_form = check_star_conditions(rs, root[2], t0)
        if not root_form.passed:
            wit.append(f"{desc}: {root_form.violations[0]}")
        count += 1
    for desc, rel in [(f"sg:{k}", symplectic_w1(k)) for k in range(1, 6)] + [("D:4:1", w0_relation("D", 4))]:
        if not weyl_relation_check(rel, construct_t0(desc)):
            wit.append(f"{desc}: relation {rel.name} fails")
    fired = {}
    for kind, rank in (("G2", 2), ("F4", 4), ("E6", 6), ("E7", 7), ("E8", 8)):
        rs = build_root_system(kind)
        fired[kind] = sorted(i for i in range(1, rank + 1) if parity_obstruction(rs, i) is not None)
    for kind, expected in EXPECTED_PARITY.items():
        if set(fired[kind]) != expected:
            wit.append(f"{kind}: parity obstruction at nodes {fired[kind]}, expected {sorted(expected)}")
    return CriterionResult(10, "constructed elements and parity obstruction", ("roots", "quadric", "og", "sg"),
                           not wit, wit, {"cases": count, "parity_nodes": fired})


def c11_e_series(ctx: _Context) -> CriterionResult:
    wit = []
    solutions = [("E6", E6_SOLUTION)] + [("E7", s) for s in E7_SOLUTIONS]
    known = {(k, tuple(s)) for k, s in solutions}
    perturbed = 0
    for kind, sol in solutions:
        rep = verify_e_series_solution(kind, sol)
        if not rep.passed:
            wit.append(f"{kind} {sol}: violates {rep.violated}")
        for i in range(len(sol)):
            for d in (1, -1):
                p = list(sol)
                p[i] += d
                if (kind, tuple(p)) in known:
                    continue
                perturbed += 1
                if verify_e_series_solution(kind, p).passed:
                    wit.append(f"{kind} perturbation {p} passes")
    return CriterionResult(11, "E-series congruence systems", ("roots",), not wit, wit, {"perturbations": perturbed})


def c12_unit_vectors(ctx: _Context) -> CriterionResult:
    rng = random.Random(ctx.config.seed + 12)
    wit = []
    for _ in range(200):
        m = rng.randint(1, 24)
        dim = rng.randint(1, 8)
        i = rng.randrange(dim)
        j = rng.randrange(m)
        sign = rng.choice((1, -1))
        zs = [Cyclotomic.rational(0, m) for _ in range(dim)]
        zs[i] = Cyclotomic.zeta(m, j) * sign
        expected = Cyclotomic.zeta(m, j) * sign
        res = classify_unit_vector(zs)
        if not (isinstance(res, UnitVector) and res.index == i and expected ** res.order == 1
                and all(expected ** d != 1 for d in range(1, res.order))):
            wit.append(f"unit vector at {i} with conductor {m} misclassified as {res}")
    for _ in range(200):
        m = rng.randint(1, 24)
        dim = rng.randint(1, 8)
        zs = [Cyclotomic(m, [rng.randint(-2, 2) for _ in range(m)]) for _ in range(dim)]
        support = [z for z in zs if not z.is_zero()]
        if len(support) == 1 and support[0].root_of_unity_order() is not None:
            zs.append(Cyclotomic.rational(1, m))
        res = classify_unit_vector(zs)
        if not isinstance(res, NotUnitLength):
            wit.append(f"non-unit vector accepted: {[str(z) for z in zs]}")
    res = classify_unit_vector([1 + Cyclotomic.zeta(3), Cyclotomic.rational(0, 3)])
    if res != UnitVector(0, 6):
        wit.append(f"(1+zeta_3, 0) classified as {res}")
    return CriterionResult(12, "unit-vector classification", ("cyclotomic",), not wit, wit[:10])


def c13_galois(ctx: _Context) -> CriterionResult:
    rng = random.Random(ctx.config.seed + 13)
    wit = []
    for k, n in ((2, 5), (3, 6)):
        space, t0 = space_and_t0(f"grassmannian:{k}:{n}")
        coeffs = lefschetz_coefficients(space, t0)
        for _ in range(100):
            lams = [sorted((rng.randint(0, 2 * n) for _ in range(k)), reverse=True) for _ in range(2)]
            v, w = (schur_class(space, t0, lam) for lam in lams)
            h = euler_pairing(space, t0, v, w, coeffs)
            q = h.to_rational()
            if q is None or q.denominator != 1:
                wit.append(f"G({k},{n}): H({v.label},{w.label}) = {h}")
    return CriterionResult(13, "Galois integrality of Kapranov pairings", ("grassmannian",), not wit, wit[:10])


REALNESS_SPACES = tuple(f"projective:{n}" for n in range(2, 9)) + (
    "grassmannian:2:4",
    "grassmannian:2:5",
    "grassmannian:3:6",
    "quadric-odd:3",
    "quadric-even:4",
    "quadric-odd:5",
    "quadric-even:6",
    "hirzebruch:2",
    "hirzebruch:4",
    "prod(hirzebruch:2;projective:2)",
    "prod(projective:2;projective:4)",
)


def c14_realness(ctx: _Context) -> CriterionResult:
    wit = []
    checked = 0
    for desc in REALNESS_SPACES:
        if not ctx.wants(_family_of(desc)):
            continue
        space, t0, classes = ctx.collection(desc)
        inv = realness_involution(space, t0)
        if inv is None:
            wit.append(f"{desc}: no w with w(t0) = t0^-1")
            continue
        # scaling by -1 preserves realness, so use a primitive root of order at least 3
        zeta = Cyclotomic.zeta(t0.order if t0.order > 2 else 4)
        for c in classes:
            checked += 1
            if not realness_check(inv, c):
                wit.append(f"{desc}: {c.label} is not real")
            if realness_check(inv, c.scaled(zeta)):
                wit.append(f"{desc}: zeta * {c.label} is real")
    return CriterionResult(14, "realness under the inverting Weyl element", ("all",), not wit, wit, {"classes": checked})


CRITERIA: tuple[Callable[[_Context], CriterionResult], ...] = (
    c1_beilinson,
    c2_kapranov,
    c3_quadrics,
    c4_hermitian,
    c5_slopes,
    c6_hook_content,
    c7_grassmann_blocks,
    c8_quadric_blocks,
    c9_mod2_lines,
    c10_constructions,
    c11_e_series,
    c12_unit_vectors,
    c13_galois,
    c14_realness,
)

CRITERION_FAMILIES = {
    1: ("projective",),
    2: ("grassmannian",),
    3: ("quadric", "grassmannian"),
    4: ("all",),
    5: ("projective",),
    6: ("grassmannian",),
    7: ("grassmannian",),
    8: ("quadric",),
    9: ("hirzebruch", "product"),
    10: ("roots", "quadric", "og", "sg"),
    11: ("roots",),
    12: ("cyclotomic",),
    13: ("grassmannian",),
    14: ("all",),
}

FAMILY_NAMES = ("projective", "grassmannian", "quadric", "hirzebruch", "product", "roots", "og", "sg", "cyclotomic")


def run_suite(config: SuiteConfig | None = None, only: set[int] | None = None) -> list[CriterionResult]:
    config = config or SuiteConfig()
    if config.fault is not None and config.fault not in FAULTS:
        raise ValueError(f"unknown fault {config.fault!r}; known: {FAULTS}")
    ctx = _Context(config)
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        fams = CRITERION_FAMILIES[i]
        if config.family is not None and config.family not in fams and "all" not in fams:
            continue
        results.append(fn(ctx))
    return results


def summary_line(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    line = f"[{status}] criterion {r.id:2d}: {r.name}"
    if r.witnesses:
        line += f" -- {r.witnesses[0]}"
    return line
