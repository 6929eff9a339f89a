"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, z, ..., z^(phi(M)-1) of Q(zeta_M),
reduced modulo the M-th cyclotomic polynomial. Integral elements (integer
coordinates) are exactly the elements of Z[zeta_M].
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class CyclotomicError(ValueError):
    pass


class DivisionByZero(CyclotomicError, ZeroDivisionError):
    pass


class NotCoprime(CyclotomicError):
    pass


class NotIntegral(CyclotomicError):
    pass


class NotPrimePowerConductor(CyclotomicError):
    pass


class MixedConductor(CyclotomicError):
    pass


# -- polynomial helpers (coefficient lists, lowest degree first) -------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    num = [Fraction(c) for c in num]
    den = _trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        quot[shift] = c
        if c:
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    return _trim(quot), _trim(num[: len(den) - 1])


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise CyclotomicError(f"conductor must be positive, got {m}")
    num: list = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of z^j mod Phi_m, 0 <= j < m."""
    phi_poly = cyclotomic_polynomial(m)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce using the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi_poly[:-1])]
    return tuple(rows)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Cyclotomic:
    """Immutable element of Q(zeta_M) in canonical power-basis form."""

    __slots__ = ("conductor", "coeffs")

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, conductor: int, coeffs: Iterable[Rational] = ()) -> None:
        if conductor < 1:
            raise CyclotomicError(f"conductor must be positive, got {conductor}")
        # accumulate by exponent mod M, then reduce mod Phi_M
        acc = [Fraction(0)] * conductor
        for j, c in enumerate(coeffs):
            if c:
                acc[j % conductor] += c
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", _reduce(conductor, acc))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def rational(cls, q: Rational, conductor: int = 1) -> Cyclotomic:
        return cls(conductor, [Fraction(q)])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> Cyclotomic:
        """The root of unity zeta_m^k, at conductor m."""
        coeffs = [0] * m
        coeffs[k % m] = 1
        return cls(m, coeffs)

    @classmethod
    def root_of_unity(cls, exponent: Rational) -> Cyclotomic:
        """exp(2 pi i * exponent) for a rational exponent."""
        q = Fraction(exponent)
        return cls.zeta(q.denominator, q.numerator % q.denominator)

    # -- conductor handling ------------------------------------------------

    def lift(self, conductor: int) -> Cyclotomic:
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise CyclotomicError(f"cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        acc = [Fraction(0)] * conductor
        for j, c in enumerate(self.coeffs):
            if c:
                acc[j * step] += c
        return Cyclotomic._raw(conductor, _reduce(conductor, acc))

    def _common(self, other) -> tuple[Cyclotomic, Cyclotomic]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        m = math.lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> Cyclotomic:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> Cyclotomic:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.conductor, tuple(x * other for x in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        m = a.conductor
        acc = [Fraction(0)] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        acc[(i + j) % m] += x * y
        return Cyclotomic._raw(m, _reduce(m, acc))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended Euclid: find u with u*a = 1 mod Phi_M
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0: list = []
        s1: list = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant (Phi_M irreducible)
        c = r1[0]
        return Cyclotomic(self.conductor, [x / c for x in s1])

    def __truediv__(self, other) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> Cyclotomic:
        return Cyclotomic.rational(other, self.conductor) * self.inverse()

    def __pow__(self, e: int) -> Cyclotomic:
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(1, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # normalized trace is invariant under lifting, so it is compatible with __eq__
        return hash(self.normalized_trace())

    def normalized_trace(self) -> Fraction:
        m = self.conductor
        total = Fraction(0)
        for j, c in enumerate(self.coeffs):
            if c:
                total += c * _ramanujan(m, j)
        return total / totient(m)

    # -- Galois action -----------------------------------------------------

    def galois(self, a: int) -> Cyclotomic:
        """Apply zeta_M -> zeta_M^a."""
        m = self.conductor
        if math.gcd(a, m) != 1:
            raise NotCoprime(f"gcd({a}, {m}) != 1")
        acc = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            if c:
                acc[(j * a) % m] += c
        return Cyclotomic._raw(m, _reduce(m, acc))

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1)

    def to_rational(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def reduce_mod_p(self, p: int) -> int:
        """Image under the ring map Z[zeta_{p^k}] -> Z/p sending zeta to 1."""
        if not _is_prime(p):
            raise NotPrimePowerConductor(f"{p} is not prime")
        m = self.conductor
        while m % p == 0:
            m //= p
        if m != 1:
            raise NotPrimePowerConductor(f"conductor {self.conductor} is not a power of {p}")
        if not self.is_integral():
            raise NotIntegral(f"{self} is not integral")
        return int(sum(self.coeffs)) % p

    def root_of_unity_order(self) -> int | None:
        bound = math.lcm(2, self.conductor)
        if self ** bound != 1:
            return None
        for d in sorted(_divisors(bound)):
            if self ** d == 1:
                return d
        return None  # pragma: no cover

    # -- display -----------------------------------------------------------

    def to_complex(self, k: int = 1) -> complex:
        """Numeric value under zeta -> exp(2 pi i k / M); diagnostics only."""
        w = cmath.exp(2j * cmath.pi * k / self.conductor)
        return sum(float(c) * w**j for j, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = _fmt_rational(abs(c))
            body = mag if j == 0 else f"{mag}*z^{j}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return f"Q(zeta_{self.conductor}): " + (" ".join(terms) if terms else "0")

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {[_fmt_rational(c) for c in self.coeffs]})"

    @classmethod
    def parse(cls, text: str) -> Cyclotomic:
        m = re.fullmatch(r"\s*Q\(zeta_(\d+)\):\s*(.*?)\s*", text)
        if not m:
            raise CyclotomicError(f"cannot parse {text!r}")
        conductor = int(m.group(1))
        body = m.group(2).replace(" ", "")
        coeffs = [Fraction(0)] * conductor
        if body != "0":
            for sign, mag, power in re.findall(r"([+-]?)(\d+(?:/\d+)?)(?:\*z\^(\d+))?", body):
                q = Fraction(mag)
                coeffs[int(power) if power else 0] += -q if sign == "-" else q
        return cls(conductor, coeffs)


def _reduce(m: int, acc: Sequence[Fraction]) -> tuple[Fraction, ...]:
    table = _power_table(m)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for j, c in enumerate(acc):
        if c:
            if j < deg:
                out[j] += c
            else:
                for i, t in enumerate(table[j]):
                    if t:
                        out[i] += c * t
    return tuple(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def _ramanujan(m: int, j: int) -> int:
    """Trace of zeta_m^j from Q(zeta_m) to Q."""
    g = math.gcd(j, m)
    return sum(_mobius(m // d) * d for d in _divisors(g))


# -- Kronecker unit-vector classification ------------------------------------


@dataclass(frozen=True)
class UnitVector:
    """A unit-length vector: zero except a root of unity at ``index``."""

    index: int
    order: int


@dataclass(frozen=True)
class NotUnitLength:
    norm: Cyclotomic


def hermitian_norm(zs: Sequence[Cyclotomic]) -> Cyclotomic:
    total = Cyclotomic.rational(0, zs[0].conductor if zs else 1)
    for z in zs:
        total = total + z * z.conjugate()
    return total


def classify_unit_vector(zs: Sequence[Cyclotomic]) -> UnitVector | NotUnitLength:
    if not zs:
        return NotUnitLength(Cyclotomic.rational(0))
    conductors = {z.conductor for z in zs}
    if len(conductors) > 1:
        raise MixedConductor(f"entries have conductors {sorted(conductors)}")
    for z in zs:
        if not z.is_integral():
            raise NotIntegral(f"{z} is not integral")
    s = hermitian_norm(zs)
    if s != 1:
        return NotUnitLength(s)
    support = [i for i, z in enumerate(zs) if not z.is_zero()]
    # a sum of |z_i|^2 equal to 1 over Z[zeta] forces a single root of unity
    assert len(support) == 1, f"unit vector with support {support}"
    order = zs[support[0]].root_of_unity_order()
    assert order is not None
    return UnitVector(support[0], order)
