"""Small exact linear algebra over Q, Z and cyclotomic fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic


def inverse_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def hermite_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form basis of the Z-span of integer rows."""
    basis = [list(map(int, r)) for r in rows if any(r)]
    if not basis:
        return []
    ncols = len(basis[0])
    out: list[list[int]] = []
    col = 0
    while basis and col < ncols:
        nonzero = [r for r in basis if r[col] != 0]
        if not nonzero:
            col += 1
            continue
        # Euclid on column `col` until a single row carries it
        while len(nonzero) > 1:
            nonzero.sort(key=lambda r: abs(r[col]))
            head = nonzero[0]
            rest = []
            for r in nonzero[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col] != 0:
                    rest.append(r)
                elif any(r):
                    basis.append(r)
            nonzero = [head] + rest
        head = nonzero[0]
        if head[col] < 0:
            head = [-a for a in head]
        out.append(head)
        basis = [r for r in basis if r[col] == 0 and any(r)]
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        pc = next(c for c, a in enumerate(row) if a)
        for j in range(i):
            q = out[j][pc] // row[pc]
            out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out


def in_lattice(vec: Sequence[int], hnf: Sequence[Sequence[int]]) -> bool:
    v = list(vec)
    for row in hnf:
        pc = next(c for c, a in enumerate(row) if a)
        if v[pc] % row[pc]:
            return False
        q = v[pc] // row[pc]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def cyclotomic_determinant(matrix: Sequence[Sequence[Cyclotomic]]) -> Cyclotomic:
    """Determinant by Gaussian elimination over the cyclotomic field."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return Cyclotomic.rational(1)
    det = Cyclotomic.rational(1, a[0][0].conductor)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            return Cyclotomic.rational(0, det.conductor)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det
