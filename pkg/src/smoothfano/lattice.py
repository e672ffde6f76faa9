"""Exact integer linear algebra.

Everything here works on plain Python integers (arbitrary precision), so no
routine can overflow.  Vectors are tuples of ints, matrices are tuples of row
tuples.  The vectorised numpy code in :mod:`smoothfano.polytope` uses int64
only behind explicit magnitude guards and falls back to these routines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionError, DomainError, PreconditionError

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def is_unimodular_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff the n vectors of Z^n form a lattice basis."""
    vs = as_matrix(vs)
    if not vs or len(vs) != len(vs[0]):
        raise DimensionError("a basis of Z^n needs exactly n vectors of length n")
    return abs(determinant(vs)) == 1


def primitive_part(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise DomainError("the zero vector has no primitive part")
    return tuple(int(x) // g for x in v)


def solve_integral(basis: Sequence[Sequence[int]], target: Sequence[int]) -> IntVector:
    """Coefficients c with sum(c[i] * basis[i]) == target for a lattice basis."""
    basis = as_matrix(basis)
    n = len(basis)
    if len(target) != n or any(len(b) != n for b in basis):
        raise DimensionError("basis and target dimensions differ")
    if abs(determinant(basis)) != 1:
        raise PreconditionError("basis is not unimodular; coefficients may be fractional")
    # Gauss-Jordan on the transposed system over Q; result is integral.
    a = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = []
    for i in range(n):
        x = a[i][n]
        assert x.denominator == 1
        out.append(int(x))
    return tuple(out)


def inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer inverse of a unimodular matrix."""
    m = as_matrix(m)
    n = len(m)
    if abs(determinant(m)) != 1:
        raise PreconditionError("matrix is not unimodular")
    cols = [solve_integral(transpose(m), tuple(int(i == j) for i in range(n))) for j in range(n)]
    return transpose(cols)


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h == u @ m`` and ``u`` unimodular.  ``h`` is in
    row echelon form, every pivot is positive, the entries above a pivot lie
    in ``[0, pivot)`` and zero rows come last.
    """
    h = [list(map(int, r)) for r in m]
    rows = len(h)
    cols = len(h[0]) if h else 0
    u = [list(r) for r in identity(rows)]

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def addmul(dst, src, f):
        # row dst += f * row src
        if f:
            h[dst] = [x + f * y for x, y in zip(h[dst], h[src])]
            u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def negate(i):
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][c]))
            swap(r, piv)
            done = True
            for i in range(r + 1, rows):
                if h[i][c]:
                    addmul(i, r, -(h[i][c] // h[r][c]))
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            negate(r)
        p = h[r][c]
        for i in range(r):
            addmul(i, r, -(h[i][c] // p))
        r += 1
    return as_matrix(h), as_matrix(u)


def is_hermite_normal_form(h: Sequence[Sequence[int]]) -> bool:
    last = -1
    seen_zero = False
    for i, row in enumerate(h):
        piv = next((c for c, x in enumerate(row) if x != 0), None)
        if piv is None:
            seen_zero = True
            continue
        if seen_zero or piv <= last or row[piv] <= 0:
            return False
        for k in range(i):
            if not 0 <= h[k][piv] < row[piv]:
                return False
        last = piv
    return True


@dataclass(frozen=True)
class UnimodularMap:
    """Linear lattice automorphism ``x -> matrix @ x`` (column convention)."""

    matrix: IntMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not m or len(m) != len(m[0]):
            raise DimensionError("unimodular map needs a square matrix")
        if abs(determinant(m)) != 1:
            raise PreconditionError("matrix is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> IntVector:
        return matvec(self.matrix, v)

    def apply_all(self, vs):
        return [self(v) for v in vs]

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(inverse_unimodular(self.matrix))
