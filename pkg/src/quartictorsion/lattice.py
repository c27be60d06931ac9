"""Integer-matrix utilities: Hermite normal form and LLL reduction.

Everything here is exact.  LLL runs on rational Gram-Schmidt data (no
floating point); the dimensions we feed it are tiny (<= ~16), so correctness
beats speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class IntLattice:
    """A lattice given by an explicit basis of equal-length integer vectors."""

    __slots__ = ("basis",)

    def __init__(self, basis: Sequence[Sequence[int]]):
        rows = [list(map(int, row)) for row in basis]
        if not rows:
            raise ValueError("empty basis")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged basis")
        self.basis = rows

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return len(self.basis[0])


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns a basis in echelon shape: pivots strictly move right, pivot
    entries positive, entries above a pivot reduced into [0, pivot).
    Zero rows are dropped, so the result is a basis of the row span.
    """
    work = [list(map(int, r)) for r in rows]
    if not work:
        raise ValueError("empty matrix")
    m = len(work[0])
    basis: list[list[int]] = []
    for col in range(m):
        # gather rows with support starting at col
        pivot = None
        for r in work:
            if r[col] != 0 and all(c == 0 for c in r[:col]):
                if pivot is None:
                    pivot = r
                else:
                    # Euclidean elimination in this column
                    while r[col] != 0:
                        q = pivot[col] // r[col]
                        for j in range(m):
                            pivot[j] -= q * r[j]
                        pivot, r = r, pivot
        if pivot is None:
            continue
        if pivot[col] < 0:
            for j in range(m):
                pivot[j] = -pivot[j]
        work = [r for r in work if r is not pivot]
        basis.append(pivot)
    # second pass: rows above reduce against lower pivots
    for i in range(len(basis) - 1, -1, -1):
        col = next(j for j in range(m) if basis[i][j] != 0)
        for u in range(i):
            q = basis[u][col] // basis[i][col]
            if q:
                for j in range(m):
                    basis[u][j] -= q * basis[i][j]
    return basis


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def lattice_contains(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership of an integer vector in the lattice spanned by ``basis``."""
    rows = hnf(basis)
    v = list(map(int, vec))
    m = len(v)
    for row in rows:
        col = next(j for j in range(m) if row[j] != 0)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        for j in range(m):
            v[j] -= q * row[j]
    return all(x == 0 for x in v)


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """LLL-reduce a basis of linearly independent integer vectors.

    Exact rational Gram-Schmidt; output spans the same lattice and satisfies
    the size-reduction and Lovasz conditions for the given delta.
    """
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    b = [[Fraction(x) for x in row] for row in basis]
    n = len(b)

    def gram_schmidt():
        ortho: list[list[Fraction]] = []
        mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = list(b[i])
            for j in range(len(ortho)):
                denom = _dot(ortho[j], ortho[j])
                mu[i][j] = _dot(b[i], ortho[j]) / denom
                v = [x - mu[i][j] * y for x, y in zip(v, ortho[j])]
            ortho.append(v)
        return ortho, mu

    ortho, mu = gram_schmidt()
    norms = [_dot(o, o) for o in ortho]
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = mu[k][j]
            r = round(q)  # nearest integer, ties to even; any tie rule is fine
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                ortho, mu = gram_schmidt()
                norms = [_dot(o, o) for o in ortho]
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, mu = gram_schmidt()
            norms = [_dot(o, o) for o in ortho]
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in b]


def gram_matrix(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[_dot(u, v) for v in basis] for u in basis]


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def shortest_vector_enumeration(basis: Sequence[Sequence[int]], coeff_bound: int = 6) -> list[int]:
    """Brute-force shortest nonzero vector over small coefficient boxes.

    Test oracle only: sound for the tiny reduced bases used in the suite,
    where the shortest vector has coordinates within +-coeff_bound of an
    LLL-reduced basis.
    """
    import itertools

    best = None
    best_norm = None
    n = len(basis)
    for coeffs in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=n):
        if not any(coeffs):
            continue
        v = [sum(c * basis[i][j] for i, c in enumerate(coeffs)) for j in range(len(basis[0]))]
        norm = _dot(v, v)
        if best_norm is None or norm < best_norm:
            best, best_norm = v, norm
    return best
