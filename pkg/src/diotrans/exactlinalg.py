"""Exact integer/rational linear algebra.

Hermite normal form over the columns, integer kernels, lattice saturation,
orthogonal integer lattices, wedge norms and Grassmann coordinates.
Matrices are plain lists of rows; lattice bases are tuples of vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DependentInput, NotSaturated

Vec = tuple[int, ...]


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def transpose(a):
    return [list(col) for col in zip(*a)]


def _row_hnf(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF: returns (H, U) with H = U @ mat, U unimodular.

    H is in row echelon form with positive pivots and entries above each
    pivot reduced into [0, pivot).
    """
    h = [list(map(int, row)) for row in mat]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity_matrix(rows)
    pivot_row = 0
    pivots = []
    for col in range(cols):
        # Euclid on the entries of this column below pivot_row.
        while True:
            nz = [i for i in range(pivot_row, rows) if h[i][col]]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            for i in nz:
                if i == i0:
                    continue
                q = h[i][col] // h[i0][col]
                h[i] = [a - q * b for a, b in zip(h[i], h[i0])]
                u[i] = [a - q * b for a, b in zip(u[i], u[i0])]
        nz = [i for i in range(pivot_row, rows) if h[i][col]]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != pivot_row:
            h[i0], h[pivot_row] = h[pivot_row], h[i0]
            u[i0], u[pivot_row] = u[pivot_row], u[i0]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-a for a in h[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        p = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // p
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return h, u


def hnf(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style HNF: (H, U) with H = mat @ U and U unimodular."""
    ht, ut = _row_hnf(transpose(mat))
    return transpose(ht), transpose(ut)


def integer_kernel(mat: Sequence[Sequence[int]]) -> list[Vec]:
    """Basis of {z in Z^cols : mat @ z = 0}; the kernel lattice is saturated."""
    cols = len(mat[0]) if mat else 0
    if not mat:
        return [tuple(row) for row in identity_matrix(cols)]
    h, u = hnf(mat)
    basis = []
    for j in range(cols):
        if all(h[i][j] == 0 for i in range(len(h))):
            basis.append(tuple(u[i][j] for i in range(cols)))
    return basis


def gram_det(vectors: Sequence[Sequence]) -> Fraction:
    """det(<v_i, v_j>) computed exactly."""
    k = len(vectors)
    g = [
        [Fraction(sum(Fraction(a) * Fraction(b) for a, b in zip(vi, vj))) for vj in vectors]
        for vi in vectors
    ]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if g[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            g[piv], g[col] = g[col], g[piv]
            det = -det
        det *= g[col][col]
        inv = 1 / g[col][col]
        for r in range(col + 1, k):
            f = g[r][col] * inv
            if f:
                g[r] = [a - f * b for a, b in zip(g[r], g[col])]
    return det


def wedge_norm_squared(vectors: Sequence[Sequence]) -> Fraction:
    """Squared Euclidean norm of v_1 ^ ... ^ v_k; 0 for dependent inputs."""
    return gram_det(vectors)


@dataclass(frozen=True)
class GrassmannCoords:
    """k x k minors of the row matrix of the input vectors, lexicographic."""

    dimension: int
    rank: int
    subsets: tuple[tuple[int, ...], ...]
    coefficients: tuple

    def norm_squared(self):
        return sum(Fraction(c) * Fraction(c) for c in self.coefficients)


def _minor_det(rows, cols_idx):
    k = len(rows)
    m = [[Fraction(rows[i][j]) for j in cols_idx] for i in range(k)]
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[piv], m[c] = m[c], m[piv]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, k):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def grassmann(vectors: Sequence[Sequence]) -> GrassmannCoords:
    k = len(vectors)
    d = len(vectors[0])
    subsets = tuple(combinations(range(d), k))
    coeffs = []
    all_int = all(isinstance(x, int) for v in vectors for x in v)
    for s in subsets:
        c = _minor_det(vectors, s)
        coeffs.append(int(c) if all_int else c)
    return GrassmannCoords(d, k, subsets, tuple(coeffs))


@dataclass(frozen=True)
class Lattice:
    """A rank-k sublattice of Z^d given by an independent column basis."""

    basis: tuple[Vec, ...]  # k vectors of length d
    det_squared: Fraction

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    @staticmethod
    def from_basis(vectors: Sequence[Sequence[int]]) -> "Lattice":
        vecs = tuple(tuple(int(x) for x in v) for v in vectors)
        ds = gram_det(vecs)
        if vecs and ds == 0:
            raise DependentInput("basis vectors are linearly dependent")
        return Lattice(vecs, ds)

    def contains(self, z: Sequence[int]) -> bool:
        """Exact membership via rational solve of basis coords."""
        if not self.basis:
            return all(x == 0 for x in z)
        cols = [list(v) for v in self.basis]
        d, k = len(cols[0]), len(cols)
        aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(z[i])] for i in range(d)]
        row = 0
        coords = [None] * k
        for col in range(k):
            piv = next((r for r in range(row, d) if aug[r][col]), None)
            if piv is None:
                return False
            aug[row], aug[piv] = aug[piv], aug[row]
            inv = 1 / aug[row][col]
            aug[row] = [a * inv for a in aug[row]]
            for r in range(d):
                if r != row and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
            row += 1
        for r in range(row, d):
            if aug[r][k] != 0:
                return False
        for col in range(k):
            r = next(r for r in range(d) if aug[r][col] == 1)
            coords[col] = aug[r][k]
        return all(c.denominator == 1 for c in coords)


def saturate(span_basis: Sequence[Sequence[int]]) -> Lattice:
    """The lattice (R-span of the columns) intersect Z^d."""
    vecs = [tuple(int(x) for x in v) for v in span_basis]
    if gram_det(vecs) == 0:
        raise DependentInput("span basis is linearly dependent")
    d = len(vecs[0])
    k = len(vecs)
    # z in span <=> z is orthogonal to the orthogonal complement lattice.
    normals = integer_kernel([list(v) for v in vecs]) if k < d else []
    if not normals:
        return Lattice.from_basis(identity_matrix(d))
    sat = integer_kernel([list(nv) for nv in normals])
    return Lattice.from_basis(sat)


def orthogonal_lattice(lat: Lattice) -> Lattice:
    """Integer points of the orthogonal complement of a saturated lattice."""
    if lat.rank == 0:
        return Lattice.from_basis(identity_matrix(lat.dimension))
    resat = saturate(lat.basis)
    if resat.det_squared != lat.det_squared:
        raise NotSaturated("input lattice is not saturated")
    if lat.rank == lat.dimension:
        return Lattice((), Fraction(1))
    perp = integer_kernel([list(v) for v in lat.basis])
    return Lattice.from_basis(perp)
