"""Exact integer matrix algebra.

Matrices are tuples of tuples of Python ints (row-major).  Nothing in this
module touches floating point: determinants use Bareiss elimination,
inverses and signatures use :class:`fractions.Fraction`, and Smith/Hermite
reductions use unimodular integer row and column operations only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    Degenerate,
    DimensionMismatch,
    NotSquare,
    NotSymmetric,
    NotUnimodular,
)

Matrix = tuple  # tuple[tuple[int, ...], ...]


def to_matrix(rows: Iterable[Sequence[int]]) -> Matrix:
    """Copy ``rows`` into an immutable integer matrix, checking it is rectangular."""
    out = []
    for row in rows:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise DimensionMismatch(f"non-integer entry {x!r}")
        out.append(tuple(row))
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix")
    return tuple(out)


def ncols(m: Matrix, default: int = 0) -> int:
    return len(m[0]) if m else default


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    c = ncols(m, cols or 0)
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(c))


def matmul(a: Matrix, b: Matrix, cols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``cols`` gives the column count when ``b`` has no rows."""
    c = ncols(b, cols or 0)
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{c}")
    bt = transpose(b, c)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence[int], m: Matrix) -> tuple:
    """Row vector times matrix."""
    if len(v) != len(m):
        raise DimensionMismatch(f"vector of length {len(v)} against {len(m)} rows")
    out = [0] * ncols(m)
    for x, row in zip(v, m):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return tuple(out)


def scale(m: Matrix, s: int) -> Matrix:
    return tuple(tuple(s * x for x in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def direct_sum(*blocks: Matrix) -> Matrix:
    """Block-diagonal sum of square or rectangular blocks."""
    total_c = sum(ncols(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        c = ncols(b)
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (total_c - offset - c))
        offset += c
    return tuple(rows)


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def is_square(m: Matrix) -> bool:
    return all(len(r) == len(m) for r in m)


def is_symmetric(m: Matrix) -> bool:
    return is_square(m) and all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def _require_square(m: Matrix) -> None:
    if not is_square(m):
        raise NotSquare(f"{len(m)}x{ncols(m)} matrix")


def det(m: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    _require_square(m)
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
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
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right`` is the diagonal matrix carrying ``diag``."""

    left: Matrix
    diag: tuple
    right: Matrix

    def diagonal_matrix(self, rows: int, cols: int) -> Matrix:
        return tuple(
            tuple(self.diag[i] if i == j and i < len(self.diag) else 0 for j in range(cols))
            for i in range(rows)
        )


def _pick_pivot(a, t, r, c):
    best = None
    for i in range(t, r):
        row = a[i]
        for j in range(t, c):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(m: Matrix, cols: int | None = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The pivot at each stage is the entry of smallest absolute value in the
    remaining submatrix, ties broken by lowest (row, col).  An input already
    in Smith form therefore comes back with identity transforms.
    """
    r = len(m)
    c = ncols(m, cols or 0)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(r)]
    v = [list(row) for row in identity(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    diag = []
    for t in range(min(r, c)):
        while True:
            piv = _pick_pivot(a, t, r, c)
            if piv is None:
                break
            _, pi, pj = piv
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        diag.append(a[t][t])
    return SmithDecomposition(to_matrix(u), tuple(diag), to_matrix(v))


def invariant_factors(m: Matrix, cols: int | None = None) -> tuple:
    return smith_normal_form(m, cols).diag


def is_unimodular(m: Matrix) -> bool:
    _require_square(m)
    return abs(det(m)) == 1


def _fraction_inverse(m: Matrix):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def unimodular_inverse(m: Matrix) -> Matrix:
    """Exact integer inverse; raises :class:`NotUnimodular` unless ``|det| = 1``."""
    _require_square(m)
    if abs(det(m)) != 1:
        raise NotUnimodular(f"determinant {det(m)}")
    inv = _fraction_inverse(m)
    return tuple(tuple(int(x) for x in row) for row in inv)


def signature(m: Matrix) -> int:
    """Signature by exact congruence diagonalization over the rationals."""
    _require_square(m)
    if not is_symmetric(m):
        raise NotSymmetric("signature needs a symmetric matrix")
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                a[k], a[piv] = a[piv], a[k]
                for row in a:
                    row[k], row[piv] = row[piv], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    raise Degenerate("form has a nontrivial radical")
                # e_k <- e_k + e_j makes the diagonal entry 2 a_kj
                for col in range(n):
                    a[k][col] += a[j][col]
                for row in a:
                    row[k] += row[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / p
                for col in range(k, n):
                    a[i][col] -= f * a[k][col]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
    return pos - neg


# ---------------------------------------------------------------------------
# Row lattices


def hermite_normal_form(rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Canonical row-style Hermite basis of the lattice spanned by ``rows``.

    Pivots are positive and strictly increasing in column; entries above a
    pivot are reduced into ``[0, pivot)``.  Zero rows are dropped.
    """
    lat = RowLattice(ncols(rows, cols or 0))
    for r in rows:
        lat.add(r)
    return lat.hermite_basis()


def left_kernel(m: Matrix, cols: int | None = None) -> Matrix:
    """Hermite basis of ``{t : t @ m = 0}``."""
    r = len(m)
    c = ncols(m, cols or 0)
    aug = [tuple(m[i]) + tuple(int(i == j) for j in range(r)) for i in range(r)]
    lat = RowLattice(c + r)
    for row in aug:
        lat.add(row)
    kern = [row[c:] for row in lat.dense_basis() if not any(row[:c])]
    return hermite_normal_form(kern, r)


def solve_left(m: Matrix, v: Sequence[int], cols: int | None = None):
    """Some integer ``t`` with ``t @ m == v``, or ``None`` when none exists."""
    lat = RowLattice(ncols(m, cols or 0))
    for i, row in enumerate(m):
        lat.add(row, tag=i)
    combo = lat.solve(v)
    if combo is None:
        return None
    return tuple(combo.get(i, 0) for i in range(len(m)))


def _egcd(a: int, b: int):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def egcd_vector(values):
    """Integer coefficients s with ``sum s_i values_i == 1``, or ``None`` if the gcd exceeds 1."""
    for i, v in enumerate(values):
        if abs(v) == 1:
            return tuple(v if j == i else 0 for j in range(len(values)))
    coeffs = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        ng, s, t = _egcd(g, v)
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = ng
        if g == 1:
            break
    if g != 1:
        return None
    return tuple(coeffs)


def _axpy(y: dict, a: int, x: dict) -> None:
    """In place ``y += a * x`` on sparse dict vectors."""
    for k, val in x.items():
        nv = y.get(k, 0) + a * val
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def _lin(a: int, x: dict, b: int, y: dict) -> dict:
    out = {k: a * val for k, val in x.items() if a * val}
    _axpy(out, b, y)
    return out


class RowLattice:
    """Incrementally maintained echelon basis of a sublattice of ``Z^dim``.

    Rows are sparse ``{column: value}`` dicts.  With ``add(v, tag)`` each
    basis row also records which combination of tagged generators produced
    it, so :meth:`solve` returns integer witnesses over the generators.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict = {}  # pivot column -> (row, combo)
        self.num_generators = 0

    def _sparse(self, v):
        if isinstance(v, dict):
            return {k: x for k, x in v.items() if x}
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a rank-{self.dim} lattice")
        return {j: int(x) for j, x in enumerate(v) if x}

    def add(self, v, tag=None) -> bool:
        """Insert a generator; return whether the echelon basis changed."""
        self.num_generators += 1
        row = self._sparse(v)
        combo = {} if tag is None else {tag: 1}
        changed = False
        while row:
            c = min(row)
            if c not in self._rows:
                if row[c] < 0:
                    row = {k: -x for k, x in row.items()}
                    combo = {k: -x for k, x in combo.items()}
                self._store(c, row, combo)
                return True
            prow, pcombo = self._rows[c]
            p, x = prow[c], row[c]
            if x % p == 0:
                q = x // p
                _axpy(row, -q, prow)
                _axpy(combo, -q, pcombo)
                continue
            g, s, t = _egcd(p, x)
            new_p = _lin(s, prow, t, row)
            new_pc = _lin(s, pcombo, t, combo)
            row = _lin(x // g, prow, -(p // g), row)
            combo = _lin(x // g, pcombo, -(p // g), combo)
            self._store(c, new_p, new_pc)
            changed = True
        return changed

    def _tail_reduce(self, row, combo, after) -> None:
        """Bring entries of ``row`` under pivots right of ``after`` into ``[0, pivot)``."""
        for c2 in sorted(k for k in row if k > after and k in self._rows):
            x = row.get(c2, 0)
            if not x:
                continue
            prow, pcombo = self._rows[c2]
            q = x // prow[c2]
            if q:
                _axpy(row, -q, prow)
                _axpy(combo, -q, pcombo)

    def _store(self, c, row, combo) -> None:
        # keep the basis Hermite-reduced so entries stay small
        self._tail_reduce(row, combo, c)
        self._rows[c] = (row, combo)
        p = row[c]
        for c0, (r0, k0) in self._rows.items():
            if c0 < c and r0.get(c, 0):
                q = r0[c] // p
                if q:
                    _axpy(r0, -q, row)
                    _axpy(k0, -q, combo)
                    self._tail_reduce(r0, k0, c)

    def reduce(self, v):
        """Return ``(residual, combo)`` with ``v == residual + combo-sum``."""
        row = self._sparse(v)
        combo: dict = {}
        for c in sorted(self._rows):
            x = row.get(c, 0)
            if not x:
                continue
            if any(k < c for k in row):
                break
            prow, pcombo = self._rows[c]
            if x % prow[c]:
                break
            q = x // prow[c]
            _axpy(row, -q, prow)
            _axpy(combo, q, pcombo)
        return row, combo

    def solve(self, v):
        """Integer combination of tagged generators equal to ``v``, else ``None``."""
        residual, combo = self.reduce(v)
        return None if residual else combo

    def contains(self, v) -> bool:
        return not self.reduce(v)[0]

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple:
        return tuple(sorted(self._rows))

    def dense_basis(self) -> Matrix:
        out = []
        for c in sorted(self._rows):
            row = self._rows[c][0]
            out.append(tuple(row.get(j, 0) for j in range(self.dim)))
        return tuple(out)

    def hermite_basis(self) -> Matrix:
        """The basis rows; they are kept in reduced Hermite form by :meth:`add`."""
        return self.dense_basis()

    def invariant_factors(self) -> tuple:
        """Nonzero invariant factors of the lattice, one per basis row."""
        if all(self._rows[c][0][c] == 1 for c in self._rows):
            return (1,) * self.rank
        return smith_normal_form(self.dense_basis(), self.dim).diag

    def index_is_one(self) -> bool:
        return all(f == 1 for f in self.invariant_factors())


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
