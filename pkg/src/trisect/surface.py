"""Homology of a closed oriented surface with its intersection pairing.

Coordinates are taken in the ordered basis ``(x_1..x_g, y_1..y_g)`` with
``<x_i, y_j> = delta_ij``.  A curve is remembered only through its class,
and a cut system only through the g classes of its curves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import lattice as la
from .errors import DimensionMismatch, NotIsotropic, NotPrimitive, WrongRank


@dataclass(frozen=True)
class SymplecticLattice:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise DimensionMismatch("negative genus")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def x(self, i: int) -> tuple:
        """Class of x_{i+1} (zero-based index)."""
        return unit(self.rank, i)

    def y(self, i: int) -> tuple:
        return unit(self.rank, self.genus + i)

    def check(self, v: Sequence[int]) -> tuple:
        if len(v) != self.rank:
            raise DimensionMismatch(f"class of length {len(v)} on a genus-{self.genus} surface")
        return tuple(v)

    def j_matrix(self) -> la.Matrix:
        g = self.genus
        return tuple(
            tuple(
                1 if (a < g and b == a + g) else -1 if (a >= g and b == a - g) else 0
                for b in range(2 * g)
            )
            for a in range(2 * g)
        )


def unit(n: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(n))


def pairing(a: Sequence[int], b: Sequence[int]) -> int:
    """``a^T J b`` for coordinate vectors of equal even length."""
    if len(a) != len(b) or len(a) % 2:
        raise DimensionMismatch(f"cannot pair classes of lengths {len(a)} and {len(b)}")
    g = len(a) // 2
    return sum(a[i] * b[g + i] - a[g + i] * b[i] for i in range(g))


def intersection_pairing(lat: SymplecticLattice, a: Sequence[int], b: Sequence[int]) -> int:
    return pairing(lat.check(a), lat.check(b))


@dataclass(frozen=True)
class CutSystemClass:
    """Validated g x 2g matrix whose rows span a Lagrangian summand."""

    genus: int
    rows: la.Matrix

    def span_contains(self, v: Sequence[int]) -> bool:
        return la.solve_left(self.rows, v, 2 * self.genus) is not None

    def to_json(self) -> dict:
        return {"genus": self.genus, "rows": [list(r) for r in self.rows]}


def validate_cut_system(lat: SymplecticLattice, rows) -> CutSystemClass:
    """Check isotropy, rank and primitivity of ``rows``; raise on the first failure."""
    g = lat.genus
    m = la.to_matrix(rows)
    if len(m) != g:
        raise WrongRank(f"expected {g} classes, got {len(m)}")
    for r in m:
        lat.check(r)
    for i in range(g):
        for j in range(i + 1, g):
            if pairing(m[i], m[j]):
                raise NotIsotropic(f"<row {i}, row {j}> = {pairing(m[i], m[j])}")
    factors = la.invariant_factors(m, 2 * g)
    if any(d == 0 for d in factors):
        raise WrongRank(f"rank {sum(1 for d in factors if d)} < {g}")
    if any(d != 1 for d in factors):
        raise NotPrimitive(f"invariant factors {factors}")
    return CutSystemClass(g, m)


def pairing_matrix(a, b) -> la.Matrix:
    """Matrix of pairings ``<a_i, b_j>`` between two row families."""
    ra = a.rows if isinstance(a, CutSystemClass) else a
    rb = b.rows if isinstance(b, CutSystemClass) else b
    if isinstance(a, CutSystemClass) and isinstance(b, CutSystemClass) and a.genus != b.genus:
        raise DimensionMismatch("cut systems live on different surfaces")
    return tuple(tuple(pairing(u, v) for v in rb) for u in ra)


# ---------------------------------------------------------------------------
# Symplectic automorphisms, used to scramble test diagrams


def transvection(v: Sequence[int], sign: int = 1):
    """The map ``u -> u + sign * <u, v> v``, a symplectic automorphism."""

    def apply(u):
        c = sign * pairing(u, v)
        return tuple(ui + c * vi for ui, vi in zip(u, v)) if c else tuple(u)

    return apply


def transvection_matrix(v: Sequence[int], sign: int = 1) -> la.Matrix:
    """Row-action matrix M of the transvection: ``u @ M`` is the image of ``u``."""
    n = len(v)
    t = transvection(v, sign)
    return tuple(t(unit(n, i)) for i in range(n))


def random_symplectic(genus: int, rng: random.Random, steps: int | None = None) -> la.Matrix:
    """Random element of Sp(2g, Z) as a product of transvections (row action).

    Each transvection is along a vector with one or two entries of size 1,
    which keeps entries small enough for exact work at moderate genus.
    """
    n = 2 * genus
    rows = [list(r) for r in la.identity(n)]
    for _ in range(steps if steps is not None else 2 * n):
        if n == 0:
            break
        v = {pos: rng.choice((1, -1)) for pos in rng.sample(range(n), min(n, rng.randint(1, 2)))}
        sign = rng.choice((1, -1))
        # <u, v> only needs the partner coordinate of each support position
        partner = {(p + genus) % n: (-vp if p < genus else vp) for p, vp in v.items()}
        for u in rows:
            c = sign * sum(u[p] * w for p, w in partner.items())
            if c:
                for p, vp in v.items():
                    u[p] += c * vp
    return la.to_matrix(rows)


def is_symplectic(m: la.Matrix) -> bool:
    """Whether the rows of ``m`` form a symplectic basis (``M J M^T = J``)."""
    n = len(m)
    if n % 2:
        return False
    return pairing_matrix(m, m) == SymplecticLattice(n // 2).j_matrix()


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> la.Matrix:
    """Random element of GL_n(Z) built from elementary row operations."""
    m = [list(r) for r in la.identity(n)]
    if n == 0:
        return ()
    for _ in range(steps if steps is not None else 4 * n):
        op = rng.random()
        i, j = rng.randrange(n), rng.randrange(n)
        if op < 0.15:
            m[i], m[j] = m[j], m[i]
        elif op < 0.3:
            m[i] = [-x for x in m[i]]
        elif i != j:
            c = rng.choice((-2, -1, 1, 2))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return la.to_matrix(m)
