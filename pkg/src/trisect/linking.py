"""Linking forms on the central surface, quadratic enhancements, Arf
invariants and the Casson knot formula.

For two Lagrangians P, R with unimodular pairing, every class splits
uniquely as ``v = v_P + v_R``.  The linking form of the glued homology
sphere, evaluated on pushoffs of surface classes, is
``l(u, v) = <v_P, u_R>``.  It satisfies ``l(v, u) = l(u, v) + <u, v>``.

``l2`` uses the (B, C) pair and ``l3`` uses the (C, A) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import lattice as la
from .errors import (
    DegeneratePairing,
    DimensionMismatch,
    IncompleteLinkingData,
    InvalidBasis,
    NonStandardDiagram,
    OddRank,
)
from .surface import SymplecticLattice, pairing, pairing_matrix

WHICH = ("l2", "l3")


@dataclass(frozen=True)
class LinkingForm:
    matrix: la.Matrix  # matrix[a][b] = l(e_a, e_b)
    which: str

    @property
    def genus(self) -> int:
        return len(self.matrix) // 2

    def value(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != len(self.matrix) or len(v) != len(self.matrix):
            raise DimensionMismatch("class length does not match the linking matrix")
        return sum(u[a] * self.matrix[a][b] * v[b] for a in range(len(u)) if u[a] for b in range(len(v)) if v[b])

    def symmetry_defect(self) -> la.Matrix:
        """``L^T - L - J``; zero exactly when the symmetry relation holds."""
        j = SymplecticLattice(self.genus).j_matrix()
        n = len(self.matrix)
        return tuple(
            tuple(self.matrix[b][a] - self.matrix[a][b] - j[a][b] for b in range(n)) for a in range(n)
        )

    def satisfies_symmetry(self) -> bool:
        return not any(any(r) for r in self.symmetry_defect())

    def enhancement(self) -> "QuadraticEnhancement":
        return QuadraticEnhancement(tuple(self.matrix[a][a] % 2 for a in range(len(self.matrix))))

    def to_json(self) -> dict:
        g = self.genus
        labels = [f"x{i + 1}" for i in range(g)] + [f"y{i + 1}" for i in range(g)]
        return {"which": self.which, "basis": labels, "matrix": [list(r) for r in self.matrix]}


def _projector(p: la.Matrix, r: la.Matrix, g: int):
    """Return a function ``v -> (v_P, v_R)`` for the splitting along P + R."""
    pr = pairing_matrix(p, r)
    if not la.is_unimodular(pr):
        raise NonStandardDiagram(f"pairing has determinant {la.det(pr)}")
    pr_inv = la.unimodular_inverse(pr)
    rp_inv = la.unimodular_inverse(pairing_matrix(r, p))

    def split(v):
        s = la.vecmat(tuple(pairing(v, row) for row in r), pr_inv)
        t = la.vecmat(tuple(pairing(v, row) for row in p), rp_inv)
        return la.vecmat(s, p), la.vecmat(t, r)

    return split


def linking_from_pair(p: la.Matrix, r: la.Matrix, g: int, which: str = "l") -> LinkingForm:
    split = _projector(p, r, g)
    n = 2 * g
    parts = [split(tuple(1 if j == a else 0 for j in range(n))) for a in range(n)]
    m = tuple(tuple(pairing(parts[b][0], parts[a][1]) for b in range(n)) for a in range(n))
    return LinkingForm(m, which)


def linking_form(d, which: str) -> LinkingForm:
    """``l2`` (from the B, C pair) or ``l3`` (from the C, A pair) of a diagram."""
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}")
    p, r = (d.B, d.C) if which == "l2" else (d.C, d.A)
    return linking_from_pair(p, r, d.genus, which)


@dataclass(frozen=True)
class QuadraticEnhancement:
    basis_values: tuple  # q(e_a) in {0, 1}

    @property
    def genus(self) -> int:
        return len(self.basis_values) // 2

    def __call__(self, v) -> int:
        return q_eval(self, v)


def q_eval(q: QuadraticEnhancement, v: Sequence[int]) -> int:
    """``sum c_a q(e_a) + sum_{a<b} c_a c_b <e_a, e_b>`` mod 2."""
    n = len(q.basis_values)
    if len(v) != n:
        raise DimensionMismatch(f"class of length {len(v)} against {n} basis values")
    g = n // 2
    total = sum(c * qa for c, qa in zip(v, q.basis_values))
    # only <x_i, y_i> pairs are nonzero among basis vectors with a < b
    total += sum(v[i] * v[g + i] for i in range(g))
    return total % 2


def all_classes_mod2(g: int):
    return product((0, 1), repeat=2 * g)


def q2_equals_q3(d) -> bool:
    """Whether the enhancements from ``l2`` and ``l3`` agree (checked on the basis)."""
    return not enhancement_divergence(d)


def enhancement_divergence(d) -> list:
    """Basis indices at which q2 and q3 disagree."""
    q2 = linking_form(d, "l2").enhancement().basis_values
    q3 = linking_form(d, "l3").enhancement().basis_values
    return [a for a, (u, v) in enumerate(zip(q2, q3)) if u != v]


# ---------------------------------------------------------------------------
# Subsurfaces and knot invariants


@dataclass(frozen=True)
class SubsurfaceBasis:
    """Symplectic pairs ``(a_i, b_i)`` spanning one side of a separating curve."""

    pairs: tuple

    def __post_init__(self):
        check_symplectic_pairs(self.pairs)

    @property
    def h(self) -> int:
        return len(self.pairs)

    def classes(self) -> tuple:
        """Order ``a_1, b_1, ..., a_h, b_h``."""
        return tuple(c for ab in self.pairs for c in ab)


def check_symplectic_pairs(pairs) -> None:
    for i, (ai, bi) in enumerate(pairs):
        for j, (aj, bj) in enumerate(pairs):
            want = 1 if i == j else 0
            if pairing(ai, bj) != want or pairing(ai, aj) or pairing(bi, bj):
                raise InvalidBasis(f"pairs {i}, {j} violate the symplectic relations")


def arf_invariant(q: QuadraticEnhancement, s: SubsurfaceBasis) -> int:
    return sum(q_eval(q, a) * q_eval(q, b) for a, b in s.pairs) % 2


def restricted_linking(l, s: SubsurfaceBasis) -> la.Matrix:
    """Linking values on ``a_1, b_1, ..., a_h, b_h``."""
    cls = s.classes()
    return tuple(tuple(l.value(u, v) for v in cls) for u in cls)


def _restricted(l, s: SubsurfaceBasis) -> la.Matrix:
    if isinstance(l, LinkingForm):
        return restricted_linking(l, s)
    n = 2 * s.h
    if len(l) != n or any(len(r) != n for r in l):
        raise IncompleteLinkingData(f"expected a {n}x{n} table on the subsurface basis")
    if any(x is None for r in l for x in r):
        raise IncompleteLinkingData("table has missing entries")
    return la.to_matrix(l)


def casson_knot_invariant(l, s: SubsurfaceBasis) -> int:
    """Casson knot invariant ``lambda'`` from linking data on a subsurface basis.

    ``l`` is a :class:`LinkingForm` or a table already restricted to
    ``a_1, b_1, ..., a_h, b_h``.  Each handle contributes the determinant
    ``l(a_i,a_i) l(b_i,b_i) - l(a_i,b_i) l(b_i,a_i)`` and each pair of
    handles contributes ``2 (l(a_i,a_j) l(b_i,b_j) - l(a_i,b_j) l(a_j,b_i))``.
    """
    m = _restricted(l, s)

    def lk(p, i, q, j):  # p, q in {0: a, 1: b}
        return m[2 * i + p][2 * j + q]

    h = s.h
    total = 0
    for i in range(h):
        total += lk(0, i, 0, i) * lk(1, i, 1, i) - lk(0, i, 1, i) * lk(1, i, 0, i)
    for i in range(h):
        for j in range(i + 1, h):
            total += 2 * (lk(0, i, 0, j) * lk(1, i, 1, j) - lk(0, i, 1, j) * lk(0, j, 1, i))
    return total


def separating_class_subsurface(d, side_classes) -> SubsurfaceBasis:
    """Symplectic basis of the span of ``side_classes`` by integral Gram-Schmidt.

    ``d`` only fixes the surface; it may be a diagram, a genus, or ``None``
    when the classes determine the genus.
    """
    rows = la.to_matrix(side_classes)
    n = len(rows[0]) if rows else (2 * (d if isinstance(d, int) else getattr(d, "genus", 0)))
    if d is not None and not isinstance(d, int) and 2 * d.genus != n:
        raise DimensionMismatch("side classes do not match the diagram genus")
    span = la.hermite_normal_form(rows, n)
    if len(span) % 2:
        raise OddRank(f"span has rank {len(span)}")
    gram = pairing_matrix(span, span)
    if abs(la.det(gram)) != 1:
        raise DegeneratePairing(f"Gram determinant {la.det(gram)}")
    pairs = []
    while span:
        a = span[0]
        vals = [pairing(a, w) for w in span]
        coeffs = la.egcd_vector(vals)
        if coeffs is None:
            raise DegeneratePairing("pairing is not unimodular on the span")
        b = la.vecmat(coeffs, span)
        pairs.append((a, b))
        rest = []
        for w in span[1:]:
            wb, wa = pairing(w, b), pairing(w, a)
            rest.append(tuple(wi - wb * ai + wa * bi for wi, ai, bi in zip(w, a, b)))
        span = la.hermite_normal_form(rest, n)
    return SubsurfaceBasis(tuple(pairs))
