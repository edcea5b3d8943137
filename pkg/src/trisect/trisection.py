"""Pseudotrisection diagrams and their intersection forms.

A diagram is a Heegaard triple (A, B, C) of cut systems such that the
(A, B) pair has the first homology of a connected sum of k copies of
S^1 x S^2 while the (B, C) and (C, A) pairs are homology spheres.

The intersection form lives on ``L_C`` intersected with ``L_A + L_B``.  For
classes u, v there, write u = a + b with a in ``L_A`` and b in ``L_B``; the
form is ``Q(u, v) = <a, v>``.  On a standard diagram this is the matrix
product ``(C.B) (A.B)^-1 (A.C)`` of pairing matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lattice as la
from .errors import (
    AsymmetricResult,
    InvalidDiagram,
    NonInvertiblePairing,
    NotUnimodular,
)
from .forms import check_form, classify_form, e8, is_even
from .heegaard import HeegaardTriple, homology_of_pairing
from .surface import is_symplectic, pairing_matrix


@dataclass(frozen=True)
class DiagramFlags:
    ab_free_rank: int
    ab_torsion: tuple
    bc_unimodular: bool
    ca_unimodular: bool
    k: int

    @property
    def ab_ok(self) -> bool:
        return self.ab_free_rank == self.k and not self.ab_torsion

    @property
    def valid(self) -> bool:
        return self.ab_ok and self.bc_unimodular and self.ca_unimodular

    def failures(self) -> list:
        out = []
        if not self.ab_ok:
            out.append(
                f"AB pair has free rank {self.ab_free_rank} and torsion "
                f"{list(self.ab_torsion)}, expected free rank {self.k}"
            )
        if not self.bc_unimodular:
            out.append("BC pair is not a homology sphere")
        if not self.ca_unimodular:
            out.append("CA pair is not a homology sphere")
        return out

    def to_json(self) -> dict:
        return {
            "ab_free_rank": self.ab_free_rank,
            "ab_torsion": list(self.ab_torsion),
            "ab_ok": self.ab_ok,
            "bc_unimodular": self.bc_unimodular,
            "ca_unimodular": self.ca_unimodular,
            "valid": self.valid,
        }


@dataclass(frozen=True)
class PseudotrisectionDiagram:
    triple: HeegaardTriple
    flags: DiagramFlags

    @property
    def genus(self) -> int:
        return self.triple.genus

    @property
    def k(self) -> int:
        return self.triple.k

    @property
    def A(self) -> la.Matrix:
        return self.triple.A.rows

    @property
    def B(self) -> la.Matrix:
        return self.triple.B.rows

    @property
    def C(self) -> la.Matrix:
        return self.triple.C.rows

    def require_valid(self) -> "PseudotrisectionDiagram":
        if not self.flags.valid:
            raise InvalidDiagram("; ".join(self.flags.failures()))
        return self

    def to_json(self) -> dict:
        return self.triple.to_json()


def diagram_flags(t: HeegaardTriple) -> DiagramFlags:
    ab = homology_of_pairing(pairing_matrix(t.A, t.B))
    return DiagramFlags(
        ab.free_rank,
        ab.invariant_factors,
        la.is_unimodular(pairing_matrix(t.B, t.C)),
        la.is_unimodular(pairing_matrix(t.C, t.A)),
        t.k,
    )


def make_diagram(t: HeegaardTriple) -> PseudotrisectionDiagram:
    """Wrap a triple with its validity flags (no exception on failure)."""
    return PseudotrisectionDiagram(t, diagram_flags(t))


def diagram_from_rows(genus, alpha, beta, gamma, k=0) -> PseudotrisectionDiagram:
    return make_diagram(HeegaardTriple.from_rows(genus, alpha, beta, gamma, k=k))


@dataclass(frozen=True)
class IntersectionForm:
    matrix: la.Matrix
    label: str | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def signature(self) -> int:
        return la.signature(self.matrix)

    @property
    def even(self) -> bool:
        return is_even(self.matrix)

    @property
    def unimodular(self) -> bool:
        return la.is_unimodular(self.matrix)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "matrix": [list(r) for r in self.matrix],
            "signature": self.signature,
            "even": self.even,
            "unimodular": self.unimodular,
            "label": self.label,
        }


def q_formula(A, B, C) -> la.Matrix:
    """``(C.B) (A.B)^-1 (A.C)`` for a triple whose A.B pairing is invertible."""
    ab = pairing_matrix(A, B)
    if not la.is_unimodular(ab):
        raise NonInvertiblePairing(f"det(A.B) = {la.det(ab)}")
    n = len(ab)
    return la.matmul(
        la.matmul(pairing_matrix(C, B), la.unimodular_inverse(ab), n),
        pairing_matrix(A, C),
        n,
    )


@dataclass(frozen=True)
class _Reduction:
    """Data produced by splitting off the ``L_A`` and ``L_B`` overlap."""

    a_first: la.Matrix  # n rows of L_A, dual to b_first
    b_first: la.Matrix  # n rows of L_B
    overlap: la.Matrix  # k rows spanning L_A meet L_B
    coeffs: la.Matrix  # n x g coefficients over C of the form lattice
    c: la.Matrix  # n classes in L_C, orthogonal to the overlap
    q: la.Matrix


def _reduce(d: PseudotrisectionDiagram) -> _Reduction:
    d.require_valid()
    g, k = d.genus, d.k
    n = g - k
    two_g = 2 * g
    snf = la.smith_normal_form(pairing_matrix(d.A, d.B), g)
    a2 = la.matmul(snf.left, d.A, two_g)
    b2 = la.matmul(la.transpose(snf.right, g), d.B, two_g)
    overlap = a2[n:]
    gamma_vs_overlap = pairing_matrix(d.C, overlap) if k else tuple(() for _ in range(g))
    coeffs = la.left_kernel(gamma_vs_overlap, k) if k else la.identity(g)
    if len(coeffs) != n:
        raise InvalidDiagram(f"form lattice has rank {len(coeffs)}, expected {n}")
    c = la.matmul(coeffs, d.C, two_g)
    a_first, b_first = a2[:n], b2[:n]
    q = q_formula(a_first, b_first, c) if n else ()
    return _Reduction(a_first, b_first, overlap, coeffs, c, q)


def intersection_form(d: PseudotrisectionDiagram) -> IntersectionForm:
    """Intersection form of a valid diagram, of rank ``g - k``.

    Symmetry and unimodularity are checked on the result rather than assumed.
    """
    q = _reduce(d).q
    if not la.is_symmetric(q):
        raise AsymmetricResult(f"computed matrix {q} is not symmetric")
    if not la.is_unimodular(q):
        raise NotUnimodular(f"computed form has determinant {la.det(q)}")
    try:
        label = classify_form(q)
    except ValueError:
        label = None
    return IntersectionForm(q, label)


def standard_rows(q: la.Matrix, k: int):
    """Rows of the standard diagram for ``q`` with k stabilizations.

    Handles 1..n carry ``x_i``, ``y_i`` and ``z_i = -x_i - sum_j q_ij y_j``;
    the remaining k handles are stabilization blocks ``(x, x, y)``.
    """
    n = len(q)
    g = n + k

    def x(i):
        return tuple(1 if j == i else 0 for j in range(2 * g))

    def y(i):
        return x(g + i)

    alpha = [x(i) for i in range(g)]
    beta = [y(i) for i in range(n)] + [x(i) for i in range(n, g)]
    gamma = []
    for i in range(n):
        v = [-c for c in x(i)]
        for j in range(n):
            v[g + j] -= q[i][j]
        gamma.append(tuple(v))
    gamma += [y(i) for i in range(n, g)]
    return g, alpha, beta, gamma


def standard_pseudotrisection(q, k: int = 0) -> PseudotrisectionDiagram:
    """The standard diagram of genus ``rank(q) + k`` whose form is ``q``."""
    q = check_form(la.to_matrix(q))
    if k < 0:
        raise InvalidDiagram("k must be non-negative")
    g, alpha, beta, gamma = standard_rows(q, k)
    d = diagram_from_rows(g, alpha, beta, gamma, k=k)
    return d.require_valid()


def e8_figure_diagram() -> PseudotrisectionDiagram:
    """Genus-8 diagram with ``alpha = x``, ``beta = y`` and ``gamma_i = y_i + sum_j E8_ij x_j``.

    Each gamma class meets exactly one alpha class once, so the (C, A) pair
    is standard, while the (B, C) pairing is ``-E8`` and the (B, C) union is
    only a homology sphere.
    """
    m = e8()
    g = 8
    alpha = [tuple(1 if j == i else 0 for j in range(16)) for i in range(g)]
    beta = [tuple(1 if j == g + i else 0 for j in range(16)) for i in range(g)]
    gamma = [tuple(m[i]) + beta[i][g:] for i in range(g)]
    return diagram_from_rows(g, alpha, beta, gamma, k=0).require_valid()


def is_standard(d: PseudotrisectionDiagram) -> bool:
    """Whether ``d`` has exactly the rows of ``standard_pseudotrisection(Q, k)``."""
    try:
        q = intersection_form(d).matrix
    except ValueError:
        return False
    g, alpha, beta, gamma = standard_rows(q, d.k)
    return (d.A, d.B, d.C) == (tuple(alpha), tuple(beta), tuple(gamma))


def standard_basis(d: PseudotrisectionDiagram):
    """Symplectic basis in which ``d`` becomes the standard diagram of its form.

    Returns ``(P, q)`` where the rows of P are the new ``x_1..x_g, y_1..y_g``
    written in the old coordinates.
    """
    red = _reduce(d)
    g, k = d.genus, d.k
    n = g - k
    q = red.q
    if not la.is_symmetric(q):
        raise AsymmetricResult("form is not symmetric")
    qinv = la.unimodular_inverse(q) if n else ()

    cb = pairing_matrix(red.c, red.b_first)
    a = la.matmul(cb, red.a_first, 2 * g) if n else ()
    b = [tuple(ci - ai for ci, ai in zip(cr, ar)) for cr, ar in zip(red.c, a)]
    xs = [tuple(-v for v in r) for r in a]
    ys = [tuple(-v for v in r) for r in la.matmul(qinv, tuple(b), 2 * g)] if n else []

    alpha_basis = tuple(xs) + red.overlap
    # dual classes for the stabilization handles, taken inside L_C
    if k:
        nmat = pairing_matrix(alpha_basis, d.C)
        target = tuple(tuple(1 if j == n + l else 0 for j in range(g)) for l in range(k))
        t = la.matmul(target, la.unimodular_inverse(la.transpose(nmat, g)), g)
        ys += list(la.matmul(t, d.C, 2 * g))
    basis = alpha_basis + tuple(ys)
    if not is_symplectic(basis):
        raise InvalidDiagram("could not build a symplectic basis")
    return basis, q


def standardize_basis(d: PseudotrisectionDiagram) -> PseudotrisectionDiagram:
    """Equivalent diagram in standard shape, same form.

    The new diagram is related to ``d`` by a symplectic change of lattice
    basis and by GL_g(Z) row operations on each cut system; both facts are
    checked before returning.
    """
    basis, q = standard_basis(d)
    g = d.genus
    to_new = la.unimodular_inverse(basis)
    out = standard_pseudotrisection(q, d.k)
    for old, new in ((d.A, out.A), (d.B, out.B), (d.C, out.C)):
        moved = la.matmul(old, to_new, 2 * g)
        if la.hermite_normal_form(moved, 2 * g) != la.hermite_normal_form(new, 2 * g):
            raise InvalidDiagram("standardization changed a Lagrangian")
    return out


def rotated_form(d: PseudotrisectionDiagram) -> la.Matrix:
    """``-(A.C) (B.C)^-1 (A.B)^T``: the form computed from the (B, C) pair.

    On standard diagrams this returns ``Q`` padded by a zero block of size k,
    which makes it a handy independent check.
    """
    bc = pairing_matrix(d.B, d.C)
    g = d.genus
    m = la.matmul(la.matmul(pairing_matrix(d.A, d.C), la.unimodular_inverse(bc), g), la.transpose(pairing_matrix(d.A, d.B), g), g)
    return la.scale(m, -1)
