"""Exterior cube of surface homology and Johnson-homomorphism values.

Torelli elements appear only through their images in ``Lambda^3 H``.  The
image of the bounding pair map attached to a 3-chain ``(a, b, c)`` is
``a ^ b ^ c``; such a map extends over a handlebody as soon as one of the
three curves bounds there, which we test homologically.

Two generator families are built from chain templates written in a
symplectic basis ``(e, f)``:

* ``TAB`` from the basis ``e = x``, ``f = y``, keeping chains with one
  member in ``L_A`` and one in ``L_B``;
* ``TC`` from a symplectic basis ``(z, z*)`` with ``z`` spanning ``L_C``,
  keeping chains with a member in ``L_C``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import lattice as la
from .errors import DimensionMismatch, InvalidChain, NoIntegerSolution
from .forms import check_form
from .surface import CutSystemClass, pairing
from .trisection import standard_rows


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict:
    """Map ``(i, j, k)`` with ``i < j < k < n`` to its lexicographic position."""
    return {t: pos for pos, t in enumerate(itertools.combinations(range(n), 3))}


def wedge_dimension(genus: int) -> int:
    return comb(2 * genus, 3)


@dataclass(frozen=True)
class WedgeCubeElement:
    genus: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != wedge_dimension(self.genus):
            raise DimensionMismatch(f"expected {wedge_dimension(self.genus)} coordinates")

    @classmethod
    def from_sparse(cls, genus: int, sparse: dict) -> "WedgeCubeElement":
        coords = [0] * wedge_dimension(genus)
        for pos, v in sparse.items():
            coords[pos] = v
        return cls(genus, tuple(coords))

    @classmethod
    def zero(cls, genus: int) -> "WedgeCubeElement":
        return cls(genus, (0,) * wedge_dimension(genus))

    def sparse(self) -> dict:
        return {pos: v for pos, v in enumerate(self.coords) if v}

    def __add__(self, other):
        return WedgeCubeElement(self.genus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return WedgeCubeElement(self.genus, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s: int):
        return WedgeCubeElement(self.genus, tuple(s * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def terms(self) -> dict:
        """Nonzero coefficients keyed by index triples."""
        inv = {pos: t for t, pos in triple_index(2 * self.genus).items()}
        return {inv[pos]: v for pos, v in self.sparse().items()}


def wedge3_sparse(a, b, c) -> dict:
    """Coordinates of ``a ^ b ^ c`` as ``{position: coefficient}``."""
    n = len(a)
    if len(b) != n or len(c) != n:
        raise DimensionMismatch("classes of different lengths")
    idx = triple_index(n)
    sa = [(i, v) for i, v in enumerate(a) if v]
    sb = [(i, v) for i, v in enumerate(b) if v]
    sc = [(i, v) for i, v in enumerate(c) if v]
    out: dict = {}
    for i, u in sa:
        for j, v in sb:
            if j == i:
                continue
            for k, w in sc:
                if k == i or k == j:
                    continue
                # sign of the permutation sorting (i, j, k)
                sign = 1
                if i > j:
                    sign = -sign
                if i > k:
                    sign = -sign
                if j > k:
                    sign = -sign
                key = idx[tuple(sorted((i, j, k)))]
                val = out.get(key, 0) + sign * u * v * w
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def wedge3(a, b, c) -> WedgeCubeElement:
    if len(a) % 2:
        raise DimensionMismatch("class length must be even")
    return WedgeCubeElement.from_sparse(len(a) // 2, wedge3_sparse(a, b, c))


@dataclass(frozen=True)
class ThreeChainClass:
    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        if not (len(self.a) == len(self.b) == len(self.c)):
            raise DimensionMismatch("chain classes of different lengths")
        ab, bc, ac = pairing(self.a, self.b), pairing(self.b, self.c), pairing(self.a, self.c)
        if abs(ab) != 1 or abs(bc) != 1 or ac != 0:
            raise InvalidChain(f"pairings (ab, bc, ac) = ({ab}, {bc}, {ac})")
        if not wedge3_sparse(self.a, self.b, self.c):
            raise InvalidChain("chain classes are linearly dependent")

    def members(self):
        return (self.a, self.b, self.c)


def johnson_of_3chain(ch: ThreeChainClass) -> WedgeCubeElement:
    return wedge3(ch.a, ch.b, ch.c)


def _rows(lagr):
    return lagr.rows if isinstance(lagr, CutSystemClass) else lagr


def in_span(rows, v) -> bool:
    return la.solve_left(rows, v, len(v)) is not None


def extends_across(lagr, ch: ThreeChainClass) -> bool:
    """Whether some member of the chain lies in the Lagrangian spanned by ``lagr``."""
    rows = _rows(lagr)
    return any(in_span(rows, m) for m in ch.members())


@dataclass(frozen=True)
class Generator:
    chain: ThreeChainClass
    value: WedgeCubeElement
    tag: str  # template name and basis, e.g. "T3/AB"
    indices: tuple


@dataclass
class GeneratorFamily:
    name: str
    genus: int
    generators: list = field(default_factory=list)

    @property
    def elements(self) -> list:
        return [gen.value for gen in self.generators]

    def provenance(self) -> Counter:
        return Counter(gen.tag for gen in self.generators)

    def __len__(self):
        return len(self.generators)


# Chain templates: each entry is a list of three classes, each class a list of
# (basis letter, index slot) terms.  Slots refer to distinct handle indices.
TEMPLATES = {
    "T1": ([("e", 0)], [("f", 0)], [("e", 0), ("e", 1)]),
    "T2": ([("f", 0)], [("e", 0)], [("f", 0), ("f", 1)]),
    "T3": ([("e", 0)], [("f", 0), ("e", 1)], [("f", 1), ("f", 2)]),
    "T4": ([("f", 0)], [("e", 0), ("f", 1)], [("e", 1), ("e", 2)]),
    "T5": ([("e", 0)], [("f", 0), ("e", 1)], [("f", 1), ("e", 2)]),
    "T6": ([("f", 0)], [("e", 0), ("f", 1)], [("e", 1), ("f", 2)]),
    "T7": ([("e", 0), ("e", 3)], [("f", 0)], [("e", 0), ("e", 1)]),
    "T8": ([("f", 0), ("f", 3)], [("e", 0)], [("f", 0), ("f", 1)]),
}


def _slots(template) -> int:
    return 1 + max(s for cls in template for _, s in cls)


def _instantiate(template, basis_e, basis_f, idx):
    n = len(basis_e[0])
    out = []
    for cls in template:
        v = [0] * n
        for letter, slot in cls:
            src = (basis_e if letter == "e" else basis_f)[idx[slot]]
            for p, x in enumerate(src):
                v[p] += x
        out.append(tuple(v))
    return out


def gamma_symplectic_basis(q, k: int):
    """Symplectic basis ``(z, z*)`` of the standard diagram, with ``z`` spanning ``L_C``."""
    g, _, _, gamma = standard_rows(q, k)
    n = len(q)
    dual = []
    for i in range(g):
        v = [0] * (2 * g)
        if i < n:
            v[g + i] = -1
        else:
            v[i] = -1
        dual.append(tuple(v))
    return [tuple(r) for r in gamma], dual


def tab_tc_generators(q, k: int = 0):
    """Generator families ``(TAB, TC)`` for the standard diagram of ``(q, k)``."""
    q = check_form(la.to_matrix(q))
    g, alpha, beta, gamma = standard_rows(q, k)
    eye = la.identity(2 * g)
    ab_e, ab_f = [eye[i] for i in range(g)], [eye[g + i] for i in range(g)]
    c_e, c_f = gamma_symplectic_basis(q, k)

    span_a = la.RowLattice(2 * g)
    span_b = la.RowLattice(2 * g)
    span_c = la.RowLattice(2 * g)
    for lat, rows in ((span_a, alpha), (span_b, beta), (span_c, gamma)):
        for r in rows:
            lat.add(r)

    tab = GeneratorFamily("TAB", g)
    tc = GeneratorFamily("TC", g)
    seen_ab: set = set()
    seen_c: set = set()
    for basis_name, e, f in (("AB", ab_e, ab_f), ("C", c_e, c_f)):
        for name, template in TEMPLATES.items():
            for idx in itertools.permutations(range(g), _slots(template)):
                a, b, c = _instantiate(template, e, f, idx)
                try:
                    ch = ThreeChainClass(a, b, c)
                except InvalidChain:
                    continue
                members = ch.members()
                value = None
                if any(span_a.contains(m) for m in members) and any(span_b.contains(m) for m in members):
                    value = WedgeCubeElement.from_sparse(g, wedge3_sparse(a, b, c))
                    key = value.coords
                    if key not in seen_ab:
                        seen_ab.add(key)
                        tab.generators.append(Generator(ch, value, f"{name}/{basis_name}", idx))
                if any(span_c.contains(m) for m in members):
                    value = value or WedgeCubeElement.from_sparse(g, wedge3_sparse(a, b, c))
                    key = value.coords
                    if key not in seen_c:
                        seen_c.add(key)
                        tc.generators.append(Generator(ch, value, f"{name}/{basis_name}", idx))
    return tab, tc


# ---------------------------------------------------------------------------
# Spanning and decomposition


@dataclass(frozen=True)
class SpanCertificate:
    dimension: int
    num_generators: int
    invariant_factors: tuple
    spans_over_Z: bool

    def summary(self) -> dict:
        counts = Counter(self.invariant_factors)
        counts[0] += self.dimension - len(self.invariant_factors)
        return {str(k): v for k, v in sorted(counts.items()) if v}

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "num_generators": self.num_generators,
            "invariant_factors_summary": self.summary(),
            "spans_over_Z": self.spans_over_Z,
        }


def _flatten(fam):
    if isinstance(fam, GeneratorFamily):
        return fam.elements
    out = []
    for item in fam:
        if isinstance(item, GeneratorFamily):
            out.extend(item.elements)
        else:
            out.append(item)
    return out


def spans_wedge_cube(fam, g: int) -> SpanCertificate:
    """Certificate of whether the elements generate ``Lambda^3 Z^{2g}`` over Z."""
    elems = _flatten(fam)
    dim = wedge_dimension(g)
    lat = la.RowLattice(dim)
    for el in elems:
        if el.genus != g:
            raise DimensionMismatch("element from a different genus")
        lat.add(el.sparse())
    factors = lat.invariant_factors()
    spans = lat.rank == dim and all(f == 1 for f in factors)
    return SpanCertificate(dim, len(elems), tuple(factors), spans)


@dataclass(frozen=True)
class Decomposition:
    target: WedgeCubeElement
    coeffs_ab: dict  # generator position in TAB -> coefficient
    coeffs_c: dict
    tau_a: WedgeCubeElement
    tau_c: WedgeCubeElement

    @property
    def residual(self) -> WedgeCubeElement:
        return self.target - self.tau_a - self.tau_c


class JohnsonSolver:
    """Reusable integer solver over ``TAB`` and ``TC``.

    A first pass finds the generators that change the echelon basis; the
    second pass tracks combinations over those only, which keeps witnesses
    short.
    """

    def __init__(self, fam_ab: GeneratorFamily, fam_c: GeneratorFamily):
        self.fam_ab, self.fam_c = fam_ab, fam_c
        self.genus = fam_ab.genus
        dim = wedge_dimension(self.genus)
        tagged = [("ab", i, el) for i, el in enumerate(fam_ab.elements)]
        tagged += [("c", i, el) for i, el in enumerate(fam_c.elements)]
        probe = la.RowLattice(dim)
        useful = []
        for tag_f, i, el in tagged:
            if probe.add(el.sparse()):
                useful.append((tag_f, i, el))
        self.lattice = la.RowLattice(dim)
        for tag_f, i, el in useful:
            self.lattice.add(el.sparse(), tag=(tag_f, i))
        self.num_useful = len(useful)

    def decompose(self, target: WedgeCubeElement) -> Decomposition:
        combo = self.lattice.solve(target.sparse())
        if combo is None:
            raise NoIntegerSolution("target is not in the span of the families")
        coeffs_ab = {i: c for (f, i), c in combo.items() if f == "ab" and c}
        coeffs_c = {i: c for (f, i), c in combo.items() if f == "c" and c}
        tau_a = _combine(self.genus, self.fam_ab.elements, coeffs_ab)
        tau_c = _combine(self.genus, self.fam_c.elements, coeffs_c)
        dec = Decomposition(target, coeffs_ab, coeffs_c, tau_a, tau_c)
        if not dec.residual.is_zero():
            raise NoIntegerSolution("witness does not recombine to the target")
        return dec


def _combine(genus, elements, coeffs) -> WedgeCubeElement:
    acc: dict = {}
    for i, c in coeffs.items():
        for pos, v in elements[i].sparse().items():
            acc[pos] = acc.get(pos, 0) + c * v
    return WedgeCubeElement.from_sparse(genus, acc)


def decompose_johnson(target: WedgeCubeElement, fam_ab, fam_c, solver: JohnsonSolver | None = None) -> Decomposition:
    """Write ``target = tau(a) + tau(c)`` with ``tau(a)`` from TAB and ``tau(c)`` from TC."""
    solver = solver or JohnsonSolver(fam_ab, fam_c)
    return solver.decompose(target)
