"""Heegaard pairs and triples at the level of first homology."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import lattice as la
from .errors import DimensionMismatch, InvalidDiagram, TrisectError
from .surface import CutSystemClass, SymplecticLattice, pairing_matrix, validate_cut_system


@dataclass(frozen=True)
class HeegaardPair:
    lattice: SymplecticLattice
    A: CutSystemClass
    B: CutSystemClass

    @classmethod
    def from_rows(cls, genus, a_rows, b_rows):
        lat = SymplecticLattice(genus)
        return cls(lat, validate_cut_system(lat, a_rows), validate_cut_system(lat, b_rows))

    def pairing(self) -> la.Matrix:
        return pairing_matrix(self.A, self.B)


@dataclass(frozen=True)
class HomologyReport:
    invariant_factors: tuple  # torsion part, factors > 1
    free_rank: int
    is_homology_sphere: bool
    is_s1s2_connected_sum_homology: bool
    s1s2_count: int

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "is_homology_sphere": self.is_homology_sphere,
            "is_s1s2_connected_sum_homology": self.is_s1s2_connected_sum_homology,
            "s1s2_count": self.s1s2_count,
            "H1": self.describe(),
        }


def homology_of_pairing(m: la.Matrix) -> HomologyReport:
    """H_1 of the glued 3-manifold, read off the Smith form of the pairing matrix."""
    diag = la.smith_normal_form(m, len(m)).diag
    free = sum(1 for d in diag if d == 0)
    torsion = tuple(d for d in diag if d > 1)
    sphere = free == 0 and not torsion
    return HomologyReport(torsion, free, sphere, not torsion, free if not torsion else 0)


def heegaard_homology(p: HeegaardPair) -> HomologyReport:
    return homology_of_pairing(p.pairing())


def is_homology_sphere(p: HeegaardPair) -> bool:
    return la.is_unimodular(p.pairing())


def is_algebraically_standard(p: HeegaardPair, k: int) -> bool:
    """Whether the pairing matrix is equivalent to ``diag(0_k, I_{g-k})``."""
    g = p.lattice.genus
    if not 0 <= k <= g:
        raise DimensionMismatch(f"k={k} outside 0..{g}")
    diag = la.smith_normal_form(p.pairing(), g).diag
    return diag.count(0) == k and diag.count(1) == g - k


@dataclass(frozen=True)
class HeegaardTriple:
    lattice: SymplecticLattice
    A: CutSystemClass
    B: CutSystemClass
    C: CutSystemClass
    k: int = 0
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_rows(cls, genus: int, alpha, beta, gamma, k: int = 0, meta=None):
        lat = SymplecticLattice(genus)
        if not 0 <= k <= genus:
            raise InvalidDiagram(f"k={k} outside 0..{genus}")
        return cls(
            lat,
            validate_cut_system(lat, alpha),
            validate_cut_system(lat, beta),
            validate_cut_system(lat, gamma),
            k,
            dict(meta or {}),
        )

    @property
    def genus(self) -> int:
        return self.lattice.genus

    def pair(self, which: str) -> HeegaardPair:
        """One of the three pairs ``"ab"``, ``"bc"``, ``"ca"``."""
        cut = {"a": self.A, "b": self.B, "c": self.C}
        return HeegaardPair(self.lattice, cut[which[0]], cut[which[1]])

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "k": self.k,
            "alpha": [list(r) for r in self.A.rows],
            "beta": [list(r) for r in self.B.rows],
            "gamma": [list(r) for r in self.C.rows],
        }
        out.update(self.meta)
        return out


def triple_from_json(doc) -> HeegaardTriple:
    """Parse a triple from a dict or JSON string; extra keys are kept as metadata."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InvalidDiagram(f"not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidDiagram("expected a JSON object")
    try:
        g = doc["genus"]
        rows = doc["alpha"], doc["beta"], doc["gamma"]
    except KeyError as exc:
        raise InvalidDiagram(f"missing key {exc}") from None
    if not isinstance(g, int) or isinstance(g, bool):
        raise InvalidDiagram("genus must be an integer")
    k = doc.get("k", 0)
    meta = {key: v for key, v in doc.items() if key not in ("genus", "k", "alpha", "beta", "gamma")}
    try:
        return HeegaardTriple.from_rows(g, *rows, k=k, meta=meta)
    except TrisectError:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidDiagram(str(exc)) from None


def _embed(rows, g: int, offset: int, total: int):
    """Re-index classes from a genus-g block into handles offset..offset+g of a genus-total surface."""
    out = []
    for r in rows:
        v = [0] * (2 * total)
        for i in range(g):
            v[offset + i] = r[i]
            v[total + offset + i] = r[g + i]
        out.append(tuple(v))
    return out


def connected_sum(t1: HeegaardTriple, t2: HeegaardTriple) -> HeegaardTriple:
    """Block sum: the handles of ``t2`` follow those of ``t1``."""
    g1, g2 = t1.genus, t2.genus
    g = g1 + g2

    def cat(a, b):
        return _embed(a.rows, g1, 0, g) + _embed(b.rows, g2, g1, g)

    return HeegaardTriple.from_rows(g, cat(t1.A, t2.A), cat(t1.B, t2.B), cat(t1.C, t2.C), k=t1.k + t2.k)


def empty_triple() -> HeegaardTriple:
    return HeegaardTriple.from_rows(0, [], [], [], k=0)


def s4_triple() -> HeegaardTriple:
    """Genus-1 stabilization block: A and B both ``x``, C is ``y``."""
    return HeegaardTriple.from_rows(1, [(1, 0)], [(1, 0)], [(0, 1)], k=1)


def stabilize(t: HeegaardTriple, n: int = 1) -> HeegaardTriple:
    if n < 0:
        raise DimensionMismatch("cannot stabilize a negative number of times")
    for _ in range(n):
        t = connected_sum(t, s4_triple())
    return t


def rotate(t: HeegaardTriple) -> HeegaardTriple:
    """Cyclic relabeling ``(A, B, C) -> (B, C, A)``; k is recomputed for the new first pair."""
    free = heegaard_homology(t.pair("bc")).free_rank
    return HeegaardTriple(t.lattice, t.B, t.C, t.A, free, dict(t.meta))


def change_basis(t: HeegaardTriple, m: la.Matrix) -> HeegaardTriple:
    """Apply a lattice automorphism given by its row-action matrix to all three cut systems."""
    g = t.genus

    def image(c):
        return validate_cut_system(t.lattice, la.matmul(c.rows, m, 2 * g))

    return HeegaardTriple(t.lattice, image(t.A), image(t.B), image(t.C), t.k, dict(t.meta))


def slide(t: HeegaardTriple, ua=None, ub=None, uc=None) -> HeegaardTriple:
    """Replace each cut system by ``U @ rows`` for the given GL_g(Z) matrices."""
    g = t.genus

    def move(c, u):
        if u is None:
            return c
        if not la.is_unimodular(u):
            raise InvalidDiagram("handleslide matrix must be unimodular")
        return validate_cut_system(t.lattice, la.matmul(u, c.rows, 2 * g))

    return HeegaardTriple(t.lattice, move(t.A, ua), move(t.B, ub), move(t.C, uc), t.k, dict(t.meta))
