"""Mod-2 Casson bookkeeping under separating twists, and the Rohlin verdict.

Regluing a diagram by a product of separating twists changes the two
homology spheres by surgery on boundary links.  Mod 2, each twist shifts
the Rohlin invariant of each side by the Arf invariant of the twisted curve,
computed from q2 and q3 respectively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import lattice as la
from .errors import OddForm
from .forms import check_form, classify_form, is_even
from .linking import SubsurfaceBasis, arf_invariant, linking_form, separating_class_subsurface
from .surface import random_symplectic, random_unimodular
from .trisection import intersection_form


@dataclass(frozen=True)
class RegluingScript:
    twists: tuple  # SubsurfaceBasis values

    def __post_init__(self):
        for t in self.twists:
            if not isinstance(t, SubsurfaceBasis):
                raise TypeError("script entries must be SubsurfaceBasis values")


@dataclass(frozen=True)
class MuLedger:
    mu2_delta: int
    mu3_delta: int
    per_twist: tuple  # (arf under q2, arf under q3)


@dataclass(frozen=True)
class ObstructionReport:
    form_label: str | None
    matrix: la.Matrix
    signature: int
    even: bool
    mu_sum: int | None
    verdict: str

    @property
    def sigma_mod16(self) -> int:
        return self.signature % 16

    def to_json(self) -> dict:
        return {
            "form_label": self.form_label,
            "rank": len(self.matrix),
            "signature": self.signature,
            "signature_mod_16": self.sigma_mod16,
            "even": self.even,
            "mu_sum": self.mu_sum,
            "verdict": self.verdict,
        }


def base_mu_sum(q) -> int:
    """``m mod 2`` for an even form ``mE8 + nH``, read from the signature."""
    q = la.to_matrix(q)
    check_form(q)
    if not is_even(q):
        raise OddForm("form has an odd diagonal entry")
    return (la.signature(q) // 8) % 2


def _even_form(d):
    q = intersection_form(d).matrix
    if not is_even(q):
        raise OddForm("regluing bookkeeping needs an even intersection form")
    return q


def enhancements(d):
    """``(q2, q3)`` of a diagram with even form."""
    _even_form(d)
    return linking_form(d, "l2").enhancement(), linking_form(d, "l3").enhancement()


def ledger(q2, q3, script: RegluingScript) -> MuLedger:
    per = tuple((arf_invariant(q2, s), arf_invariant(q3, s)) for s in script.twists)
    return MuLedger(sum(a for a, _ in per) % 2, sum(b for _, b in per) % 2, per)


def apply_regluing(d, script: RegluingScript) -> MuLedger:
    return ledger(*enhancements(d), script)


def mu_sum_after(d, script: RegluingScript) -> int:
    q = _even_form(d)
    led = apply_regluing(d, script)
    return (base_mu_sum(q) + led.mu2_delta + led.mu3_delta) % 2


def rohlin_obstruction(q) -> ObstructionReport:
    """Obstructed exactly when ``q`` is even with signature 8 mod 16."""
    q = check_form(la.to_matrix(q))
    sig = la.signature(q)
    even = is_even(q)
    mu = (sig // 8) % 2 if even else None
    verdict = "Obstructed" if even and mu == 1 else "Consistent"
    return ObstructionReport(classify_form(q), q, sig, even, mu, verdict)


def random_side(genus: int, rng: random.Random) -> SubsurfaceBasis:
    """Symplectic basis of a random even-rank unimodular subspace.

    The subspace is the image of ``h`` standard handles under a random
    symplectic automorphism, with ``1 <= h <= g - 1`` (``h = 1`` when g = 1).
    Its spanning set is scrambled before Gram-Schmidt.
    """
    p = random_symplectic(genus, rng)
    h = 1 if genus == 1 else rng.randint(1, genus - 1)
    rows = [p[i] for i in range(h)] + [p[genus + i] for i in range(h)]
    rows = la.matmul(random_unimodular(2 * h, rng), tuple(rows), 2 * genus)
    return separating_class_subsurface(genus, rows)


def random_script(genus: int, rng: random.Random, max_twists: int = 5) -> RegluingScript:
    return RegluingScript(tuple(random_side(genus, rng) for _ in range(rng.randint(1, max_twists))))


def regluing_campaign(d, runs: int, seed: int) -> dict:
    """Run seeded random scripts and report whether every run kept the mu sum."""
    rng = random.Random(seed)
    base = base_mu_sum(_even_form(d))
    q2, q3 = enhancements(d)
    failures = []
    for run in range(runs):
        script = random_script(d.genus, rng)
        led = ledger(q2, q3, script)
        after = (base + led.mu2_delta + led.mu3_delta) % 2
        if led.mu2_delta != led.mu3_delta or after != base:
            failures.append(run)
    return {"seed": seed, "runs": runs, "base_mu_sum": base, "failures": failures, "ok": not failures}
