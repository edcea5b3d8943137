"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are repeated in the terminal summary of every pytest run.
"""

import random
import time

import acceptance_log
import oracles
from trisect import lattice as la
from trisect.forms import diagonal, e8, form_sum, hyperbolic, negate, parse_form
from trisect.heegaard import change_basis, slide
from trisect.johnson import JohnsonSolver, WedgeCubeElement, spans_wedge_cube, tab_tc_generators, wedge_dimension
from trisect.linking import (
    QuadraticEnhancement,
    SubsurfaceBasis,
    all_classes_mod2,
    arf_invariant,
    casson_knot_invariant,
    linking_form,
    q_eval,
)
from trisect.rohlin import regluing_campaign, rohlin_obstruction
from trisect.surface import pairing, pairing_matrix, random_symplectic, random_unimodular
from trisect.trisection import e8_figure_diagram, intersection_form, make_diagram, standard_pseudotrisection

SEED = 20240101


def report(n, ok, detail, elapsed=None, limit=None):
    timing = "" if elapsed is None else f" [{elapsed:.3f}s / limit {limit}s]"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}{timing}"
    acceptance_log.LINES.append(line)
    print("\n" + line)
    return ok


def unit(n, i):
    return tuple(int(j == i) for j in range(n))


def test_criterion_1_round_trip_forms():
    forms = {
        "<1>": diagonal(1),
        "<-1>": diagonal(-1),
        "H": hyperbolic(),
        "E8": e8(),
        "-E8": negate(e8()),
        "E8+H": form_sum([e8(), hyperbolic()]),
        "2E8+3H": parse_form("2E8+3H"),
    }
    start = time.perf_counter()
    bad = [
        (name, k)
        for name, q in forms.items()
        for k in (0, 1, 2)
        if intersection_form(standard_pseudotrisection(q, k)).matrix != q
    ]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    report(1, ok, f"{len(forms) * 3} (Q, k) round trips, mismatches {bad}", elapsed, 1.0)
    assert not bad
    assert elapsed < 1.0


def test_criterion_2_e8_figure():
    start = time.perf_counter()
    d = e8_figure_diagram()
    q = intersection_form(d).matrix
    dets = {p: la.det(pairing_matrix(*{"ab": (d.A, d.B), "bc": (d.B, d.C), "ca": (d.C, d.A)}[p])) for p in ("ab", "bc", "ca")}
    elapsed = time.perf_counter() - start
    ok = q == e8() and all(abs(v) == 1 for v in dets.values()) and elapsed < 0.1
    report(2, ok, f"form == E8: {q == e8()}, pairing determinants {dets}", elapsed, 0.1)
    assert q == e8()
    assert all(abs(v) == 1 for v in dets.values())
    assert elapsed < 0.1


def test_criterion_3_johnson_spanning():
    results = {}
    start = time.perf_counter()
    tab, tc = tab_tc_generators(e8(), 0)
    cert = spans_wedge_cube([tab, tc], 8)
    e8_time = time.perf_counter() - start
    results["E8,k=0"] = cert
    for spec, k in (("H", 0), ("H", 1), ("E8+H", 0)):
        ftab, ftc = tab_tc_generators(parse_form(spec), k)
        results[f"{spec},k={k}"] = spans_wedge_cube([ftab, ftc], ftab.genus)
    summary = {name: (c.dimension, c.summary(), c.spans_over_Z) for name, c in results.items()}
    e8_ok = cert.dimension == 560 and cert.invariant_factors == (1,) * 560
    ok = e8_ok and all(c.spans_over_Z for c in results.values()) and e8_time < 60
    report(3, ok, f"{summary}", e8_time, 60)
    assert e8_ok
    assert all(c.spans_over_Z for c in results.values())
    assert e8_time < 60


def test_criterion_4_decompositions():
    tab, tc = tab_tc_generators(e8(), 0)
    rng = random.Random(SEED)
    start = time.perf_counter()
    solver = JohnsonSolver(tab, tc)
    failures = 0
    for _ in range(50):
        target = WedgeCubeElement(8, tuple(rng.randint(-9, 9) for _ in range(wedge_dimension(8))))
        dec = solver.decompose(target)
        # recombine from the raw coefficient vectors, not the solver's sums
        acc = [0] * wedge_dimension(8)
        for fam, coeffs in ((tab, dec.coeffs_ab), (tc, dec.coeffs_c)):
            for i, c in coeffs.items():
                for pos, v in fam.elements[i].sparse().items():
                    acc[pos] += c * v
        failures += tuple(acc) != target.coords
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60
    report(4, ok, f"50 seeded targets (seed {SEED}), failed recombinations {failures}", elapsed, 60)
    assert failures == 0
    assert elapsed < 60


def test_criterion_5_linking_tables():
    rng = random.Random(SEED)
    mismatches = 0
    sym_fail = 0
    for spec in ("E8", "H", "E8+H"):
        q = parse_form(spec)
        d = standard_pseudotrisection(q)
        g = d.genus
        qinv = la.unimodular_inverse(q)
        x = [unit(2 * g, i) for i in range(g)]
        y = [unit(2 * g, g + i) for i in range(g)]
        z = d.C
        l2, l3 = linking_form(d, "l2"), linking_form(d, "l3")
        for i in range(g):
            for j in range(g):
                dl = int(i == j)
                expected = [
                    (l2, z[i], z[j], 0), (l2, z[i], x[j], -q[i][j]), (l2, x[i], z[j], 0),
                    (l2, x[i], x[j], q[i][j]), (l2, x[i], y[j], -dl), (l2, y[i], y[j], 0),
                    (l3, z[i], z[j], 0), (l3, z[i], x[j], 0), (l3, x[i], z[j], q[i][j]),
                    (l3, x[i], x[j], 0), (l3, x[i], y[j], -dl), (l3, y[i], y[j], qinv[i][j]),
                ]
                mismatches += sum(lf.value(u, v) != want for lf, u, v, want in expected)
        basis = [unit(2 * g, a) for a in range(2 * g)]
        pairs = [(u, v) for u in basis for v in basis]
        pairs += [
            (tuple(rng.randint(-5, 5) for _ in range(2 * g)), tuple(rng.randint(-5, 5) for _ in range(2 * g)))
            for _ in range(1000)
        ]
        for lf in (l2, l3):
            sym_fail += sum(lf.value(v, u) != lf.value(u, v) + pairing(u, v) for u, v in pairs)
    ok = mismatches == 0 and sym_fail == 0
    report(5, ok, f"table mismatches {mismatches}, symmetry failures {sym_fail} (basis pairs + 1000 random per form)")
    assert mismatches == 0
    assert sym_fail == 0


def test_criterion_6_enhancement_equality():
    rng = random.Random(SEED)
    start = time.perf_counter()
    cases = [("H", 0), ("H", 1), ("2H", 0), ("2H", 1), ("H", 3)]
    checked = 0
    disagreements = 0
    for spec, k in cases:
        d = standard_pseudotrisection(parse_form(spec), k)
        g = d.genus
        # a scrambled copy too, so the check is not tied to the standard basis
        t = slide(d.triple, *(random_unimodular(g, rng) for _ in range(3)))
        for dd in (d, make_diagram(change_basis(t, random_symplectic(g, rng)))):
            l2, l3 = linking_form(dd, "l2"), linking_form(dd, "l3")
            q2, q3 = l2.enhancement(), l3.enhancement()
            for v in all_classes_mod2(g):
                checked += 1
                disagreements += q_eval(q2, v) != q_eval(q3, v)
                disagreements += l2.value(v, v) % 2 != l3.value(v, v) % 2
    odd = standard_pseudotrisection(diagonal(1))
    x1 = (1, 0)
    diverges = linking_form(odd, "l2").value(x1, x1) % 2 != linking_form(odd, "l3").value(x1, x1) % 2
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and diverges and elapsed < 5
    report(6, ok, f"{checked} classes checked, disagreements {disagreements}; <1> diverges at x1: {diverges}", elapsed, 5)
    assert disagreements == 0
    assert diverges
    assert elapsed < 5


def test_criterion_7_regluing_invariance():
    start = time.perf_counter()
    outcome = {}
    for spec, m in (("E8", 1), ("2E8", 2), ("3H", 0), ("E8+H", 1)):
        camp = regluing_campaign(standard_pseudotrisection(parse_form(spec)), 100, SEED)
        outcome[spec] = (camp["ok"], camp["base_mu_sum"] == m % 2, len(camp["failures"]))
    elapsed = time.perf_counter() - start
    ok = all(a and b for a, b, _ in outcome.values()) and elapsed < 30
    report(7, ok, f"seed {SEED}, 100 scripts each: {outcome}", elapsed, 30)
    assert all(a and b for a, b, _ in outcome.values())
    assert elapsed < 30


def test_criterion_8_rohlin_verdicts():
    wrong = []
    for m in range(5):
        for n in range(5):
            q = form_sum([e8()] * m + [hyperbolic()] * n)
            rep = rohlin_obstruction(q)
            sigma = oracles.signature(q)
            expected = "Obstructed" if sigma % 16 == 8 else "Consistent"
            if rep.verdict != expected:
                wrong.append((m, n, rep.verdict))
    two_e8 = rohlin_obstruction(parse_form("2E8")).verdict
    ok = not wrong and two_e8 == "Consistent"
    report(8, ok, f"25 forms mE8+nH, wrong verdicts {wrong}; 2E8 -> {two_e8}")
    assert not wrong
    assert two_e8 == "Consistent"


def test_criterion_9_casson_knot_formula():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(100):
        h = rng.randint(1, 3)
        n = 2 * h
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            table[a][a] = rng.randint(-4, 4)
            for b in range(a + 1, n):
                table[a][b] = rng.randint(-4, 4)
                table[b][a] = table[a][b] + (1 if a % 2 == 0 and b == a + 1 else 0)
        s = SubsurfaceBasis(tuple((unit(n, i), unit(n, h + i)) for i in range(h)))
        diag = [table[a][a] % 2 for a in range(n)]
        q = QuadraticEnhancement(tuple(diag[0::2]) + tuple(diag[1::2]))
        mismatches += casson_knot_invariant(table, s) % 2 != arf_invariant(q, s)
    trefoil = ((-1, 0), (1, -1))
    pinned = oracles.casson_from_alexander(trefoil)
    value = casson_knot_invariant(trefoil, SubsurfaceBasis((((1, 0), (0, 1)),)))
    ok = mismatches == 0 and pinned == 1 and value == 1
    report(9, ok, f"100 datasets, mod-2 mismatches {mismatches}; trefoil lambda' = {value} (oracle {pinned})")
    assert mismatches == 0
    assert pinned == 1 and value == 1
