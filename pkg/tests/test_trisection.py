import random

import pytest
from hypothesis import given, strategies as st

import oracles
from trisect import lattice as la
from trisect.errors import InvalidDiagram, NonInvertiblePairing, NotUnimodular
from trisect.forms import diagonal, e8, form_sum, hyperbolic, negate, parse_form
from trisect.heegaard import change_basis, connected_sum, s4_triple, slide, stabilize
from trisect.surface import pairing_matrix, random_symplectic, random_unimodular
from trisect.trisection import (
    diagram_from_rows,
    e8_figure_diagram,
    intersection_form,
    is_standard,
    make_diagram,
    q_formula,
    rotated_form,
    standard_basis,
    standard_pseudotrisection,
    standardize_basis,
)

BLOCKS = {"1": diagonal(1), "-1": diagonal(-1), "H": hyperbolic(), "E8": e8(), "-E8": negate(e8())}


def forms(max_blocks=3):
    return st.lists(st.sampled_from(sorted(BLOCKS)), min_size=0, max_size=max_blocks).map(
        lambda names: form_sum([BLOCKS[n] for n in names])
    )


def test_cp2_standard_diagram():
    # [PAPER] gamma class is -x - y
    d = standard_pseudotrisection(((1,),), 0)
    assert d.A == ((1, 0),) and d.B == ((0, 1),) and d.C == ((-1, -1),)
    assert intersection_form(d).matrix == ((1,),)


def test_rank_zero_k_one_is_the_s4_block():
    # [PAPER] the genus-1 diagram (alpha, alpha, beta)
    d = standard_pseudotrisection((), 1)
    assert d.triple == s4_triple()
    assert intersection_form(d).matrix == ()


def test_e8_figure_diagram():
    # [PAPER] form is E8; alpha-beta and gamma-alpha are homology spheres
    d = e8_figure_diagram()
    assert intersection_form(d).matrix == e8()
    assert pairing_matrix(d.A, d.B) == la.identity(8)
    assert abs(la.det(pairing_matrix(d.C, d.A))) == 1
    assert oracles.det(pairing_matrix(d.B, d.C)) in (1, -1)


@pytest.mark.parametrize("spec", ["H", "E8", "E8+H"])
def test_round_trip_small(spec):
    # [DERIVED] constructor round trip
    q = parse_form(spec)
    assert intersection_form(standard_pseudotrisection(q, 0)).matrix == q


def test_e8_plus_h_k2_has_genus_12():
    d = standard_pseudotrisection(parse_form("E8+H"), 2)
    assert d.genus == 12 and intersection_form(d).matrix == parse_form("E8+H")


@given(forms(), st.integers(0, 2))
def test_round_trip_matches_wall_oracle(q, k):
    d = standard_pseudotrisection(q, k)
    f = intersection_form(d)
    assert f.matrix == q
    if q:
        assert oracles.wall_form(d.A, d.B, d.C) == q


@given(forms(), st.integers(0, 2))
def test_rotated_form_pads_with_zero(q, k):
    d = standard_pseudotrisection(q, k)
    n = len(q)
    padded = tuple(
        tuple(q[i][j] if i < n and j < n else 0 for j in range(n + k)) for i in range(n + k)
    )
    assert rotated_form(d) == padded


def test_form_report_schema():
    f = intersection_form(standard_pseudotrisection(parse_form("E8+H")))
    assert f.to_json() == {
        "rank": 10,
        "matrix": [list(r) for r in parse_form("E8+H")],
        "signature": 8,
        "even": True,
        "unimodular": True,
        "label": "E8+H",
    }


def test_connected_sums():
    # [PAPER] two CP^2 blocks give <1> + <1>
    cp2 = standard_pseudotrisection(((1,),)).triple
    assert intersection_form(make_diagram(connected_sum(cp2, cp2))).matrix == diagonal(1, 1)
    # [DERIVED] E8 figure plus the standard S^2 x S^2 diagram
    s2s2 = standard_pseudotrisection(hyperbolic()).triple
    d = make_diagram(connected_sum(e8_figure_diagram().triple, s2s2))
    assert intersection_form(d).matrix == la.direct_sum(e8(), hyperbolic())


@pytest.mark.parametrize("n", [0, 1, 2])
def test_stabilization_keeps_form(n):
    d = make_diagram(stabilize(e8_figure_diagram().triple, n))
    assert d.k == n and intersection_form(d).matrix == e8()


@given(forms(2), st.integers(0, 2), st.integers(0, 2**32))
def test_form_invariant_under_ab_slides_and_symplectic_change(q, k, seed):
    rng = random.Random(seed)
    d = standard_pseudotrisection(q, k)
    g = d.genus
    t = slide(d.triple, random_unimodular(g, rng), random_unimodular(g, rng))
    t = change_basis(t, random_symplectic(g, rng))
    assert intersection_form(make_diagram(t)).matrix == q


@given(forms(2), st.integers(0, 2**32))
def test_gamma_slides_act_by_congruence(q, seed):
    rng = random.Random(seed)
    d = standard_pseudotrisection(q, 0)
    u = random_unimodular(d.genus, rng)
    moved = intersection_form(make_diagram(slide(d.triple, uc=u))).matrix
    assert moved == la.matmul(la.matmul(u, q), la.transpose(u))


@given(forms(2), st.integers(0, 2), st.integers(0, 2**32))
def test_gamma_slides_keep_invariants_with_stabilizations(q, k, seed):
    rng = random.Random(seed)
    d = standard_pseudotrisection(q, k)
    moved = intersection_form(make_diagram(slide(d.triple, uc=random_unimodular(d.genus, rng))))
    assert moved.rank == len(q) and moved.unimodular
    if q:
        assert moved.signature == la.signature(q) and moved.even == all(q[i][i] % 2 == 0 for i in range(len(q)))


def test_standard_diagram_is_fixed_by_standardization():
    d = standard_pseudotrisection(parse_form("E8+H"), 1)
    assert is_standard(d)
    basis, q = standard_basis(d)
    assert basis == la.identity(2 * d.genus)
    assert standardize_basis(d) == d


@given(forms(2), st.integers(0, 2), st.integers(0, 2**32))
def test_standardization_of_scrambled_diagram(q, k, seed):
    rng = random.Random(seed)
    d = standard_pseudotrisection(q, k)
    g = d.genus
    t = slide(d.triple, random_unimodular(g, rng), random_unimodular(g, rng))
    t = change_basis(t, random_symplectic(g, rng))
    s = standardize_basis(make_diagram(t))
    assert is_standard(s) and intersection_form(s).matrix == q


def test_e8_figure_standardizes_to_e8():
    s = standardize_basis(e8_figure_diagram())
    assert is_standard(s) and intersection_form(s).matrix == e8()


def test_invalid_diagrams():
    # alpha = beta with k = 0
    d = diagram_from_rows(1, [(1, 0)], [(1, 0)], [(0, 1)], k=0)
    assert not d.flags.valid and d.flags.failures()
    with pytest.raises(InvalidDiagram):
        intersection_form(d)
    with pytest.raises(NotUnimodular):
        standard_pseudotrisection(((2,),))
    with pytest.raises(NonInvertiblePairing):
        q_formula(((1, 0),), ((1, 0),), ((0, 1),))
