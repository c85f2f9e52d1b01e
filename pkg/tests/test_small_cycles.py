import random
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from bsgraph.bs_graph import enumerate_all_cycles, enumerate_cycles_through
from bsgraph.perm_core import Permutation, apply_form, identity, swap
from bsgraph.small_cycles import (
    C6_FAMILIES,
    FAMILIES,
    MIN_N,
    FormFamily,
    census,
    certify,
    classify,
    cycles_through_vertex,
    enumerate_family_params,
    expand,
    family_breakdown,
    family_form_count,
    family_multiplicity,
    instantiate_at,
    recurrence_n_c6,
    formula_c4_total,
    formula_c6_per_vertex,
    formula_c6_total,
)

# per-vertex oracle counts at identity(7), by family (brute-force DFS)
ORACLE_N7 = {"C6_1": 5, "C6_2": 36, "C6_3": 12, "C6_4": 12, "C6_5": 12, "C6_6": 12}


def random_perm(rng, n):
    return Permutation(tuple(rng.sample(range(1, n + 1), n)))


def test_expand_examples():
    assert expand(FormFamily("C4", (1, 3), 4)).indices == (3, 1, 3, 1)
    assert expand(FormFamily("C6_1", (1,), 3)).indices == (1, 2, 1, 2, 1, 2)
    assert expand(FormFamily("C6_3", (1, 3, 5), 6)).indices == (5, 3, 1, 5, 3, 1)
    assert expand(FormFamily("C6_4", (1, 3, 5), 6)).indices == (5, 3, 1, 5, 1, 3)


@pytest.mark.parametrize(
    "family,params,n",
    [("C4", (1, 2), 5), ("C6_1", (4,), 5), ("C6_2", (1, 3), 6), ("C6_3", (1, 2, 5), 6), ("X", (1,), 5)],
)
def test_constraint_violations(family, params, n):
    with pytest.raises(ValueError):
        FormFamily(family, params, n)


def test_param_count_examples():
    assert family_form_count("C6_3", 6) == 1
    assert family_form_count("C4", 5) == 3
    assert [ff.params for ff in enumerate_family_params("C6_2", 5)] == [(1, 4), (3, 1)]
    assert enumerate_family_params("C6_2", 4) == []
    assert enumerate_family_params("C6_6", 5) == []


@pytest.mark.parametrize("n", range(3, 13))
def test_param_counts_closed_forms(n):
    assert family_form_count("C4", n) == ((n - 2) * (n - 3) // 2 if n >= 4 else 0)
    assert family_form_count("C6_1", n) == n - 2
    assert family_form_count("C6_2", n) == ((n - 3) * (n - 4) if n >= 5 else 0)
    for fam in ("C6_3", "C6_4", "C6_5", "C6_6"):
        assert family_form_count(fam, n) == (comb(n - 3, 3) if n >= 6 else 0)


@pytest.mark.parametrize("n", range(7, 13))
def test_three_index_recurrence(n):
    closed = (n - 3) * (n - 4) * (n - 5) // 6
    assert recurrence_n_c6(n) == closed == family_form_count("C6_3", n)
    step = recurrence_n_c6(n) - recurrence_n_c6(n - 1)
    assert step == (n - 4) * (n - 5) // 2
    # a step of (n-3)(n-4)/2 would overshoot the closed form
    assert recurrence_n_c6(n - 1) + (n - 3) * (n - 4) // 2 != closed


def test_multiplicities_measured():
    got = {f: family_multiplicity(f) for f in FAMILIES}
    assert got == {"C4": 1, "C6_1": 1, "C6_2": 3, "C6_3": 3, "C6_4": 3, "C6_5": 3, "C6_6": 3}


@pytest.mark.parametrize("n", [5, 6, 7])
def test_multiplicity_uniform_across_params(n):
    p = identity(n)
    for fam in FAMILIES:
        for ff in enumerate_family_params(fam, n):
            assert len(instantiate_at(p, expand(ff))) == family_multiplicity(fam)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_closure_and_simplicity(n):
    rng = random.Random(100 + n)
    starts = [identity(n)] + [random_perm(rng, n) for _ in range(5)]
    for fam in FAMILIES:
        for ff in enumerate_family_params(fam, n):
            f = expand(ff).indices
            for p in starts:
                assert apply_form(p, f) == p
                walk = [p.image]
                for i in f[:-1]:
                    walk.append(swap(walk[-1], i))
                assert len(set(walk)) == len(f)


def test_cycles_through_vertex_examples():
    assert len(cycles_through_vertex(identity(4), 6)) == 2
    assert len(cycles_through_vertex(identity(5), 6)) == 9
    assert len(cycles_through_vertex(identity(7), 4)) == 10


@pytest.mark.parametrize("n", [3, 4, 5])
def test_constructive_equals_oracle_every_vertex(n):
    from bsgraph.perm_core import all_permutations

    for p in all_permutations(n):
        for length in (4, 6):
            assert cycles_through_vertex(p, length) == enumerate_cycles_through(p, length)


def test_constructive_equals_oracle_n7_identity():
    p = identity(7)
    for length in (4, 6):
        assert cycles_through_vertex(p, length) == enumerate_cycles_through(p, length)


def test_family_breakdown_n7():
    cycles = enumerate_cycles_through(identity(7), 6)
    assert family_breakdown(cycles) == ORACLE_N7
    assert sum(ORACLE_N7.values()) == 89


def test_every_oracle_cycle_classified():
    for c in enumerate_cycles_through(Permutation((3, 1, 6, 2, 5, 4)), 6):
        assert classify(c) in C6_FAMILIES


def test_census_examples():
    assert census(4).total_c4 == 6
    assert census(4).total_c6 == 8
    assert census(3).total_c6 == 1
    assert census(5).total_c4 == 90
    assert census(5).total_c6 == 180
    assert census(6).total_c6 == 4080
    assert census(2).total_c6 == 0 and census(2).total_c4 == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_census_matches_whole_graph_oracle(n):
    cen = census(n)
    assert len(enumerate_all_cycles(n, 6)) == cen.total_c6
    assert len(enumerate_all_cycles(n, 4)) == cen.total_c4


@pytest.mark.parametrize("n", range(3, 25))
def test_census_identities(n):
    cen = census(n)
    nf = factorial(n)
    assert cen.total_c4 * 4 == cen.per_vertex_total_c4 * nf
    assert cen.total_c6 * 6 == cen.per_vertex_total_c6 * nf
    if n >= 4:
        assert cen.total_c4 == formula_c4_total(n)
    # measured per-vertex closed form; the quoted formula overcounts C6_2 and C6_4..6
    assert cen.per_vertex_total_c6 == (n - 2) + 3 * (n - 3) * (n - 4) + 2 * (n - 3) * (n - 4) * (n - 5)


def test_quoted_formula_agrees_only_at_small_n():
    # the stated 6-cycle total is right only while C6_2 and C6_3..6 are empty
    assert formula_c6_total(3) == census(3).total_c6 == 1
    assert formula_c6_total(4) == census(4).total_c6 == 8
    assert formula_c6_total(5) == 300 != census(5).total_c6
    assert formula_c6_per_vertex(7) == 161


def test_census_big_n_exact():
    cen = census(25)
    assert cen.total_c4 == formula_c4_total(25)
    assert cen.total_c4 > 2**64


@pytest.mark.parametrize("n", [6, 7])
def test_vertex_transitivity(n):
    rng = random.Random(7 * n)
    counts = set()
    for _ in range(100):
        p = random_perm(rng, n)
        counts.add((len(enumerate_cycles_through(p, 4)), len(enumerate_cycles_through(p, 6))))
    cen = census(n)
    assert counts == {(cen.per_vertex_total_c4, cen.per_vertex_total_c6)}


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(1, 7)))
def test_constructive_equals_oracle_random_n6(img):
    p = Permutation(tuple(img))
    for length in (4, 6):
        assert cycles_through_vertex(p, length) == enumerate_cycles_through(p, length)


@pytest.mark.parametrize("n", [4, 5])
def test_certify_small(n):
    rep = certify(n)
    assert rep.certified
    assert rep.vertices_checked == factorial(n)


def test_certify_sampled_is_seeded():
    a = certify(7, scope="sampled", sample=3, seed=5)
    b = certify(7, scope="sampled", sample=3, seed=5)
    assert a.certified and b.certified
    assert a.vertices_checked == 3


def test_certify_parallel_matches_serial():
    assert certify(5, workers=2).oracle_totals == certify(5).oracle_totals


def test_census_dict_shape():
    d = census(5).to_dict()
    assert d["totals"] == {"c4": 90, "c6": 180}
    assert set(d["per_vertex"]) == set(FAMILIES) | {"c4", "c6"}
    assert all(MIN_N[f] <= 6 for f in FAMILIES)
