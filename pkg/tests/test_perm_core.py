from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from bsgraph.bs_graph import validate_gray_code
from bsgraph.perm_core import (
    Form,
    Permutation,
    all_permutations,
    apply_form,
    apply_gen,
    histogram,
    identity,
    lex_rank,
    lex_unrank,
    parity,
    set_cap,
    sjt_cycle,
)


def perms(n_min=2, n_max=7):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda img: Permutation(tuple(img)))
    )


def test_identity():
    assert identity(3).image == (1, 2, 3)
    assert identity(5).image == (1, 2, 3, 4, 5)
    with pytest.raises(ValueError):
        identity(1)


def test_cap():
    with pytest.raises(ValueError):
        identity(11)
    old = set_cap(11)
    try:
        assert identity(11).n == 11
    finally:
        set_cap(old)


@pytest.mark.parametrize("bad", [(1, 1, 2), (0, 1, 2), (1, 2, 4)])
def test_rejects_non_bijection(bad):
    with pytest.raises(ValueError):
        Permutation(bad)


def test_apply_gen_examples():
    assert apply_gen(Permutation((1, 2, 3, 4)), 2).image == (1, 3, 2, 4)
    assert apply_gen(Permutation((2, 1, 3)), 1).image == (1, 2, 3)
    with pytest.raises(ValueError):
        apply_gen(identity(3), 3)
    with pytest.raises(ValueError):
        apply_gen(identity(3), 0)


@given(perms(), st.data())
def test_apply_gen_involution(p, data):
    i = data.draw(st.integers(1, p.n - 1))
    assert apply_gen(apply_gen(p, i), i) == p


def test_apply_form_examples():
    assert apply_form(identity(3), [2, 1, 2, 1, 2, 1]) == identity(3)
    assert apply_form(identity(4), [3, 1, 3, 1]) == identity(4)
    p = Permutation((3, 1, 2))
    assert apply_form(p, []) == p
    with pytest.raises(ValueError):
        apply_form(identity(3), [1, 5])


def test_form_rejects_consecutive_repeats():
    with pytest.raises(ValueError):
        Form((1, 1, 2))
    with pytest.raises(ValueError):
        Form((1, 2, 1), cyclic=True)
    assert Form((1, 2, 1)).indices == (1, 2, 1)


def test_parity_examples():
    assert parity(identity(4)) == "even"
    assert parity(Permutation((2, 1, 3, 4))) == "odd"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_parity_flip_exhaustive(n):
    for p in all_permutations(n):
        for i in range(1, n):
            assert parity(apply_gen(p, i)) != parity(p)


def test_rank_examples():
    assert lex_unrank(3, 0).image == (1, 2, 3)
    assert lex_rank(Permutation((3, 2, 1))) == 5
    assert lex_rank(lex_unrank(4, 17)) == 17
    with pytest.raises(ValueError):
        lex_unrank(3, 6)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_rank_matches_sorted_position(n):
    # oracle: position in itertools' lexicographic listing
    for r, img in enumerate(permutations(range(1, n + 1))):
        assert lex_rank(img) == r
        assert lex_unrank(n, r).image == img


def test_sjt_small():
    assert sjt_cycle(3).indices == (2, 1, 2, 1, 2, 1)
    two = sjt_cycle(2)
    assert two.indices == (1, 1) and two.allow_backtrack
    assert len(sjt_cycle(4)) == 24


@pytest.mark.parametrize("n", range(2, 9))
def test_sjt_hamiltonian(n):
    f = sjt_cycle(n)
    assert len(f) == factorial(n)
    assert validate_gray_code(n, f, closed=True).ok


def test_sjt_matches_classic_listing():
    # classic mobile-element SJT, written independently
    n = 5
    pi = list(range(1, n + 1))
    dirs = [-1] * n
    listing = [tuple(pi)]
    while True:
        mobile = None
        for k in range(n):
            t = k + dirs[k]
            if 0 <= t < n and pi[k] > pi[t] and (mobile is None or pi[k] > pi[mobile]):
                mobile = k
        if mobile is None:
            break
        t = mobile + dirs[mobile]
        val = pi[mobile]
        pi[mobile], pi[t] = pi[t], pi[mobile]
        dirs[mobile], dirs[t] = dirs[t], dirs[mobile]
        for k in range(n):
            if pi[k] > val:
                dirs[k] *= -1
        listing.append(tuple(pi))
    img = identity(n)
    ours = [img.image]
    for i in sjt_cycle(n).indices[:-1]:
        img = apply_gen(img, i)
        ours.append(img.image)
    assert ours == listing


def test_histogram():
    assert histogram(sjt_cycle(3)) == {1: 3, 2: 3}


def test_parse():
    assert Permutation.parse("1324").image == (1, 3, 2, 4)
    assert Permutation.parse("[1,3,2,4]").image == (1, 3, 2, 4)
    assert str(Permutation((1, 3, 2, 4))) == "1324"
