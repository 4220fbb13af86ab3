from fractions import Fraction as Fr
from itertools import product

import pytest

from lafuzzy import (
    CapacityError,
    FuzzyKind,
    FuzzySubset,
    InputError,
    convolve,
    enumerate_fuzzy,
    is_fuzzy_quantified,
    is_fuzzy_threshold,
    right_modular_groupoids,
)
from lafuzzy.fuzzy import theta

F_EX = FuzzySubset.of([Fr(3, 10), Fr(3, 10), Fr(3, 10), Fr(4, 5)])
KS = (Fr(0), Fr(1, 3), Fr(1, 2))


@pytest.mark.parametrize("kind", list(FuzzyKind))
@pytest.mark.parametrize("k", KS)
def test_constant_subsets_pass(ex, kind, k):
    for c in (0, Fr(1, 3), Fr(1, 2), 1):
        F = FuzzySubset.constant(4, c)
        assert is_fuzzy_threshold(ex, F, kind, k)
        assert is_fuzzy_quantified(ex, F, kind, k)


def test_example_subgroupoid_and_left(ex):
    assert is_fuzzy_threshold(ex, F_EX, "subgroupoid", 0)
    v = is_fuzzy_threshold(ex, F_EX, "left", 0)
    assert not v
    w = v.witness
    assert w.elements == (0, 3)
    assert (w.lhs, w.rhs) == (Fr(3, 10), Fr(1, 2))
    assert w.as_dict()["elements"] == [1, 4]


def test_example_quantified_left(ex):
    v = is_fuzzy_quantified(ex, F_EX, "left", 0, grid_denominator=10)
    assert not v
    assert v.witness.elements == (0, 3)


@pytest.mark.parametrize("kind", list(FuzzyKind))
def test_example_forms_agree(ex, kind):
    for k in KS:
        a = bool(is_fuzzy_threshold(ex, F_EX, kind, k))
        b = bool(is_fuzzy_quantified(ex, F_EX, kind, k))
        assert a == b, (kind, k)


def test_quantified_grid_must_cover_grades(ex):
    with pytest.raises(InputError):
        is_fuzzy_quantified(ex, F_EX, "left", 0, grid_denominator=4)


def test_carrier_mismatch(ex):
    with pytest.raises(InputError):
        is_fuzzy_threshold(ex, FuzzySubset.constant(3, 0), "left")


def test_unknown_kind(ex):
    with pytest.raises(InputError):
        is_fuzzy_threshold(ex, F_EX, "prime")


# --- naive oracle, written from the inequalities directly ---------------------

def _naive(G, F, kind, k):
    n, th = G.n, theta(k)
    g = F.grades
    m = lambda *xs: min(xs)  # noqa: E731
    M = range(n)
    pairs = list(product(M, repeat=2))
    triples = list(product(M, repeat=3))
    sub = all(g[G(x, y)] >= m(g[x], g[y], th) for x, y in pairs)
    left = all(g[G(x, y)] >= m(g[y], th) for x, y in pairs)
    right = all(g[G(x, y)] >= m(g[x], th) for x, y in pairs)
    gbi = all(g[G(G(x, a), y)] >= m(g[x], g[y], th) for x, a, y in triples)
    interior = all(g[G(G(x, a), y)] >= m(g[a], th) for x, a, y in triples)
    if kind == "classic_interior":
        return (all(g[G(x, y)] >= m(g[x], g[y]) for x, y in pairs)
                and all(g[G(G(x, a), y)] >= g[a] for x, a, y in triples))
    if kind == "quasi":
        one = FuzzySubset.one(n)
        l, r = convolve(G, F, one), convolve(G, one, F)
        return all(g[x] >= m(l[x], r[x], th) for x in M)
    if kind == "one_two":
        return sub and all(
            g[G(G(x, a), G(y, z))] >= m(g[x], g[y], g[z], th)
            for x, a, y, z in product(M, repeat=4)
        )
    return {
        "subgroupoid": sub,
        "left": left,
        "right": right,
        "two_sided": left and right,
        "generalized_bi": gbi,
        "bi": sub and gbi,
        "interior": sub and interior,
    }[kind]


@pytest.mark.parametrize("kind", [k.value for k in FuzzyKind])
def test_threshold_against_naive_oracle(kind):
    for order in (1, 2, 3):
        for G in right_modular_groupoids(order):
            for F in enumerate_fuzzy(order, 2):
                for k in (Fr(0), Fr(1, 2)):
                    assert bool(is_fuzzy_threshold(G, F, kind, k)) == _naive(G, F, kind, k), (G.rows, F, k)


def test_subgroupoid_quantified_matches_threshold_d4():
    for order in (1, 2, 3):
        for G in right_modular_groupoids(order):
            for F in enumerate_fuzzy(order, 4):
                assert bool(is_fuzzy_quantified(G, F, "subgroupoid", 0)) == bool(
                    is_fuzzy_threshold(G, F, "subgroupoid", 0))


def test_boundary_at_theta(ex):
    # grade exactly (1-k)/2 satisfies the non-strict inequality
    for k in KS:
        th = theta(k)
        lo = th - Fr(1, 100)
        F = FuzzySubset.of([th, th, th, 1])
        assert is_fuzzy_threshold(ex, F, "left", k)
        G = FuzzySubset.of([lo, lo, lo, 1])
        assert not is_fuzzy_threshold(ex, G, "left", k)
        assert not is_fuzzy_quantified(ex, G, "left", k)
        assert is_fuzzy_quantified(ex, F, "left", k)


def test_quantified_refuses_huge_level_grid(ex):
    F = FuzzySubset.of([Fr(1, 10**6), 0, 0, 1])
    with pytest.raises(CapacityError):
        is_fuzzy_quantified(ex, F, "bi", 0)
    # the threshold form has no such limit: 1∘4 = 3 has grade 0 < 1/10^6
    v = is_fuzzy_threshold(ex, F, "bi", 0)
    assert not v and v.witness.elements == (0, 3)
