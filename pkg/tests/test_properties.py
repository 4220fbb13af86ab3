"""Property-based checks of identities that hold for every input."""

from fractions import Fraction as Fr

from hypothesis import given, settings
from hypothesis import strategies as st

from lafuzzy import (
    FuzzyKind,
    FuzzySubset,
    canonicalize,
    check_law,
    convolve,
    format_fuzzy,
    format_table,
    is_fuzzy_quantified,
    is_fuzzy_threshold,
    k_convolve,
    k_truncate,
    left_identities,
    meet,
    parse_fuzzy,
    parse_table,
    right_modular_groupoids,
)
from lafuzzy.groupoid import relabel

ORDERS = (1, 2, 3)
tables = st.sampled_from([G for n in ORDERS for G in right_modular_groupoids(n)])
grades = st.fractions(min_value=0, max_value=1, max_denominator=12)
ks = st.fractions(min_value=0, max_value=Fr(11, 12), max_denominator=12)


@st.composite
def table_and_fuzzy(draw, count=1):
    G = draw(tables)
    fs = [FuzzySubset(tuple(draw(st.lists(grades, min_size=G.n, max_size=G.n)))) for _ in range(count)]
    return (G, *fs)


@given(table_and_fuzzy(count=2))
def test_convolve_monotone(args):
    G, F, H = args
    lo = meet(F, H)
    assert convolve(G, lo, H) <= convolve(G, F, H)


@given(table_and_fuzzy(count=3))
def test_convolve_associativity_shape_for_left_invertive(args):
    # (F∘G)∘H = (H∘G)∘F pointwise, inherited from (ab)c = (cb)a
    G, A, B, C = args
    assert convolve(G, convolve(G, A, B), C) == convolve(G, convolve(G, C, B), A)


@given(table_and_fuzzy(), ks)
def test_truncation_idempotent_and_bounded(args, k):
    G, F = args
    Fk = k_truncate(F, k)
    assert k_truncate(Fk, k) == Fk
    assert Fk <= F
    assert all(g <= (1 - k) / 2 for g in Fk.grades)


@given(table_and_fuzzy(count=2), ks)
def test_k_convolve_is_truncated_convolve(args, k):
    G, F, H = args
    assert k_convolve(G, F, H, k) == k_truncate(convolve(G, F, H), k)


@settings(max_examples=60, deadline=None)
@given(table_and_fuzzy(), st.sampled_from([Fr(0), Fr(1, 4), Fr(1, 3), Fr(1, 2)]),
       st.sampled_from(list(FuzzyKind)))
def test_quantified_agrees_with_threshold(args, k, kind):
    G, F = args
    assert bool(is_fuzzy_quantified(G, F, kind, k)) == bool(is_fuzzy_threshold(G, F, kind, k))


@given(table_and_fuzzy(), st.sampled_from(list(FuzzyKind)))
def test_k_zero_threshold_monotone_in_k(args, kind):
    # the cut-off (1-k)/2 shrinks with k, so passing at k=0 implies passing at any k
    G, F = args
    if kind is FuzzyKind.CLASSIC_INTERIOR:
        return
    if is_fuzzy_threshold(G, F, kind, 0):
        assert is_fuzzy_threshold(G, F, kind, Fr(1, 2))


@given(tables, st.permutations([0, 1, 2]))
def test_relabel_invariants(G, perm):
    perm = [p for p in perm if p < G.n]
    H = relabel(G, perm)
    assert canonicalize(H) == canonicalize(G)
    assert check_law(H, "left_invertive")
    assert len(left_identities(H)) == len(left_identities(G))


@given(tables)
def test_table_roundtrip(G):
    text = format_table(G)
    assert format_table(parse_table(text)) == text


@given(table_and_fuzzy())
def test_fuzzy_roundtrip(args):
    _, F = args
    text = format_fuzzy(F)
    assert parse_fuzzy(text) == F
    assert format_fuzzy(parse_fuzzy(text)) == text
