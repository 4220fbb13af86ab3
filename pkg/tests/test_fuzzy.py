from fractions import Fraction as Fr

import numpy as np
import pytest

from lafuzzy import (
    CayleyTable,
    FuzzyPoint,
    FuzzySubset,
    GroupoidHom,
    InputError,
    convolve,
    format_fuzzy,
    hom_transport,
    k_convolve,
    k_meet,
    k_truncate,
    level_set,
    meet,
    parse_fraction,
    parse_fuzzy,
    point_relation,
    pointwise,
)
from lafuzzy.fuzzy import convolve_batch, from_batch, to_batch


def F(*xs):
    return FuzzySubset.of(xs)


def test_point_relation_examples():
    G = F(Fr(3, 5))
    assert point_relation(G, 0, Fr(3, 10), "q_k", Fr(1, 5))
    assert not point_relation(G, 0, Fr(3, 10), "q")
    assert point_relation(F(Fr(1, 2)), 0, Fr(1, 2), "in")


def test_point_relation_strictness():
    # F(x) + t = 1 exactly is not quasi-coincidence
    assert not point_relation(F(Fr(1, 2)), 0, Fr(1, 2), "q")
    assert point_relation(F(Fr(1, 2)), 0, Fr(1, 2), "in_or_q")
    assert not point_relation(F(Fr(1, 4)), 0, Fr(1, 2), "q_k", Fr(1, 4))
    assert point_relation(F(Fr(1, 4)), 0, Fr(1, 2), "in_or_qk", Fr(1, 3))


def test_point_relation_rejects_bad_inputs():
    with pytest.raises(InputError):
        point_relation(F(0), 0, Fr(0), "in")
    with pytest.raises(InputError):
        point_relation(F(0), 0, Fr(1, 2), "in", k=1)
    with pytest.raises(InputError):
        point_relation(F(0), 0, Fr(1, 2), "near")
    with pytest.raises(InputError):
        FuzzyPoint(0, Fr(3, 2))


def test_grades_must_be_exact():
    with pytest.raises(InputError):
        FuzzySubset.of([0.5])
    with pytest.raises(InputError):
        F(Fr(5, 4))


def test_level_set():
    G = F(Fr(1, 4), Fr(1, 2), Fr(1, 2), Fr(3, 4))
    assert level_set(G, Fr(1, 2)).sorted() == [1, 2, 3]
    assert level_set(G, Fr(4, 5)).sorted() == []
    assert level_set(FuzzySubset.constant(3, Fr(2, 3)), Fr(1, 3)).sorted() == [0, 1, 2]


def test_meet_join():
    G = F(Fr(1, 4), Fr(3, 4))
    assert meet(G, FuzzySubset.one(2)) == G
    assert meet(G, G) == G
    assert meet(G, F(Fr(1, 2), Fr(1, 2))) == F(Fr(1, 4), Fr(1, 2))
    assert pointwise(G, F(Fr(1, 2), Fr(1, 2)), "join") == F(Fr(1, 2), Fr(3, 4))
    with pytest.raises(InputError):
        meet(G, F(0))


def test_convolve_z2(z2):
    got = convolve(z2, F(Fr(1, 2), Fr(1, 4)), F(Fr(1, 3), Fr(2, 3)))
    assert got == F(Fr(1, 3), Fr(1, 2))


def test_convolve_empty_factorization(const2):
    got = convolve(const2, F(1, 1), F(1, 1))
    assert got[1] == 0


def test_convolve_ones_on_surjective_table(ex):
    one = FuzzySubset.one(4)
    assert convolve(ex, one, one) == one


def test_k_truncate():
    assert k_truncate(F(Fr(3, 4), Fr(1, 4)), 0) == F(Fr(1, 2), Fr(1, 4))
    assert k_truncate(FuzzySubset.one(3), Fr(1, 2)) == FuzzySubset.constant(3, Fr(1, 4))
    G = F(Fr(1, 5), Fr(1, 10))
    assert k_truncate(G, Fr(1, 2)) == G


def test_k_products(ex):
    c = FuzzySubset.constant(4, Fr(3, 5))
    assert k_meet(c, c, 0) == FuzzySubset.constant(4, Fr(1, 2))
    assert k_convolve(ex, c, c, 0) == FuzzySubset.constant(4, Fr(1, 2))


def test_hom_transport(ex, trivial):
    ident = GroupoidHom(ex, ex, (0, 1, 2, 3))
    G = F(Fr(1, 4), Fr(1, 2), 0, 1)
    assert hom_transport(ident, G, "preimage") == G
    assert hom_transport(ident, G, "image") == G
    const = GroupoidHom(ex, ex, (3, 3, 3, 3))
    assert hom_transport(const, G, "preimage") == FuzzySubset.constant(4, 1)
    two = CayleyTable.from_rows([[0, 0], [0, 0]])
    squash = GroupoidHom(two, trivial, (0, 0))
    assert hom_transport(squash, F(Fr(1, 3), Fr(2, 3)), "image") == F(Fr(2, 3))


def test_hom_validation(ex, trivial):
    with pytest.raises(InputError):
        GroupoidHom(ex, trivial, (0, 0, 0))
    with pytest.raises(InputError):
        GroupoidHom(ex, trivial, (0, 0, 0, 1))


def test_batch_roundtrip_and_convolve(ex):
    fs = [F(Fr(1, 3), 0, 1, Fr(1, 2)), F(Fr(1, 6), Fr(5, 6), 0, 0)]
    B, scale = to_batch(fs)
    assert scale == 6
    assert from_batch(B, scale) == fs
    C = convolve_batch(ex.array, B, B[::-1].copy())
    assert from_batch(C, scale) == [convolve(ex, fs[0], fs[1]), convolve(ex, fs[1], fs[0])]
    assert C.dtype == np.int64


def test_parse_fraction():
    assert parse_fraction("3/10") == Fr(3, 10)
    assert parse_fraction("0") == 0
    for bad in ("0.5", "1e-3", "-1/2", "1/0", "", "1 /2"):
        with pytest.raises(InputError):
            parse_fraction(bad)


def test_fuzzy_roundtrip():
    G = F(Fr(3, 10), 0, 1, Fr(4, 5))
    text = format_fuzzy(G)
    assert text == "4\n1 3/10\n2 0\n3 1\n4 4/5\n"
    assert parse_fuzzy(text) == G
    assert format_fuzzy(parse_fuzzy(text)) == text


@pytest.mark.parametrize("text", [
    "2\n1 1/2\n",
    "2\n1 1/2\n3 1/2\n",
    "1\n1 2/4\n",
    "1\n1 0.5\n",
    "1\n1 3/2\n",
    "x\n",
])
def test_parse_fuzzy_rejects(text):
    with pytest.raises(InputError):
        parse_fuzzy(text)
