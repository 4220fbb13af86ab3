"""Crisp ideal classes of a finite groupoid.

``one_two`` has no crisp definition in the literature; here it is the
analogue of the fuzzy (1,2)-ideal: a subgroupoid A with (AM)(AA) contained
in A. Reports mark it as an extension.
"""

from __future__ import annotations

from enum import Enum

from .errors import CapacityError, InputError
from .groupoid import CayleyTable, ElementSubset, Verdict, subset_product
from .limits import limit


class CrispKind(str, Enum):
    SUBGROUPOID = "subgroupoid"
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    GENERALIZED_BI = "generalized_bi"
    BI = "bi"
    INTERIOR = "interior"
    QUASI = "quasi"
    ONE_TWO = "one_two"

    @classmethod
    def parse(cls, tag: str) -> CrispKind:
        try:
            return cls(tag)
        except ValueError:
            raise InputError(
                f"unknown crisp kind {tag!r}; expected one of {', '.join(k.value for k in cls)}"
            ) from None


EXTENSION_KINDS = frozenset({CrispKind.ONE_TWO})


def _containments(G: CayleyTable, A: ElementSubset, kind: CrispKind):
    """Yield (label, product set) pairs that must all lie inside A."""
    M = ElementSubset.full(G.n)
    prod = lambda X, Y: subset_product(G, X, Y)  # noqa: E731

    if kind in (CrispKind.SUBGROUPOID, CrispKind.BI, CrispKind.INTERIOR, CrispKind.ONE_TWO):
        yield "AA", prod(A, A)
    if kind in (CrispKind.LEFT, CrispKind.TWO_SIDED):
        yield "MA", prod(M, A)
    if kind in (CrispKind.RIGHT, CrispKind.TWO_SIDED):
        yield "AM", prod(A, M)
    if kind in (CrispKind.GENERALIZED_BI, CrispKind.BI):
        yield "(AM)A", prod(prod(A, M), A)
    if kind is CrispKind.INTERIOR:
        yield "(MA)M", prod(prod(M, A), M)
    if kind is CrispKind.QUASI:
        am, ma = prod(A, M), prod(M, A)
        yield "AM∩MA", ElementSubset(G.n, am.members & ma.members)
    if kind is CrispKind.ONE_TWO:
        yield "(AM)(AA)", prod(prod(A, M), prod(A, A))


def is_crisp(G: CayleyTable, A: ElementSubset, kind: CrispKind | str) -> Verdict:
    """Decide membership of A in a crisp ideal class.

    The witness on failure is ``(label, element)``: the containment that
    broke and the smallest element of the product lying outside A.
    """
    kind = CrispKind.parse(kind) if isinstance(kind, str) else kind
    if A.n != G.n:
        raise InputError(f"subset over carrier {A.n} does not match table of size {G.n}")
    if not A.members:
        raise InputError("ideal classes are defined for non-empty subsets only")
    for label, S in _containments(G, A, kind):
        escaped = S.members - A.members
        if escaped:
            return Verdict(False, (label, min(escaped)))
    return Verdict(True)


def enumerate_crisp(G: CayleyTable, kind: CrispKind | str) -> list[ElementSubset]:
    """All non-empty subsets of the given kind, ascending by bitmask."""
    bound = limit("LAFUZZY_MAX_CRISP_ORDER")
    if G.n > bound:
        raise CapacityError(f"crisp enumeration limited to order {bound}, got {G.n}")
    out = []
    for mask in range(1, 1 << G.n):
        A = ElementSubset.from_mask(G.n, mask)
        if is_crisp(G, A, kind):
            out.append(A)
    return out
