"""Finite groupoids given by Cayley tables.

Elements are ``0..n-1`` internally. Everything that faces a user (files,
CLI output, reports) is 1-based so the tables read the same way they are
usually printed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

LAWS = (
    "left_invertive",
    "medial",
    "paramedial",
    "extended_medial",
    "associative",
    "commutative",
)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universally quantified check.

    Truthiness follows ``holds``; ``witness`` describes the first violation
    found (its shape depends on the check) and is ``None`` when the check holds.
    """

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class CayleyTable:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise InputError("a Cayley table needs at least one element")
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise InputError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, e in enumerate(row):
                if not isinstance(e, (int, np.integer)) or not 0 <= e < n:
                    raise InputError(
                        f"entry ({i + 1},{j + 1}) = {e!r} is not an element index"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> CayleyTable:
        return cls(tuple(tuple(int(e) for e in row) for row in rows))

    @classmethod
    def from_one_based(cls, rows: Iterable[Iterable[int]]) -> CayleyTable:
        return cls.from_rows([e - 1 for e in row] for row in rows)

    @classmethod
    def from_flat(cls, n: int, cells: Sequence[int]) -> CayleyTable:
        return cls.from_rows(cells[i * n:(i + 1) * n] for i in range(n))

    @property
    def n(self) -> int:
        return len(self.rows)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.rows, dtype=np.int64)
        a.flags.writeable = False
        return a

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(e for row in self.rows for e in row)

    def elements(self) -> range:
        return range(self.n)

    def one_based(self) -> list[list[int]]:
        return [[e + 1 for e in row] for row in self.rows]

    def __call__(self, a: int, b: int) -> int:
        return compose(self, a, b)


@dataclass(frozen=True)
class ElementSubset:
    n: int
    members: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("carrier size must be positive")
        bad = [m for m in self.members if not 0 <= m < self.n]
        if bad:
            raise InputError(f"elements {sorted(bad)} outside carrier of size {self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> ElementSubset:
        return cls(n, frozenset(int(m) for m in members))

    @classmethod
    def full(cls, n: int) -> ElementSubset:
        return cls(n, frozenset(range(n)))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> ElementSubset:
        return cls(n, frozenset(i for i in range(n) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << m for m in self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __le__(self, other: ElementSubset) -> bool:
        return self.members <= other.members


@dataclass(frozen=True)
class RegularityProfile:
    """Per-element witnesses for the regularity notions (``None`` = no witness).

    ``regular[a]`` is x with a = (ax)a, ``left_regular[a]`` is z with a = z(aa),
    ``right_regular[a]`` is y with a = (aa)y, ``weakly_regular[a]`` is (x, y)
    with a = (ax)(ay) and ``a2Ma2[a]`` is m with a = ((aa)m)(aa).
    """

    regular: tuple
    left_regular: tuple
    right_regular: tuple
    weakly_regular: tuple
    a2Ma2: tuple

    @property
    def is_regular(self) -> bool:
        return None not in self.regular

    @property
    def is_left_regular(self) -> bool:
        return None not in self.left_regular

    @property
    def is_right_regular(self) -> bool:
        return None not in self.right_regular

    @property
    def is_weakly_regular(self) -> bool:
        return None not in self.weakly_regular

    @property
    def is_completely_regular(self) -> bool:
        return self.is_regular and self.is_left_regular and self.is_right_regular

    @property
    def char_a2Ma2(self) -> bool:
        return None not in self.a2Ma2

    def flags(self) -> dict[str, bool]:
        return {
            "regular": self.is_regular,
            "left_regular": self.is_left_regular,
            "right_regular": self.is_right_regular,
            "completely_regular": self.is_completely_regular,
            "weakly_regular": self.is_weakly_regular,
            "char_a2Ma2": self.char_a2Ma2,
        }


def _check_element(G: CayleyTable, a) -> int:
    if not isinstance(a, (int, np.integer)) or not 0 <= a < G.n:
        raise InputError(f"element {a!r} outside carrier of size {G.n}")
    return int(a)


def compose(G: CayleyTable, a: int, b: int) -> int:
    return G.rows[_check_element(G, a)][_check_element(G, b)]


def _law_sides(t: np.ndarray, law: str) -> tuple[np.ndarray, np.ndarray]:
    n = t.shape[0]
    if law == "commutative":
        return t, t.T
    if law in ("left_invertive", "associative", "extended_medial"):
        a, b, c = np.indices((n, n, n))
        if law == "left_invertive":
            return t[t[a, b], c], t[t[c, b], a]
        if law == "associative":
            return t[t[a, b], c], t[a, t[b, c]]
        return t[a, t[b, c]], t[b, t[a, c]]
    if law in ("medial", "paramedial"):
        a, b, c, d = np.indices((n, n, n, n))
        if law == "medial":
            return t[t[a, b], t[c, d]], t[t[a, c], t[b, d]]
        return t[t[a, b], t[c, d]], t[t[d, c], t[b, a]]
    raise InputError(f"unknown law {law!r}; expected one of {', '.join(LAWS)}")


def check_law(G: CayleyTable, law: str) -> Verdict:
    """Decide an identity over all tuples.

    On failure the witness is the lexicographically least violating tuple
    (0-based). Tuples are triples for left_invertive, extended_medial and
    associative, quadruples for medial and paramedial, pairs for commutative.
    """
    lhs, rhs = _law_sides(G.array, law)
    bad = lhs != rhs
    if not bad.any():
        return Verdict(True)
    first = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return Verdict(False, tuple(int(i) for i in first))


def is_left_invertive(G: CayleyTable) -> bool:
    return check_law(G, "left_invertive").holds


def left_identities(G: CayleyTable) -> ElementSubset:
    ident = tuple(range(G.n))
    return ElementSubset.of(G.n, (e for e in G.elements() if G.rows[e] == ident))


def subset_product(G: CayleyTable, A: ElementSubset, B: ElementSubset) -> ElementSubset:
    if A.n != G.n or B.n != G.n:
        raise InputError(f"subsets over carriers {A.n}, {B.n} do not match table of size {G.n}")
    rows = G.rows
    return ElementSubset(G.n, frozenset(rows[a][b] for a in A.members for b in B.members))


def regularity(G: CayleyTable) -> RegularityProfile:
    t = G.rows
    els = range(G.n)

    def first(pred):
        return next((w for w in els if pred(w)), None)

    regular, left, right, weak, char = [], [], [], [], []
    for a in els:
        sq = t[a][a]
        regular.append(first(lambda x: t[t[a][x]][a] == a))
        left.append(first(lambda z: t[z][sq] == a))
        right.append(first(lambda y: t[sq][y] == a))
        weak.append(next(
            ((x, y) for x, y in product(els, els) if t[t[a][x]][t[a][y]] == a), None
        ))
        char.append(first(lambda m: t[t[sq][m]][sq] == a))
    return RegularityProfile(tuple(regular), tuple(left), tuple(right), tuple(weak), tuple(char))


def relabel(G: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """Isomorphic copy in which element ``i`` is renamed ``perm[i]``."""
    n = G.n
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    t = G.rows
    return CayleyTable(tuple(
        tuple(perm[t[inv[r]][inv[c]]] for c in range(n)) for r in range(n)
    ))


# --- text format -----------------------------------------------------------

def format_table(G: CayleyTable) -> str:
    lines = [str(G.n)]
    lines += [" ".join(str(e + 1) for e in row) for row in G.rows]
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise InputError(f"line {lineno}: {tok!r} is not a positive integer")
    return int(tok)


def parse_table(text: str) -> CayleyTable:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0
    while pos < len(lines) and lines[pos].startswith("#"):
        pos += 1
    if pos == len(lines):
        raise InputError("empty table file")
    n = _parse_int(lines[pos].strip(), pos + 1)
    if n < 1:
        raise InputError(f"line {pos + 1}: carrier size must be at least 1")
    body = lines[pos + 1:]
    if len(body) != n:
        raise InputError(
            f"expected {n} table rows after line {pos + 1}, found {len(body)}"
        )
    rows = []
    for offset, line in enumerate(body):
        lineno = pos + 2 + offset
        toks = line.split(" ")
        if len(toks) != n:
            raise InputError(f"line {lineno}: expected {n} entries separated by single spaces")
        row = [_parse_int(tok, lineno) for tok in toks]
        for j, e in enumerate(row):
            if not 1 <= e <= n:
                raise InputError(f"line {lineno}, column {j + 1}: entry {e} not in 1..{n}")
        rows.append([e - 1 for e in row])
    return CayleyTable.from_rows(rows)


def parse_tables(text: str) -> list[CayleyTable]:
    """Parse a stream of table records separated by single blank lines."""
    chunks = [c for c in text.strip("\n").split("\n\n") if c.strip()]
    return [parse_table(c + "\n") for c in chunks]


def format_subset(A: ElementSubset) -> str:
    return " ".join(str(m + 1) for m in A.sorted()) + "\n"


def parse_subset(text: str, n: int) -> ElementSubset:
    line = text.rstrip("\n")
    if "\n" in line:
        raise InputError("subset must be given on a single line")
    toks = line.split(" ") if line else []
    vals = [_parse_int(t, 1) for t in toks]
    if vals != sorted(set(vals)):
        raise InputError("subset elements must be strictly ascending")
    if any(not 1 <= v <= n for v in vals):
        raise InputError(f"subset elements must lie in 1..{n}")
    return ElementSubset.of(n, (v - 1 for v in vals))


# The 4-element table from the literature on right modular groupoids:
# completely regular, left identity 4, neither associative nor commutative.
EXAMPLE_ROWS = (
    (4, 1, 2, 3),
    (3, 4, 1, 2),
    (2, 3, 4, 1),
    (1, 2, 3, 4),
)


def example_table() -> CayleyTable:
    return CayleyTable.from_one_based(EXAMPLE_ROWS)
