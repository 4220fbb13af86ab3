"""Rational-valued fuzzy subsets of a finite groupoid.

Membership grades, levels and the parameter k are ``fractions.Fraction``
values; no decision anywhere goes through binary floating point. The
``*_batch`` helpers work on integer matrices (one fuzzy subset per row,
all grades multiplied by a common denominator), which keeps them exact while
letting numpy sweep many subsets at once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .groupoid import CayleyTable, ElementSubset

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

RELATIONS = ("in", "q", "q_k", "in_or_q", "in_or_qk")

_FRACTION_RE = re.compile(r"(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?")


def parse_fraction(text: str) -> Fraction:
    """Parse ``p/q`` or an integer literal. Decimal notation is rejected."""
    m = _FRACTION_RE.fullmatch(text.strip())
    if not m:
        raise InputError(f"{text!r} is not a fraction of the form p/q")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    return Fraction(num, den)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_fraction(x)
    raise InputError(f"{x!r} is not an exact rational (use Fraction, int or 'p/q')")


def check_k(k) -> Fraction:
    k = as_fraction(k)
    if not ZERO <= k < ONE:
        raise InputError(f"k must lie in [0,1), got {format_fraction(k)}")
    return k


def check_level(t) -> Fraction:
    t = as_fraction(t)
    if not ZERO < t <= ONE:
        raise InputError(f"level must lie in (0,1], got {format_fraction(t)}")
    return t


def theta(k) -> Fraction:
    """The cut-off (1 - k)/2; equals 1/2 when k = 0."""
    return (ONE - check_k(k)) / 2


@dataclass(frozen=True)
class FuzzySubset:
    grades: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.grades:
            raise InputError("a fuzzy subset needs at least one element")
        for i, g in enumerate(self.grades):
            if not isinstance(g, Fraction):
                raise InputError(f"grade of element {i + 1} is not a Fraction")
            if not ZERO <= g <= ONE:
                raise InputError(f"grade {g} of element {i + 1} is outside [0,1]")

    @classmethod
    def of(cls, grades: Iterable) -> FuzzySubset:
        return cls(tuple(as_fraction(g) for g in grades))

    @classmethod
    def constant(cls, n: int, c) -> FuzzySubset:
        return cls((as_fraction(c),) * n)

    @classmethod
    def one(cls, n: int) -> FuzzySubset:
        """The fuzzy subset sending every element to 1."""
        return cls((ONE,) * n)

    @property
    def n(self) -> int:
        return len(self.grades)

    def __getitem__(self, x: int) -> Fraction:
        return self.grades[x]

    def __le__(self, other: FuzzySubset) -> bool:
        _same_carrier(self, other)
        return all(a <= b for a, b in zip(self.grades, other.grades))

    def denominator(self) -> int:
        return lcm(*(g.denominator for g in self.grades))

    def on_grid(self, d: int) -> bool:
        return all(d % g.denominator == 0 for g in self.grades)


@dataclass(frozen=True)
class FuzzyPoint:
    support: int
    value: Fraction

    def __post_init__(self):
        check_level(self.value)


def _same_carrier(*fs: FuzzySubset) -> None:
    if len({f.n for f in fs}) > 1:
        raise InputError(f"fuzzy subsets over different carriers: {[f.n for f in fs]}")


def point_relation(F: FuzzySubset, x: int, t, rel: str, k=ZERO) -> bool:
    """Relation between the fuzzy point x_t and F.

    ``in``: F(x) >= t. ``q``: F(x) + t > 1. ``q_k``: F(x) + t + k > 1.
    ``in_or_q`` and ``in_or_qk`` are the disjunctions.
    """
    t = check_level(t)
    k = check_k(k)
    if not 0 <= x < F.n:
        raise InputError(f"element {x} outside carrier of size {F.n}")
    v = F.grades[x]
    belongs = v >= t
    if rel == "in":
        return belongs
    if rel == "q":
        return v + t > ONE
    if rel == "q_k":
        return v + t + k > ONE
    if rel == "in_or_q":
        return belongs or v + t > ONE
    if rel == "in_or_qk":
        return belongs or v + t + k > ONE
    raise InputError(f"unknown relation {rel!r}; expected one of {', '.join(RELATIONS)}")


def level_set(F: FuzzySubset, t) -> ElementSubset:
    t = check_level(t)
    return ElementSubset.of(F.n, (x for x, g in enumerate(F.grades) if g >= t))


def pointwise(F: FuzzySubset, G: FuzzySubset, op: str) -> FuzzySubset:
    _same_carrier(F, G)
    if op == "meet":
        return FuzzySubset(tuple(min(a, b) for a, b in zip(F.grades, G.grades)))
    if op == "join":
        return FuzzySubset(tuple(max(a, b) for a, b in zip(F.grades, G.grades)))
    raise InputError(f"unknown pointwise operation {op!r}; expected meet or join")


def meet(*fs: FuzzySubset) -> FuzzySubset:
    out = fs[0]
    for f in fs[1:]:
        out = pointwise(out, f, "meet")
    return out


def convolve(G: CayleyTable, F: FuzzySubset, H: FuzzySubset) -> FuzzySubset:
    """Sup-min product: (F∘H)(a) = max over p∘q = a of min(F(p), H(q)), 0 if a has no factorization."""
    _same_carrier(F, H)
    if F.n != G.n:
        raise InputError(f"fuzzy subsets over carrier {F.n} do not match table of size {G.n}")
    out = [ZERO] * G.n
    for p, row in enumerate(G.rows):
        fp = F.grades[p]
        for q, a in enumerate(row):
            v = min(fp, H.grades[q])
            if v > out[a]:
                out[a] = v
    return FuzzySubset(tuple(out))


def k_truncate(F: FuzzySubset, k) -> FuzzySubset:
    """F_k: every grade capped at (1 - k)/2."""
    cap = theta(k)
    return FuzzySubset(tuple(min(g, cap) for g in F.grades))


def k_meet(F: FuzzySubset, H: FuzzySubset, k) -> FuzzySubset:
    return k_truncate(pointwise(F, H, "meet"), k)


def k_convolve(G: CayleyTable, F: FuzzySubset, H: FuzzySubset, k) -> FuzzySubset:
    return k_truncate(convolve(G, F, H), k)


@dataclass(frozen=True)
class GroupoidHom:
    source: CayleyTable
    target: CayleyTable
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.n:
            raise InputError(
                f"map has {len(self.mapping)} images, source has {self.source.n} elements"
            )
        if any(not 0 <= y < self.target.n for y in self.mapping):
            raise InputError("map sends an element outside the target carrier")

    @property
    def is_homomorphism(self) -> bool:
        s, t, f = self.source.rows, self.target.rows, self.mapping
        n = self.source.n
        return all(f[s[a][b]] == t[f[a]][f[b]] for a in range(n) for b in range(n))

    @property
    def is_onto(self) -> bool:
        return set(self.mapping) == set(range(self.target.n))


def hom_transport(phi: GroupoidHom, F: FuzzySubset, direction: str) -> FuzzySubset:
    """Preimage Φ⁻¹(F)(x) = F(Φx), or image Φ(F)(y) = max of F over the fibre of y (0 if empty)."""
    if direction == "preimage":
        if F.n != phi.target.n:
            raise InputError("preimage needs a fuzzy subset of the target")
        return FuzzySubset(tuple(F.grades[y] for y in phi.mapping))
    if direction == "image":
        if F.n != phi.source.n:
            raise InputError("image needs a fuzzy subset of the source")
        out = [ZERO] * phi.target.n
        for x, y in enumerate(phi.mapping):
            out[y] = max(out[y], F.grades[x])
        return FuzzySubset(tuple(out))
    raise InputError(f"unknown direction {direction!r}; expected image or preimage")


# --- integer batches ---------------------------------------------------------

def to_batch(fs: Sequence[FuzzySubset], scale: int | None = None) -> tuple[np.ndarray, int]:
    """Stack fuzzy subsets into an int64 matrix of grades times ``scale``."""
    if scale is None:
        scale = lcm(*(f.denominator() for f in fs)) if fs else 1
    rows = []
    for f in fs:
        row = []
        for g in f.grades:
            v = g * scale
            if v.denominator != 1:
                raise InputError(f"grade {g} is not a multiple of 1/{scale}")
            row.append(v.numerator)
        rows.append(row)
    n = fs[0].n if fs else 0
    return np.array(rows, dtype=np.int64).reshape(len(rows), n), scale


def from_batch(batch: np.ndarray, scale: int) -> list[FuzzySubset]:
    return [FuzzySubset(tuple(Fraction(int(v), scale) for v in row)) for row in batch]


def rescale(batch: np.ndarray, scale: int, new_scale: int) -> np.ndarray:
    if new_scale % scale:
        raise InputError(f"cannot rescale denominator {scale} to {new_scale}")
    return batch * (new_scale // scale)


def convolve_batch(table: np.ndarray, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise sup-min product of two integer batches of equal shape (P, n)."""
    n = table.shape[0]
    p, q = np.divmod(np.arange(n * n), n)
    vals = np.minimum(A[:, p], B[:, q])
    flat = table.reshape(-1)
    out = np.zeros_like(A)
    for a in range(n):
        hit = flat == a
        if hit.any():
            out[:, a] = vals[:, hit].max(axis=1)
    return out


# --- text format ---------------------------------------------------------------

def format_fuzzy(F: FuzzySubset) -> str:
    lines = [str(F.n)]
    lines += [f"{i + 1} {format_fraction(g)}" for i, g in enumerate(F.grades)]
    return "\n".join(lines) + "\n"


def parse_fuzzy(text: str) -> FuzzySubset:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InputError("empty fuzzy subset file")
    head = lines[0].strip()
    if not head.isdigit() or int(head) < 1:
        raise InputError(f"line 1: {lines[0]!r} is not a positive element count")
    n = int(head)
    if len(lines) != n + 1:
        raise InputError(f"expected {n} grade lines, found {len(lines) - 1}")
    grades = []
    for i, line in enumerate(lines[1:], start=1):
        toks = line.split(" ")
        if len(toks) != 2 or toks[0] != str(i):
            raise InputError(f"line {i + 1}: expected '{i} p/q', got {line!r}")
        g = parse_fraction(toks[1])
        if format_fraction(g) != toks[1]:
            raise InputError(f"line {i + 1}: grade {toks[1]!r} is not written in lowest terms")
        if g > ONE:
            raise InputError(f"line {i + 1}: grade {toks[1]} exceeds 1")
        grades.append(g)
    return FuzzySubset(tuple(grades))
