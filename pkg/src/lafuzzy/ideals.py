"""Fuzzy ideal classes: (∈,∈∨q_k) kinds and the classic fuzzy interior ideal.

Two independent deciders are provided.

*Threshold form* compares grades against ``min{..., (1-k)/2}``. Every kind
is a list of inequalities of the shape ``F(target) >= min{F(u1), ..., θ}``
over all element tuples; ``quasi`` compares F with the sup-min products
F∘1 and 1∘F.

*Quantified form* evaluates the fuzzy-point implications literally: for every
element tuple and every choice of levels t, r, ... in (0,1] such that the
antecedent points belong to F, the consequent point must satisfy ∈∨q_k.
Levels range over a finite grid, which is exact (not a sample) when grades
and k lie on the grid: a violation needs a level in a half-open interval
whose right end is a grade or ``1 - k - grade``, and those are grid points.

Two misprints in the usual statements of the q_k conditions are read as
follows. In the bi-ideal and interior-ideal conditions, ``y_r ∈ M`` is read
``y_r ∈ F`` (the bound point must belong to F, matching the threshold
theorems), and the interior condition (ii) carries the single level t of
``a_t`` instead of ``min{t, r}`` with a free r.

``one_two`` is stated in the literature only for k = 0. Substituting
(1-k)/2 for 1/2 extends it to all k; results for k > 0 are extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import CapacityError, InputError
from .limits import limit
from .fuzzy import (
    FuzzySubset,
    as_fraction,
    check_k,
    convolve,
    convolve_batch,
    format_fraction,
    theta,
    to_batch,
)
from .groupoid import CayleyTable, Verdict


class FuzzyKind(str, Enum):
    CLASSIC_INTERIOR = "classic_interior"
    SUBGROUPOID = "subgroupoid"
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    BI = "bi"
    GENERALIZED_BI = "generalized_bi"
    INTERIOR = "interior"
    QUASI = "quasi"
    ONE_TWO = "one_two"

    @classmethod
    def parse(cls, tag: str) -> FuzzyKind:
        try:
            return cls(tag)
        except ValueError:
            raise InputError(
                f"unknown fuzzy kind {tag!r}; expected one of {', '.join(k.value for k in cls)}"
            ) from None


# kinds whose definition involves (1-k)/2, in the order they are usually listed
Q_K_KINDS = (
    FuzzyKind.SUBGROUPOID,
    FuzzyKind.LEFT,
    FuzzyKind.RIGHT,
    FuzzyKind.TWO_SIDED,
    FuzzyKind.BI,
    FuzzyKind.GENERALIZED_BI,
    FuzzyKind.INTERIOR,
    FuzzyKind.QUASI,
)


@dataclass(frozen=True)
class Violation:
    """A failed instance. ``elements`` are 0-based; ``lhs``/``rhs`` are the two
    sides of the broken inequality (for the quantified form: the grade of the
    consequent element and the level it failed at)."""

    kind: str
    condition: str
    elements: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    levels: tuple[Fraction, ...] = ()

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "condition": self.condition,
            "elements": [e + 1 for e in self.elements],
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
        }
        if self.levels:
            out["levels"] = [format_fraction(t) for t in self.levels]
        return out

    def describe(self) -> str:
        els = ",".join(str(e + 1) for e in self.elements)
        text = (f"{self.kind}: {self.condition} fails at ({els}): "
                f"{format_fraction(self.lhs)} vs {format_fraction(self.rhs)}")
        if self.levels:
            text += " with levels " + ",".join(format_fraction(t) for t in self.levels)
        return text


def _as_kind(kind) -> FuzzyKind:
    return FuzzyKind.parse(kind) if isinstance(kind, str) and not isinstance(kind, FuzzyKind) else kind


@dataclass(frozen=True)
class _Condition:
    name: str
    tuples: np.ndarray          # (T, arity) element tuples, lexicographic
    target: np.ndarray          # (T,) element whose grade is bounded below
    sources: tuple              # arrays (T,) of elements on the right-hand side
    capped: bool                # whether θ enters the minimum


def _grid(n: int, arity: int) -> np.ndarray:
    return np.indices((n,) * arity).reshape(arity, -1).T


def _conditions(t: np.ndarray, kind: FuzzyKind) -> list[_Condition]:
    n = t.shape[0]
    capped = kind is not FuzzyKind.CLASSIC_INTERIOR
    conds = []

    def pair(name, sources):
        g = _grid(n, 2)
        x, y = g[:, 0], g[:, 1]
        env = {"x": x, "y": y}
        conds.append(_Condition(name, g, t[x, y], tuple(env[s] for s in sources), capped))

    if kind in (FuzzyKind.CLASSIC_INTERIOR, FuzzyKind.SUBGROUPOID, FuzzyKind.BI,
                FuzzyKind.INTERIOR, FuzzyKind.ONE_TWO):
        pair("F(xy) >= min{F(x),F(y)" + (",θ}" if capped else "}"), "xy")
    if kind in (FuzzyKind.LEFT, FuzzyKind.TWO_SIDED):
        pair("F(xy) >= min{F(y),θ}", "y")
    if kind in (FuzzyKind.RIGHT, FuzzyKind.TWO_SIDED):
        pair("F(xy) >= min{F(x),θ}", "x")
    if kind in (FuzzyKind.BI, FuzzyKind.GENERALIZED_BI):
        g = _grid(n, 3)
        x, y, z = g.T
        conds.append(_Condition("F((xy)z) >= min{F(x),F(z),θ}", g, t[t[x, y], z], (x, z), True))
    if kind in (FuzzyKind.CLASSIC_INTERIOR, FuzzyKind.INTERIOR):
        g = _grid(n, 3)
        x, a, y = g.T
        name = "F((xa)y) >= " + ("min{F(a),θ}" if capped else "F(a)")
        conds.append(_Condition(name, g, t[t[x, a], y], (a,), capped))
    if kind is FuzzyKind.ONE_TWO:
        g = _grid(n, 4)
        x, a, y, z = g.T
        conds.append(_Condition(
            "F((xa)(yz)) >= min{F(x),F(y),F(z),θ}", g, t[t[x, a], t[y, z]], (x, y, z), True
        ))
    return conds


def _common_scale(scale: int, k: Fraction) -> tuple[int, int]:
    th = theta(k)
    s = lcm(scale, th.denominator)
    return s, (th * s).numerator


def _threshold_sides(t, B, scale, kind, k):
    """Yield (name, tuples, lhs, rhs, scale) per condition for a batch B."""
    kind = _as_kind(kind)
    k = check_k(k)
    s, cap = _common_scale(scale, k)
    B = B * (s // scale)
    if kind is FuzzyKind.QUASI:
        ones = np.full_like(B, s)
        rhs = np.minimum(convolve_batch(t, B, ones), convolve_batch(t, ones, B))
        rhs = np.minimum(rhs, cap)
        g = _grid(t.shape[0], 1)
        yield "F(x) >= min{(F∘1)(x),(1∘F)(x),θ}", g, B, rhs, s
        return
    for c in _conditions(t, kind):
        lhs = B[:, c.target]
        rhs = B[:, c.sources[0]]
        for src in c.sources[1:]:
            rhs = np.minimum(rhs, B[:, src])
        if c.capped:
            rhs = np.minimum(rhs, cap)
        yield c.name, c.tuples, lhs, rhs, s


def threshold_batch(G: CayleyTable, B: np.ndarray, scale: int, kind, k=0) -> np.ndarray:
    """Boolean vector: which rows of the integer batch pass ``kind`` at ``k``."""
    ok = np.ones(B.shape[0], dtype=bool)
    for _, _, lhs, rhs, _ in _threshold_sides(G.array, B, scale, kind, as_fraction(k)):
        ok &= (lhs >= rhs).all(axis=1)
    return ok


def is_fuzzy_threshold(G: CayleyTable, F: FuzzySubset, kind, k=0) -> Verdict:
    """Decide a kind through its min-threshold inequalities."""
    if F.n != G.n:
        raise InputError(f"fuzzy subset over carrier {F.n} does not match table of size {G.n}")
    kind = _as_kind(kind)
    k = check_k(as_fraction(k))
    B, scale = to_batch([F])
    if kind is FuzzyKind.QUASI:
        # route through the Fraction-valued product so single checks exercise it
        one = FuzzySubset.one(G.n)
        left, right = convolve(G, F, one), convolve(G, one, F)
        th = theta(k)
        for x in G.elements():
            rhs = min(left[x], right[x], th)
            if F[x] < rhs:
                return Verdict(False, Violation(
                    kind.value, "F(x) >= min{(F∘1)(x),(1∘F)(x),θ}", (x,), F[x], rhs))
        return Verdict(True)
    for name, tuples, lhs, rhs, s in _threshold_sides(G.array, B, scale, kind, k):
        bad = lhs[0] < rhs[0]
        if bad.any():
            i = int(np.argmax(bad))
            return Verdict(False, Violation(
                kind.value, name, tuple(int(e) for e in tuples[i]),
                Fraction(int(lhs[0, i]), s), Fraction(int(rhs[0, i]), s),
            ))
    return Verdict(True)


# --- quantified form -----------------------------------------------------------

def quantified_denominator(d: int, k: Fraction) -> int:
    """Level grid used by the quantified checker for inputs on grid 1/d."""
    return lcm(d, (1 - k).denominator) * 2


def _check_grid(B: np.ndarray, d: int, k: Fraction) -> None:
    if d < 1:
        raise InputError("grid denominator must be at least 1")
    if (k * d).denominator != 1:
        raise InputError(f"k = {format_fraction(k)} is not on the grid of denominator {d}")
    if B.size and (B.min() < 0 or B.max() > d):
        raise InputError("fuzzy grades outside [0,1]")


def _factor_sources(t: np.ndarray):
    """For each element x, the left and right factors over all p∘q = x."""
    n = t.shape[0]
    lefts, rights = [], []
    for x in range(n):
        p, q = np.nonzero(t == x)
        lefts.append(np.unique(p))
        rights.append(np.unique(q))
    return lefts, rights


def _quantified_conditions(t: np.ndarray, kind: FuzzyKind):
    """(name, tuples, consequent, bound sources) where each bound source
    carries its own level variable; the consequent level is the minimum."""
    n = t.shape[0]
    out = []

    def add(name, arity, consequent, sources):
        out.append((name, _grid(n, arity), consequent, sources))

    g2 = _grid(n, 2)
    x2, y2 = g2.T
    if kind in (FuzzyKind.CLASSIC_INTERIOR, FuzzyKind.SUBGROUPOID, FuzzyKind.BI,
                FuzzyKind.INTERIOR, FuzzyKind.ONE_TWO):
        add("x_t∈F, y_r∈F ⇒ (xy)_min{t,r}", 2, t[x2, y2], (x2, y2))
    if kind in (FuzzyKind.LEFT, FuzzyKind.TWO_SIDED):
        add("y_t∈F ⇒ (xy)_t", 2, t[x2, y2], (y2,))
    if kind in (FuzzyKind.RIGHT, FuzzyKind.TWO_SIDED):
        add("x_t∈F ⇒ (xy)_t", 2, t[x2, y2], (x2,))
    if kind in (FuzzyKind.BI, FuzzyKind.GENERALIZED_BI):
        x, y, z = _grid(n, 3).T
        add("x_t∈F, z_r∈F ⇒ ((xy)z)_min{t,r}", 3, t[t[x, y], z], (x, z))
    if kind in (FuzzyKind.CLASSIC_INTERIOR, FuzzyKind.INTERIOR):
        x, a, y = _grid(n, 3).T
        add("a_t∈F ⇒ ((xa)y)_t", 3, t[t[x, a], y], (a,))
    if kind is FuzzyKind.ONE_TWO:
        x, a, y, z = _grid(n, 4).T
        add("x_t∈F, y_r∈F, z_s∈F ⇒ ((xa)(yz))_min{t,r,s}", 4, t[t[x, a], t[y, z]], (x, y, z))
    return out


def _consequent_ok(Fc: np.ndarray, levels: np.ndarray, D: int, K: int, classic: bool) -> np.ndarray:
    """(P, T, L) truth of (c)_s ∈ F, or ∈∨q_k F, for every level s."""
    belongs = Fc[:, :, None] >= levels
    if classic:
        return belongs
    return belongs | (Fc[:, :, None] + levels + K > D)


_CHUNK_CELLS = 1 << 22


def _quantified_scan(t, B, d, kind, k):
    """Yield, per condition, (name, tuples, violation mask (P, T, L, ..., L), levels, D, BD)."""
    D = quantified_denominator(d, k)
    n = t.shape[0]
    conds = [] if kind is FuzzyKind.QUASI else _quantified_conditions(t, kind)
    worst = max([len(c[1]) * D ** len(c[3]) for c in conds] or [n * D])
    bound = limit("LAFUZZY_MAX_LEVEL_CELLS")
    if worst > bound:
        raise CapacityError(
            f"level grid of denominator {D} needs {worst} cells per subset (bound {bound}); "
            "use grades with a smaller common denominator"
        )
    K = (k * D).numerator
    BD = B * (D // d)
    levels = np.arange(1, D + 1, dtype=np.int64)
    L = len(levels)
    classic = kind is FuzzyKind.CLASSIC_INTERIOR

    if kind is FuzzyKind.QUASI:
        lefts, rights = _factor_sources(t)
        # x_t ∈ F∘1 iff some factorization x = p∘q has p_t ∈ F (and q_t ∈ 1, always true)
        in_left = np.zeros((B.shape[0], n, L), dtype=bool)
        in_right = np.zeros((B.shape[0], n, L), dtype=bool)
        for x in range(n):
            if len(lefts[x]):
                in_left[:, x, :] = (BD[:, lefts[x], None] >= levels).any(axis=1)
                in_right[:, x, :] = (BD[:, rights[x], None] >= levels).any(axis=1)
        ok = _consequent_ok(BD, levels, D, K, classic=False)
        viol = in_left & in_right & ~ok
        yield "x_t∈F∘1, x_t∈1∘F ⇒ x_t", _grid(n, 1), viol, levels, D, BD, np.arange(n)
        return

    for name, tuples, consequent, sources in conds:
        m = len(sources)
        T = len(tuples)
        per_row = T * L ** m
        step = max(1, _CHUNK_CELLS // per_row)
        # index of the minimum level across the m level variables
        min_idx = np.indices((L,) * m).min(axis=0)
        parts = []
        for lo in range(0, B.shape[0], step):
            chunk = BD[lo:lo + step]
            ok = _consequent_ok(chunk[:, consequent], levels, D, K, classic)
            viol = ~ok[:, :, min_idx]                          # (P, T, L, ..., L)
            for axis, src in enumerate(sources):
                shape = [chunk.shape[0], T] + [1] * m
                shape[2 + axis] = L
                viol &= (chunk[:, src, None] >= levels).reshape(shape)
            parts.append(viol)
        viol = np.concatenate(parts) if parts else np.zeros((0, T) + (L,) * m, dtype=bool)
        yield name, tuples, viol, levels, D, BD, consequent


def quantified_batch(G: CayleyTable, B: np.ndarray, d: int, kind, k=0) -> np.ndarray:
    """Boolean vector: which rows pass the fuzzy-point form of ``kind``.

    Rows of ``B`` are grades times the grid denominator ``d``; k must lie on
    the same grid.
    """
    kind = _as_kind(kind)
    k = check_k(as_fraction(k))
    _check_grid(B, d, k)
    ok = np.ones(B.shape[0], dtype=bool)
    for _, _, viol, *_ in _quantified_scan(G.array, B, d, kind, k):
        ok &= ~viol.reshape(viol.shape[0], -1).any(axis=1)
    return ok


def is_fuzzy_quantified(G: CayleyTable, F: FuzzySubset, kind, k=0, grid_denominator: int | None = None) -> Verdict:
    """Decide a kind by checking the fuzzy-point implications at every grid level.

    ``grid_denominator`` d must put every grade of F and k on {0, 1/d, ..., 1};
    it defaults to the least common denominator of both.
    """
    if F.n != G.n:
        raise InputError(f"fuzzy subset over carrier {F.n} does not match table of size {G.n}")
    kind = _as_kind(kind)
    k = check_k(as_fraction(k))
    d = grid_denominator or lcm(F.denominator(), k.denominator)
    if not F.on_grid(d):
        raise InputError(f"fuzzy grades are not on the grid of denominator {d}")
    B, _ = to_batch([F], d)
    _check_grid(B, d, k)
    for name, tuples, viol, levels, D, BD, consequent in _quantified_scan(G.array, B, d, kind, k):
        flat = viol[0].reshape(-1)
        if flat.any():
            idx = np.unravel_index(int(np.argmax(flat)), viol.shape[1:])
            ti, lv = idx[0], idx[1:]
            chosen = tuple(Fraction(int(levels[j]), D) for j in lv)
            c = int(consequent[ti])
            return Verdict(False, Violation(
                kind.value, name, tuple(int(e) for e in tuples[ti]),
                Fraction(int(BD[0, c]), D), min(chosen), chosen,
            ))
    return Verdict(True)
