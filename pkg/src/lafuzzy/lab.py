"""Executable theorem registry with counterexample search.

Each registry entry is an implication checked instance by instance over a
scope of groupoids and fuzzy subsets. Groupoid-level hypotheses (left
identity, complete or weak regularity) filter the groupoids; the remaining
hypotheses are counted per instance so that vacuous passes are visible.

Some statements are checked in two encodings. The primary one carries every
hypothesis the proof uses (for instance a left identity, which the
proofs invoke through a(bc) = b(ac) or through a = ((aa)x)(aa)); the
``.as_written`` variant keeps only what the statement says. A counterexample
to an ``.as_written`` variant is reported as ``falsified_as_written`` and does
not count as a failure of the suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Callable, Sequence

import numpy as np

from .crisp import CrispKind, is_crisp
from .enumeration import all_magmas, enumerate_homs, fuzzy_grid, right_modular_groupoids, sample_fuzzy
from .errors import CapacityError, InputError
from .fuzzy import as_fraction, check_k, convolve_batch, format_fraction, theta
from .groupoid import CayleyTable, ElementSubset, is_left_invertive, left_identities, regularity
from .ideals import FuzzyKind, Q_K_KINDS, quantified_batch, threshold_batch

GROUPOID_HYPOTHESES = ("left_invertive", "left_identity", "completely_regular", "weakly_regular")


@dataclass(frozen=True)
class Scope:
    """What a suite run covers.

    Fuzzy subsets are exhaustive on grid 1/``grid`` for groupoids of order at
    most ``exhaustive_order``; larger groupoids get ``samples`` seeded draws
    from grid 1/``sample_grid``. Pairs and triples of fuzzy subsets are capped
    at ``max_combos`` per groupoid and k (seeded subsample beyond that).
    """

    orders: tuple[int, ...] = (1, 2, 3, 4)
    grid: int = 2
    exhaustive_order: int = 3
    samples: int = 1000
    sample_grid: int = 4
    k_values: tuple[Fraction, ...] = (Fraction(0), Fraction(1, 4), Fraction(1, 2))
    seed: int = 0
    max_combos: int = 4000
    quantified_samples: int = 50
    hom_max_order: int = 3
    groupoids: tuple[CayleyTable, ...] | None = None
    include_magmas: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(check_k(as_fraction(k)) for k in self.k_values))
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.groupoids is not None:
            object.__setattr__(self, "groupoids", tuple(self.groupoids))
        for name in ("grid", "sample_grid"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be at least 1")
        if any(o < 1 for o in self.orders):
            raise InputError("orders must be positive")
        if self.samples < 0 or self.max_combos < 1 or self.quantified_samples < 0:
            raise InputError("sample budgets must be non-negative")

    def echo(self) -> dict:
        out = {
            "orders": list(self.orders),
            "grid": self.grid,
            "exhaustive_order": self.exhaustive_order,
            "samples": self.samples,
            "sample_grid": self.sample_grid,
            "k_values": [format_fraction(k) for k in self.k_values],
            "seed": self.seed,
            "max_combos": self.max_combos,
            "quantified_samples": self.quantified_samples,
            "hom_max_order": self.hom_max_order,
            "source": "magmas" if self.include_magmas else "right_modular_groupoids",
        }
        if self.groupoids is not None:
            out["groupoids"] = [G.one_based() for G in self.groupoids]
        return out


@dataclass(frozen=True)
class TheoremResult:
    id: str
    statement: str
    instances_checked: int
    hypotheses_met: int
    status: str
    witness: dict | None = None
    asserted: bool = True
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "asserted": self.asserted,
            "instances_checked": self.instances_checked,
            "hypotheses_met": self.hypotheses_met,
            "status": self.status,
            "witness": self.witness,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TheoremReport:
    config: dict
    results: tuple[TheoremResult, ...]

    @property
    def counterexamples(self) -> list[TheoremResult]:
        return [r for r in self.results if r.status == "counterexample"]

    def result(self, theorem_id: str) -> TheoremResult:
        for r in self.results:
            if r.id == theorem_id:
                return r
        raise KeyError(theorem_id)

    def to_json(self) -> str:
        doc = {
            "schema": "lafuzzy.theorem_report/1",
            "config": self.config,
            "results": [r.as_dict() for r in self.results],
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = ["config " + json.dumps(self.config, sort_keys=True), ""]
        for r in self.results:
            lines.append(f"[{r.id}] {r.status}")
            lines.append(f"  statement: {r.statement}")
            lines.append(f"  asserted: {'yes' if r.asserted else 'no'}")
            lines.append(f"  instances: {r.instances_checked}  hypotheses met: {r.hypotheses_met}")
            for note in r.notes:
                lines.append(f"  note: {note}")
            if r.witness is not None:
                lines.append("  witness: " + json.dumps(r.witness, sort_keys=True, ensure_ascii=False))
            lines.append("")
        return "\n".join(lines)


# --- per-groupoid context ------------------------------------------------------

def _fr(num: int, scale: int) -> str:
    return format_fraction(Fraction(int(num), scale))


def _grades(row: np.ndarray, scale: int) -> list[str]:
    return [_fr(v, scale) for v in row]


class GroupoidData:
    """A groupoid with its cached profile, fuzzy pool and per-kind pass vectors."""

    def __init__(self, G: CayleyTable, index: int, scope: Scope):
        self.G = G
        self.index = index
        self.scope = scope
        self._passes: dict = {}
        self._quantified: dict = {}

    @cached_property
    def profile(self):
        return regularity(self.G)

    @cached_property
    def left_identity_count(self) -> int:
        return len(left_identities(self.G))

    @cached_property
    def left_invertive(self) -> bool:
        return is_left_invertive(self.G)

    def satisfies(self, hyp: str) -> bool:
        if hyp == "left_invertive":
            return self.left_invertive
        if hyp == "left_identity":
            return self.left_identity_count > 0
        if hyp == "completely_regular":
            return self.profile.is_completely_regular
        if hyp == "weakly_regular":
            return self.profile.is_weakly_regular
        raise InputError(f"unknown groupoid hypothesis {hyp!r}")

    @property
    def exhaustive(self) -> bool:
        return self.G.n <= self.scope.exhaustive_order

    @cached_property
    def pool(self) -> tuple[np.ndarray, int]:
        """Integer grade matrix and its denominator."""
        n, s = self.G.n, self.scope
        if self.exhaustive:
            return fuzzy_grid(n, s.grid), s.grid
        rng = np.random.default_rng([s.seed, n, self.index])
        return sample_fuzzy(n, s.sample_grid, s.samples, rng), s.sample_grid

    def rng(self, *tag: int) -> np.random.Generator:
        return np.random.default_rng([self.scope.seed, self.G.n, self.index, *tag])

    def passes(self, kind: FuzzyKind, k: Fraction) -> np.ndarray:
        key = (kind, k)
        if key not in self._passes:
            B, scale = self.pool
            self._passes[key] = threshold_batch(self.G, B, scale, kind, k)
        return self._passes[key]

    def quantified_rows(self) -> np.ndarray:
        B, _ = self.pool
        if self.exhaustive:
            return np.arange(B.shape[0])
        return np.arange(min(B.shape[0], self.scope.quantified_samples))

    def quantified(self, kind: FuzzyKind, k: Fraction) -> np.ndarray:
        key = (kind, k)
        if key not in self._quantified:
            B, scale = self.pool
            d = lcm(scale, k.denominator)
            rows = B[self.quantified_rows()] * (d // scale)
            self._quantified[key] = quantified_batch(self.G, rows, d, kind, k)
        return self._quantified[key]

    @cached_property
    def crisp(self) -> dict[CrispKind, np.ndarray]:
        """Per crisp kind, a boolean over bitmasks 1..2^n-1 (index = mask)."""
        n = self.G.n
        out = {}
        for kind in CrispKind:
            ok = np.zeros(1 << n, dtype=bool)
            for mask in range(1, 1 << n):
                ok[mask] = is_crisp(self.G, ElementSubset.from_mask(n, mask), kind).holds
            out[kind] = ok
        return out

    def witness(self, **extra) -> dict:
        w = {"groupoid": self.G.one_based()}
        w.update(extra)
        return w

    def fuzzy_witness(self, k: Fraction | None, named_rows: dict, **extra) -> dict:
        B, scale = self.pool
        fuzzy = {name: _grades(B[i], scale) for name, i in named_rows.items()}
        w = self.witness(fuzzy=fuzzy, **extra)
        if k is not None:
            w["k"] = format_fraction(k)
        return w


class Lab:
    def __init__(self, scope: Scope):
        self.scope = scope

    @cached_property
    def data(self) -> list[GroupoidData]:
        s = self.scope
        if s.groupoids is not None:
            tables = list(s.groupoids)
        else:
            source = all_magmas if s.include_magmas else right_modular_groupoids
            tables = [G for order in s.orders for G in source(order)]
        counts: dict[int, int] = {}
        out = []
        for G in tables:
            i = counts.get(G.n, 0)
            counts[G.n] = i + 1
            out.append(GroupoidData(G, i, s))
        return out

    def groupoids(self, hyps: frozenset[str]) -> list[GroupoidData]:
        return [g for g in self.data if all(g.satisfies(h) for h in hyps)]


# --- tallies -------------------------------------------------------------------

@dataclass
class Tally:
    instances: int = 0
    met: int = 0
    witness: dict | None = None

    def add(self, instances: int, met: int, witness: Callable[[], dict] | None = None) -> None:
        self.instances += instances
        self.met += met
        if witness is not None and self.witness is None:
            self.witness = witness()

    def implication(self, hyp: np.ndarray, concl: np.ndarray, witness: Callable[[int], dict],
                    instances: int | None = None) -> None:
        """Count a vector of instances; remember the first with hyp and not concl."""
        bad = hyp & ~concl
        first = int(np.argmax(bad)) if bad.any() else None
        self.add(
            len(hyp) if instances is None else instances,
            int(hyp.sum()),
            (lambda: witness(first)) if first is not None else None,
        )


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    hypotheses: frozenset[str]
    run: Callable[[Lab, frozenset[str]], Tally]
    asserted: bool = True
    notes: tuple[str, ...] = ()


REGISTRY: dict[str, Theorem] = {}


def _register(id, statement, hypotheses, run, asserted=True, notes=()):
    REGISTRY[id] = Theorem(id, statement, frozenset(hypotheses), run, asserted, tuple(notes))


K0 = Fraction(0)
K = FuzzyKind


def _combos(g: GroupoidData, pools: Sequence[np.ndarray], tag: int) -> np.ndarray:
    """Index tuples drawn from the given index pools; all of them if within the cap,
    otherwise a seeded sample without replacement, kept in lexicographic order."""
    sizes = [len(p) for p in pools]
    total = int(np.prod(sizes)) if sizes else 0
    if total == 0:
        return np.zeros((0, len(pools)), dtype=np.int64)
    cap = g.scope.max_combos
    if total <= cap:
        flat = np.arange(total)
    else:
        flat = np.sort(g.rng(tag).choice(total, size=cap, replace=False))
    idx = np.stack(np.unravel_index(flat, sizes), axis=1)
    return np.stack([pools[j][idx[:, j]] for j in range(len(pools))], axis=1)


# --- T1, T2, T11: quantified vs threshold ------------------------------------------

def _agreement(kinds, ks, direction):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            rows = g.quantified_rows()
            for k in ks(lab):
                for kind in kinds:
                    quant = g.quantified(kind, k)
                    thr = g.passes(kind, k)[rows]
                    hyp, concl = (quant, thr) if direction == "fwd" else (thr, quant)
                    tally.implication(hyp, concl, lambda i, kind=kind, k=k: g.fuzzy_witness(
                        k, {"F": rows[i]}, kind=kind.value,
                        detail=f"quantified={bool(quant[i])} threshold={bool(thr[i])}"))
        return tally
    return run


_k0 = lambda lab: (K0,)  # noqa: E731
_kall = lambda lab: lab.scope.k_values  # noqa: E731

_register("T1.fwd", "interior ideals: the fuzzy-point conditions imply the threshold inequalities",
          (), _agreement([K.INTERIOR], _k0, "fwd"))
_register("T1.bwd", "interior ideals: the threshold inequalities imply the fuzzy-point conditions",
          (), _agreement([K.INTERIOR], _k0, "bwd"))
_register("T2.fwd", "bi-ideals: the fuzzy-point conditions imply the threshold inequalities",
          (), _agreement([K.BI], _k0, "fwd"))
_register("T2.bwd", "bi-ideals: the threshold inequalities imply the fuzzy-point conditions",
          (), _agreement([K.BI], _k0, "bwd"))


# --- T3, T4, T7, T8: implications between classes at k = 0 ------------------------

def _class_implication(hyp_kind: FuzzyKind, concl_kind: FuzzyKind, ks=_k0):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            for k in ks(lab):
                tally.implication(g.passes(hyp_kind, k), g.passes(concl_kind, k),
                                  lambda i, k=k: g.fuzzy_witness(k, {"F": i}))
        return tally
    return run


_register("T3", "with left identity, every (∈,∈∨q)-fuzzy bi-ideal is an (∈,∈∨q)-fuzzy (1,2)-ideal",
          ("left_identity",), _class_implication(K.BI, K.ONE_TWO))
_register("T4", "with left identity, every (∈,∈∨q)-fuzzy interior ideal is an (∈,∈∨q)-fuzzy (1,2)-ideal",
          ("left_identity",), _class_implication(K.INTERIOR, K.ONE_TWO))


# --- T5: homomorphisms ---------------------------------------------------------------

def _hom_pairs(lab: Lab, hyps):
    small = [g for g in lab.groupoids(hyps) if g.G.n <= lab.scope.hom_max_order]
    for src in small:
        for dst in small:
            for phi in enumerate_homs(src.G, dst.G):
                yield src, dst, phi


def _t5_preimage(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for src, dst, phi in _hom_pairs(lab, hyps):
        B, scale = dst.pool
        pre = B[:, list(phi.mapping)]
        ok = threshold_batch(src.G, pre, scale, K.INTERIOR, K0)
        tally.implication(dst.passes(K.INTERIOR, K0), ok, lambda i: {
            "source": src.G.one_based(), "target": dst.G.one_based(),
            "map": [y + 1 for y in phi.mapping], "fuzzy": {"G": _grades(B[i], scale)}, "k": "0",
        })
    return tally


def _t5_image(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for src, dst, phi in _hom_pairs(lab, hyps):
        B, scale = src.pool
        hyp = src.passes(K.INTERIOR, K0)
        if not phi.is_onto:
            tally.add(B.shape[0], 0)
            continue
        img = np.zeros((B.shape[0], dst.G.n), dtype=np.int64)
        for x, y in enumerate(phi.mapping):
            img[:, y] = np.maximum(img[:, y], B[:, x])
        ok = threshold_batch(dst.G, img, scale, K.INTERIOR, K0)
        tally.implication(hyp, ok, lambda i: {
            "source": src.G.one_based(), "target": dst.G.one_based(),
            "map": [y + 1 for y in phi.mapping], "fuzzy": {"F": _grades(B[i], scale)}, "k": "0",
        })
    return tally


_register("T5.preimage", "the preimage of an (∈,∈∨q)-fuzzy interior ideal under a homomorphism is one",
          (), _t5_preimage)
_register("T5.image", "the image of an (∈,∈∨q)-fuzzy interior ideal under an onto homomorphism is one",
          (), _t5_image, notes=("sup over a fibre is attained on finite carriers",))


# --- T6, P1, P3: groupoid-level statements ---------------------------------------------

def _groupoid_implication(hyp_fn, concl_fn, detail=None):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            h = bool(hyp_fn(g))
            c = bool(concl_fn(g))
            tally.add(1, int(h), (lambda: g.witness(**(detail(g) if detail else {})))
                      if h and not c else None)
        return tally
    return run


def _profile_detail(g):
    return {"profile": g.profile.flags(), "left_identities": g.left_identity_count}


_cr = lambda g: g.profile.is_completely_regular  # noqa: E731
_char = lambda g: g.profile.char_a2Ma2  # noqa: E731
_lr = lambda g: g.profile.is_left_regular  # noqa: E731
_rr = lambda g: g.profile.is_right_regular  # noqa: E731
_wr = lambda g: g.profile.is_weakly_regular  # noqa: E731

_register("T6.fwd", "with left identity, completely regular implies a ∈ (a²M)a² for all a",
          ("left_identity",), _groupoid_implication(_cr, _char, _profile_detail))
_register("T6.bwd", "with left identity, a ∈ (a²M)a² for all a implies completely regular",
          ("left_identity",), _groupoid_implication(_char, _cr, _profile_detail))


# --- T7 .. T10 -------------------------------------------------------------------------

_register("T7", "completely regular with left identity: every (∈,∈∨q)-fuzzy (1,2)-ideal is a bi-ideal",
          ("completely_regular", "left_identity"), _class_implication(K.ONE_TWO, K.BI),
          notes=("left identity added: the proof uses it",))
_register("T7.as_written", "completely regular: every (∈,∈∨q)-fuzzy (1,2)-ideal is a bi-ideal",
          ("completely_regular",), _class_implication(K.ONE_TWO, K.BI), asserted=False)
_register("T8", "completely regular with left identity: every (∈,∈∨q)-fuzzy (1,2)-ideal is an interior ideal",
          ("completely_regular", "left_identity"), _class_implication(K.ONE_TWO, K.INTERIOR),
          notes=("left identity added: the proof uses it",))
_register("T8.as_written", "completely regular: every (∈,∈∨q)-fuzzy (1,2)-ideal is an interior ideal",
          ("completely_regular",), _class_implication(K.ONE_TWO, K.INTERIOR), asserted=False)


def _square_invariance(kind: FuzzyKind, boundary: bool):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            B, scale = g.pool
            n = g.G.n
            top = B.max(axis=1)
            # grades are numerators over scale, so 2*top vs scale compares against 1/2
            grades_ok = (2 * top == scale) if boundary else (2 * top < scale)
            squares = [g.G.rows[a][a] for a in range(n)]
            concl = (B == B[:, squares]).all(axis=1)
            hyp = g.passes(kind, K0) & grades_ok
            tally.implication(hyp, concl, lambda i: g.fuzzy_witness(K0, {"F": i}))
        return tally
    return run


_T9_NOTE = "reads 'F(a) < 0.5 for all x' as F(a) < 1/2 for every element a"
_register("T9", "completely regular with left identity, F an (∈,∈∨q)-fuzzy bi-ideal with all grades < 1/2: F(a) = F(a²)",
          ("completely_regular", "left_identity"), _square_invariance(K.BI, False),
          notes=(_T9_NOTE, "left identity added: the proof uses a = ((aa)x)(aa)"))
_register("T9.as_written", "completely regular, F an (∈,∈∨q)-fuzzy bi-ideal with all grades < 1/2: F(a) = F(a²)",
          ("completely_regular",), _square_invariance(K.BI, False), asserted=False, notes=(_T9_NOTE,))
_register("T9.boundary", "as T9 but with largest grade exactly 1/2 (outside the hypothesis)",
          ("completely_regular", "left_identity"), _square_invariance(K.BI, True), asserted=False)
_register("T10", "completely regular with left identity, F an (∈,∈∨q)-fuzzy interior ideal with all grades < 1/2: F(a) = F(a²)",
          ("completely_regular", "left_identity"), _square_invariance(K.INTERIOR, False),
          notes=(_T9_NOTE, "left identity added: the proof uses it"))
_register("T10.as_written", "completely regular, F an (∈,∈∨q)-fuzzy interior ideal with all grades < 1/2: F(a) = F(a²)",
          ("completely_regular",), _square_invariance(K.INTERIOR, False), asserted=False, notes=(_T9_NOTE,))
_register("T10.boundary", "as T10 but with largest grade exactly 1/2 (outside the hypothesis)",
          ("completely_regular", "left_identity"), _square_invariance(K.INTERIOR, True), asserted=False)


# --- T11 ----------------------------------------------------------------------------

_register("T11.fwd", "for every (∈,∈∨q_k) kind and k: the fuzzy-point form implies the (1-k)/2 threshold form",
          (), _agreement(Q_K_KINDS, _kall, "fwd"))
_register("T11.bwd", "for every (∈,∈∨q_k) kind and k: the (1-k)/2 threshold form implies the fuzzy-point form",
          (), _agreement(Q_K_KINDS, _kall, "bwd"))


# --- T12: coincidences -----------------------------------------------------------------

_CR_E = ("completely_regular", "left_identity")
_T12_PAIRS = (
    (K.LEFT, K.RIGHT),
    (K.TWO_SIDED, K.INTERIOR),
    (K.GENERALIZED_BI, K.BI),
    (K.BI, K.TWO_SIDED),
    (K.QUASI, K.TWO_SIDED),
)
for _a, _b in _T12_PAIRS:
    for _h, _c in ((_a, _b), (_b, _a)):
        _register(f"T12.{_h.value}=>{_c.value}",
                  f"completely regular with left identity: every (∈,∈∨q_k)-fuzzy {_h.value} ideal is a {_c.value} ideal",
                  _CR_E, _class_implication(_h, _c, _kall))

_REMARK_KINDS = (K.LEFT, K.RIGHT, K.TWO_SIDED, K.INTERIOR, K.BI, K.GENERALIZED_BI, K.QUASI)


def _remark(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for g in lab.groupoids(hyps):
        for k in lab.scope.k_values:
            stack = np.stack([g.passes(kind, k) for kind in _REMARK_KINDS])
            tally.implication(stack.any(axis=0), stack.all(axis=0), lambda i, k=k, stack=stack: g.fuzzy_witness(
                k, {"F": i}, passes={kind.value: bool(stack[j, i]) for j, kind in enumerate(_REMARK_KINDS)}))
    return tally


_register("T12.remark", "completely regular with left identity: left, right, two-sided, interior, bi, "
          "generalized bi and quasi (∈,∈∨q_k)-fuzzy ideals coincide", _CR_E, _remark)


# --- T13 .. T15: products ----------------------------------------------------------------

def _kcap(k: Fraction, scale: int) -> tuple[int, int]:
    s = lcm(scale, theta(k).denominator)
    return s, (theta(k) * s).numerator


def _t13(direction: str):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            B, scale = g.pool
            t = g.G.array
            for ki, k in enumerate(lab.scope.k_values):
                pairs = _combos(g, [np.flatnonzero(g.passes(K.RIGHT, k)),
                                    np.flatnonzero(g.passes(K.LEFT, k))], 13 * 10 + ki)
                s, cap = _kcap(k, scale)
                F = B[pairs[:, 0]] * (s // scale)
                H = B[pairs[:, 1]] * (s // scale)
                meet_k = np.minimum(np.minimum(F, H), cap)
                conv_k = np.minimum(convolve_batch(t, F, H), cap)
                if direction == "meet<=conv":
                    ok = (meet_k <= conv_k).all(axis=1)
                elif direction == "conv<=meet":
                    ok = (conv_k <= meet_k).all(axis=1)
                else:
                    ok = (meet_k == conv_k).all(axis=1)
                tally.implication(np.ones(len(pairs), dtype=bool), ok, lambda i, k=k, pairs=pairs: g.fuzzy_witness(
                    k, {"F": pairs[i, 0], "G": pairs[i, 1]}))
        return tally
    return run


_T13_NOTE = "F ranges over right-ideal passers and G over left-ideal passers, as in the proof"
_register("T13.meet<=conv", "completely regular with left identity: F∧_kG ≤ F∘_kG",
          _CR_E, _t13("meet<=conv"), notes=(_T13_NOTE, "left identity added: the proof uses a = ((aa)x)(aa)"))
_register("T13.conv<=meet", "completely regular with left identity: F∘_kG ≤ F∧_kG",
          _CR_E, _t13("conv<=meet"), notes=(_T13_NOTE,))
_register("T13.as_written", "completely regular: F∧_kG = F∘_kG",
          ("completely_regular",), _t13("eq"), asserted=False, notes=(_T13_NOTE,))


def _t14(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for g in lab.groupoids(hyps):
        B, scale = g.pool
        t = g.G.array
        for ki, k in enumerate(lab.scope.k_values):
            triples = _combos(g, [np.flatnonzero(g.passes(K.RIGHT, k)),
                                  np.flatnonzero(g.passes(K.INTERIOR, k)),
                                  np.flatnonzero(g.passes(K.LEFT, k))], 14 * 10 + ki)
            s, cap = _kcap(k, scale)
            Gr, Fi, Hl = (B[triples[:, j]] * (s // scale) for j in range(3))
            lhs = np.minimum(np.minimum(np.minimum(np.minimum(Gr, Fi), cap), Hl), cap)
            inner = np.minimum(convolve_batch(t, Gr, Fi), cap)
            rhs = np.minimum(convolve_batch(t, inner, Hl), cap)
            ok = (lhs <= rhs).all(axis=1)
            tally.implication(np.ones(len(triples), dtype=bool), ok, lambda i, k=k, tr=triples: g.fuzzy_witness(
                k, {"G": tr[i, 0], "F": tr[i, 1], "H": tr[i, 2]}))
    return tally


def _t15(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for g in lab.groupoids(hyps):
        B, scale = g.pool
        t = g.G.array
        for k in lab.scope.k_values:
            s, cap = _kcap(k, scale)
            F = B * (s // scale)
            ones = np.full_like(F, s)
            lhs = np.minimum(F, cap)
            inner = np.minimum(convolve_batch(t, F, ones), cap)
            rhs = np.minimum(convolve_batch(t, inner, F), cap)
            tally.implication(g.passes(K.INTERIOR, k), (lhs <= rhs).all(axis=1),
                              lambda i, k=k: g.fuzzy_witness(k, {"F": i}))
    return tally


_WR_E = ("weakly_regular", "left_identity")
_register("T14", "weakly regular with left identity: (G∧_kF)∧_kH ≤ (G∘_kF)∘_kH for G right, F interior, H left",
          _WR_E, _t14)
_register("T15", "weakly regular with left identity: F_k ≤ (F∘_k1)∘_kF for F interior", _WR_E, _t15)


# --- L1 .. L3: level sets and intersections -------------------------------------------

def _level_sets_ok(g: GroupoidData, B: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """For each row, whether every non-empty level set U(F;t), t in its row of
    ``thresholds`` (0 entries skipped), is a crisp interior ideal."""
    n = g.G.n
    weights = 1 << np.arange(n)
    interior = g.crisp[CrispKind.INTERIOR]
    ok = np.ones(B.shape[0], dtype=bool)
    for j in range(thresholds.shape[1]):
        thr = thresholds[:, j]
        masks = ((B >= thr[:, None]) * weights).sum(axis=1)
        active = (thr > 0) & (masks > 0)
        ok &= ~active | interior[masks]
    return ok


def _l1(direction: str):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            B, _ = g.pool
            fuzzy = g.passes(K.CLASSIC_INTERIOR, K0)
            crisp = _level_sets_ok(g, B, B)
            hyp, concl = (fuzzy, crisp) if direction == "fwd" else (crisp, fuzzy)
            tally.implication(hyp, concl, lambda i: g.fuzzy_witness(None, {"F": i}))
        return tally
    return run


def _l2(direction: str):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            B, scale = g.pool
            s = lcm(scale, 2)
            Bs = B * (s // scale)
            # levels: grades of F up to 1/2, grid points up to 1/2, and 1/2 itself
            grid_pts = [j * (s // scale) for j in range(1, scale + 1) if 2 * j <= scale] + [s // 2]
            grades = np.where(2 * Bs <= s, Bs, 0)
            extra = np.tile(np.array(grid_pts, dtype=np.int64), (Bs.shape[0], 1))
            crisp = _level_sets_ok(g, Bs, np.concatenate([grades, extra], axis=1))
            fuzzy = g.passes(K.INTERIOR, K0)
            hyp, concl = (fuzzy, crisp) if direction == "fwd" else (crisp, fuzzy)
            tally.implication(hyp, concl, lambda i: g.fuzzy_witness(K0, {"F": i}))
        return tally
    return run


_register("L1.fwd", "a fuzzy interior ideal has every non-empty level set an interior ideal", (), _l1("fwd"))
_register("L1.bwd", "if every non-empty level set is an interior ideal, F is a fuzzy interior ideal", (), _l1("bwd"))
_register("L2.fwd", "an (∈,∈∨q)-fuzzy interior ideal has every non-empty U(F;t), t ∈ (0,1/2], an interior ideal",
          (), _l2("fwd"))
_register("L2.bwd", "if every non-empty U(F;t), t ∈ (0,1/2], is an interior ideal, F is an (∈,∈∨q)-fuzzy interior ideal",
          (), _l2("bwd"), notes=("levels quantified independently in the converse",))


def _l3_pairs(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for g in lab.groupoids(hyps):
        B, scale = g.pool
        for ki, k in enumerate(lab.scope.k_values):
            idx = np.flatnonzero(g.passes(K.INTERIOR, k))
            pairs = _combos(g, [idx, idx], 30 + ki)
            meets = np.minimum(B[pairs[:, 0]], B[pairs[:, 1]])
            ok = threshold_batch(g.G, meets, scale, K.INTERIOR, k)
            tally.implication(np.ones(len(pairs), dtype=bool), ok, lambda i, k=k, pairs=pairs: g.fuzzy_witness(
                k, {"F1": pairs[i, 0], "F2": pairs[i, 1]}))
    return tally


def _l3_family(lab: Lab, hyps) -> Tally:
    tally = Tally()
    for g in lab.groupoids(hyps):
        B, scale = g.pool
        for k in lab.scope.k_values:
            idx = np.flatnonzero(g.passes(K.INTERIOR, k))
            if not len(idx):
                tally.add(1, 0)
                continue
            meet = B[idx].min(axis=0, keepdims=True)
            ok = bool(threshold_batch(g.G, meet, scale, K.INTERIOR, k)[0])
            tally.add(1, 1, None if ok else (lambda k=k, meet=meet: g.witness(
                k=format_fraction(k), meet=_grades(meet[0], scale), family_size=int(len(idx)))))
    return tally


_register("L3.pairs", "the meet of two (∈,∈∨q_k)-fuzzy interior ideals is one", (), _l3_pairs)
_register("L3.family", "the meet of all (∈,∈∨q_k)-fuzzy interior ideals in the pool is one", (), _l3_family)


_register("P1", "a right modular groupoid has at most one left identity", ("left_invertive",),
          _groupoid_implication(lambda g: True, lambda g: g.left_identity_count <= 1, _profile_detail))


def _crisp_implication(hyp_kind: CrispKind, concl_kind: CrispKind):
    def run(lab: Lab, hyps) -> Tally:
        tally = Tally()
        for g in lab.groupoids(hyps):
            c = g.crisp
            hyp, concl = c[hyp_kind][1:], c[concl_kind][1:]
            tally.implication(hyp, concl, lambda i: g.witness(
                subset=[m + 1 for m in ElementSubset.from_mask(g.G.n, i + 1).sorted()]))
        return tally
    return run


_register("P2.left=>quasi", "every left ideal is a quasi-ideal", (),
          _crisp_implication(CrispKind.LEFT, CrispKind.QUASI))
_register("P2.right=>quasi", "every right ideal is a quasi-ideal", (),
          _crisp_implication(CrispKind.RIGHT, CrispKind.QUASI))
_register("P2.bi=>generalized_bi", "every bi-ideal is a generalized bi-ideal", (),
          _crisp_implication(CrispKind.BI, CrispKind.GENERALIZED_BI))
_register("P2.two_sided=>interior", "every two-sided ideal is an interior ideal", (),
          _crisp_implication(CrispKind.TWO_SIDED, CrispKind.INTERIOR))

for _name, _h, _c in (
    ("left=>right", _lr, _rr), ("right=>weak", _rr, _wr), ("weak=>left", _wr, _lr),
    ("right=>left", _rr, _lr), ("left=>weak", _lr, _wr), ("weak=>right", _wr, _rr),
):
    _register(f"P3.{_name}", f"with left identity: {_name.replace('=>', ' regular implies ')} regular",
              ("left_identity",), _groupoid_implication(_h, _c, _profile_detail))

_register("X1.quasi=>bi", "probe: is every crisp quasi-ideal a bi-ideal?", (),
          _crisp_implication(CrispKind.QUASI, CrispKind.BI), asserted=False,
          notes=("the implication chain after quasi-ideals is incomplete in the source; reported, not asserted",))


# --- entry points -------------------------------------------------------------------------

def _status(tally: Tally, asserted: bool) -> str:
    if tally.witness is not None:
        return "counterexample" if asserted else "falsified_as_written"
    if tally.met == 0:
        return "vacuous"
    return "passed"


def _result(th: Theorem, tally: Tally, hyps: frozenset[str] | None = None, asserted: bool | None = None) -> TheoremResult:
    asserted = th.asserted if asserted is None else asserted
    notes = th.notes
    if hyps is not None and hyps != th.hypotheses:
        notes = notes + ("groupoid hypotheses: " + ", ".join(sorted(hyps)) if hyps else "groupoid hypotheses: none",)
    return TheoremResult(th.id, th.statement, tally.instances, tally.met,
                         _status(tally, asserted), tally.witness, asserted, notes)


def theorem_ids() -> list[str]:
    return list(REGISTRY)


def _lookup(theorem_id: str) -> Theorem:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise InputError(f"unknown theorem id {theorem_id!r}") from None


def _base_hyps(th: Theorem, scope: Scope) -> frozenset[str]:
    # the default source is already left-invertive; magma sources need the filter
    if scope.include_magmas:
        return th.hypotheses | {"left_invertive"}
    return th.hypotheses


def verify_theorem(theorem_id: str, scope: Scope, lab: Lab | None = None) -> TheoremResult:
    th = _lookup(theorem_id)
    lab = lab or Lab(scope)
    return _result(th, th.run(lab, _base_hyps(th, scope)))


def run_suite(scope: Scope, ids: Sequence[str] | None = None) -> TheoremReport:
    for order in scope.orders:
        if scope.groupoids is None and order > 5:
            raise CapacityError(f"suite orders are limited to 5, got {order}")
    lab = Lab(scope)
    chosen = list(REGISTRY) if ids is None else [_lookup(i).id for i in ids]
    results = tuple(verify_theorem(i, scope, lab) for i in chosen)
    return TheoremReport(scope.echo(), results)


def search_counterexamples(theorem_id: str, max_order: int, drop: Sequence[str] = (),
                           add: Sequence[str] = (), grid: int = 2,
                           k_values=(Fraction(0), Fraction(1, 2)), seed: int = 0,
                           max_combos: int = 4000) -> TheoremResult:
    """Exhaustive search for a counterexample with hypotheses weakened or strengthened.

    Groupoid hypotheses are named as in ``GROUPOID_HYPOTHESES``. Dropping
    ``left_invertive`` widens the search to every groupoid (order 3 at most).
    """
    th = _lookup(theorem_id)
    for h in (*drop, *add):
        if h not in GROUPOID_HYPOTHESES:
            raise InputError(f"unknown hypothesis {h!r}; expected one of {', '.join(GROUPOID_HYPOTHESES)}")
    if max_order < 1:
        raise InputError("max_order must be at least 1")
    magmas = "left_invertive" in drop
    if magmas and max_order > 3:
        raise CapacityError("searches over arbitrary groupoids are limited to order 3")
    scope = Scope(orders=tuple(range(1, max_order + 1)), grid=grid, exhaustive_order=max_order,
                  k_values=tuple(k_values), seed=seed, max_combos=max_combos,
                  hom_max_order=min(max_order, 3), include_magmas=magmas)
    hyps = (th.hypotheses | {"left_invertive"} | set(add)) - set(drop)
    tally = th.run(Lab(scope), frozenset(hyps))
    return _result(th, tally, frozenset(hyps), asserted=True)
