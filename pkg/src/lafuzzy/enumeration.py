"""Exhaustive generation of small groupoids, grid fuzzy subsets and homomorphisms."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator

import numpy as np

from .errors import CapacityError, InputError
from .fuzzy import FuzzySubset, GroupoidHom
from .groupoid import CayleyTable, left_identities, regularity
from .limits import limit, workers as default_workers


@dataclass(frozen=True)
class EnumerationConstraints:
    order: int
    require_left_invertive: bool = True
    require_left_identity: bool = False
    require_completely_regular: bool = False
    up_to_isomorphism: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise InputError("order must be at least 1")


# --- left-invertive backtracking --------------------------------------------

def _consistent(t: list[int], n: int, a: int, b: int, v: int) -> bool:
    """Check every left-invertive instance (xy)z = (zy)x made fully defined by
    setting cell (a, b) to v. The identity is symmetric in x and z, so it
    suffices to look at the cell used as the inner product xy or as the outer
    product (xy)z on the left-hand side."""
    row_v = v * n
    # (ab)z = (zb)a
    for z in range(n):
        lhs = t[row_v + z]
        if lhs < 0:
            continue
        zb = t[z * n + b]
        if zb < 0:
            continue
        rhs = t[zb * n + a]
        if rhs >= 0 and rhs != lhs:
            return False
    # (xy)b = (by)x whenever xy = a
    bn = b * n
    for x in range(n):
        xn = x * n
        for y in range(n):
            if t[xn + y] != a:
                continue
            by = t[bn + y]
            if by < 0:
                continue
            rhs = t[by * n + x]
            if rhs >= 0 and rhs != v:
                return False
    return True


def _extend(t: list[int], n: int, start: int, check: bool) -> Iterator[tuple[int, ...]]:
    """Depth-first completion of cells ``start..n*n-1`` in row-major order."""
    cells = n * n
    if start == cells:
        yield tuple(t)
        return
    stack = [start]
    t[start] = -1
    while stack:
        idx = stack[-1]
        v = t[idx] + 1
        a, b = divmod(idx, n)
        while v < n:
            t[idx] = v
            if not check or _consistent(t, n, a, b, v):
                break
            v += 1
        if v == n:
            t[idx] = -1
            stack.pop()
            continue
        if idx + 1 == cells:
            yield tuple(t)
        else:
            stack.append(idx + 1)
            t[idx + 1] = -1


def _prefixes(n: int, check: bool) -> list[tuple[int, ...]]:
    """Consistent first rows; they partition the search tree."""
    out = []
    for row in product(range(n), repeat=n):
        t = [-1] * (n * n)
        ok = True
        for b, v in enumerate(row):
            t[b] = v
            if check and not _consistent(t, n, 0, b, v):
                ok = False
                break
        if ok:
            out.append(row)
    return out


def _complete_prefix(args) -> list[tuple[int, ...]]:
    n, row, check = args
    t = list(row) + [-1] * (n * n - n)
    return list(_extend(t, n, n, check))


def _raw_tables(n: int, check: bool, n_workers: int) -> list[tuple[int, ...]]:
    jobs = [(n, row, check) for row in _prefixes(n, check)]
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            chunks = list(pool.map(_complete_prefix, jobs))
    else:
        chunks = [_complete_prefix(j) for j in jobs]
    return [flat for chunk in chunks for flat in chunk]


@lru_cache(maxsize=None)
def _cached_raw(n: int, check: bool) -> tuple[tuple[int, ...], ...]:
    return tuple(_raw_tables(n, check, default_workers()))


def canonical_flat(flat: tuple[int, ...], n: int) -> tuple[int, ...]:
    best = None
    rng = range(n)
    for perm in permutations(rng):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        img = tuple(perm[flat[inv[r] * n + inv[c]]] for r in rng for c in rng)
        if best is None or img < best:
            best = img
    return best


def canonicalize(G: CayleyTable) -> CayleyTable:
    """Least row-major table among all relabellings of G."""
    bound = limit("LAFUZZY_MAX_CANON_ORDER")
    if G.n > bound:
        raise CapacityError(f"canonical forms limited to order {bound}, got {G.n}")
    return CayleyTable.from_flat(G.n, canonical_flat(G.flat, G.n))


def is_isomorphic(G: CayleyTable, H: CayleyTable) -> bool:
    return G.n == H.n and canonicalize(G) == canonicalize(H)


def _iso_classes(flats, n: int) -> list[tuple[int, ...]]:
    seen = set()
    for flat in flats:
        if flat in seen:
            continue
        # every relabelling of this table lies in the same class; mark them all
        rng = range(n)
        orbit = set()
        for perm in permutations(rng):
            inv = [0] * n
            for i, p in enumerate(perm):
                inv[p] = i
            orbit.add(tuple(perm[flat[inv[r] * n + inv[c]]] for r in rng for c in rng))
        seen |= orbit
        yield min(orbit)


def enumerate_groupoids(c: EnumerationConstraints, workers: int | None = None) -> Iterator[CayleyTable]:
    """Stream every table of the given order satisfying the constraints.

    Raw output is in lexicographic row-major order; with ``up_to_isomorphism``
    one canonical representative per class is emitted, in lexicographic order
    of canonical forms.
    """
    n = c.order
    cap = limit("LAFUZZY_MAX_ISO_ORDER" if c.up_to_isomorphism else "LAFUZZY_MAX_RAW_ORDER")
    if n > cap:
        raise CapacityError(f"enumeration limited to order {cap}, got {n}")
    if not c.require_left_invertive and n > 3:
        raise CapacityError("unconstrained magma enumeration is limited to order 3")
    if workers is None or workers == default_workers():
        flats = _cached_raw(n, c.require_left_invertive)
    else:
        flats = _raw_tables(n, c.require_left_invertive, workers)
    if c.up_to_isomorphism:
        flats = sorted(_iso_classes(flats, n))
    for flat in flats:
        G = CayleyTable.from_flat(n, flat)
        if c.require_left_identity and not left_identities(G).members:
            continue
        if c.require_completely_regular and not regularity(G).is_completely_regular:
            continue
        yield G


@lru_cache(maxsize=None)
def right_modular_groupoids(order: int) -> tuple[CayleyTable, ...]:
    """All left-invertive tables of an order, one per isomorphism class."""
    return tuple(enumerate_groupoids(EnumerationConstraints(order, up_to_isomorphism=True)))


@lru_cache(maxsize=None)
def all_magmas(order: int) -> tuple[CayleyTable, ...]:
    """Every groupoid of an order (no law imposed), one per isomorphism class."""
    return tuple(enumerate_groupoids(
        EnumerationConstraints(order, require_left_invertive=False, up_to_isomorphism=True)
    ))


# --- fuzzy grids ----------------------------------------------------------------

def _check_fuzzy_capacity(n: int, d: int) -> None:
    if d < 1 or n < 1:
        raise InputError("need n >= 1 and d >= 1")
    bound = limit("LAFUZZY_MAX_FUZZY")
    if (d + 1) ** n > bound:
        raise CapacityError(f"{d + 1}^{n} fuzzy subsets exceed the bound {bound}")


def fuzzy_grid(n: int, d: int) -> np.ndarray:
    """All grade vectors over {0, 1/d, ..., 1} as integer numerators, lexicographic."""
    _check_fuzzy_capacity(n, d)
    return np.indices((d + 1,) * n).reshape(n, -1).T.astype(np.int64)


def enumerate_fuzzy(n: int, d: int) -> Iterator[FuzzySubset]:
    _check_fuzzy_capacity(n, d)
    levels = [Fraction(i, d) for i in range(d + 1)]
    for combo in product(levels, repeat=n):
        yield FuzzySubset(combo)


def sample_fuzzy(n: int, d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` grade vectors drawn uniformly from the grid, as numerators."""
    if d < 1 or n < 1:
        raise InputError("need n >= 1 and d >= 1")
    return rng.integers(0, d + 1, size=(count, n), dtype=np.int64)


# --- homomorphisms --------------------------------------------------------------

def enumerate_homs(G: CayleyTable, H: CayleyTable) -> list[GroupoidHom]:
    """All homomorphisms G -> H, by backtracking over images in element order."""
    bound = limit("LAFUZZY_MAX_MAPS")
    if H.n ** G.n > bound:
        raise CapacityError(f"{H.n}^{G.n} candidate maps exceed the bound {bound}")
    s, t = G.rows, H.rows
    n = G.n
    f = [-1] * n
    out = []

    def ok(i: int) -> bool:
        # every product among 0..i whose value is also among 0..i is now decidable
        for a in range(i + 1):
            for b in range(i + 1):
                c = s[a][b]
                if c <= i and f[c] != t[f[a]][f[b]]:
                    return False
        return True

    def rec(i: int) -> None:
        if i == n:
            out.append(GroupoidHom(G, H, tuple(f)))
            return
        for y in range(H.n):
            f[i] = y
            if ok(i):
                rec(i + 1)
        f[i] = -1

    rec(0)
    return out
