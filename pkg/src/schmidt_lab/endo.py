"""Brute-force End(G): enumeration, composition table and the derived sets.

Index ``comp[s, t]`` is the endomorphism "apply ``s``, then ``t``", written
``st`` throughout (maps act on the right).
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .groups import (
    CapExceededError,
    Group,
    Subgroup,
    generating_sequence,
    inner_automorphism,
    is_normal,
)
from .semigroup import FiniteSemigroup

DEFAULT_END_CAP = 60


def end_cap() -> int:
    return int(os.environ.get("SCHMIDT_LAB_MAX_ORDER", DEFAULT_END_CAP))


@dataclass(frozen=True, eq=False)
class Endomorphism:
    group: Group
    map: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.map[g]

    def image(self) -> Subgroup:
        return Subgroup(self.group, set(self.map))

    def kernel(self) -> Subgroup:
        e = self.group.identity
        return Subgroup(self.group, [g for g, h in enumerate(self.map) if h == e])

    def is_bijective(self) -> bool:
        return len(set(self.map)) == len(self.map)


class EndoMonoid:
    """End(G) with maps in lexicographic order and the composition table."""

    def __init__(self, group: Group, maps: np.ndarray):
        self.group = group
        self.maps = np.ascontiguousarray(maps, dtype=np.int32)
        self.maps.setflags(write=False)
        comp = _kernels.compose_table(self.maps)
        if (comp < 0).any():
            raise ValueError("map list is not closed under composition")
        comp.setflags(write=False)
        self.comp = comp
        n = group.order
        self.is_auto = np.array([len(set(m)) == n for m in self.maps.tolist()])
        self.is_idem = comp[np.arange(len(self)), np.arange(len(self))] == np.arange(len(self))
        self.identity_index = self.index_of(range(n))
        self.zero_index = self.index_of([group.identity] * n)

    def __len__(self):
        return self.maps.shape[0]

    def __repr__(self):
        return f"<EndoMonoid of {self.group!r}: {len(self)} elements, {int(self.is_auto.sum())} automorphisms>"

    @cached_property
    def _lookup(self) -> dict[bytes, int]:
        return {row.tobytes(): i for i, row in enumerate(self.maps)}

    def index_of(self, mapping) -> int:
        key = np.asarray(list(mapping), dtype=np.int32).tobytes()
        try:
            return self._lookup[key]
        except KeyError:
            raise KeyError("not an endomorphism in this monoid") from None

    def elem(self, i: int) -> Endomorphism:
        return Endomorphism(self.group, tuple(self.maps[i].tolist()))

    def mul(self, s: int, t: int) -> int:
        return int(self.comp[s, t])

    def power(self, s: int, k: int) -> int:
        """s^k for k >= 1."""
        r = s
        for _ in range(k - 1):
            r = int(self.comp[r, s])
        return r

    @property
    def automorphisms(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.is_auto)]

    @property
    def proper(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.is_auto)]

    def semigroup(self, indices=None) -> FiniteSemigroup:
        """The (sub)semigroup on ``indices`` (all by default), relabelled 0..k-1."""
        if indices is None:
            return FiniteSemigroup(self.comp)
        idx = list(indices)
        pos = {g: i for i, g in enumerate(idx)}
        sub = [[pos[int(self.comp[a, b])] for b in idx] for a in idx]
        return FiniteSemigroup(np.array(sub, dtype=np.int32).reshape(len(idx), len(idx)))

    def subgroup_group(self, indices) -> Group:
        """A set of automorphisms closed under composition, as an abstract group."""
        idx = sorted(indices)
        pos = {g: i for i, g in enumerate(idx)}
        t = [[pos[int(self.comp[a, b])] for b in idx] for a in idx]
        return Group(np.array(t, dtype=np.int32), pos[self.identity_index])

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "group_order": self.group.order,
            "maps": self.maps.tolist(),
            "comp": self.comp.tolist(),
            "is_auto": [bool(x) for x in self.is_auto],
            "is_idem": [bool(x) for x in self.is_idem],
            "zero_index": self.zero_index,
            "identity_index": self.identity_index,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _search_branch(table, identity, gens, cands, first):
    """All homomorphisms with ``gens[0] -> first``."""
    src = _kernels.as_table(table)
    n = len(table)
    zeros = _kernels.as_vector([0] * n)
    out = []

    def rec(level, phi, used):
        if level == len(gens):
            out.append(tuple(int(x) for x in phi))
            return
        g = gens[level]
        options = [first] if level == 0 else cands[level]
        for h in options:
            p2, u2 = phi.copy(), used.copy()
            p2[g] = h
            if _kernels.closure_extend(src, src, p2, u2, gens[: level + 1], zeros, zeros, False) >= 0:
                rec(level + 1, p2, u2)

    phi = _kernels.new_map(n)
    phi[identity] = identity
    rec(0, phi, _kernels.new_map(n))
    return out


def enumerate_end(G: Group, cap: int | None = None, jobs: int = 1) -> EndoMonoid:
    """All endomorphisms of ``G`` by backtracking over generator images.

    A generator of order ``k`` may only go to an element whose order divides
    ``k``; each partial assignment is propagated over the subgroup generated
    so far and dropped on the first inconsistency.  With ``jobs > 1`` the
    branches for the first generator run in worker processes; the result is
    sorted, so it does not depend on ``jobs``.
    """
    cap = end_cap() if cap is None else cap
    if G.order > cap:
        raise CapExceededError(f"End enumeration capped at order {cap}, got {G.order}")
    if G.order == 1:
        return EndoMonoid(G, np.zeros((1, 1), dtype=np.int32))
    gens = generating_sequence(G)
    orders = G.element_orders
    cands = [[h for h in G.elements() if orders[g] % orders[h] == 0] for g in gens]
    table = G.table.tolist()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_search_branch, *zip(*[(table, G.identity, gens, cands, h) for h in cands[0]]))
            found = [m for part in parts for m in part]
    else:
        found = [m for h in cands[0] for m in _search_branch(table, G.identity, gens, cands, h)]
    found.sort()
    return EndoMonoid(G, np.array(found, dtype=np.int32))


def all_maps_scan(G: Group, chunk: int = 1 << 20) -> np.ndarray:
    """Every homomorphism G -> G found by testing all n^n maps (oracle, n <= 8).

    Maps are generated in chunks and filtered pair by pair with numpy.
    """
    n = G.order
    if n > 8:
        raise CapExceededError("the all-maps scan is limited to order 8")
    t = G.table.astype(np.int64)
    pairs = [(a, b) for a in range(n) for b in range(n)]
    total = n ** n
    kept = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        # column i = image of element i
        cols = np.stack([(codes // n ** i) % n for i in range(n)], axis=1)
        for a, b in pairs:
            ok = cols[:, t[a, b]] == t[cols[:, a], cols[:, b]]
            cols = cols[ok]
            if not len(cols):
                break
        kept.append(cols)
    out = np.concatenate(kept) if kept else np.empty((0, n), dtype=np.int64)
    order = np.lexsort(out.T[::-1])
    return out[order].astype(np.int32)


def idempotents_I0(M: EndoMonoid) -> list[int]:
    """Idempotents other than the zero map and the identity."""
    return [int(i) for i in np.flatnonzero(M.is_idem) if i not in (M.zero_index, M.identity_index)]


def bracket_class(M: EndoMonoid, x: int) -> list[int]:
    """[x] = idempotents y with xy = y and yx = x."""
    if not M.is_idem[x]:
        raise ValueError(f"element {x} is not idempotent")
    c = M.comp
    return [int(y) for y in np.flatnonzero(M.is_idem) if c[x, y] == y and c[y, x] == x]


@dataclass(frozen=True)
class StabilizerSets:
    K: list[int]
    V: list[int]
    D: list[int]
    H: list[int]


def stabilizer_sets(M: EndoMonoid, x: int) -> StabilizerSets:
    """K = {y : yx = xy = y}, V = {y in Aut : yx = x}, D = {y in Aut : yx = xy = x},
    H = {y : xy = y, yx = 0}."""
    c = M.comp
    ys = np.arange(len(M))
    yx, xy = c[:, x], c[x, :]
    K = np.flatnonzero((yx == ys) & (xy == ys))
    V = np.flatnonzero(M.is_auto & (yx == x))
    D = np.flatnonzero(M.is_auto & (yx == x) & (xy == x))
    H = np.flatnonzero((xy == ys) & (yx == M.zero_index))
    return StabilizerSets(*([int(i) for i in s] for s in (K, V, D, H)))


def image_kernel(e: Endomorphism) -> tuple[Subgroup, Subgroup]:
    """Image and kernel; for an idempotent also checks G = Ker x| Im."""
    im, ker = e.image(), e.kernel()
    idem = all(e.map[e.map[g]] == e.map[g] for g in e.group.elements())
    if idem:
        G = e.group
        assert set(im) & set(ker) == {G.identity}
        assert im.order * ker.order == G.order
        assert is_normal(G, ker)
    return im, ker


def inner_subgroup(M: EndoMonoid) -> list[int]:
    """Indices of the inner automorphisms."""
    G = M.group
    return sorted({M.index_of(inner_automorphism(G, g).map) for g in G.elements()})


def inner_index(M: EndoMonoid, g: int) -> int:
    return M.index_of(inner_automorphism(M.group, g).map)
