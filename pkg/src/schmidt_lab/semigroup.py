"""Finite semigroups given by composition tables, and isomorphism search.

The search picks a generating set of the first semigroup (rarest
fingerprints first), tries fingerprint-compatible images for each
generator, and propagates every choice over the subsemigroup generated so
far; a total, injective, consistent assignment is an isomorphism.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels

SAMPLED_ASSOC_CHECKS = 200_000


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    comp: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.comp, dtype=np.int32)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("composition table must be square")
        if c.size and (c.min() < 0 or c.max() >= c.shape[0]):
            raise ValueError("composition table is not closed")
        c.setflags(write=False)
        object.__setattr__(self, "comp", c)

    def __len__(self):
        return self.comp.shape[0]

    @classmethod
    def from_json(cls, data) -> "FiniteSemigroup":
        """Accepts an EndoMonoid export (dict or JSON text) or a bare table."""
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data["comp"]
        return cls(np.array(data, dtype=np.int32))

    @cached_property
    def kernel_table(self):
        return _kernels.as_table(self.comp)

    @cached_property
    def idempotents(self) -> np.ndarray:
        k = len(self)
        return self.comp[np.arange(k), np.arange(k)] == np.arange(k)

    def is_associative(self, seed: int = 0) -> bool:
        """Exhaustive for k <= 200, otherwise a fixed-seed sample of triples."""
        c = self.comp
        k = len(self)
        if k <= 200:
            for a in range(k):
                if not np.array_equal(c[c[a]], c[a][c]):
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, d = rng.integers(0, k, size=(3, SAMPLED_ASSOC_CHECKS))
        return bool(np.array_equal(c[c[a, b], d], c[a, c[b, d]]))

    def power(self, a: int, e: int) -> int:
        r = a
        for _ in range(e - 1):
            r = int(self.comp[r, a])
        return r


ElementPrint = tuple[bool, int, int, int, int]


@dataclass(frozen=True)
class Fingerprint:
    elements: tuple[ElementPrint, ...]

    @cached_property
    def multiset(self) -> tuple[ElementPrint, ...]:
        return tuple(sorted(self.elements))

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return self.multiset == other.multiset

    def __hash__(self):
        return hash(self.multiset)


def _index_period(c: np.ndarray, a: int) -> tuple[int, int]:
    seen = {}
    x, i = a, 1
    while x not in seen:
        seen[x] = i
        x = int(c[x, a])
        i += 1
    start = seen[x]
    return start, i - start


def fingerprint(S: FiniteSemigroup) -> Fingerprint:
    """Per element: idempotent?, index and period of <a>, |aS|, |Sa|."""
    c = S.comp
    out = []
    for a in range(len(S)):
        idx, per = _index_period(c, a)
        out.append((bool(S.idempotents[a]), idx, per, len(set(c[a].tolist())), len(set(c[:, a].tolist()))))
    return Fingerprint(tuple(out))


def _closure(c, members: set[int], gens: list[int]) -> set[int]:
    out = set(members)
    queue = list(out)
    while queue:
        t = queue.pop()
        for g in gens:
            s = int(c[t, g])
            if s not in out:
                out.add(s)
                queue.append(s)
    return out


def generating_set(S: FiniteSemigroup, order: list[int]) -> list[int]:
    """Greedy generating set taking elements in the given preference order."""
    gens: list[int] = []
    covered: set[int] = set()
    for a in order:
        if a in covered:
            continue
        gens.append(a)
        covered = _closure(S.comp, covered | {a}, gens)
        if len(covered) == len(S):
            break
    return gens


def isomorphic(S1: FiniteSemigroup, S2: FiniteSemigroup,
               anchor: tuple[int, int] | None = None) -> list[int] | None:
    """An isomorphism S1 -> S2 as an image array (``phi[i] = j`` if anchored), or ``None``."""
    k = len(S1)
    if k != len(S2):
        return None
    if k == 0:
        return []
    f1, f2 = fingerprint(S1).elements, fingerprint(S2).elements
    if Counter(f1) != Counter(f2):
        return None
    if anchor is not None and f1[anchor[0]] != f2[anchor[1]]:
        return None
    labels = {fp: i for i, fp in enumerate(sorted(set(f1)))}
    cls1 = [labels[fp] for fp in f1]
    cls2 = [labels[fp] for fp in f2]
    rarity = Counter(cls1)
    order = sorted(range(k), key=lambda a: (rarity[cls1[a]], cls1[a], a))
    if anchor is not None:
        order.remove(anchor[0])
        order.insert(0, anchor[0])
    gens = generating_set(S1, order)
    by_class: dict[int, list[int]] = {}
    for b, c in enumerate(cls2):
        by_class.setdefault(c, []).append(b)
    cands = [by_class[cls1[g]] for g in gens]
    if anchor is not None:
        cands[0] = [anchor[1]]
    src, dst = S1.kernel_table, S2.kernel_table
    kc1, kc2 = _kernels.as_vector(cls1), _kernels.as_vector(cls2)

    def search(level, phi, used):
        if level == len(gens):
            return phi
        g = gens[level]
        for h in cands[level]:
            if used[h] >= 0:
                continue
            p2, u2 = phi.copy(), used.copy()
            p2[g], u2[h] = h, g
            if _kernels.closure_extend(src, dst, p2, u2, gens[: level + 1], kc1, kc2, True) < 0:
                continue
            found = search(level + 1, p2, u2)
            if found is not None:
                return found
        return None

    phi = search(0, _kernels.new_map(k), _kernels.new_map(k))
    if phi is None:
        return None
    phi = [int(x) for x in phi]
    if not is_isomorphism(S1, S2, phi):  # pragma: no cover - guarded by construction
        raise AssertionError("search produced a non-isomorphism")
    return phi


def is_isomorphism(S1: FiniteSemigroup, S2: FiniteSemigroup, phi) -> bool:
    m = np.asarray(phi)
    if len(m) != len(S1) or sorted(m.tolist()) != list(range(len(S2))):
        return False
    return bool(np.array_equal(m[S1.comp], S2.comp[m[:, None], m[None, :]]))


def isomorphic_exhaustive(S1: FiniteSemigroup, S2: FiniteSemigroup) -> list[int] | None:
    """Reference search over all bijections; only for tiny semigroups."""
    if len(S1) != len(S2):
        return None
    for perm in itertools.permutations(range(len(S2))):
        if is_isomorphism(S1, S2, perm):
            return list(perm)
    return None


def cyclic_monoid_model(m: int) -> FiniteSemigroup:
    """(Z_m, *), the multiplicative monoid of residues, i.e. End(C_m)."""
    if m < 1:
        raise ValueError("m must be positive")
    a = np.arange(m)
    return FiniteSemigroup((a[:, None] * a[None, :]) % m)
