"""Finite groups given by Cayley tables.

Elements are the dense indices ``0..n-1``; ``table[a][b]`` is the index of
``a*b``.  Maps act on the right and compose left to right, so for two maps
``s`` and ``t`` the product ``st`` sends ``g`` to ``(g s) t``.  Conjugation
follows the same convention: ``g`` induces ``h -> g^-1 h g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "CapExceededError",
    "Group",
    "GroupAxiomError",
    "GroupHom",
    "Subgroup",
    "all_subgroups",
    "are_isomorphic_groups",
    "center",
    "centralizer",
    "commutator",
    "derived_subgroup",
    "direct_product",
    "inner_automorphism",
    "is_abelian",
    "is_nilpotent",
    "is_normal",
    "normalizer",
    "prime_factors",
    "quotient",
    "semidirect_product",
    "subgroup_generated",
    "sylow_subgroup",
    "validate_group",
]

DEFAULT_SUBGROUP_CAP = 200


class GroupAxiomError(ValueError):
    """A table that is not the multiplication table of a group."""


class CapExceededError(ValueError):
    """An exhaustive computation was requested above its configured size cap."""


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def prime_power(n: int) -> tuple[int, int] | None:
    """``(r, k)`` with ``n == r**k`` and ``k >= 1``, or ``None``."""
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    r, k = ps[0], 0
    while n > 1:
        n //= r
        k += 1
    return r, k


@dataclass(frozen=True, eq=False)
class Group:
    table: np.ndarray
    identity: int
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int32, copy=True)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Group{label} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for fast scalar lookups."""
        return self.table.tolist()

    @cached_property
    def kernel_table(self):
        return _kernels.as_table(self.table)

    @cached_property
    def inverses(self) -> list[int]:
        e = self.identity
        return [row.index(e) for row in self.rows]

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        r = self.identity
        for _ in range(k):
            r = self.rows[r][a]
        return r

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.rows[x][a]
                k += 1
            out.append(k)
        return out

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    def elements(self) -> range:
        return range(self.order)

    def same_table(self, other: "Group") -> bool:
        return self.identity == other.identity and np.array_equal(self.table, other.table)


def validate_group(table, name: str = "") -> Group:
    """Check the group axioms on ``table`` and return the group.

    The identity is inferred.  Raises :class:`GroupAxiomError` naming the
    first violated axiom.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise GroupAxiomError("table must be a non-empty square array")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise GroupAxiomError("table entries must be integers")
    if t.min() < 0 or t.max() >= n:
        raise GroupAxiomError(f"table entries must lie in [0, {n})")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise GroupAxiomError(f"row {i} is not a permutation (not a Latin square)")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise GroupAxiomError(f"column {i} is not a permutation (not a Latin square)")
    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise GroupAxiomError("no two-sided identity element")
    # (ab)c == a(bc) for all triples, vectorised over c
    for a in range(n):
        lhs = t[t[a]]          # lhs[b, c] = (ab)c
        rhs = t[a][t]          # rhs[b, c] = a(bc)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            raise GroupAxiomError(f"associativity fails for ({a}, {b}, {c})")
    return Group(t, ids[0], name)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) for x in self.elements))))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __eq__(self, other):
        if isinstance(other, Subgroup):
            return self.parent is other.parent and self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def as_group(self, name: str = "") -> Group:
        """The subgroup as a standalone group; element ``i`` is ``elements[i]``."""
        pos = {g: i for i, g in enumerate(self.elements)}
        rows = self.parent.rows
        t = [[pos[rows[a][b]] for b in self.elements] for a in self.elements]
        return Group(np.array(t, dtype=np.int32), pos[self.parent.identity], name)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: Group
    target: Group
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))

    def __call__(self, g: int) -> int:
        return self.map[g]

    def is_homomorphism(self) -> bool:
        m = np.asarray(self.map)
        return bool(np.array_equal(m[self.source.table], self.target.table[m[:, None], m[None, :]]))

    def image(self) -> Subgroup:
        return Subgroup(self.target, set(self.map))

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source, [g for g, h in enumerate(self.map) if h == e])

    def then(self, other: "GroupHom") -> "GroupHom":
        """Apply ``self`` first, then ``other``."""
        return GroupHom(self.source, other.target, [other.map[h] for h in self.map])


def _elements_of(G: Group, H) -> tuple[int, ...]:
    if H is None:
        return tuple(G.elements())
    if isinstance(H, Group):
        if H is not G:
            raise ValueError("expected G itself or a subgroup of G")
        return tuple(G.elements())
    return tuple(H)


def _close(G: Group, seeds: Iterable[int]) -> list[int]:
    gens = sorted(set(int(s) for s in seeds) - {G.identity})
    seen = {G.identity}
    frontier = [G.identity]
    rows = G.rows
    while frontier:
        nxt = []
        for a in frontier:
            ra = rows[a]
            for s in gens:
                c = ra[s]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)


def subgroup_generated(G: Group, seeds: Iterable[int] = ()) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seeds``."""
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} out of range for group of order {G.order}")
    return Subgroup(G, _close(G, seeds))


def is_abelian(G: Group, H=None) -> bool:
    els = _elements_of(G, H)
    rows = G.rows
    return all(rows[a][b] == rows[b][a] for a, b in itertools.combinations(els, 2))


def centralizer(G: Group, H=None) -> Subgroup:
    """C_G(H); with ``H`` omitted this is the center Z(G)."""
    hs = _elements_of(G, H)
    rows = G.rows
    return Subgroup(G, [g for g in G.elements() if all(rows[g][h] == rows[h][g] for h in hs)])


def center(G: Group) -> Subgroup:
    return centralizer(G, None)


def normalizer(G: Group, H) -> Subgroup:
    hs = frozenset(_elements_of(G, H))
    rows, inv = G.rows, G.inverses
    out = []
    for g in G.elements():
        gi = inv[g]
        if all(rows[rows[gi][h]][g] in hs for h in hs):
            out.append(g)
    return Subgroup(G, out)


def center_centralizer_normalizer(G: Group, H=None, mode: str = "centralizer") -> Subgroup:
    """Dispatch helper: ``mode`` is ``"center"``, ``"centralizer"`` or ``"normalizer"``."""
    if mode == "center":
        return center(G)
    if mode == "centralizer":
        return centralizer(G, H)
    if mode == "normalizer":
        return normalizer(G, G if H is None else H)
    raise ValueError(f"unknown mode {mode!r}")


def is_normal(G: Group, H) -> bool:
    return normalizer(G, H).order == G.order


def commutator(G: Group, a: int, b: int) -> int:
    """[a, b] = a^-1 b^-1 a b."""
    r, i = G.rows, G.inverses
    return r[r[r[i[a]][i[b]]][a]][b]


def derived_subgroup(G: Group, depth: int = 1) -> Subgroup:
    if depth not in (1, 2):
        raise ValueError("depth must be 1 or 2")
    els = list(G.elements())
    for _ in range(depth):
        comms = {commutator(G, a, b) for a in els for b in els}
        els = _close(G, comms)
    return Subgroup(G, els)


def sylow_subgroup(G: Group, r: int) -> Subgroup:
    """One Sylow ``r``-subgroup, chosen deterministically.

    Grows an ``r``-subgroup one ``r``-element at a time, always taking the
    lexicographically least enlargement; an ``r``-subgroup that is not yet
    Sylow always has a proper ``r``-overgroup of the form ``<P, g>``.
    """
    if not is_prime(r):
        raise ValueError(f"{r} is not prime")
    n = G.order
    full = 1
    while n % r == 0:
        n //= r
        full *= r
    P = [G.identity]
    if full == 1:
        return Subgroup(G, P)
    orders = G.element_orders
    r_elements = [g for g in G.elements() if prime_power(orders[g]) and prime_factors(orders[g]) == [r]]
    while len(P) < full:
        best = None
        Pset = set(P)
        for g in r_elements:
            if g in Pset:
                continue
            cand = _close(G, P + [g])
            size = len(cand)
            pp = prime_power(size)
            if pp is None or pp[0] != r:
                continue
            if best is None or cand < best:
                best = cand
        if best is None:  # pragma: no cover - contradicts Sylow theory
            raise RuntimeError("failed to enlarge r-subgroup")
        P = best
    return Subgroup(G, P)


def is_nilpotent(G: Group) -> bool:
    """True iff every Sylow subgroup of ``G`` is normal."""
    return all(is_normal(G, sylow_subgroup(G, r)) for r in prime_factors(G.order))


def quotient(G: Group, N) -> tuple[Group, GroupHom]:
    """G/N on cosets ordered by their least element, with the projection."""
    ns = _elements_of(G, N)
    if not is_normal(G, ns):
        raise ValueError("subgroup is not normal")
    rows = G.rows
    label = [-1] * G.order
    reps = []
    for g in G.elements():
        if label[g] < 0:
            for h in ns:
                label[rows[g][h]] = len(reps)
            reps.append(g)
    t = [[label[rows[a][b]] for b in reps] for a in reps]
    Q = Group(np.array(t, dtype=np.int32), label[G.identity])
    return Q, GroupHom(G, Q, label)


def semidirect_product(N: Group, H: Group, action: Sequence[Sequence[int]], name: str = "") -> Group:
    """N x| H on pairs ``(n, h)`` stored at index ``n*|H| + h``.

    ``action[h]`` is the automorphism of ``N`` attached to ``h`` (as an image
    array) and the law is ``(n1,h1)(n2,h2) = (n1^action[h2] * n2, h1*h2)``.
    This is associative exactly when applying ``action[h1]`` then
    ``action[h2]`` equals ``action[h1*h2]``.
    """
    act = np.asarray(action, dtype=np.int64)
    if act.shape != (H.order, N.order):
        raise ValueError(f"action must have shape ({H.order}, {N.order})")
    for h in H.elements():
        hom = GroupHom(N, N, act[h])
        if sorted(hom.map) != list(N.elements()) or not hom.is_homomorphism():
            raise ValueError(f"action of element {h} is not an automorphism")
    Ht = H.table
    for h1 in H.elements():
        for h2 in H.elements():
            if not np.array_equal(act[h2][act[h1]], act[Ht[h1, h2]]):
                raise ValueError(f"action is not a homomorphism at ({h1}, {h2})")
    nN, nH = N.order, H.order
    n_idx = np.arange(nN * nH) // nH
    h_idx = np.arange(nN * nH) % nH
    # element a = (n1,h1), b = (n2,h2)
    n1, h1 = n_idx[:, None], h_idx[:, None]
    n2, h2 = n_idx[None, :], h_idx[None, :]
    nn = N.table[act[h2, n1], n2]
    hh = Ht[h1, h2]
    table = nn * nH + hh
    return Group(table, N.identity * nH + H.identity, name)


def direct_product(G: Group, H: Group, name: str = "") -> Group:
    trivial = [list(G.elements())] * H.order
    return semidirect_product(G, H, trivial, name)


def inner_automorphism(G: Group, g: int) -> GroupHom:
    """The map ``h -> g^-1 h g``."""
    rows = G.rows
    gi = G.inverses[g]
    return GroupHom(G, G, [rows[rows[gi][h]][g] for h in G.elements()])


def generating_sequence(G: Group) -> list[int]:
    """A short generating sequence, picked greedily by largest closure."""
    gens: list[int] = []
    current = {G.identity}
    while len(current) < G.order:
        best, best_size = None, -1
        for g in G.elements():
            if g in current:
                continue
            size = len(_close(G, gens + [g]))
            if size > best_size:
                best, best_size = g, size
        gens.append(best)
        current = set(_close(G, gens))
    return gens


def _order_profile(G: Group) -> list[int]:
    return sorted(G.element_orders)


def are_isomorphic_groups(G1: Group, G2: Group) -> list[int] | None:
    """An isomorphism ``G1 -> G2`` as an image array, or ``None``."""
    if G1.order != G2.order or _order_profile(G1) != _order_profile(G2):
        return None
    if is_abelian(G1) != is_abelian(G2):
        return None
    gens = generating_sequence(G1)
    o1, o2 = G1.element_orders, G2.element_orders
    cands = [[h for h in G2.elements() if o2[h] == o1[g]] for g in gens]
    src, dst = G1.kernel_table, G2.kernel_table
    cls1 = _kernels.as_vector(o1)
    cls2 = _kernels.as_vector(o2)

    def search(level, phi, used):
        if level == len(gens):
            return list(phi)
        g = gens[level]
        for h in cands[level]:
            if used[h] >= 0:
                continue
            p2, u2 = phi.copy(), used.copy()
            p2[g], u2[h] = h, g
            if _kernels.closure_extend(src, dst, p2, u2, gens[: level + 1], cls1, cls2, True) < 0:
                continue
            found = search(level + 1, p2, u2)
            if found is not None:
                return found
        return None

    phi = _kernels.new_map(G1.order)
    used = _kernels.new_map(G2.order)
    phi[G1.identity] = G2.identity
    used[G2.identity] = G1.identity
    result = search(0, phi, used)
    if result is None:
        return None
    assert GroupHom(G1, G2, result).is_homomorphism() and sorted(result) == list(G2.elements())
    return [int(x) for x in result]


def all_subgroups(G: Group, max_order: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup of ``G``: cyclic subgroups, then pairwise joins until stable."""
    if G.order > max_order:
        raise CapExceededError(f"subgroup enumeration capped at order {max_order}, got {G.order}")
    gens: dict[frozenset[int], list[int]] = {}
    for g in G.elements():
        gens.setdefault(frozenset(_close(G, [g])), [g])
    layer = list(gens)
    while layer:
        new = []
        everything = list(gens)
        for a in layer:
            for b in everything:
                if a <= b or b <= a:
                    continue
                seeds = gens[a] + gens[b]
                j = frozenset(_close(G, seeds))
                if j not in gens:
                    gens[j] = seeds
                    new.append(j)
        layer = new
    return [Subgroup(G, s) for s in sorted((tuple(sorted(s)) for s in gens), key=lambda s: (len(s), s))]
