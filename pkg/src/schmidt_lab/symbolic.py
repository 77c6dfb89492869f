"""Closed-form model of the proper endomorphisms of M(p,q,v) and their products.

A proper endomorphism is a pair ``[n; f]`` with ``n`` in Z_{q^v} and ``f``
in Z_p[x]/(psi); pairs with ``q | n`` all collapse to ``[n; 0]``.  An
automorphism is a triplet ``[n; a; b]`` with ``q`` not dividing ``n`` and
``b != 0``; ``n mod q`` must also be a power of ``p`` mod ``q``, since only
then is ``f -> f(x^n)`` well defined on the field.  Products (maps on the right, left factor applied first):

    [n; f] [m; g]       = [nm; g]
    [n; a; b] [m; f]    = [nm; f]
    [m; f] [n; a; b]    = [nm; a/(x-1) + b f(x^n)]

The product of two triplets is not modelled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .construct import MMGroupSpec
from .endo import EndoMonoid
from .groups import Group
from .polyring import ResidueElem, substitute_power
from .semigroup import FiniteSemigroup, isomorphic


class NoIsomorphismError(RuntimeError):
    """The brute-force proper endomorphisms do not match the pair model."""


@dataclass(frozen=True)
class SymbolicProperEndo:
    n: int
    f: ResidueElem

    def __str__(self):
        return f"[{self.n}; {self.f}]"


@dataclass(frozen=True)
class SymbolicAuto:
    n: int
    a: ResidueElem
    b: ResidueElem

    def __str__(self):
        return f"[{self.n}; {self.a}; {self.b}]"


def make_pair(spec: MMGroupSpec, n: int, f: ResidueElem) -> SymbolicProperEndo:
    """Canonical pair: ``n`` reduced mod q^v and ``f`` zeroed when q | n."""
    n %= spec.q ** spec.v
    if n % spec.q == 0:
        f = spec.ring.zero
    return SymbolicProperEndo(n, f)


def make_auto(spec: MMGroupSpec, n: int, a: ResidueElem, b: ResidueElem) -> SymbolicAuto:
    n %= spec.q ** spec.v
    if n % spec.q == 0:
        raise ValueError("q must not divide n in an automorphism triplet")
    if b.is_zero():
        raise ValueError("b(x) must be nonzero in an automorphism triplet")
    if n % spec.q not in frobenius_residues(spec):
        raise ValueError("n mod q must be a power of p mod q")
    return SymbolicAuto(n, a, b)


def frobenius_residues(spec: MMGroupSpec) -> frozenset[int]:
    """Powers of p modulo q: the n mod q for which x -> x^n extends to the field."""
    return frozenset(pow(spec.p, k, spec.q) for k in range(spec.u))


def compose_pairs(spec: MMGroupSpec, e1: SymbolicProperEndo, e2: SymbolicProperEndo) -> SymbolicProperEndo:
    return make_pair(spec, e1.n * e2.n, e2.f)


def compose_auto_pair(spec: MMGroupSpec, z: SymbolicAuto, e: SymbolicProperEndo) -> SymbolicProperEndo:
    return make_pair(spec, z.n * e.n, e.f)


def compose_pair_auto(spec: MMGroupSpec, e: SymbolicProperEndo, z: SymbolicAuto) -> SymbolicProperEndo:
    ring = spec.ring
    f = z.a * ring.x_minus_one_inv + z.b * substitute_power(e.f, z.n)
    return make_pair(spec, e.n * z.n, f)


def all_autos(spec: MMGroupSpec):
    """Every triplet [n; a; b]; their number is |Aut| of M(p,q,v)."""
    ring = spec.ring
    allowed = frobenius_residues(spec)
    for n in range(spec.q ** spec.v):
        if n % spec.q not in allowed:
            continue
        for a in ring.elements:
            for b in ring.elements:
                if not b.is_zero():
                    yield SymbolicAuto(n, a, b)


class SymbolicModel:
    """The proper endomorphisms as pairs, in order (n, index of f)."""

    def __init__(self, spec: MMGroupSpec):
        self.spec = spec
        ring = spec.ring
        qv = spec.q ** spec.v
        elems = []
        for n in range(qv):
            if n % spec.q == 0:
                elems.append(SymbolicProperEndo(n, ring.zero))
            else:
                elems.extend(SymbolicProperEndo(n, f) for f in ring.elements)
        self.proper_elems: tuple[SymbolicProperEndo, ...] = tuple(elems)
        self._pos = {self._key(e): i for i, e in enumerate(elems)}
        k = len(elems)
        comp = np.empty((k, k), dtype=np.int32)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                comp[i, j] = self.index(compose_pairs(spec, a, b))
        comp.setflags(write=False)
        self.comp = comp
        self.distinguished = self.index(make_pair(spec, 1, ring.zero))
        self.zero_index = self.index(make_pair(spec, 0, ring.zero))

    @staticmethod
    def _key(e: SymbolicProperEndo) -> tuple[int, int]:
        return (e.n, e.f.index)

    def __len__(self):
        return len(self.proper_elems)

    def index(self, e: SymbolicProperEndo) -> int:
        return self._pos[self._key(e)]

    @property
    def expected_size(self) -> int:
        s = self.spec
        return s.ring.size * (s.q ** s.v - s.q ** (s.v - 1)) + s.q ** (s.v - 1)

    def semigroup(self) -> FiniteSemigroup:
        return FiniteSemigroup(self.comp)

    def verify(self) -> None:
        assert len(self) == self.expected_size
        S = self.semigroup()
        assert S.is_associative()
        z = self.zero_index
        assert (self.comp[z, :] == z).all() and (self.comp[:, z] == z).all(), "[0; 0] must be a two-sided zero"

    @cached_property
    def idempotents(self) -> list[int]:
        return [i for i in range(len(self)) if self.comp[i, i] == i and i != self.zero_index]

    def K(self, y: int) -> set[int]:
        c = self.comp
        return {z for z in range(len(self)) if c[z, y] == z and c[y, z] == z}

    def power(self, z: int, k: int) -> int:
        r = z
        for _ in range(k - 1):
            r = int(self.comp[r, z])
        return r

    def V(self) -> list[SymbolicAuto]:
        """Triplets z with z x* = x*."""
        x = self.proper_elems[self.distinguished]
        return [z for z in all_autos(self.spec) if compose_auto_pair(self.spec, z, x) == x]

    def D(self) -> list[SymbolicAuto]:
        """Triplets z with z x* = x* = x* z."""
        x = self.proper_elems[self.distinguished]
        return [z for z in self.V() if compose_pair_auto(self.spec, x, z) == x]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "params": {"p": self.spec.p, "q": self.spec.q, "v": self.spec.v, "u": self.spec.u},
            "psi": list(self.spec.ring.psi.coeffs),
            "pairs": [{"n": e.n, "f": list(e.f.rep.coeffs)} for e in self.proper_elems],
            "comp": self.comp.tolist(),
            "distinguished": self.distinguished,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def render(self) -> list[str]:
        return [str(e) for e in self.proper_elems]


def build_model(spec: MMGroupSpec) -> SymbolicModel:
    model = SymbolicModel(spec)
    model.verify()
    return model


def match_with_bruteforce(G: Group, M: EndoMonoid, model: SymbolicModel, projection: int) -> dict[int, int]:
    """Anchored isomorphism from the proper part of ``M`` onto the pair model.

    ``projection`` is the index in ``M`` of the idempotent onto <b>; it is
    sent to [1; 0].  Returns ``{index in M: index in model}``.
    """
    if M.group is not G:
        raise ValueError("monoid does not belong to the given group")
    proper = M.proper
    if len(proper) != len(model):
        raise NoIsomorphismError(f"{len(proper)} proper endomorphisms vs {len(model)} pairs")
    if projection not in proper:
        raise ValueError("projection must be a proper endomorphism")
    anchor = (proper.index(projection), model.distinguished)
    phi = isomorphic(M.semigroup(proper), model.semigroup(), anchor=anchor)
    if phi is None:
        raise NoIsomorphismError("no anchored isomorphism onto the pair model")
    return {proper[i]: j for i, j in enumerate(phi)}
