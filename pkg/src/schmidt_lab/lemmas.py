"""Structural identities relating End(G) and G, checked by direct computation.

Each ``check_*`` function returns a list of human-readable violations;
an empty list means the identity holds.
"""

from __future__ import annotations

import numpy as np

from .endo import (
    EndoMonoid,
    bracket_class,
    enumerate_end,
    idempotents_I0,
    inner_index,
    stabilizer_sets,
)
from .groups import (
    Group,
    Subgroup,
    center,
    centralizer,
    commutator,
    is_abelian,
    is_normal,
    subgroup_generated,
    sylow_subgroup,
)
from .polyring import multiplicative_order
from .semigroup import is_isomorphism


def check_restriction_iso(M: EndoMonoid, x: int) -> list[str]:
    """K(x) -> End(Im x), z -> z restricted to Im x, is a semigroup isomorphism."""
    im = M.elem(x).image()
    H = im.as_group()
    pos = {g: i for i, g in enumerate(im.elements)}
    EH = enumerate_end(H, cap=max(H.order, 1))
    K = stabilizer_sets(M, x).K
    try:
        phi = [EH.index_of([pos[int(M.maps[z, g])] for g in im.elements]) for z in K]
    except KeyError:
        return [f"x={x}: restriction of some z in K(x) is not an endomorphism of Im x"]
    S = M.semigroup(K)
    if not is_isomorphism(S, EH.semigroup(), phi):
        return [f"x={x}: restriction K(x) -> End(Im x) is not an isomorphism"]
    return []


def check_inner_in_V(M: EndoMonoid, x: int) -> list[str]:
    """Im x abelian implies every inner automorphism lies in V(x)."""
    G = M.group
    if not is_abelian(G, M.elem(x).image()):
        return []
    V = set(stabilizer_sets(M, x).V)
    return [f"x={x}: inner automorphism of {g} not in V(x)" for g in G.elements() if inner_index(M, g) not in V]


def check_centralizer_in_D(M: EndoMonoid, x: int) -> list[str]:
    """Im x abelian and g in C_G(Im x) imply the inner automorphism of g lies in D(x)."""
    G = M.group
    im = M.elem(x).image()
    if not is_abelian(G, im):
        return []
    D = set(stabilizer_sets(M, x).D)
    return [f"x={x}: inner automorphism of {g} not in D(x)" for g in centralizer(G, im) if inner_index(M, g) not in D]


def check_commuting_invariance(M: EndoMonoid, x: int) -> list[str]:
    """xy = yx implies (Im x)y is in Im x and (Ker x)y is in Ker x."""
    ex = M.elem(x)
    im, ker = set(ex.image()), set(ex.kernel())
    out = []
    for y in range(len(M)):
        if M.comp[x, y] != M.comp[y, x]:
            continue
        my = M.maps[y]
        if not {int(my[g]) for g in im} <= im or not {int(my[g]) for g in ker} <= ker:
            out.append(f"x={x}, y={y}: commuting y does not preserve Im x and Ker x")
    return out


def check_idempotent_separation(M: EndoMonoid) -> list[str]:
    """Distinct idempotents differ in their (image, kernel) pair."""
    seen = {}
    out = []
    for i in np.flatnonzero(M.is_idem):
        e = M.elem(int(i))
        key = (e.image().elements, e.kernel().elements)
        if key in seen:
            out.append(f"idempotents {seen[key]} and {int(i)} share image and kernel")
        seen[key] = int(i)
    return out


def preliminary_lemmas(M: EndoMonoid) -> list[str]:
    """All four preliminary identities for every idempotent of End(G)."""
    out = check_idempotent_separation(M)
    for x in np.flatnonzero(M.is_idem):
        x = int(x)
        out += check_restriction_iso(M, x)
        out += check_inner_in_V(M, x)
        out += check_centralizer_in_D(M, x)
        out += check_commuting_invariance(M, x)
    return out


def _conjugates(G: Group, S: Subgroup) -> list[Subgroup]:
    seen = {}
    for g in G.elements():
        gi = G.inv(g)
        c = Subgroup(G, [G.mul(G.mul(gi, s), g) for s in S])
        seen.setdefault(c.elements, c)
    return list(seen.values())


def _set_product(G: Group, A, B) -> set[int]:
    return {G.mul(a, b) for a in A for b in B}


def schmidt_structure(M: EndoMonoid, x: int, p: int, q: int, v: int) -> list[str]:
    """Identities that hold for a Schmidt group with parameters (p,q,v) and a good x.

    ``x`` must be an idempotent satisfying all eight properties; ``b`` is a
    generator of Im x and S ranges over the Sylow p-subgroups.
    """
    G = M.group
    u = multiplicative_order(p, q)
    out = []
    ex = M.elem(x)
    im, ker = ex.image(), ex.kernel()
    b = next((g for g in im if G.element_order(g) == im.order), None)
    if b is None or im.order != q ** v:
        return [f"x={x}: Im x is not cyclic of order q^v"]
    if set(im) & set(ker) != {G.identity} or im.order * ker.order != G.order or not is_normal(G, ker):
        out.append("G is not Ker x x| Im x")

    I0 = sorted(idempotents_I0(M))
    conj_x = lambda gs: sorted({int(M.comp[x, inner_index(M, g)]) for g in gs})
    if sorted(bracket_class(M, x)) != I0 or conj_x(G.elements()) != I0:
        out.append("I0 = [x] = {x g^ : g in G} fails")
    if conj_x(ker) != I0:
        out.append("I0 = {x g^ : g in Ker x} fails")

    kergrp = set(ker)
    c_ker = set(centralizer(G, [b])) & kergrp
    if len(kergrp) // len(c_ker) != p ** u:
        out.append("[Ker x : C_Ker x(b)] != p^u")
    Z = set(center(G))
    for S in _conjugates(G, sylow_subgroup(G, p)):
        cs = set(centralizer(G, [b])) & set(S)
        if len(S) // len(cs) != p ** u:
            out.append("[S : C_S(b)] != p^u")
        if conj_x(S) != I0:
            out.append("I0 = {x s^ : s in S} fails")
        if not cs <= Z:
            out.append("C_S(b) is not central")
    if G.power(b, q) not in Z:
        out.append("b^q is not central")

    # the Sylow p-subgroup normalised by b, with <b, S> = S x| <b>
    S = next((S for S in _conjugates(G, sylow_subgroup(G, p))
              if all(G.mul(G.mul(G.inv(b), s), b) in S for s in S)), None)
    if S is None:
        return out + ["no Sylow p-subgroup normalised by b"]
    cs = set(centralizer(G, [b])) & set(S)
    comms = {commutator(G, b, s) for s in S}
    if _set_product(G, comms, cs) != set(S):
        out.append("S != {[b,s]} C_S(b)")
    B = subgroup_generated(G, [b])
    if not (is_normal(G, S) and set(S) & set(B) == {G.identity} and S.order * B.order == G.order):
        out.append("G is not S x| <b>")
    return out
