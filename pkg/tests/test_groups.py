import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schmidt_lab.construct import catalog_names
from schmidt_lab.groups import (
    GroupAxiomError,
    Subgroup,
    all_subgroups,
    are_isomorphic_groups,
    center,
    center_centralizer_normalizer,
    centralizer,
    commutator,
    derived_subgroup,
    direct_product,
    inner_automorphism,
    is_abelian,
    is_nilpotent,
    is_normal,
    normalizer,
    prime_factors,
    prime_power,
    quotient,
    semidirect_product,
    subgroup_generated,
    sylow_subgroup,
    validate_group,
)
from conftest import cat
import oracles

SMALL = [n for n in catalog_names() if cat(n).order <= 24]


def test_number_helpers():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("name", SMALL)
def test_catalog_tables_are_groups(name):
    G = cat(name)
    validate_group(G.table, name)  # re-validation must not raise
    t = G.table.tolist()
    n = G.order
    # independent associativity check on every triple
    assert all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def test_validate_group_errors():
    with pytest.raises(GroupAxiomError):
        validate_group([[0, 1], [1, 1]])
    with pytest.raises(GroupAxiomError):
        validate_group([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(GroupAxiomError):
        validate_group([[0, 5], [1, 0]])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupAxiomError, match="associativ"):
        validate_group(bad)


def test_elements_orders_and_identity():
    S3 = cat("S3")
    assert sorted(S3.element_orders) == [1, 2, 2, 2, 3, 3]
    for g in S3.elements():
        assert S3.mul(g, S3.inv(g)) == S3.identity
        assert S3.element_orders[g] == oracles.order_of(S3.table.tolist(), S3.identity, g)


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D6", "SL23", "C3:C4"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_subgroup_generated_idempotent_and_monotone(name, data):
    G = cat(name)
    a = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    b = data.draw(st.sets(st.integers(0, G.order - 1), max_size=2))
    H = subgroup_generated(G, a)
    assert subgroup_generated(G, H.elements) == H
    assert set(H) <= set(subgroup_generated(G, a | b))
    assert set(H) == oracles.closure(G.table.tolist(), a, G.identity)


def test_center_centralizer_normalizer():
    assert center(cat("S3")).order == 1
    assert center(cat("Q8")).order == 2
    assert center(cat("SL23")).order == 2
    assert center(cat("D6")).order == 2
    G = cat("A4")
    assert center(G).order == 1
    V4 = next(H for H in all_subgroups(G) if H.order == 4)
    assert centralizer(G, V4) == V4
    assert normalizer(G, V4).order == 12
    C3 = next(H for H in all_subgroups(G) if H.order == 3)
    assert normalizer(G, C3) == C3
    assert center_centralizer_normalizer(G, C3, "normalizer") == C3
    assert center_centralizer_normalizer(G, None, "center") == center(G)


def test_commutator_convention():
    G = cat("S3")
    for a, b in itertools.product(G.elements(), repeat=2):
        expect = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b))
        assert commutator(G, a, b) == expect


@pytest.mark.parametrize("name,d1,d2", [("S3", 3, 1), ("A4", 4, 1), ("S4", 12, 4), ("SL23", 8, 2), ("Q8", 2, 1), ("C6", 1, 1)])
def test_derived_series(name, d1, d2):
    G = cat(name)
    assert derived_subgroup(G).order == d1
    assert derived_subgroup(G, depth=2).order == d2


@pytest.mark.parametrize("name", SMALL)
def test_sylow_and_nilpotency_cross_check(name):
    G = cat(name)
    sylows = []
    for r in prime_factors(G.order):
        P = sylow_subgroup(G, r)
        k = prime_power(P.order)
        assert k[0] == r and G.order % (P.order * r) != 0
        sylows.append(P)
    # nilpotent iff G is the internal direct product of one Sylow per prime,
    # checked by elementwise commuting plus the product covering G
    commute = all(G.mul(a, b) == G.mul(b, a) for P, Q in itertools.combinations(sylows, 2) for a in P for b in Q)
    prod = {G.identity}
    for P in sylows:
        prod = {G.mul(a, b) for a in prod for b in P}
    internal = commute and len(prod) == G.order and all(is_normal(G, P) for P in sylows)
    assert is_nilpotent(G) == internal


def test_quotients():
    A4 = cat("A4")
    V4 = next(H for H in all_subgroups(A4) if H.order == 4)
    Q, pi = quotient(A4, V4)
    assert Q.order == 3 and pi.is_homomorphism()
    assert pi.kernel() == V4 and sorted(set(pi.map)) == list(Q.elements())
    assert are_isomorphic_groups(Q, cat("C3")) is not None
    SL = cat("SL23")
    Q, pi = quotient(SL, center(SL))
    assert are_isomorphic_groups(Q, A4) is not None
    assert pi.kernel() == center(SL)
    with pytest.raises(ValueError):
        quotient(cat("S3"), subgroup_generated(cat("S3"), [next(g for g in range(6) if cat("S3").element_order(g) == 2)]))


@pytest.mark.parametrize("name", SMALL)
def test_quotient_by_derived(name):
    G = cat(name)
    D = derived_subgroup(G)
    Q, pi = quotient(G, D)
    assert Q.order * D.order == G.order
    assert is_abelian(Q)
    assert pi.is_homomorphism() and pi.kernel() == D


def test_semidirect_examples():
    C3, C2 = cat("C3"), cat("C2")
    inv = [C3.inv(g) for g in C3.elements()]
    G = semidirect_product(C3, C2, [list(C3.elements()), inv])
    assert are_isomorphic_groups(G, cat("S3")) is not None
    V4 = cat("C2xC2")
    # an element of order 3 in Aut(V4): cycle the three involutions
    inv3 = [g for g in V4.elements() if g != V4.identity]
    rot = list(V4.elements())
    rot[inv3[0]], rot[inv3[1]], rot[inv3[2]] = inv3[1], inv3[2], inv3[0]
    C3 = cat("C3")
    gen = next(g for g in C3.elements() if g != C3.identity)
    acts = {}
    for k in range(3):
        m = list(V4.elements())
        for _ in range(k):
            m = [rot[x] for x in m]
        acts[C3.power(gen, k)] = m
    G = semidirect_product(V4, C3, [acts[h] for h in C3.elements()])
    assert are_isomorphic_groups(G, cat("A4")) is not None
    with pytest.raises(ValueError):
        semidirect_product(C3, C2, [list(C3.elements())] * 3)


@pytest.mark.parametrize("a,b", [("C2", "C3"), ("S3", "C2"), ("C4", "C2"), ("Q8", "C3")])
def test_trivial_action_is_direct_product(a, b):
    N, H = cat(a), cat(b)
    G = semidirect_product(N, H, [list(N.elements())] * H.order)
    nH = H.order
    for x in range(G.order):
        for y in range(G.order):
            n = N.mul(x // nH, y // nH)
            h = H.mul(x % nH, y % nH)
            assert G.mul(x, y) == n * nH + h
    assert direct_product(N, H).same_table(G)


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D5", "SL23"])
def test_inner_automorphism_composition(name):
    G = cat(name)
    for g, h in itertools.product(G.elements(), repeat=2):
        lhs = inner_automorphism(G, G.mul(g, h))
        rhs = inner_automorphism(G, g).then(inner_automorphism(G, h))
        assert lhs.map == rhs.map
    assert all(inner_automorphism(G, g).is_homomorphism() for g in G.elements())


@pytest.mark.parametrize("a,b,iso", [
    ("S3", "C6", False), ("D6", "C3:C4", False), ("A4", "SL23", False),
    ("Q8", "D4", False), ("C2xC2", "C4", False), ("C6", "C6", True), ("D4", "D4", True),
])
def test_group_isomorphism(a, b, iso):
    G, H = cat(a), cat(b)
    m = are_isomorphic_groups(G, H)
    assert (m is not None) == iso
    if m is not None:
        assert oracles.is_group_iso(G.table.tolist(), H.table.tolist(), m)


@pytest.mark.parametrize("a,b", [("S3", "S3"), ("C2xC2", "C4"), ("Q8", "D4"), ("C6", "C2")])
def test_group_isomorphism_vs_brute(a, b):
    G, H = cat(a), cat(b)
    brute = oracles.brute_group_iso(G.table.tolist(), H.table.tolist())
    assert (are_isomorphic_groups(G, H) is None) == (brute is None)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(8))), st.sampled_from(["Q8", "D4", "C2xC4", "C2xC2xC2", "C8"]))
def test_relabelled_group_is_isomorphic(perm, name):
    G = cat(name)
    p = np.array(perm)
    inv = np.argsort(p)
    # relabel element g as p[g]
    t = p[G.table[inv[:, None], inv[None, :]]]
    H = validate_group(t)
    m = are_isomorphic_groups(G, H)
    assert m is not None and oracles.is_group_iso(G.table.tolist(), t.tolist(), m)


@pytest.mark.parametrize("name,count", [("S3", 6), ("A4", 10), ("Q8", 6), ("D4", 10), ("S4", 30), ("C2xC2xC2", 16)])
def test_subgroup_counts(name, count):
    subs = all_subgroups(cat(name))
    assert len(subs) == count
    for H in subs:
        assert set(subgroup_generated(cat(name), H.elements)) == set(H)


def test_subgroup_as_group_relabels():
    G = cat("S4")
    H = next(H for H in all_subgroups(G) if H.order == 12)
    A = H.as_group()
    for i, a in enumerate(H.elements):
        for j, b in enumerate(H.elements):
            assert H.elements[A.mul(i, j)] == G.mul(a, b)
    assert isinstance(H, Subgroup)
