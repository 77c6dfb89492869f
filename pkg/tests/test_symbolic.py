import itertools
import json

import pytest

from schmidt_lab.construct import MMGroupSpec
from schmidt_lab.endo import idempotents_I0, stabilizer_sets
from schmidt_lab.symbolic import (
    NoIsomorphismError,
    SymbolicModel,
    all_autos,
    build_model,
    compose_auto_pair,
    compose_pair_auto,
    compose_pairs,
    make_auto,
    make_pair,
    match_with_bruteforce,
)
from conftest import end_of_mm, mm

SMALL = [(3, 2, 1), (2, 3, 1), (5, 2, 1), (2, 3, 2), (3, 2, 2), (7, 3, 1), (2, 7, 1)]


def spec231():
    return MMGroupSpec.make(2, 3, 1)


def test_pair_examples():
    s = spec231()
    r = s.ring
    x, one, zero = r.x, r.one, r.zero
    for f, g in itertools.product(r.elements, repeat=2):
        assert compose_pairs(s, make_pair(s, 1, f), make_pair(s, 1, g)) == make_pair(s, 1, g)
        assert compose_pairs(s, make_pair(s, 0, f), make_pair(s, 2, g)) == make_pair(s, 0, zero)
    assert compose_pairs(s, make_pair(s, 2, x), make_pair(s, 2, x + one)) == make_pair(s, 1, x + one)
    assert make_pair(s, 3, x) == make_pair(s, 0, zero)
    assert str(make_pair(s, 2, x)) == "[2; 1*x]"


def test_mixed_examples():
    s = spec231()
    r = s.ring
    x, one, zero = r.x, r.one, r.zero
    assert compose_auto_pair(s, make_auto(s, 2, zero, one), make_pair(s, 1, x)) == make_pair(s, 2, x)
    for z in all_autos(s):
        assert compose_auto_pair(s, z, make_pair(s, 0, zero)) == make_pair(s, 0, zero)
        assert (compose_auto_pair(s, z, make_pair(s, 1, zero)) == make_pair(s, 1, zero)) == (z.n == 1)
    for b in r.elements[1:]:
        assert compose_pair_auto(s, make_pair(s, 1, zero), make_auto(s, 1, zero, b)) == make_pair(s, 1, zero)
    for a, b in itertools.product(r.elements, r.elements[1:]):
        got = compose_pair_auto(s, make_pair(s, 1, zero), make_auto(s, 1, a, b))
        assert got == make_pair(s, 1, a / (x - one))
    # f(x^n) with n = 1 is f itself, so [1; x][1; 0; x] = [1; x*x] = [1; x + 1]
    assert compose_pair_auto(s, make_pair(s, 1, x), make_auto(s, 1, zero, x)) == make_pair(s, 1, x + one)


def test_make_auto_validation():
    s = spec231()
    r = s.ring
    with pytest.raises(ValueError):
        make_auto(s, 3, r.zero, r.one)
    with pytest.raises(ValueError):
        make_auto(s, 1, r.zero, r.zero)
    s7 = MMGroupSpec.make(2, 7, 1)
    # 3 is not a power of 2 mod 7
    with pytest.raises(ValueError):
        make_auto(s7, 3, s7.ring.zero, s7.ring.one)
    assert make_auto(s7, 4, s7.ring.zero, s7.ring.one).n == 4


@pytest.mark.parametrize("params,size", [((3, 2, 1), 4), ((2, 3, 1), 9), ((2, 3, 2), 27), ((5, 2, 1), 6), ((2, 7, 1), 49)])
def test_model_sizes(params, size):
    m = build_model(MMGroupSpec.make(*params))
    assert len(m) == size == m.expected_size
    assert len(m) == len(end_of_mm(*params).proper)


@pytest.mark.parametrize("params", SMALL)
def test_model_invariants(params):
    s = MMGroupSpec.make(*params)
    m = build_model(s)
    p, q, v = params
    pu = s.ring.size
    # idempotents other than zero are exactly the [1; f]
    assert sorted(m.idempotents) == sorted(m.index(make_pair(s, 1, f)) for f in s.ring.elements)
    assert len(m.idempotents) == pu
    meet = set.intersection(*(m.K(y) for y in m.idempotents))
    assert meet == {m.index(make_pair(s, n, s.ring.zero)) for n in range(0, q ** v, q)}
    for z in range(len(m)):
        assert (z in meet) == (m.power(z, v) == m.zero_index)
    for e in m.proper_elems:
        assert m.index(e) in m.K(m.index(make_pair(s, 1, e.f))) or e.n % q == 0
    # V and D counts from the membership criteria
    assert len(m.V()) == pu * (pu - 1)
    assert len(m.D()) == pu - 1
    assert all(z.n == 1 for z in m.V())
    assert all(z.a.is_zero() for z in m.D())


@pytest.mark.parametrize("params", [(3, 2, 1), (2, 3, 1), (5, 2, 1), (2, 3, 2), (7, 3, 1), (2, 7, 1)])
def test_triplets_count_automorphisms(params):
    s = MMGroupSpec.make(*params)
    M = end_of_mm(*params)
    assert sum(1 for _ in all_autos(s)) == len(M.automorphisms)


@pytest.mark.parametrize("params", [(3, 2, 1), (2, 3, 1), (5, 2, 1)])
def test_V_D_match_bruteforce(params):
    s = MMGroupSpec.make(*params)
    m = build_model(s)
    M = end_of_mm(*params)
    for x in idempotents_I0(M):
        st = stabilizer_sets(M, x)
        assert len(st.V) == len(m.V()) and len(st.D) == len(m.D())


@pytest.mark.parametrize("params", [(3, 2, 1), (2, 3, 1), (3, 2, 2)])
def test_mixed_associativity(params):
    s = MMGroupSpec.make(*params)
    m = SymbolicModel(s)
    autos = list(all_autos(s))
    for e1, e2 in itertools.product(m.proper_elems, repeat=2):
        for z in autos:
            left = compose_pairs(s, compose_pair_auto(s, e1, z), e2)
            right = compose_pairs(s, e1, compose_auto_pair(s, z, e2))
            assert left == right
            assert compose_auto_pair(s, z, compose_pairs(s, e1, e2)) == compose_pairs(s, compose_auto_pair(s, z, e1), e2)
            assert compose_pair_auto(s, compose_pairs(s, e1, e2), z) == compose_pairs(s, e1, compose_pair_auto(s, e2, z))


@pytest.mark.parametrize("params", [(3, 2, 1), (2, 3, 1), (2, 3, 2), (5, 2, 1)])
def test_match_with_bruteforce(params):
    M_grp = mm(*params)
    G = M_grp.group
    M = end_of_mm(*params)
    model = build_model(M_grp.spec)
    proj = M.index_of(M_grp.projection.map)
    phi = match_with_bruteforce(G, M, model, proj)
    assert phi[proj] == model.distinguished
    assert sorted(phi) == M.proper and sorted(phi.values()) == list(range(len(model)))
    for a, b in itertools.product(M.proper, repeat=2):
        assert phi[int(M.comp[a, b])] == model.comp[phi[a], phi[b]]


def test_match_wrong_parameters():
    G = mm(2, 3, 1).group
    M = end_of_mm(2, 3, 1)
    proj = M.index_of(mm(2, 3, 1).projection.map)
    with pytest.raises(NoIsomorphismError):
        match_with_bruteforce(G, M, build_model(MMGroupSpec.make(3, 2, 1)), proj)
    with pytest.raises(ValueError):
        match_with_bruteforce(G, M, build_model(MMGroupSpec.make(2, 3, 1)), M.identity_index)
    with pytest.raises(ValueError):
        match_with_bruteforce(mm(3, 2, 1).group, M, build_model(MMGroupSpec.make(2, 3, 1)), proj)


def test_model_export():
    m = build_model(spec231())
    data = json.loads(m.dumps())
    assert data["schema"] == 1
    assert data["params"] == {"p": 2, "q": 3, "v": 1, "u": 2}
    assert len(data["pairs"]) == 9 and data["comp"] == m.comp.tolist()
    assert m.render()[m.distinguished] == "[1; 0]"
