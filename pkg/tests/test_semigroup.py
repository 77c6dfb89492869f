import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schmidt_lab.semigroup import (
    FiniteSemigroup,
    cyclic_monoid_model,
    fingerprint,
    generating_set,
    is_isomorphism,
    isomorphic,
    isomorphic_exhaustive,
)
from conftest import end_of


def relabel(S, perm):
    """S with element a renamed perm[a]."""
    p = np.asarray(perm)
    inv = np.argsort(p)
    return FiniteSemigroup(p[S.comp[inv[:, None], inv[None, :]]])


def test_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteSemigroup(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValueError):
        FiniteSemigroup(np.array([[0, 1, 0]]))


def test_associativity_check():
    assert cyclic_monoid_model(12).is_associative()
    bad = FiniteSemigroup(np.array([[1, 0], [0, 0]]))
    assert not bad.is_associative()
    big = cyclic_monoid_model(240)
    assert big.is_associative()


def test_fingerprint_elements():
    S = cyclic_monoid_model(4)
    fp = fingerprint(S).elements
    # 0: idempotent zero; 1: identity; 2: 2*2 = 0 so index 2 period 1; 3: order-2 unit
    assert fp[0] == (True, 1, 1, 1, 1)
    assert fp[1] == (True, 1, 1, 4, 4)
    assert fp[2] == (False, 2, 1, 2, 2)
    assert fp[3] == (False, 1, 2, 4, 4)
    assert fingerprint(S) == fingerprint(relabel(S, [3, 1, 0, 2]))


def test_cyclic_model():
    S = cyclic_monoid_model(9)
    assert len(S) == 9
    assert int(S.comp[4, 7]) == 28 % 9
    with pytest.raises(ValueError):
        cyclic_monoid_model(0)


@pytest.mark.parametrize("n", [1, 2, 6, 12, 24])
def test_end_of_cyclic_matches_model(n):
    assert isomorphic(end_of(f"C{n}").semigroup(), cyclic_monoid_model(n)) is not None


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D4", "C2xC2xC2", "SL23"])
def test_self_isomorphism(name):
    S = end_of(name).semigroup()
    phi = isomorphic(S, S)
    assert phi is not None and is_isomorphism(S, S, phi)


@pytest.mark.parametrize("name", ["S3", "A4", "D5", "Q8"])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_relabelled_isomorphic(name, seed):
    S = end_of(name).semigroup()
    perm = np.random.default_rng(seed).permutation(len(S))
    T = relabel(S, perm)
    phi = isomorphic(S, T)
    assert phi is not None and is_isomorphism(S, T, phi)
    back = isomorphic(T, S)
    assert back is not None and is_isomorphism(T, S, back)


@pytest.mark.parametrize("a,b", [("S3", "C6"), ("A4", "SL23"), ("Q8", "D4"), ("C2xC4", "C8"), ("C3xC3", "C9")])
def test_symmetry(a, b):
    S, T = end_of(a).semigroup(), end_of(b).semigroup()
    assert (isomorphic(S, T) is None) == (isomorphic(T, S) is None)


def test_anchor():
    S = cyclic_monoid_model(6)
    # units are 1 and 5; 1 can only go to 1
    assert isomorphic(S, S, anchor=(1, 5)) is None
    # (Z_6, *) has no nontrivial automorphism; (Z_5, *) has a -> a^3
    assert isomorphic(S, S, anchor=(2, 4)) is None
    T = cyclic_monoid_model(5)
    phi = isomorphic(T, T, anchor=(2, 3))
    assert phi == [0, 1, 3, 2, 4]


def _all_small_tables():
    """Every associative table on 3 points."""
    out = []
    for vals in itertools.product(range(3), repeat=9):
        S = FiniteSemigroup(np.array(vals).reshape(3, 3))
        if S.is_associative():
            out.append(S)
    return out


def test_pruning_soundness_order3_exhaustive():
    sems = _all_small_tables()
    assert len(sems) == 113  # associative binary operations on a 3-element set
    rng = np.random.default_rng(1)
    for i in rng.choice(len(sems), 60, replace=False):
        for j in rng.choice(len(sems), 30, replace=False):
            S, T = sems[i], sems[j]
            fast = isomorphic(S, T)
            slow = isomorphic_exhaustive(S, T)
            assert (fast is None) == (slow is None)


@pytest.mark.parametrize("a,b", [
    ("C2xC2", "C4"), ("C2", "C3"), ("S3", "S3"),
])
def test_pruning_soundness_vs_exhaustive_small_ends(a, b):
    S, T = end_of(a).semigroup(), end_of(b).semigroup()
    if len(S) == len(T) and len(S) <= 8:
        assert (isomorphic(S, T) is None) == (isomorphic_exhaustive(S, T) is None)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10 ** 6))
def test_cyclic_models_vs_exhaustive(m, n, seed):
    S, T = cyclic_monoid_model(m), cyclic_monoid_model(n)
    perm = np.random.default_rng(seed).permutation(n)
    T = relabel(T, perm)
    fast = isomorphic(S, T)
    if m == n:
        assert fast is not None
    slow = isomorphic_exhaustive(S, T)
    assert (fast is None) == (slow is None)


def test_generating_set_generates():
    S = end_of("A4").semigroup()
    gens = generating_set(S, list(range(len(S))))
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        a = frontier.pop()
        for g in gens:
            for c in (int(S.comp[a, g]), int(S.comp[g, a])):
                if c not in seen:
                    seen.add(c)
                    frontier.append(c)
    assert len(seen) == len(S)


def test_end_s3_not_end_c6():
    assert isomorphic(end_of("S3").semigroup(), end_of("C6").semigroup()) is None
