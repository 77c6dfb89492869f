import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schmidt_lab import _kernels
from conftest import cat

BACKENDS = _kernels.backends()


def test_compiled_backend_is_built():
    # the package is expected to ship its extension; the fallback is still tested below
    assert _kernels.BACKEND in ("cython", "python")
    if not os.environ.get("SCHMIDT_LAB_PURE_PYTHON"):
        assert _kernels.BACKEND == "cython"


def _run_closure(mod, table, assign, gens):
    src = mod.as_table(table)
    n = len(table)
    phi, used = mod.new_map(n), mod.new_map(n)
    zeros = mod.as_vector([0] * n)
    phi[0] = 0
    for g, h in assign.items():
        phi[g] = h
    r = mod.closure_extend(src, src, phi, used, gens, zeros, zeros, False)
    return r, [int(x) for x in phi]


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D5", "C6"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_closure_extend_backends_agree(name, data):
    G = cat(name)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3, unique=True))
    imgs = data.draw(st.lists(st.integers(0, G.order - 1), min_size=len(gens), max_size=len(gens)))
    assign = dict(zip(gens, imgs))
    results = [_run_closure(m, G.table, assign, gens) for m in BACKENDS]
    for r in results[1:]:
        assert r[0] == results[0][0]
        if r[0] >= 0:
            assert r[1] == results[0][1]


def test_closure_extend_detects_non_homomorphism():
    G = cat("C6")
    for mod in BACKENDS:
        r, phi = _run_closure(mod, G.table, {1: 1}, [1])
        assert r == 6 and phi == list(range(6))
    S3 = cat("S3")
    for mod in BACKENDS:
        # a transposition sent to itself and a 3-cycle sent to a transposition is inconsistent
        invs = [g for g in range(6) if S3.element_order(g) == 2]
        threes = [g for g in range(6) if S3.element_order(g) == 3]
        r, _ = _run_closure(mod, S3.table, {threes[0]: invs[0], invs[0]: invs[0]}, [threes[0], invs[0]])
        assert r == -1


def test_closure_extend_injectivity_and_classes():
    G = cat("C4")
    for mod in BACKENDS:
        src = mod.as_table(G.table)
        phi, used = mod.new_map(4), mod.new_map(4)
        phi[0], used[0] = 0, 0
        phi[1], used[2] = 2, 1  # 1 -> 2 collapses, so injectivity must fail
        cls = mod.as_vector([0, 0, 0, 0])
        assert mod.closure_extend(src, src, phi, used, [1], cls, cls, True) == -1
        phi, used = mod.new_map(4), mod.new_map(4)
        phi[0], used[0] = 0, 0
        phi[1], used[3] = 3, 1
        orders = mod.as_vector(G.element_orders)
        assert mod.closure_extend(src, src, phi, used, [1], orders, orders, True) == 4


@settings(max_examples=30, deadline=None)
@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=20))
def test_compose_table_backends_agree(perms):
    maps = np.array(sorted({tuple(p) for p in perms}), dtype=np.int32)
    tables = [np.asarray(m.compose_table(maps)) for m in BACKENDS]
    for t in tables[1:]:
        assert np.array_equal(t, tables[0])
    for i in range(len(maps)):
        for j in range(len(maps)):
            composed = tuple(maps[j][maps[i]])
            expect = next((k for k in range(len(maps)) if tuple(maps[k]) == composed), -1)
            assert tables[0][i, j] == expect


def test_pure_python_pipeline_matches():
    code = (
        "from schmidt_lab import KERNEL_BACKEND, catalog, enumerate_end, isomorphic\n"
        "M = enumerate_end(catalog('A4')); N = enumerate_end(catalog('SL23'))\n"
        "print(KERNEL_BACKEND, len(M), M.comp.sum(), isomorphic(M.semigroup(), N.semigroup()) is not None)\n"
    )
    env = dict(os.environ, SCHMIDT_LAB_PURE_PYTHON="1")
    out_py = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    env.pop("SCHMIDT_LAB_PURE_PYTHON")
    out_c = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    assert out_py[0] == "python"
    assert out_py[1:] == out_c[1:] == [out_c[1], out_c[2], "True"]
    assert out_c[1] == "33"


def test_benchmark_runs():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    out = subprocess.run([sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"), "--repeat", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert "End(M(2,3,2)) enumeration" in out and "python" in out
