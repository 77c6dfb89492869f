import functools

import pytest

from schmidt_lab.construct import MMGroupSpec, catalog, miller_moreno
from schmidt_lab.endo import enumerate_end


@functools.lru_cache(maxsize=None)
def cat(name):
    return catalog(name)


@functools.lru_cache(maxsize=None)
def mm(p, q, v):
    return miller_moreno(MMGroupSpec.make(p, q, v))


@functools.lru_cache(maxsize=None)
def end_of(name):
    return enumerate_end(cat(name))


@functools.lru_cache(maxsize=None)
def end_of_mm(p, q, v):
    return enumerate_end(mm(p, q, v).group)


@pytest.fixture
def S3():
    return cat("S3")


@pytest.fixture
def A4():
    return cat("A4")


@pytest.fixture
def SL23():
    return cat("SL23")


@functools.lru_cache(maxsize=None)
def corpus():
    """Catalog groups of order <= 24 and every M(p,q,v) of order <= 40."""
    from schmidt_lab.construct import catalog_names, mm_parameter_triples

    groups = [cat(n) for n in catalog_names() if cat(n).order <= 24]
    groups += [mm(*t).group for t in mm_parameter_triples(40)]
    return tuple(groups)


@functools.lru_cache(maxsize=None)
def corpus_end(i):
    return enumerate_end(corpus()[i])
