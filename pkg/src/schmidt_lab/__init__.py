"""Schmidt groups and their endomorphism semigroups."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .characterize import brute_is_miller_moreno, brute_is_schmidt, check_theorem31, oracle_agreement
from .construct import MMGroupSpec, catalog, catalog_names, miller_moreno, read_cayley, write_cayley
from .endo import EndoMonoid, enumerate_end
from .groups import Group, are_isomorphic_groups, validate_group
from .semigroup import FiniteSemigroup, cyclic_monoid_model, isomorphic
from .symbolic import build_model, match_with_bruteforce

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "EndoMonoid",
    "FiniteSemigroup",
    "Group",
    "MMGroupSpec",
    "are_isomorphic_groups",
    "brute_is_miller_moreno",
    "brute_is_schmidt",
    "build_model",
    "catalog",
    "catalog_names",
    "check_theorem31",
    "cyclic_monoid_model",
    "enumerate_end",
    "isomorphic",
    "match_with_bruteforce",
    "miller_moreno",
    "oracle_agreement",
    "read_cayley",
    "validate_group",
    "write_cayley",
]
