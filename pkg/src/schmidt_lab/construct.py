"""Miller-Moreno groups M(p, q, v), the comparison catalog, and ``.cayley`` files."""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import (
    DEFAULT_SUBGROUP_CAP,
    CapExceededError,
    Group,
    GroupHom,
    all_subgroups,
    center,
    derived_subgroup,
    direct_product,
    is_abelian,
    is_nilpotent,
    is_prime,
    semidirect_product,
    validate_group,
)
from .polyring import ResidueRing, build_residue_ring

log = logging.getLogger(__name__)

DEFAULT_CONSTRUCT_CAP = 5000


class CayleyFormatError(ValueError):
    """A malformed ``.cayley`` file; the message carries line and column."""


@dataclass(frozen=True, eq=False)
class MMGroupSpec:
    p: int
    q: int
    v: int
    ring: ResidueRing

    @classmethod
    def make(cls, p: int, q: int, v: int) -> "MMGroupSpec":
        if not (is_prime(p) and is_prime(q)) or p == q:
            raise ValueError("p and q must be distinct primes")
        if v < 1:
            raise ValueError("v must be at least 1")
        return cls(p, q, v, build_residue_ring(p, q))

    @property
    def u(self) -> int:
        return self.ring.u

    @property
    def order(self) -> int:
        return self.ring.size * self.q ** self.v


@dataclass(frozen=True, eq=False)
class MMGroup:
    """M(p, q, v) with its distinguished pieces.

    Element ``(f, n)`` sits at index ``f.index * q**v + n``; ``b = (0, 1)``
    and ``projection`` is the idempotent ``(f, n) -> (0, n)`` onto ``<b>``.
    """

    spec: MMGroupSpec
    group: Group
    b: int
    projection: GroupHom

    def index(self, f_index: int, n: int) -> int:
        return f_index * self.spec.q ** self.spec.v + n % self.spec.q ** self.spec.v


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    group: Group
    provenance: str


def _cyclic(n: int, name: str = "") -> Group:
    a = np.arange(n)
    return Group((a[:, None] + a[None, :]) % n, 0, name or f"C{n}")


def miller_moreno(spec: MMGroupSpec, *, verify: bool = True,
                  max_order: int = DEFAULT_CONSTRUCT_CAP,
                  subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> MMGroup:
    """Build M(p,q,v) on pairs (f, n) with (f1,n1)(f2,n2) = (f1*x^n2 + f2, n1+n2)."""
    if spec.order > max_order:
        raise CapExceededError(f"M({spec.p},{spec.q},{spec.v}) has order {spec.order} > cap {max_order}")
    ring = spec.ring
    qv = spec.q ** spec.v
    field_add = np.array([[(a + b).index for b in ring.elements] for a in ring.elements])
    N = Group(field_add, 0)
    H = _cyclic(qv)
    xp = ring.x_powers
    action = [[(f * xp[n % spec.q]).index for f in ring.elements] for n in range(qv)]
    G = semidirect_product(N, H, action, name=f"M({spec.p},{spec.q},{spec.v})")
    proj = GroupHom(G, G, [g % qv for g in G.elements()])
    mm = MMGroup(spec, G, 1, proj)
    if verify:
        _verify_mm(mm, subgroup_cap)
    return mm


def _verify_mm(mm: MMGroup, subgroup_cap: int) -> None:
    G, spec = mm.group, mm.spec
    qv = spec.q ** spec.v
    assert G.order == spec.ring.size * qv
    validate_group(G.table)
    assert mm.projection.is_homomorphism()
    d1 = derived_subgroup(G, 1)
    assert d1.elements == tuple(f * qv for f in range(spec.ring.size)), "G' must be {(f, 0)}"
    assert all(G.element_order(g) in (1, spec.p) for g in d1), "G' must be elementary abelian"
    assert derived_subgroup(G, 2).order == 1
    Z = center(G)
    assert Z.elements == tuple(range(0, qv, spec.q)), "Z(G) must be {(0, n) : q | n}"
    assert G.element_order(mm.b) == qv
    assert G.power(mm.b, spec.q) in Z
    assert not is_nilpotent(G)
    if G.order > subgroup_cap:
        log.warning("order %d above subgroup cap %d: proper-subgroup check skipped", G.order, subgroup_cap)
        return
    for H in all_subgroups(G, subgroup_cap):
        if H.order < G.order:
            assert is_abelian(G, H), "every proper subgroup must be abelian"


def _from_normal_form(elements, mul, name: str) -> Group:
    pos = {x: i for i, x in enumerate(elements)}
    t = [[pos[mul(a, b)] for b in elements] for a in elements]
    ident = next(i for i, a in enumerate(elements) if all(mul(a, b) == b for b in elements))
    return Group(np.array(t), ident, name)


def _permutation_group(gens, name: str) -> Group:
    n = len(gens[0])
    ident = tuple(range(n))
    # (s t)[i] = t[s[i]]: apply s first
    mul = lambda s, t: tuple(t[i] for i in s)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mul(a, tuple(g))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return _from_normal_form(sorted(seen), mul, name)


def _dihedral(n: int) -> Group:
    # r^i s^j with s r s = r^-1
    els = [(i, j) for j in range(2) for i in range(n)]
    mul = lambda a, b: ((a[0] + (-1) ** a[1] * b[0]) % n, (a[1] + b[1]) % 2)
    return _from_normal_form(els, mul, f"D{n}")


def _dicyclic(n: int, name: str) -> Group:
    # a^i x^j, a of order 2n, x^2 = a^n, x^-1 a x = a^-1
    m = 2 * n

    def mul(s, t):
        (i, j), (k, l) = s, t
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    return _from_normal_form([(i, j) for j in range(2) for i in range(m)], mul, name)


# quaternion units 1, i, j, k as 0..3; product of units -> (sign, unit)
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}
_Q8_ELEMENTS = [(s, u) for u in range(4) for s in (1, -1)]


def _q8() -> Group:
    def mul(a, b):
        s, u = _QUAT[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return _from_normal_form(_Q8_ELEMENTS, mul, "Q8")


def _sl23() -> Group:
    Q = _q8()
    pos = {x: i for i, x in enumerate(_Q8_ELEMENTS)}
    cycle = {0: 0, 1: 2, 2: 3, 3: 1}  # i -> j -> k -> i
    step = [pos[(s, cycle[u])] for (s, u) in _Q8_ELEMENTS]
    act = [list(range(8))]
    for _ in range(2):
        act.append([step[x] for x in act[-1]])
    return semidirect_product(Q, _cyclic(3), act, name="SL23")


def _c3_by_c4() -> Group:
    # generator of C4 inverts C3
    inv = [0, 2, 1]
    act = [[0, 1, 2], inv, [0, 1, 2], inv]
    return semidirect_product(_cyclic(3), _cyclic(4), act, name="C3:C4")


def _product(*names: str) -> Group:
    groups = [_cyclic(int(n[1:])) for n in names]
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return Group(G.table, G.identity, "x".join(names))


def _s(n):
    return _permutation_group([[1, 0] + list(range(2, n)), list(range(1, n)) + [0]], f"S{n}")


_BUILDERS = {
    "C2xC2": (lambda: _product("C2", "C2"), "direct product C2 x C2"),
    "C3xC3": (lambda: _product("C3", "C3"), "direct product C3 x C3"),
    "C2xC4": (lambda: _product("C2", "C4"), "direct product C2 x C4"),
    "C2xC2xC2": (lambda: _product("C2", "C2", "C2"), "direct product C2 x C2 x C2"),
    "S3": (lambda: _s(3), "permutations of 3 points"),
    "D4": (lambda: _dihedral(4), "dihedral normal form r^i s^j, n=4"),
    "Q8": (_q8, "quaternion units +-1, +-i, +-j, +-k"),
    "D5": (lambda: _dihedral(5), "dihedral normal form r^i s^j, n=5"),
    "D6": (lambda: _dihedral(6), "dihedral normal form r^i s^j, n=6"),
    "A4": (lambda: _permutation_group([[1, 2, 0, 3], [1, 0, 3, 2]], "A4"), "even permutations of 4 points"),
    "Dic3": (lambda: _dicyclic(3, "Dic3"), "dicyclic normal form a^i x^j, a^6 = 1, x^2 = a^3"),
    "S4": (lambda: _s(4), "permutations of 4 points"),
    "SL23": (_sl23, "Q8 x| C3, generator cycling i -> j -> k"),
    "C3:C4": (_c3_by_c4, "C3 x| C4, generator inverting C3"),
}

CYCLIC_MAX = 24


def catalog_names() -> list[str]:
    return [f"C{n}" for n in range(1, CYCLIC_MAX + 1)] + list(_BUILDERS)


def catalog_entry(name: str) -> CatalogEntry:
    m = re.fullmatch(r"C(\d+)", name)
    if m and 1 <= int(m.group(1)) <= CYCLIC_MAX:
        n = int(m.group(1))
        return CatalogEntry(name, _cyclic(n, name), f"integers modulo {n} under addition")
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog group {name!r}")
    build, provenance = _BUILDERS[name]
    G = build()
    return CatalogEntry(name, Group(G.table, G.identity, name), provenance)


def catalog(name: str) -> Group:
    return catalog_entry(name).group


def mm_parameter_triples(max_order: int) -> list[tuple[int, int, int]]:
    """All (p, q, v) with |M(p,q,v)| <= max_order, sorted by (order, p, q, v)."""
    from .polyring import multiplicative_order

    out = []
    primes = [r for r in range(2, max_order + 1) if is_prime(r)]
    for p, q in itertools.permutations(primes, 2):
        size = p ** multiplicative_order(p, q)
        v = 1
        while size * q ** v <= max_order:
            out.append((size * q ** v, p, q, v))
            v += 1
    return [t[1:] for t in sorted(out)]


def write_cayley(G: Group, path) -> None:
    lines = [str(G.order)]
    lines += [" ".join(str(int(x)) for x in row) for row in G.table]
    Path(path).write_text("\n".join(lines) + "\n")


def parse_cayley(text: str, name: str = "") -> np.ndarray:
    """Parse ``.cayley`` text into an index table (no axiom checks)."""
    rows: list[list[int]] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        values = []
        for col, tok in toks:
            try:
                values.append(int(tok))
            except ValueError:
                raise CayleyFormatError(f"{name or '<input>'}:{lineno}:{col}: not an integer: {tok!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise CayleyFormatError(f"{name or '<input>'}:{lineno}:1: first line must be the order n >= 1")
            n = values[0]
            continue
        if len(values) != n:
            raise CayleyFormatError(f"{name or '<input>'}:{lineno}:1: expected {n} entries, got {len(values)}")
        for (col, _), x in zip(toks, values):
            if not 0 <= x < n:
                raise CayleyFormatError(f"{name or '<input>'}:{lineno}:{col}: entry {x} out of range [0, {n})")
        rows.append(values)
    if n is None:
        raise CayleyFormatError(f"{name or '<input>'}: empty file")
    if len(rows) != n:
        raise CayleyFormatError(f"{name or '<input>'}: expected {n} rows, got {len(rows)}")
    return np.array(rows, dtype=np.int32)


def read_cayley(path) -> Group:
    path = Path(path)
    table = parse_cayley(path.read_text(), str(path))
    return validate_group(table, path.stem)
