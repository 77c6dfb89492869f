"""Polynomials over Z_p and the field Z_p[x]/(psi) with psi | (x^q - 1)/(x - 1).

Coefficient vectors are stored lowest degree first without trailing zeros;
the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .groups import is_prime

__all__ = [
    "PolyModP",
    "ResidueElem",
    "ResidueRing",
    "build_residue_ring",
    "cyclotomic_quotient",
    "multiplicative_order",
    "ring_arith",
    "substitute_power",
]


def multiplicative_order(a: int, m: int) -> int:
    """Order of ``a`` in the unit group of Z_m."""
    a %= m
    if m == 1:
        return 1
    k, x = 1, a
    while x != 1:
        x = x * a % m
        k += 1
        if k > m:
            raise ValueError(f"{a} is not a unit modulo {m}")
    return k


def _trim(coeffs, p):
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyModP:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    @classmethod
    def x_power(cls, p: int, k: int) -> "PolyModP":
        return cls(p, (0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "PolyModP") -> "PolyModP":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyModP(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "PolyModP":
        return PolyModP(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "PolyModP") -> "PolyModP":
        return self + (-other)

    def __mul__(self, other: "PolyModP") -> "PolyModP":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyModP(self.p, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyModP(self.p, out)

    def scale(self, c: int) -> "PolyModP":
        return PolyModP(self.p, [c * x for x in self.coeffs])

    def divmod(self, d: "PolyModP") -> tuple["PolyModP", "PolyModP"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        q = [0] * max(len(r) - len(d.coeffs) + 1, 0)
        lead_inv = pow(d.coeffs[-1], -1, p)
        dd = d.degree
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k] * lead_inv % p
            if c:
                q[k - dd] = c
                for i, y in enumerate(d.coeffs):
                    r[k - dd + i] = (r[k - dd + i] - c * y) % p
        return PolyModP(p, q), PolyModP(p, r)

    def __mod__(self, d: "PolyModP") -> "PolyModP":
        return self.divmod(d)[1]

    def divides(self, other: "PolyModP") -> bool:
        return (other % self).is_zero()

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % self.p
        return acc

    def sort_key(self) -> tuple:
        """Degree first, then coefficients from the leading term down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def render(self, var: str = "x") -> str:
        """``"c0 + c1*x + c2*x^2"`` with zero terms dropped; ``"0"`` for zero."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}")
            else:
                terms.append(f"{c}*{var}^{i}")
        return " + ".join(terms) if terms else "0"

    def __str__(self):
        return self.render()


def cyclotomic_quotient(p: int, q: int) -> PolyModP:
    """(x^q - 1)/(x - 1) = x^(q-1) + ... + x + 1 over Z_p."""
    return PolyModP(p, (1,) * q)


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield PolyModP(p, low + (1,))


def _is_irreducible(f: PolyModP) -> bool:
    for d in range(1, f.degree // 2 + 1):
        if any(g.divides(f) for g in _monic_polys(f.p, d)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class ResidueRing:
    """The field Z_p[x]/(psi); elements are indexed by their base-p coefficient digits."""

    p: int
    q: int
    psi: PolyModP
    u: int
    factors: tuple[PolyModP, ...] = ()

    def __repr__(self):
        return f"ResidueRing(p={self.p}, q={self.q}, psi={self.psi.render()}, u={self.u})"

    @property
    def size(self) -> int:
        return self.p ** self.u

    def elem(self, coeffs) -> "ResidueElem":
        if isinstance(coeffs, PolyModP):
            poly = coeffs
        else:
            poly = PolyModP(self.p, coeffs)
        return ResidueElem(self, poly % self.psi)

    def from_index(self, i: int) -> "ResidueElem":
        digits = []
        for _ in range(self.u):
            digits.append(i % self.p)
            i //= self.p
        return self.elem(digits)

    @cached_property
    def elements(self) -> tuple["ResidueElem", ...]:
        return tuple(self.from_index(i) for i in range(self.size))

    @property
    def zero(self) -> "ResidueElem":
        return self.elem(())

    @property
    def one(self) -> "ResidueElem":
        return self.elem((1,))

    @property
    def x(self) -> "ResidueElem":
        return self.elem((0, 1))

    @cached_property
    def x_minus_one_inv(self) -> "ResidueElem":
        return (self.x - self.one).inverse()

    @cached_property
    def x_powers(self) -> tuple["ResidueElem", ...]:
        """x^0, ..., x^(q-1)."""
        out = [self.one]
        for _ in range(self.q - 1):
            out.append(out[-1] * self.x)
        return tuple(out)

    def verify(self) -> None:
        """Assert the defining properties of the ring; raises ``AssertionError``."""
        phi = cyclotomic_quotient(self.p, self.q)
        assert self.psi.is_monic() and self.psi.degree == self.u
        assert self.psi.divides(phi), "psi must divide (x^q-1)/(x-1)"
        assert _is_irreducible(self.psi), "psi must be irreducible"
        assert self.u == multiplicative_order(self.p, self.q)
        xq = PolyModP.x_power(self.p, self.q) - PolyModP(self.p, (1,))
        assert self.psi.divides(xq)
        for k in range(1, self.q):
            xk = PolyModP.x_power(self.p, k) - PolyModP(self.p, (1,))
            assert not self.psi.divides(xk), "x must have order exactly q"
        assert self.psi(1) != 0, "x - 1 must be invertible"


@dataclass(frozen=True, eq=False)
class ResidueElem:
    ring: ResidueRing
    rep: PolyModP

    def __eq__(self, other):
        if isinstance(other, ResidueElem):
            return self.ring is other.ring and self.rep.coeffs == other.rep.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.rep.coeffs))

    def __repr__(self):
        return f"ResidueElem({self.rep.render()})"

    def __str__(self):
        return self.rep.render()

    @property
    def index(self) -> int:
        return sum(c * self.ring.p ** i for i, c in enumerate(self.rep.coeffs))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def _check(self, other):
        if other.ring is not self.ring:
            raise ValueError("elements belong to different rings")

    def __add__(self, other):
        self._check(other)
        return ResidueElem(self.ring, self.rep + other.rep)

    def __sub__(self, other):
        self._check(other)
        return ResidueElem(self.ring, self.rep - other.rep)

    def __neg__(self):
        return ResidueElem(self.ring, -self.rep)

    def __mul__(self, other):
        self._check(other)
        return ResidueElem(self.ring, (self.rep * other.rep) % self.ring.psi)

    def inverse(self) -> "ResidueElem":
        """Inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        p = self.ring.p
        r0, r1 = self.ring.psi, self.rep
        s0, s1 = PolyModP(p, ()), PolyModP(p, (1,))
        while not r1.is_zero():
            quo, rem = r0.divmod(r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
        # r0 is a nonzero constant since psi is irreducible
        return ResidueElem(self.ring, s0.scale(pow(r0.coeffs[0], -1, p)) % self.ring.psi)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** -k
        r, b = self.ring.one, self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r


def build_residue_ring(p: int, q: int) -> ResidueRing:
    """Factor (x^q-1)/(x-1) over Z_p by trial division and build Z_p[x]/(psi).

    Every irreducible factor has degree u = ord_q(p), so candidates are the
    monic polynomials of degree u.  psi is the least factor under
    :meth:`PolyModP.sort_key`.
    """
    if not (is_prime(p) and is_prime(q)):
        raise ValueError("p and q must be primes")
    if p == q:
        raise ValueError("p and q must be distinct primes")
    u = multiplicative_order(p, q)
    phi = cyclotomic_quotient(p, q)
    factors = [f for f in _monic_polys(p, u) if f.divides(phi) and _is_irreducible(f)]
    factors.sort(key=PolyModP.sort_key)
    if len(factors) * u != q - 1:  # pragma: no cover - number theory guarantees this
        raise RuntimeError(f"expected {(q - 1) // u} factors of degree {u}, found {len(factors)}")
    ring = ResidueRing(p, q, factors[0], u, tuple(factors))
    ring.verify()
    return ring


def ring_with_factor(p: int, q: int, psi: PolyModP) -> ResidueRing:
    """The ring for an explicit irreducible factor ``psi`` (checked)."""
    ring = ResidueRing(p, q, psi, psi.degree, build_residue_ring(p, q).factors)
    ring.verify()
    return ring


def ring_arith(a: ResidueElem, b: ResidueElem | None, mode: str) -> ResidueElem:
    if mode == "add":
        return a + b
    if mode == "mul":
        return a * b
    if mode == "inv":
        return a.inverse()
    raise ValueError(f"unknown mode {mode!r}")


def substitute_power(f: ResidueElem, n: int) -> ResidueElem:
    """f(x^n) reduced in the ring (x has order q there)."""
    ring = f.ring
    xn = ring.x_powers[n % ring.q]
    acc = ring.zero
    for c in reversed(f.rep.coeffs):
        acc = acc * xn + ring.elem((c,))
    return acc
