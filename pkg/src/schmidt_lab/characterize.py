"""Schmidt groups: the eight-property test on End(G) and the subgroup-lattice oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

from .endo import EndoMonoid, bracket_class, enumerate_end, idempotents_I0, stabilizer_sets
from .groups import (
    DEFAULT_SUBGROUP_CAP,
    Group,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    derived_subgroup,
    is_abelian,
    is_nilpotent,
    is_normal,
    is_prime,
    prime_power,
    quotient,
    subgroup_generated,
    sylow_subgroup,
)
from .polyring import multiplicative_order
from .semigroup import cyclic_monoid_model, isomorphic

PROPERTY_NAMES = (
    "K(x) ~ End(C(q^v))",
    "H(x) = {0}",
    "I0 = [x]",
    "|I0| = p^u",
    "End \\ Aut = union of K(y)",
    "z in cap K(y) <=> z^v = 0",
    "D(x) is a p'-group",
    "Sylow p of V(x) elementary abelian of order p^u",
)

ALL_SYLOWS_LIMIT = 5000


@dataclass(frozen=True)
class SchmidtVerdict:
    is_schmidt: bool
    is_miller_moreno: bool
    params: tuple[int, int, int] | None = None
    witness: Subgroup | None = None


@dataclass
class CandidateResult:
    x_index: int
    params: tuple[int, int, int, int]
    props: list[bool]
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.props)


@dataclass
class CharacterizationReport:
    group: Group
    inferred_params: tuple[int, int, int, int] | None
    inferred: bool
    candidates: list[CandidateResult]
    verdict: bool
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "group": {"name": self.group.name, "order": self.group.order},
            "inferred_params": None if self.inferred_params is None else dict(zip("pqvu", self.inferred_params)),
            "params_inferred": self.inferred,
            "candidates": [
                {
                    "x_index": c.x_index,
                    "params": dict(zip("pqvu", c.params)),
                    "props": c.props,
                    "witnesses": c.witnesses,
                }
                for c in self.candidates
            ],
            "verdict": self.verdict,
            "diagnostics": self.diagnostics,
        }


def brute_is_schmidt(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> SchmidtVerdict:
    """Decide Schmidt and Miller-Moreno from the subgroup lattice."""
    subs = [H for H in all_subgroups(G, cap) if H.order < G.order]
    abelian = is_abelian(G)
    nilpotent = is_nilpotent(G)
    non_nil = next((H for H in subs if not is_nilpotent(H.as_group())), None)
    non_ab = next((H for H in subs if not is_abelian(G, H)), None)
    schmidt = not nilpotent and non_nil is None
    mm = not abelian and non_ab is None
    params = _schmidt_params(G) if schmidt else None
    witness = None
    if not schmidt:
        witness = non_nil
    elif not mm:
        witness = non_ab
    return SchmidtVerdict(schmidt, mm, params, witness)


def _schmidt_params(G: Group) -> tuple[int, int, int]:
    D = derived_subgroup(G)
    pp = prime_power(D.order)
    assert pp is not None, "derived subgroup of a Schmidt group is a nontrivial p-group"
    p = pp[0]
    qq = prime_power(G.order // D.order)
    assert qq is not None and qq[0] != p, "G/G' must have prime-power order coprime to p"
    Q, _ = quotient(G, D)
    assert max(Q.element_orders) == Q.order, "G/G' must be cyclic"
    return p, qq[0], qq[1]


def brute_is_miller_moreno(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> bool:
    if is_abelian(G):
        return False
    return all(is_abelian(G, H) for H in all_subgroups(G, cap) if H.order < G.order)


def infer_params(M: EndoMonoid) -> list[tuple[int, int, int]]:
    """Candidate (p, q, v) read off I0, sorted by (q, v)."""
    I0 = idempotents_I0(M)
    pp = prime_power(len(I0)) if I0 else None
    if pp is None:
        return []
    p, k = pp
    out = set()
    for x in I0:
        im = M.elem(x).image()
        qv = prime_power(im.order)
        if qv is None or qv[0] == p:
            continue
        H = im.as_group()
        if max(H.element_orders) != H.order:
            continue
        if multiplicative_order(p, qv[0]) == k:
            out.add((p, qv[0], qv[1]))
    return sorted(out, key=lambda t: (t[1], t[2], t[0]))


class _Shared:
    """Quantities of End(G) that do not depend on the candidate idempotent."""

    def __init__(self, M: EndoMonoid):
        self.M = M
        self.I0 = idempotents_I0(M)
        self.K = {y: set(stabilizer_sets(M, y).K) for y in self.I0}
        self.proper = set(M.proper)
        union = set().union(*self.K.values()) if self.K else set()
        self.prop5 = union == self.proper
        self.prop5_witness = sorted(union ^ self.proper)[:1]
        self.meet = set.intersection(*self.K.values()) if self.K else set(range(len(M)))
        self._iso_cache: dict[tuple[int, int], bool] = {}

    def prop6(self, v: int) -> tuple[bool, list[int]]:
        M = self.M
        bad = [z for z in range(len(M)) if (z in self.meet) != (M.power(z, v) == M.zero_index)]
        return not bad, bad[:1]

    def prop1(self, x: int, qv: int) -> bool:
        key = (x, qv)
        if key not in self._iso_cache:
            Kx = sorted(self.K[x])
            model = cyclic_monoid_model(qv)
            self._iso_cache[key] = len(Kx) == len(model) and isomorphic(self.M.semigroup(Kx), model) is not None
        return self._iso_cache[key]


def _elementary_abelian(G: Group, p: int) -> bool:
    return is_abelian(G) and all(o in (1, p) for o in G.element_orders)


def _evaluate(shared: _Shared, x: int, params, all_sylows: bool) -> CandidateResult:
    p, q, v = params
    u = multiplicative_order(p, q)
    M = shared.M
    st = stabilizer_sets(M, x)
    wit: dict = {}
    props = [False] * 8
    props[0] = shared.prop1(x, q ** v)
    props[1] = st.H == [M.zero_index]
    if not props[1]:
        wit["H"] = st.H
    br = bracket_class(M, x)
    props[2] = sorted(br) == sorted(shared.I0)
    if not props[2]:
        wit["bracket_class_size"] = len(br)
    props[3] = len(shared.I0) == p ** u
    props[4] = shared.prop5
    if not props[4]:
        wit["prop5_mismatch"] = shared.prop5_witness
    props[5], bad = shared.prop6(v)
    if bad:
        wit["prop6_counterexample"] = bad[0]
    props[6] = len(st.D) % p != 0
    wit["D_order"] = len(st.D)
    V = M.subgroup_group(st.V)
    S = sylow_subgroup(V, p)
    ok8 = S.order == p ** u and _elementary_abelian(S.as_group(), p)
    if ok8 and all_sylows and V.order <= ALL_SYLOWS_LIMIT:
        for g in V.elements():
            gi = V.inv(g)
            conj = Subgroup(V, [V.mul(V.mul(gi, s), g) for s in S])
            if not _elementary_abelian(conj.as_group(), p):
                ok8 = False
                break
    props[7] = ok8
    wit["V_order"] = V.order
    wit["sylow_p_order"] = S.order
    return CandidateResult(x, (p, q, v, u), props, wit)


def check_theorem31(G: Group, params: tuple[int, int, int] | None = None,
                    M: EndoMonoid | None = None, cap: int | None = None,
                    all_sylows: bool = False) -> CharacterizationReport:
    """Evaluate properties 1-8 for every x in I0(G).

    Without ``params`` the candidates from :func:`infer_params` are tried in
    order and the first passing one is reported.
    """
    if M is None:
        M = enumerate_end(G, cap)
    shared = _Shared(M)
    diagnostics: list[str] = []
    if params is not None:
        p, q, v = params
        if not (is_prime(p) and is_prime(q)) or p == q or v < 1:
            raise ValueError("p and q must be distinct primes and v >= 1")
        trials = [tuple(params)]
        inferred = False
    else:
        trials = infer_params(M)
        inferred = True
        if not trials:
            diagnostics.append("no consistent (p, q, v) could be inferred from I0")
    candidates = []
    winner = None
    for trial in trials:
        rows = [_evaluate(shared, x, trial, all_sylows) for x in shared.I0]
        candidates.extend(rows)
        if winner is None and any(r.passed for r in rows):
            winner = trial
    if not shared.I0:
        diagnostics.append("I0(G) is empty")
    u = None if winner is None else multiplicative_order(winner[0], winner[1])
    return CharacterizationReport(
        G, None if winner is None else (*winner, u), inferred, candidates, winner is not None, diagnostics
    )


@dataclass(frozen=True)
class AgreementRow:
    name: str
    order: int
    oracle: SchmidtVerdict
    verdict: bool
    params: tuple | None
    agree: bool


def oracle_agreement(groups, cap: int | None = None) -> list[AgreementRow]:
    """Compare the subgroup-lattice oracle with the End(G) test on each group."""
    rows = []
    for G in groups:
        oracle = brute_is_schmidt(G)
        M = enumerate_end(G, cap)
        if oracle.is_schmidt:
            rep = check_theorem31(G, oracle.params, M=M)
            inferred = check_theorem31(G, None, M=M)
            agree = rep.verdict and inferred.verdict and inferred.inferred_params[:3] == oracle.params
        else:
            rep = check_theorem31(G, None, M=M)
            agree = not rep.verdict
        rows.append(AgreementRow(G.name, G.order, oracle, rep.verdict, rep.inferred_params, agree))
    return rows


def mm_criterion_clauses(P: Group, H: Subgroup, d: int) -> dict[str, bool]:
    """Clauses a), a'), b), c), d), d'), e), e') for ``P = H x| <d>``."""
    Hset = set(H)
    D = subgroup_generated(P, [d])
    hp = prime_power(H.order)
    dq = prime_power(D.order)
    b = (
        hp is not None and dq is not None and hp[0] != dq[0]
        and is_normal(P, H) and Hset & set(D) == {P.identity}
        and H.order * D.order == P.order
    )
    q = dq[0] if dq else None
    dq_elem = P.power(d, q) if q else P.identity
    C = set(centralizer(P, [d])) & Hset
    Z = set(center(P))
    return {
        "a": not is_abelian(P),
        "a'": not is_nilpotent(P),
        "b": b,
        "c": dq_elem in Z,
        "d": is_abelian(P, H),
        "d'": C <= Z,
        "e": all(subgroup_generated(P, [h, d]).order == P.order for h in Hset - {P.identity}),
        "e'": all(subgroup_generated(P, [h, d]).order == P.order for h in Hset - C),
    }
