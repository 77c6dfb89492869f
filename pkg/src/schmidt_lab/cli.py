"""Command-line interface.

Exit codes: 0 success/pass, 1 checked and failed, 2 oracle disagreement
(an internal bug by the theorem), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .characterize import PROPERTY_NAMES, brute_is_schmidt, check_theorem31, oracle_agreement
from .construct import (
    CayleyFormatError,
    MMGroupSpec,
    catalog_entry,
    catalog_names,
    miller_moreno,
    mm_parameter_triples,
    read_cayley,
    write_cayley,
)
from .endo import DEFAULT_END_CAP, enumerate_end, idempotents_I0
from .groups import (
    DEFAULT_SUBGROUP_CAP,
    CapExceededError,
    Group,
    GroupAxiomError,
    are_isomorphic_groups,
    center,
    derived_subgroup,
)
from .polyring import multiplicative_order
from .semigroup import fingerprint, isomorphic

EXIT_OK, EXIT_FAIL, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_group_order: int = DEFAULT_END_CAP
    max_subgroup_order: int = DEFAULT_SUBGROUP_CAP
    output: str = "text"
    jobs: int = 1

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        end_cap, sub_cap = DEFAULT_END_CAP, DEFAULT_SUBGROUP_CAP
        env = os.environ.get("SCHMIDT_LAB_MAX_ORDER")
        if env:
            try:
                end_cap = sub_cap = int(env)
            except ValueError:
                raise InputError(f"SCHMIDT_LAB_MAX_ORDER must be an integer, got {env!r}") from None
        if end_cap < 1 or sub_cap < 1 or args.jobs < 1:
            raise InputError("caps and --jobs must be positive")
        return cls(end_cap, sub_cap, args.format, args.jobs)


def load_group(source: str) -> Group:
    """A ``.cayley`` path, or ``catalog:NAME``."""
    if source.startswith("catalog:"):
        try:
            return catalog_entry(source.split(":", 1)[1]).group
        except KeyError as e:
            raise InputError(str(e.args[0])) from None
    path = Path(source)
    if not path.exists():
        raise InputError(f"no such file: {source}")
    return read_cayley(path)


def _emit(cfg: RunConfig, data: dict, lines: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_construct(args, cfg: RunConfig) -> int:
    try:
        spec = MMGroupSpec.make(args.p, args.q, args.v)
    except ValueError as e:
        raise InputError(str(e)) from None
    mm = miller_moreno(spec, subgroup_cap=cfg.max_subgroup_order)
    G = mm.group
    if args.out:
        write_cayley(G, args.out)
    data = {
        "schema": 1,
        "params": {"p": spec.p, "q": spec.q, "v": spec.v, "u": spec.u},
        "order": G.order,
        "psi": list(spec.ring.psi.coeffs),
        "psi_text": spec.ring.psi.render(),
        "center_order": center(G).order,
        "derived_order": derived_subgroup(G).order,
        "out": args.out,
    }
    lines = [
        f"M({spec.p},{spec.q},{spec.v})",
        f"order: {G.order}",
        f"u: {spec.u}",
        f"psi(x): {spec.ring.psi.render()}",
        f"|Z(G)|: {data['center_order']}",
        f"|G'|: {data['derived_order']}",
    ]
    if args.out:
        lines.append(f"written: {args.out}")
    _emit(cfg, data, lines)
    return EXIT_OK


def cmd_catalog(args, cfg: RunConfig) -> int:
    if args.name is None:
        entries = [catalog_entry(n) for n in catalog_names()]
        data = {"schema": 1, "groups": [{"name": e.name, "order": e.group.order, "provenance": e.provenance} for e in entries]}
        _emit(cfg, data, [f"{e.name:10s} {e.group.order:4d}  {e.provenance}" for e in entries])
        return EXIT_OK
    G = load_group(f"catalog:{args.name}")
    if args.out:
        write_cayley(G, args.out)
    _emit(cfg, {"schema": 1, "name": args.name, "order": G.order, "out": args.out},
          [f"{args.name}: order {G.order}" + (f", written {args.out}" if args.out else "")])
    return EXIT_OK


def cmd_endos(args, cfg: RunConfig) -> int:
    G = load_group(args.file)
    M = enumerate_end(G, cfg.max_group_order, cfg.jobs)
    I0 = idempotents_I0(M)
    idem = []
    for x in I0:
        e = M.elem(x)
        idem.append({"index": x, "map": list(e.map), "image_order": e.image().order, "kernel_order": e.kernel().order})
    data = {
        "schema": 1,
        "group_order": G.order,
        "end": len(M),
        "aut": int(M.is_auto.sum()),
        "i0": len(I0),
        "idempotents": idem,
    }
    if args.full:
        data["monoid"] = M.to_json()
    lines = [f"|End| = {len(M)}", f"|Aut| = {data['aut']}", f"|I0| = {len(I0)}"]
    lines += [f"  x{d['index']}: |Im| = {d['image_order']}, |Ker| = {d['kernel_order']}" for d in idem]
    _emit(cfg, data, lines)
    return EXIT_OK


def _params_from(args):
    given = [args.p, args.q, args.v]
    if all(x is None for x in given):
        return None
    if any(x is None for x in given):
        raise InputError("--p, --q and --v must be given together")
    return tuple(given)


def cmd_check_schmidt(args, cfg: RunConfig) -> int:
    G = load_group(args.file)
    params = _params_from(args)
    M = enumerate_end(G, cfg.max_group_order, cfg.jobs)
    try:
        rep = check_theorem31(G, params, M=M)
    except ValueError as e:
        raise InputError(str(e)) from None
    oracle = brute_is_schmidt(G, cfg.max_subgroup_order)
    if oracle.is_schmidt:
        expected = params is None or tuple(params) == oracle.params
        agree = rep.verdict == expected and (not rep.verdict or rep.inferred_params[:3] == oracle.params)
    else:
        agree = not rep.verdict
    code = EXIT_DISAGREE if not agree else (EXIT_OK if rep.verdict else EXIT_FAIL)
    data = rep.to_json()
    data["oracle"] = {
        "is_schmidt": oracle.is_schmidt,
        "is_miller_moreno": oracle.is_miller_moreno,
        "params": None if oracle.params is None else dict(zip("pqv", oracle.params)),
    }
    data["agree"] = agree
    lines = [f"group order {G.order}, |End| = {len(M)}, |I0| = {len(idempotents_I0(M))}"]
    for c in rep.candidates:
        marks = "".join("+" if b else "-" for b in c.props)
        lines.append(f"  x{c.x_index} (p,q,v)={c.params[:3]}: {marks}")
    for c in rep.candidates:
        if not c.passed:
            failed = [PROPERTY_NAMES[i] for i, b in enumerate(c.props) if not b]
            lines.append(f"  first failing candidate x{c.x_index}: {'; '.join(failed)}")
            break
    lines += [f"  note: {d}" for d in rep.diagnostics]
    verdict = f"pass {rep.inferred_params[:3]}" if rep.verdict else "fail"
    lines.append(f"characterization: {verdict}" + (" (inferred)" if rep.inferred and rep.verdict else ""))
    lines.append(f"oracle: {'Schmidt ' + str(oracle.params) if oracle.is_schmidt else 'not Schmidt'}")
    lines.append(f"agreement: {'agree' if agree else 'DISAGREE'}")
    _emit(cfg, data, lines)
    return code


def _compare(G1: Group, G2: Group, cfg: RunConfig) -> tuple[bool, bool]:
    M1 = enumerate_end(G1, cfg.max_group_order, cfg.jobs)
    M2 = enumerate_end(G2, cfg.max_group_order, cfg.jobs)
    end_iso = isomorphic(M1.semigroup(), M2.semigroup()) is not None
    grp_iso = are_isomorphic_groups(G1, G2) is not None
    return end_iso, grp_iso


def cmd_compare_end(args, cfg: RunConfig) -> int:
    G1, G2 = load_group(args.file1), load_group(args.file2)
    end_iso, grp_iso = _compare(G1, G2, cfg)
    flagged = end_iso and not grp_iso
    data = {"schema": 1, "end_isomorphic": end_iso, "groups_isomorphic": grp_iso, "end_iso_but_not_group_iso": flagged}
    lines = [f"End isomorphic: {'yes' if end_iso else 'no'}", f"groups isomorphic: {'yes' if grp_iso else 'no'}"]
    if flagged:
        lines.append("*** End-isomorphic but group-non-isomorphic ***")
    _emit(cfg, data, lines)
    return EXIT_OK


def _corpus(kind: str, max_order: int, cfg: RunConfig) -> list[Group]:
    if kind == "catalog":
        groups = [catalog_entry(n).group for n in catalog_names()]
        return [G for G in groups if G.order <= max_order]
    triples = mm_parameter_triples(max_order)
    return [miller_moreno(MMGroupSpec.make(*t), subgroup_cap=cfg.max_subgroup_order).group for t in triples]


def sweep(kind: str, max_order: int, cfg: RunConfig) -> dict:
    groups = _corpus(kind, max_order, cfg)
    rows = oracle_agreement(groups, cfg.max_group_order)
    monoids = {G.name: enumerate_end(G, cfg.max_group_order) for G in groups}
    prints = {name: fingerprint(M.semigroup()) for name, M in monoids.items()}
    members = []
    for G, row in zip(groups, rows):
        if not row.oracle.is_schmidt:
            continue
        p, q, v = row.oracle.params
        u = multiplicative_order(p, q)
        copies, counter = [], []
        for H in groups:
            if H is G or prints[H.name] != prints[G.name]:
                continue
            if isomorphic(monoids[G.name].semigroup(), monoids[H.name].semigroup()) is None:
                continue
            (copies if are_isomorphic_groups(G, H) is not None else counter).append(H.name)
        members.append({
            "name": G.name,
            "params": {"p": p, "q": q, "v": v, "u": u},
            "u_parity": "odd" if u % 2 else "even",
            "isomorphic_copies": copies,
            "end_iso_non_iso": counter,
            "end_unique_in_corpus": not counter,
        })
    pairs = sorted({tuple(sorted((m["name"], h))) for m in members for h in m["end_iso_non_iso"]})
    return {
        "schema": 1,
        "corpus": kind,
        "max_order": max_order,
        "groups": [
            {
                "name": r.name,
                "order": r.order,
                "oracle_schmidt": r.oracle.is_schmidt,
                "oracle_params": None if r.oracle.params is None else list(r.oracle.params),
                "characterization": r.verdict,
                "agree": r.agree,
            }
            for r in rows
        ],
        "disagreements": [r.name for r in rows if not r.agree],
        "schmidt_members": members,
        "counterexample_pairs": [list(p) for p in pairs],
    }


def cmd_sweep(args, cfg: RunConfig) -> int:
    data = sweep(args.corpus, args.max_order, cfg)
    lines = [f"corpus {data['corpus']}, order <= {data['max_order']}: {len(data['groups'])} groups"]
    for g in data["groups"]:
        tag = f"Schmidt {tuple(g['oracle_params'])}" if g["oracle_schmidt"] else "-"
        lines.append(f"  {g['name']:10s} {g['order']:4d}  {tag:22s} {'agree' if g['agree'] else 'DISAGREE'}")
    lines.append(f"oracle disagreements: {len(data['disagreements'])}")
    for m in data["schmidt_members"]:
        pr = m["params"]
        status = "End-unique in corpus" if m["end_unique_in_corpus"] else "End-isomorphic to " + ", ".join(m["end_iso_non_iso"])
        lines.append(f"  {m['name']} (p,q,v)=({pr['p']},{pr['q']},{pr['v']}) u={pr['u']} ({m['u_parity']}): {status}")
    for a, b in data["counterexample_pairs"]:
        lines.append(f"counterexample pair: {a} / {b}")
    _emit(cfg, data, lines)
    return EXIT_DISAGREE if data["disagreements"] else EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not oracle disagreements
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for End enumeration")

    ap = _Parser(prog="schmidt-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build M(p,q,v)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("catalog", parents=[common], help="list catalog groups or export one")
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("endos", parents=[common], help="End(G) summary")
    p.add_argument("file", help=".cayley file or catalog:NAME")
    p.add_argument("--full", action="store_true", help="include the full monoid in JSON output")
    p.set_defaults(func=cmd_endos)

    p = sub.add_parser("check-schmidt", parents=[common], help="eight-property test plus oracle")
    p.add_argument("file")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--v", type=int)
    p.set_defaults(func=cmd_check_schmidt)

    p = sub.add_parser("compare-end", parents=[common], help="compare End(G1) with End(G2)")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_compare_end)

    p = sub.add_parser("sweep", parents=[common], help="oracle agreement and End uniqueness over a corpus")
    p.add_argument("--corpus", choices=("catalog", "constructed"), default="catalog")
    p.add_argument("--max-order", type=int, default=24)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return int(e.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except (InputError, CayleyFormatError, GroupAxiomError, CapExceededError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
