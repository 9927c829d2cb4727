"""Command line front end: ``mga <command> [flags]``.

Exit codes: 0 success, 1 the mathematics said no (violation,
counterexample, failed criterion), 2 usage error.  Standard output is
JSON unless ``--format dot|text``; logs go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import acceptance, czero
from .basis import BasisId, Decomposition, DivisibilityError, decompose, make_basis
from .graph import build_parabolic, build_regular, build_stable, export_dot, graph_from_json, graph_to_json, vertex_name
from .sections import Section, section_from_json, section_to_json

log = logging.getLogger("mga")

BUILDERS = {"stable": build_stable, "parabolic": build_parabolic, "regular": build_regular}


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_section(obj: dict) -> Section:
    """Accept a section or a decomposition (rebuilt from its coefficients)."""
    if "entries" in obj:
        return section_from_json(obj)
    if "coefficients" in obj:
        return Decomposition.from_json(obj).reconstruct()
    raise UsageError("input is neither a section nor a decomposition")


def _load_family(obj: dict) -> czero.RowFamily:
    if "rows" in obj:
        return czero.RowFamily.from_json(obj)
    return czero.specialize_section(_load_section(obj))


def cmd_graph(args) -> int:
    if args.input:
        g = graph_from_json(_load(args.input))
    else:
        if args.kind is None or args.trunc is None:
            raise UsageError("graph needs KIND and --trunc, or --in FILE")
        g = BUILDERS[args.kind](args.trunc)
    if args.format == "dot":
        sys.stdout.write(export_dot(g))
    elif args.format == "text":
        for e in g.edges:
            print(f"{vertex_name(e.src)} -> {vertex_name(e.dst)}  {e.label}")
    else:
        _emit(graph_to_json(g))
    return 0


def cmd_basis(args) -> int:
    b = BasisId(args.kind, args.index)
    b.validate()
    s = make_basis(b, args.trunc)
    if args.format == "text":
        for r in range(args.trunc, 0, -1):
            print(f"{r:>4}: {s[r]!s:<40} | {s[-r]}")
    else:
        _emit(section_to_json(s))
    return 0


def cmd_verify(args) -> int:
    s = _load_section(_load(args.input))
    bad = s.violations()
    if args.format == "text":
        print("ok" if not bad else f"{len(bad)} violation(s)")
        for v in bad:
            print(f"  {vertex_name(v.edge.src)} -> {vertex_name(v.edge.dst)} [{v.edge.label}] remainder {v.remainder}")
    else:
        _emit({"status": "ok" if not bad else "violations", "violations": [v.to_json() for v in bad]})
    return 1 if bad else 0


def cmd_decompose(args) -> int:
    s = _load_section(_load(args.input))
    try:
        d = decompose(s)
    except DivisibilityError as exc:
        _emit({"status": "invalid", "reason": str(exc), "violations": [v.to_json() for v in s.violations()]})
        return 1
    if args.format == "text":
        for b, p in d.coefficients.items():
            print(f"{b}: {p}")
        print("residual: " + ("0" if d.residual.is_zero() else "nonzero"))
    else:
        _emit(d.to_json())
    return 0


def cmd_specialize(args) -> int:
    s = _load_section(_load(args.input))
    bad = s.violations()
    if bad:
        _emit({"status": "invalid", "violations": [v.to_json() for v in bad]})
        return 1
    fam = czero.specialize_section(s, check=False)
    if args.format == "text":
        for j, a in enumerate(fam.rows):
            print(f"a_{j} = ({a.z1}, {a.z2})")
    else:
        _emit(fam.to_json())
    return 0


def cmd_congruences(args) -> int:
    if args.input:
        fam = _load_family(_load(args.input))
    elif args.basis:
        b = BasisId.parse(args.basis)
        if args.rows is None:
            raise UsageError("--basis needs --rows")
        maker = czero.make_u_bar if b.kind == "u" else czero.make_v_bar
        fam = maker(b.index, args.rows)
    else:
        raise UsageError("congruences needs --in FILE or --basis ID --rows J")
    m_max = fam.J if args.mmax is None else args.mmax
    rep = czero.check_congruences(fam, m_max)
    if args.format == "text":
        for r in rep.results:
            if r.verdict.ok:
                w = r.verdict.witness
                print(f"m={r.m}: pass, witness ({w.z1}, {w.z2})")
            else:
                print(f"m={r.m}: FAIL, {r.verdict.reason} (remainder {r.verdict.remainder})")
    else:
        _emit(rep.to_json())
    return 0 if rep.ok else 1


def _oracle_point(pt):
    return czero.oracle_compare(*pt)


def cmd_oracle(args) -> int:
    grid = [(J, d) for J in range(0, args.rows + 1) for d in range(0, args.deg + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_oracle_point, grid))
    else:
        results = [czero.oracle_compare(J, d) for J, d in grid]
    ok = all(r.ok for r in results)
    if args.format == "text":
        print(" J  d  solution  span  predicted  forward  equal")
        for r in results:
            print(f"{r.J:>2} {r.d:>2} {r.solution_dim:>9} {r.span_rank:>5} {r.predicted:>10}  {r.forward_ok!s:>7}  {r.equal}")
    else:
        _emit({"status": "pass" if ok else "fail", "table": [r.to_json() for r in results]})
    return 0 if ok else 1


def cmd_identities(args) -> int:
    rep = czero.identity_suite(args.nmax, args.kmax)
    if args.format == "text":
        print(f"{rep.checked} evaluations, {len(rep.failures)} failures")
    else:
        _emit(rep.to_json())
    return 0 if rep.ok else 1


def cmd_selfcheck(args) -> int:
    params = acceptance.QUICK if args.quick else acceptance.FULL
    results = acceptance.run_all(params, seed=args.seed, jobs=args.jobs)
    for r in results:
        log.info(r.line())
    ok = all(r.ok for r in results)
    if args.format == "text":
        for r in results:
            print(f"[{'PASS' if r.ok else 'FAIL'}] {r.number}. {r.name}: {r.detail}")
    else:
        _emit({"status": "pass" if ok else "fail", "quick": args.quick, "seed": args.seed,
               "criteria": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="mga", description="Structure algebra of the stable moment graph for affine A1.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="build a moment graph")
    g.add_argument("kind", nargs="?", choices=sorted(BUILDERS))
    g.add_argument("--trunc", type=int)
    g.add_argument("--in", dest="input")
    g.set_defaults(func=cmd_graph)

    b = sub.add_parser("basis", parents=[common], help="emit u_n or v_n")
    b.add_argument("kind", choices=("u", "v"))
    b.add_argument("index", type=int)
    b.add_argument("--trunc", type=int, required=True)
    b.set_defaults(func=cmd_basis)

    for name, func, help_ in (
        ("verify", cmd_verify, "check the edge congruences of a section"),
        ("decompose", cmd_decompose, "decompose a section over u_n, v_n"),
        ("specialize", cmd_specialize, "set c = 0 and list the rows"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--in", dest="input", required=True)
        sp.set_defaults(func=func)

    c = sub.add_parser("congruences", parents=[common], help="check the higher-order congruence relations")
    c.add_argument("--in", dest="input")
    c.add_argument("--basis", help="u<n> or v<n>, closed form with c = 0")
    c.add_argument("--rows", type=int)
    c.add_argument("--mmax", type=int)
    c.set_defaults(func=cmd_congruences)

    o = sub.add_parser("oracle", parents=[common], help="compare the span with the brute-force solution space")
    o.add_argument("--rows", type=int, required=True)
    o.add_argument("--deg", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    i = sub.add_parser("identities", parents=[common], help="evaluate the binomial identities")
    i.add_argument("--nmax", type=int, default=30)
    i.add_argument("--kmax", type=int, default=30)
    i.set_defaults(func=cmd_identities)

    s = sub.add_parser("selfcheck", parents=[common], help="run the acceptance suite")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_selfcheck)
    return p


def _validate(args) -> None:
    for flag in ("trunc", "rows", "deg", "nmax", "kmax", "mmax", "index"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            raise UsageError(f"--{flag} must be non-negative")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.format == "dot" and args.command != "graph":
        raise UsageError("--format dot is only available for graph")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    env_seed = os.environ.get("MGA_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            parser.print_usage(sys.stderr)
            print(f"mga: error: MGA_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return 2
    try:
        _validate(args)
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        print(f"mga: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
