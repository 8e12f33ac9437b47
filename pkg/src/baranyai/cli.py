"""Command line: ``baranyai {reduce,synth,conditions,decompose,hampower,verify,oracle}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from baranyai.decomp import RunReport, bagfree_decomposition
from baranyai.errors import ConditionUnmet, DomainError, IntegrityError, RepairFailure
from baranyai.graph import Graph, TripleGraphSystem
from baranyai.hampower import bagfree_ham_power
from baranyai.subsets import (
    KSubsetUniverse,
    ParpartitionFamily,
    build_triple_system,
    family_to_parpartitions,
    reduction_degrees,
    reduction_warnings,
    threshold,
)
from baranyai.synth import gen_dense, gen_sparse_pair, gen_system
from baranyai.verify import (
    brute_force_search,
    check_conditions,
    verify_block_bags,
    verify_decomposition,
    verify_ham_power,
    verify_theorem_output,
    verify_window_bags,
)

log = logging.getLogger("baranyai")

EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_CONDITION = 3


class ParseError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def write_json(path, obj) -> None:
    text = dumps(obj)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def load_system(path) -> TripleGraphSystem:
    data = read_json(path)
    try:
        return TripleGraphSystem.from_json(data)
    except KeyError as exc:
        raise ParseError(f"{path}: missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def emit(args, obj: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(obj))
    else:
        print(text)


def condition_table(reports) -> str:
    rows = [f"{'condition':<22} {'lhs':>14} rel {'rhs':>14}  holds"]
    for r in reports:
        j = r.to_json()
        rows.append(f"{j['name']:<22} {j['lhs']:>14} {j['relation']:>3} {j['rhs']:>14}  {j['holds']}")
    return "\n".join(rows)


def universe_of(sys_: TripleGraphSystem):
    uni = sys_.meta.get("universe")
    if not uni:
        return None
    return KSubsetUniverse(uni["n"], uni["k"]), threshold(uni["alpha"]), threshold(uni["beta"])


def cmd_reduce(args) -> int:
    sys_ = build_triple_system(args.n, args.k, args.alpha, args.beta)
    write_json(args.output, sys_.to_json())
    d1, d2, d3 = reduction_degrees(args.n, args.k, args.alpha, args.beta)
    info = {
        "m": sys_.m,
        "deg1": d1,
        "deg2": d2,
        "deg3": d3,
        "warnings": reduction_warnings(args.n, args.k, threshold(args.alpha), threshold(args.beta)),
    }
    emit(args, info, "\n".join([f"m={sys_.m} deg1={d1} deg2={d2} deg3={d3}"] + info["warnings"]))
    return 0


def cmd_synth(args) -> int:
    if args.kind == "dense":
        g1 = gen_dense(args.m, args.delta, args.seed)
        empty = Graph(args.m)
        meta = {"provenance": {"seed": args.seed, "params": {"kind": "dense", "m": args.m, "delta1": args.delta}}}
        out = TripleGraphSystem(g1, empty, Graph(args.m), meta=meta)
    elif args.kind == "pair":
        base = load_system(args.sys)
        g2, g3 = gen_sparse_pair(base.m, args.d2, args.d3, base.g1, args.seed)
        meta = dict(base.meta)
        meta["pair_provenance"] = {"seed": args.seed, "params": {"Delta2": args.d2, "Delta3": args.d3}}
        out = TripleGraphSystem(base.g1, g2, g3, meta=meta)
    else:
        out = gen_system(args.m, args.delta, args.d2, args.d3, args.seed)
    write_json(args.output, out.to_json())
    return 0


def cmd_conditions(args) -> int:
    s = load_system(args.sys)
    reports = check_conditions(s.m, args.l, args.q, s.delta1, s.Delta2, s.Delta3)
    emit(args, {"conditions": [r.to_json() for r in reports]}, condition_table(reports))
    return 0


def _finish_report(args, report: RunReport) -> None:
    if args.report:
        write_json(args.report, report.to_json())


def cmd_decompose(args) -> int:
    s = load_system(args.sys)
    report = RunReport(params={"l": args.l, "mode": args.mode, "sys": os.path.basename(args.sys)})
    fam = bagfree_decomposition(s, args.l, mode=args.mode, audit=args.audit, report=report)
    out = fam.to_json()
    uni = universe_of(s)
    if uni:
        u, alpha, beta = uni
        family = family_to_parpartitions(u, fam.blocks, alpha, beta)
        family.parpartitions.sort()
        out.update(family.to_json())
    write_json(args.output, out)
    _finish_report(args, report)
    emit(args, report.to_json(), f"{len(fam.blocks)} blocks, {report.swaps} swaps ({report.bag_swaps} for bags)")
    return 0


def cmd_hampower(args) -> int:
    s = load_system(args.sys)
    report = RunReport(params={"l": args.l, "q": args.q, "mode": args.mode, "sys": os.path.basename(args.sys)})
    order = bagfree_ham_power(s, args.l, args.q, mode=args.mode, audit=args.audit, report=report)
    out = order.to_json()
    out["l"] = args.l
    uni = universe_of(s)
    if uni:
        u, alpha, beta = uni
        out.update({"n": u.n, "k": u.k, "alpha": s.meta["universe"]["alpha"], "beta": s.meta["universe"]["beta"]})
        out["subsets"] = [list(u.unrank(v)) for v in order.sequence]
    write_json(args.output, out)
    _finish_report(args, report)
    emit(args, report.to_json(), f"order of {order.m} vertices, {report.swaps} rearrangements/swaps")
    return 0


def _run_check(job):
    name, fn, fargs = job
    return fn(*fargs)


def cmd_verify(args) -> int:
    s = load_system(args.sys)
    art = read_json(args.artifact)
    alpha = threshold(args.alpha) if args.alpha else None
    beta = threshold(args.beta) if args.beta else None
    if alpha is None and "alpha" in art:
        alpha, beta = threshold(art["alpha"]), threshold(art["beta"])
    jobs = []
    try:
        if "blocks" in art:
            l = art["l"]
            jobs.append(("decomposition", verify_decomposition, (s.g1, art["blocks"], l)))
            jobs.append(("block_bags", verify_block_bags, (art["blocks"], s.g2, s.g3)))
        if "order" in art:
            l = art["l"]
            jobs.append(("ham_power", verify_ham_power, (s.g1, art["order"], l)))
            jobs.append(("window_bags", verify_window_bags, (art["order"], l, s.g2, s.g3)))
        if alpha is not None and "parpartitions" in art:
            fam = ParpartitionFamily(art["n"], art["k"], art["l"], alpha, beta,
                                     [tuple(tuple(b) for b in p) for p in art["parpartitions"]])
            jobs.append(("theorem", verify_theorem_output, (fam, alpha, beta)))
        if alpha is not None and "subsets" in art:
            jobs.append(("theorem", verify_theorem_output, (art["subsets"], alpha, beta, art["l"])))
    except KeyError as exc:
        raise ParseError(f"{args.artifact}: missing key {exc}") from None
    if not jobs:
        raise ParseError(f"{args.artifact}: no recognizable artifact (blocks, order, parpartitions, subsets)")
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            results = list(ex.map(_run_check, jobs))
    else:
        results = [_run_check(j) for j in jobs]
    checks = []
    for r in results:
        checks.extend(r["checks"] if "checks" in r else [r])
    l = art.get("l", 2)
    conds = check_conditions(s.m, l, art.get("q", 1), s.delta1, s.Delta2, s.Delta3)
    rep = {"checks": checks, "conditions": [c.to_json() for c in conds], "audits": {}}
    ok = all(c["ok"] for c in checks)
    text = "\n".join(f"{c['name']:<16} {'ok' if c['ok'] else 'FAIL'} ({len(c['violations'])} violations)" for c in checks)
    if args.output:
        write_json(args.output, rep)
    emit(args, rep, text)
    return 0 if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    s = load_system(args.sys)
    found, blocks = brute_force_search(s, args.l, args.target)
    emit(args, {"exists": found, "witness": blocks}, f"exists={found} witness={blocks}")
    return 0 if found else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="baranyai", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", parents=[common], help="build the subset graphs for (n, k, alpha, beta)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--alpha", required=True, help="p/q")
    r.add_argument("--beta", required=True, help="p/q")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("synth", parents=[common], help="seeded synthetic systems")
    s.add_argument("kind", choices=("dense", "pair", "system"))
    s.add_argument("--m", type=int)
    s.add_argument("--delta", type=int, help="min degree of g1")
    s.add_argument("--d2", type=int, default=0)
    s.add_argument("--d3", type=int, default=0)
    s.add_argument("--sys", help="input system (pair)")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)

    c = sub.add_parser("conditions", parents=[common], help="evaluate the degree conditions")
    c.add_argument("--sys", required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--q", type=int, default=1)
    c.set_defaults(func=cmd_conditions)

    for name, func, help_ in (("decompose", cmd_decompose, "bag-free clique decomposition"),
                              ("hampower", cmd_hampower, "bag-free Hamiltonian cycle power")):
        d = sub.add_parser(name, parents=[common], help=help_)
        d.add_argument("--sys", required=True)
        d.add_argument("--l", type=int, required=True)
        if name == "hampower":
            d.add_argument("--q", type=int, required=True)
        d.add_argument("--mode", choices=("guaranteed", "best_effort"), default="guaranteed")
        d.add_argument("--audit", action="store_true", help="classify every swap candidate")
        d.add_argument("--report", help="write the run report here")
        d.add_argument("-o", "--output")
        d.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common], help="certify an artifact")
    v.add_argument("--sys", required=True)
    v.add_argument("--artifact", required=True)
    v.add_argument("--alpha")
    v.add_argument("--beta")
    v.add_argument("--workers", type=int, default=int(os.environ.get("BARANYAI_WORKERS", "1")))
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="exhaustive search (m <= 20)")
    o.add_argument("--sys", required=True)
    o.add_argument("--l", type=int, required=True)
    o.add_argument("--target", type=int, required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConditionUnmet as exc:
        print(str(exc), file=sys.stderr)
        print(condition_table(exc.reports), file=sys.stderr)
        return EXIT_CONDITION
    except (ParseError, DomainError, IntegrityError, RepairFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
