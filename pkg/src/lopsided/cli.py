"""Command-line front end.

Exit codes: 0 solved and verified, 1 criterion unsatisfied, 2 cap exhausted,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import formats
from .apps import (build_hypergraph_coloring, build_ksat, build_packing, build_rainbow_hamcycle,
                   build_rainbow_matching_kn, build_rainbow_matching_kns,
                   build_strong_coloring, build_transversal, recheck_certificate,
                   verify_solution)
from .core import ContractError
from .engine import default_round_cap, run
from .rng import Streams

EXIT_OK, EXIT_CRITERION, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_EPSILON = 0.01


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_plain)


def _plain(x):
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return str(x)


def _u64(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _eps(s: str) -> float:
    v = float(s)
    if not (v >= 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("epsilon must be a finite nonnegative number")
    return v


# -- solution rendering ------------------------------------------------------------

def _solution(name: str, problem, state):
    if name == "sat":
        return {"assignment": [(i + 1) * (1 if v == 1 else -1) for i, v in enumerate(state)]}
    if name == "hypercolor":
        return {"colors": list(state)}
    if name in ("transversal", "pack"):
        return {"permutation": list(state.fwd)}
    if name in ("rainbow-matching", "rainbow-hypermatching"):
        return {"edges": [list(e) for e in state.edges()]}
    if name == "rainbow-hamcycle":
        from .spaces import cycle_order
        return {"cycle": cycle_order(state)}
    if name == "strong-color":
        return {"colors": problem.info["colors_of"](state)}
    raise ContractError(f"no renderer for {name}")


# -- solve subcommands -------------------------------------------------------------

def _load(args):
    path = Path(args.input)
    cmd = args.command
    eps = args.epsilon
    if cmd == "sat":
        return build_ksat(formats.parse_dimacs(path), eps)
    if cmd == "hypercolor":
        return build_hypergraph_coloring(formats.parse_hypergraph(path), args.colors, eps)
    if cmd == "transversal":
        return build_transversal(formats.parse_color_matrix(path), args.s, eps)
    if cmd == "rainbow-matching":
        return build_rainbow_matching_kn(formats.parse_edge_coloring(path, 2), eps)
    if cmd == "rainbow-hamcycle":
        return build_rainbow_hamcycle(formats.parse_edge_coloring(path, 2), eps)
    if cmd == "rainbow-hypermatching":
        col = formats.parse_edge_coloring(path, args.s)
        return build_rainbow_matching_kns(col, col.s, eps)
    if cmd == "strong-color":
        return build_strong_coloring(formats.parse_block_graph(path), eps)
    if cmd == "pack":
        return build_packing(formats.parse_packing(path), eps)
    raise ContractError(f"unknown command {cmd}")


def _solve(args, out, err) -> int:
    try:
        problem = _load(args)
    except ContractError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    cert = problem.certificate
    crec = cert.to_record()
    crec["record"] = "certificate"
    if args.verify_only:
        crec["recheck"] = recheck_certificate(problem) if args.recheck else None
        print(_json(crec), file=out)
        return EXIT_OK if cert.satisfied else EXIT_CRITERION
    if not cert.satisfied:
        print(f"warning: {cert.criterion} criterion not satisfied for this instance", file=err)
        if args.strict:
            print(_json(crec), file=out)
            return EXIT_CRITERION
    if args.mode == "parallel" and not problem.space.commutative:
        print(f"error: --mode parallel needs a commutative oracle; "
              f"{problem.space.descriptor.label()} is not (use seq or round-seq)", file=err)
        return EXIT_INPUT
    rounds = args.max_rounds
    if rounds is None and args.mode != "seq":
        rounds = default_round_cap(problem, cert.epsilon)
    streams = Streams(args.seed)
    t0 = time.perf_counter()
    res = run(problem, args.mode, streams, rounds, cert.epsilon, args.workers)
    wall = time.perf_counter() - t0
    ok = res.success and verify_solution(problem, res.state)
    lines = [_json({"record": "round", **r.to_record()}) for r in res.rounds]
    summary = {"record": "summary", **res.summary(), "verified": ok, "problem": problem.name,
               "events": problem.event_count, "certificate": crec}
    if args.timing:
        summary["wall_time"] = wall
    lines.append(_json(summary))
    text = "\n".join(lines) + "\n"
    if args.stats:
        Path(args.stats).write_text(text)
    else:
        out.write(lines[-1] + "\n")
    if ok and args.output:
        Path(args.output).write_text(_json(_solution(problem.name, problem, res.state)) + "\n")
    if ok:
        return EXIT_OK
    if res.success:
        raise AssertionError("solver reported success on an unverified state")
    return EXIT_CAP if cert.satisfied else EXIT_CRITERION


# -- oracle axiom suite ------------------------------------------------------------

def _oracle(args, out, err) -> int:
    from . import axiomtest
    from .spaces import (HamCycleSpace, MatchingSpace, PermutationSpace, ProductSpace,
                         VariableSpace)
    n = args.n
    try:
        if args.space == "perm":
            space = PermutationSpace(n)
        elif args.space == "matching":
            space = MatchingSpace(n, args.s or 2)
        elif args.space == "hamcycle":
            space = HamCycleSpace(n, max_atom_len=args.max_atom_len)
        elif args.space == "variables":
            space = VariableSpace.uniform(n, args.s or 2)
        else:
            space = ProductSpace([PermutationSpace(n), PermutationSpace(n)])
        atoms = None
        if args.space == "hamcycle":
            atoms = list(space.atoms(args.max_atom_len or min(n, 3)))
        reports = axiomtest.verify_atoms(space, atoms)
    except (ContractError, axiomtest.BudgetExceeded) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    for r in reports:
        print(_json(r.to_record()), file=out)
    summary = axiomtest.summarize(reports)
    print(_json({"record": "summary", "space": space.descriptor.label(), **summary}), file=out)
    return EXIT_OK if all(r.verdict != "fail" for r in reports) else EXIT_CRITERION


def _bench(args, out, err) -> int:
    from .lfmis import lfmis_round_stats
    streams = Streams(args.seed)
    for n in args.n:
        stats = lfmis_round_stats(n, args.edge_prob / n if args.scaled else args.edge_prob,
                                  args.trials, streams)
        stats["bound"] = 8 * math.log2(n) ** 2 if n > 1 else 0
        print(_json({"record": "lfmis", **stats}), file=out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

SOLVERS = {
    "sat": "k-SAT from a DIMACS CNF file",
    "hypercolor": "non-monochromatic hypergraph coloring ('p hyp n m' file)",
    "transversal": "s-bounded transversal of a CSV color matrix",
    "rainbow-matching": "rainbow perfect matching of an edge-colored K_n ('u v color' lines)",
    "rainbow-hamcycle": "rainbow Hamiltonian cycle of an edge-colored K_n",
    "rainbow-hypermatching": "rainbow perfect matching of K_n^(s) ('v1 .. vs color' lines)",
    "strong-color": "strong coloring from 'block' lines plus an edge list",
    "pack": "pack two hypergraphs separated by a '%' line",
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lopsided", description="Local-lemma resampling solver.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in SOLVERS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True, help="instance file")
        p.add_argument("--seed", type=_u64, default=0)
        p.add_argument("--epsilon", type=_eps, default=DEFAULT_EPSILON,
                       help="criterion slack (default %(default)s)")
        p.add_argument("--mode", choices=("seq", "round-seq", "parallel"), default="parallel")
        p.add_argument("--max-rounds", type=int, default=None,
                       help="round cap (resample cap in seq mode)")
        p.add_argument("--strict", action="store_true",
                       help="do not solve when the criterion fails")
        p.add_argument("--stats", help="write JSON-lines round records and a summary here")
        p.add_argument("--timing", action="store_true", help="add wall time to the summary")
        p.add_argument("--verify-only", action="store_true",
                       help="only report the criterion certificate")
        p.add_argument("--recheck", action="store_true",
                       help="with --verify-only, re-derive the criterion from the instance")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--output", help="write the verified solution as JSON here")
        if name == "hypercolor":
            p.add_argument("--colors", type=int, default=2)
        if name == "transversal":
            p.add_argument("--s", type=int, default=2)
        if name == "rainbow-hypermatching":
            p.add_argument("--s", type=int, default=None)
    p = sub.add_parser("verify-oracle", help="run the exact axiom suite on a small space")
    p.add_argument("--space", choices=("perm", "matching", "hamcycle", "variables", "product"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=None,
                   help="edge size for matchings, domain size for variables")
    p.add_argument("--max-atom-len", type=int, default=None)
    p = sub.add_parser("lfmis-bench", help="parallel LFMIS round counts on random digraphs")
    p.add_argument("--n", type=int, nargs="+", default=[1024, 4096])
    p.add_argument("--edge-prob", type=float, default=4.0)
    p.add_argument("--absolute", dest="scaled", action="store_false",
                   help="treat --edge-prob as absolute instead of divided by n")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=_u64, default=0)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.command == "verify-oracle":
        return _oracle(args, out, err)
    if args.command == "lfmis-bench":
        return _bench(args, out, err)
    if args.workers < 1:
        print("error: --workers must be at least 1", file=err)
        return EXIT_INPUT
    return _solve(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
