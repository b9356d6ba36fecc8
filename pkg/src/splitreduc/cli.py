"""Command line entry point: ``splitreduc <command> ...``.

Every command that gets ``--out DIR`` writes its primary output there along
with ``manifest.json``; ``splitreduc replay DIR/manifest.json`` reruns it.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
import time
from importlib import metadata

from . import exprio
from .estimate import estimate
from .quadratize import quadratize
from .ramsey import EdgeIndexer, RamseySpec, determine_ramsey, hamiltonian
from .solver import SolvePlan, solve
from .split import CostConfig, LimitExceeded, hamiltonian_cost, iter_leaves

log = logging.getLogger("splitreduc")


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, indent=2) + "\n"


def _write(out_dir, name, text):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name), "w") as f:
        f.write(text)


def _cfg(args) -> CostConfig:
    return CostConfig(args.qubits, args.target_order, args.allow_aux)


def _rng(args):
    return random.Random(args.seed) if args.seed is not None else None


def _add_cost_flags(p, qubits_default=None):
    p.add_argument("--qubits", "-Q", type=int, default=qubits_default, required=qubits_default is None)
    p.add_argument("--target-order", type=int, default=2)
    aux = p.add_mutually_exclusive_group()
    aux.add_argument("--allow-aux", dest="allow_aux", action="store_true", default=True)
    aux.add_argument("--no-aux", dest="allow_aux", action="store_false")
    p.add_argument("--seed", type=int, default=None, help="randomise split-variable ties")


def _add_limit_flags(p):
    p.add_argument("--max-leaves", type=int, default=10**7)
    p.add_argument("--max-depth", type=int, default=None)


def _add_common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    p.add_argument("--out", default=None, help="directory for outputs and manifest")


# --------------------------------------------------------------------------
# commands; each returns (exit code, result summary, {output file: text})

def cmd_split(args):
    P, table = exprio.load(args.input)
    cfg = _cfg(args)
    lines = []
    count = depth = max_cost = 0
    try:
        for leaf in iter_leaves(P, cfg, max_leaves=args.max_leaves, max_depth=args.max_depth, rng=_rng(args)):
            count += 1
            depth = max(depth, len(leaf.prefix))
            max_cost = max(max_cost, hamiltonian_cost(leaf.hamiltonian, cfg))
            if not args.count_only:
                lines.append(json.dumps({
                    "prefix": {table.name(v): b for v, b in leaf.prefix.items()},
                    "polynomial": exprio.to_dict(leaf.hamiltonian, table),
                }))
    except LimitExceeded as e:
        log.error("%s after %d leaves", e, count)
        summary = {"error": str(e), "leaf_count": count}
        return 3, summary, {}
    summary = {"leaf_count": count, "depth": depth, "max_leaf_cost": max_cost}
    outputs = {"summary.json": _dumps(summary)}
    if not args.count_only:
        outputs["leaves.jsonl"] = "".join(line + "\n" for line in lines)
    if args.out is None:
        if args.json:
            for line in lines:
                print(line)
            print(json.dumps({"summary": summary}))
        else:
            print(f"leaves: {count}  depth: {depth}  max leaf cost: {max_cost}")
    return 0, summary, outputs


def cmd_estimate(args):
    P, _ = exprio.load(args.input)
    rep = estimate(P, _cfg(args), _rng(args))
    d = rep.to_dict()
    if args.out is None:
        if args.json:
            print(json.dumps(d))
        else:
            width = max(len(k) for k in d)
            for k, v in d.items():
                print(f"{k:<{width}}  {v}")
    return 0, {"estimate_eq9": rep.estimate_eq9}, {"estimate.json": _dumps(d)}


def cmd_quadratize(args):
    P, table = exprio.load(args.input)
    table = table.copy()
    res = quadratize(P, args.target_order, lam=args.lam, first_aux=len(table))
    for d in res.aux_defs:
        b = table.fresh("aux")
        assert b == d.aux
    doc = res.to_dict(table)
    if args.out is None:
        if args.json:
            print(json.dumps(doc))
        else:
            print(exprio.serialize(res.reduced, table))
            print(f"# aux: {res.num_aux}  lambda: {res.lam}")
    return 0, {"num_aux": res.num_aux, "lambda": res.lam}, {"quadratized.json": _dumps(doc)}


def _plan(args) -> SolvePlan:
    cfg = CostConfig(args.qubits, args.target_order, args.allow_aux) if args.mode == "split" else None
    return SolvePlan(mode=args.mode, workers=args.workers, cfg=cfg, leaf_cap=args.leaf_cap,
                     count_minima=getattr(args, "count_minima", False),
                     early_exit_zero=args.early_exit_zero, max_leaves=args.max_leaves)


def cmd_solve(args):
    P, table = exprio.load(args.input)
    res = solve(P, _plan(args))
    d = res.to_dict(table)
    if args.out is None:
        if args.json:
            print(json.dumps(d))
        else:
            print(f"min energy: {res.min_energy}")
            print("witness: " + " ".join(f"{k}={v}" for k, v in d["witness"].items()))
            if res.num_minima is not None:
                print(f"minimisers: {res.num_minima}")
    return 0, {"min_energy": res.min_energy}, {"result.json": _dumps(d)}


def cmd_ramsey_gen(args):
    spec = RamseySpec(args.m, args.n, args.N)
    P = hamiltonian(spec)
    table = EdgeIndexer(args.N).symbols()
    if args.format == "json":
        text, name = exprio.to_json(P, table) + "\n", f"H_{args.m}_{args.n}_{args.N}.json"
    else:
        text, name = exprio.serialize(P, table) + "\n", f"H_{args.m}_{args.n}_{args.N}.poly"
    if args.out is None:
        sys.stdout.write(text)
    summary = {"terms": P.num_terms, "degree": P.degree, "variables": len(table)}
    return 0, summary, {name: text}


def cmd_ramsey_solve(args):
    res = determine_ramsey(args.m, args.n, args.max_N, _plan(args), N_start=args.min_N,
                           report_only=args.report_only)
    d = res.to_dict()
    if args.out is None:
        if args.json:
            print(json.dumps(d))
        else:
            for N, rec in sorted(res.evidence.items()):
                print(f"N={N:<3} min energy {rec['min_energy']:<4} leaves {rec['leaves']}")
            print(f"R({args.m},{args.n}) = {res.number if res.determined else 'undetermined'}")
    return 0, {"R": res.number}, {"evidence.json": _dumps(d)}


def cmd_table1(args):
    from .table1 import main as table_main

    argv = ["--N", *map(str, args.N), "--Q", *map(str, args.Q)] + (["--json"] if args.json else [])
    return table_main(argv), None, {}


# --------------------------------------------------------------------------

def _add_solve_flags(p):
    p.add_argument("--workers", "-w", type=int, default=1)
    p.add_argument("--mode", choices=["exhaustive", "split"], default="exhaustive")
    p.add_argument("--qubits", "-Q", type=int, default=128, help="budget for --mode split")
    p.add_argument("--target-order", type=int, default=2)
    aux = p.add_mutually_exclusive_group()
    aux.add_argument("--allow-aux", dest="allow_aux", action="store_true", default=True)
    aux.add_argument("--no-aux", dest="allow_aux", action="store_false")
    p.add_argument("--leaf-cap", type=int, default=30, help="max free variables per leaf")
    p.add_argument("--early-exit-zero", action="store_true")
    p.add_argument("--max-leaves", type=int, default=10**7)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="splitreduc", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="split a polynomial into device-feasible leaves")
    p.add_argument("input")
    _add_cost_flags(p)
    _add_limit_flags(p)
    p.add_argument("--count-only", action="store_true", help="skip leaf polynomials")
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("estimate", help="predict the leaf count before splitting")
    p.add_argument("input")
    _add_cost_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("quadratize", help="reduce order with penalty auxiliaries")
    p.add_argument("input")
    p.add_argument("--target-order", type=int, default=2)
    p.add_argument("--lambda", dest="lam", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_quadratize)

    p = sub.add_parser("solve", help="exact minimum by exhaustive search")
    p.add_argument("input")
    _add_solve_flags(p)
    p.add_argument("--count-minima", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    rp = sub.add_parser("ramsey", help="Ramsey Hamiltonians")
    rsub = rp.add_subparsers(dest="ramsey_command", required=True)
    p = rsub.add_parser("gen", help="write H(m, n, N)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("N", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_common(p)
    p.set_defaults(func=cmd_ramsey_gen)
    p = rsub.add_parser("solve", help="find R(m, n) by minimising H(m, n, N) for growing N")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--max-N", dest="max_N", type=int, required=True)
    p.add_argument("--min-N", dest="min_N", type=int, default=None)
    p.add_argument("--report-only", action="store_true", help="solve every N up to --max-N")
    _add_solve_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_ramsey_solve)

    p = sub.add_parser("repro-table1", help="split counts for H(4,3,N)")
    p.add_argument("--N", type=int, nargs="+", default=[6, 7, 8, 9])
    p.add_argument("--Q", type=int, nargs="+", default=[128, 50, 30])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1, out=None)

    p = sub.add_parser("replay", help="rerun the command recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", default=None, help="write outputs here instead of the recorded directory")
    p.set_defaults(func=None)
    return ap


def _manifest(args, argv, inputs, summary, seconds) -> dict:
    opts = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {
        "subcommand": args.command if args.command != "ramsey" else f"ramsey {args.ramsey_command}",
        "argv": argv,
        "options": opts,
        "inputs": {p: _digest(p) for p in inputs},
        "version": _version(),
        "wall_clock_s": round(seconds, 3),
        "result": summary,
    }


def run(argv) -> int:
    argv = list(argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.command == "replay":
        with open(args.manifest) as f:
            man = json.load(f)
        for p, digest in man["inputs"].items():
            if _digest(p) != digest:
                log.error("input %s changed since the recorded run", p)
                return 2
        rerun = list(man["argv"])
        if args.out is not None:
            i = rerun.index("--out")
            rerun[i + 1] = args.out
        return run(rerun)

    if getattr(args, "input", None) is not None and args.out is not None:
        # manifests must replay from any working directory
        absolute = os.path.abspath(args.input)
        argv = [absolute if a == args.input else a for a in argv]
        args.input = absolute
    t0 = time.perf_counter()
    try:
        code, summary, outputs = args.func(args)
    except (exprio.ParseError, ValueError, OverflowError, OSError) as e:
        log.error("%s", e)
        return 2
    if args.out is not None and outputs:
        for name, text in outputs.items():
            _write(args.out, name, text)
        inputs = [args.input] if hasattr(args, "input") else []
        man = _manifest(args, argv, inputs, summary, time.perf_counter() - t0)
        _write(args.out, "manifest.json", _dumps(man))
        if getattr(args, "json", False):
            print(json.dumps(summary))
    return code


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
