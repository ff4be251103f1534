"""Command line entry point ``starsearch``.

Subcommands::

    simulate     run one strategy on an instance file
    opt          offline optimum, s_I, optimal subsets and xi of an instance
    ratio-sweep  ratio table over a generated family (csv/json rows)
    adversary    build one adversarial instance and report its ratio
    lemma-check  numeric checks of the phi gap and the h_{q,l} bound
    partial      partial-information oracle and signed-search reduction

Exit status is 0 on success, 1 when a bound or check fails and 2 on bad
input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import adversary, experiments
from .analysis import verify_h_bound, verify_phi_gap
from .core import SubsetInstance, load_instance, ratio, simulate, simulate_subset
from .errors import StarSearchError
from .offline import d_S, summarize
from .partialinfo import PartialMultiset, check_reduction, intrinsic_cost, presentations, signed_baseline
from .strategies import StrategySpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _m_arg(text: str):
    lo, sep, hi = text.partition("-")
    return (int(lo), int(hi)) if sep else int(lo)


def _dump(data, fmt, table_rows=None) -> str:
    if fmt == "csv" and table_rows is not None:
        header, rows = table_rows
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    return json.dumps(data, indent=2, allow_nan=True) + "\n"


def _finite(x):
    return None if x is None or math.isinf(x) else x


# -- subcommands ------------------------------------------------------------------

def cmd_simulate(args):
    inst = load_instance(args.instance)
    strategy = StrategySpec.parse(args.strategy)
    if isinstance(inst, SubsetInstance):
        trace = simulate_subset(strategy, inst, args.max_excursions)
        o = d_S(inst, inst.S)
    else:
        trace = simulate(strategy, inst, args.max_excursions)
        o = summarize(inst).opt
    data = trace.to_dict()
    data.update(strategy=str(strategy), opt=o, ratio=ratio(trace.total_cost, o))
    table = (("k", "ray", "depth", "found_d", "found_w", "terminal", "cost"), [
        (k, e.ray, _finite(e.depth), None if e.found is None else e.found.distance,
         None if e.found is None else e.found.weight, e.terminal, e.cost)
        for k, e in enumerate(trace.excursions, start=1)
    ])
    return _dump(data, args.format, table), EXIT_OK


def cmd_opt(args):
    inst = load_instance(args.instance)
    if isinstance(inst, SubsetInstance):
        data = {"opt": d_S(inst, inst.S), "s_I": len(inst.S), "optimal_subsets": [sorted(inst.S)]}
        return _dump(data, "json"), EXIT_OK
    data = summarize(inst).to_dict()
    table = (("opt", "s_I", "xi", "xi_guarantee"),
             [(data["opt"], data["s_I"], data["xi"], data["xi_guarantee"])])
    return _dump(data, args.format, table), EXIT_OK


def cmd_ratio_sweep(args):
    rows = experiments.sweep(
        args.family, StrategySpec.parse(args.strategy), seed=args.seed, m=args.m,
        count=args.count, i_max=args.i_max, s=args.s, t=args.t, epsilon=args.epsilon,
        W_rule=args.w_rule,
    )
    text = experiments.write_rows(rows, args.format)
    return text, EXIT_OK if experiments.all_pass(rows) else EXIT_FAIL


def cmd_adversary(args):
    strategy = StrategySpec.parse(args.strategy)
    fam = args.family
    if fam == "adaptive":
        res = adversary.adaptive_adversary(strategy, args.m, args.objective, args.epsilon, args.budget)
        data = {"instance": res.instance.to_dict(), "ratio": res.ratio, "cost": res.cost,
                "opt": res.opt, "cheap": res.cheap, "snapshot": res.snapshot,
                "exhausted": res.exhausted}
        return _dump(data, "json"), EXIT_OK
    if fam == "killer":
        inst = adversary.gen_naive_killer(args.m, args.i, args.epsilon)
        row = experiments.subset_row(f"killer-{args.i:04d}", inst, strategy)
    else:
        if fam == "single":
            inst = adversary.gen_single_target(args.m, args.i, args.epsilon, strategy)
        elif fam == "subsets":
            inst = adversary.gen_subsets_lb(args.m, args.s, args.i, args.epsilon)
        elif fam == "weights":
            inst = adversary.gen_weights_lb(args.m, args.t, args.i, args.epsilon)
        else:
            inst = adversary.gen_all_targets(strategy, args.m, args.epsilon, snapshot=args.i)
        row = experiments.weighted_row(f"{fam}-{args.i:04d}", inst, strategy)
    data = {"instance": inst.to_dict(), "row": row}
    status = EXIT_FAIL if row["pass"] is False else EXIT_OK
    if args.format == "csv":
        return experiments.write_rows([row], "csv"), status
    return _dump(data, "json"), status


def cmd_lemma_check(args):
    if args.phi_gap is None and args.h_bound is None:
        raise StarSearchError("lemma-check needs --phi-gap and/or --h-bound")
    reports = {}
    if args.phi_gap is not None:
        reports["phi_gap"] = verify_phi_gap(args.phi_gap).to_dict()
    if args.h_bound is not None:
        reports["h_bound"] = verify_h_bound(args.h_bound).to_dict()
    ok = all(r["passed"] for r in reports.values())
    # slack: phi gap minus 2e, or 1 minus the largest h_{q,l}
    table = (("check", "passed", "q_max", "min_slack"), [
        (name, r["passed"], r["q_max"], r["min_slack"] if "min_slack" in r else 1.0 - r["max_value"])
        for name, r in reports.items()
    ])
    return _dump(reports, args.format, table), EXIT_OK if ok else EXIT_FAIL


def cmd_partial(args):
    with open(args.lambda_file) as fh:
        lam = PartialMultiset.from_dict(json.load(fh))
    data = {"lambda": lam.to_dict(), "presentations": sum(1 for _ in presentations(lam))}
    ok = True
    if args.oracle:
        data["intrinsic_cost"] = intrinsic_cost(lam)
    if args.reduce:
        checks = check_reduction(lam, signed_baseline())
        data["reduction"] = [
            {"presentation": c.presentation.to_dict(), "F": sorted(c.F), "ws_cost": c.ws_cost,
             "ss_cost": c.ss_cost, "same_moves": c.same_moves, "xi_w": c.xi_w, "xi_s": c.xi_s,
             "ok": c.ok}
            for c in checks
        ]
        ok = all(c.ok for c in checks)
    return _dump(data, "json"), EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------------

def _globals(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")
    parser.add_argument("--out", default=default(None), help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=default("json"),
                        help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starsearch", description="Weighted search on star graphs.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("simulate", cmd_simulate, "run a strategy on an instance file")
    p.add_argument("--instance", required=True)
    p.add_argument("--strategy", default="adsch")
    p.add_argument("--max-excursions", type=int, default=None)

    p = add("opt", cmd_opt, "offline quantities of an instance file")
    p.add_argument("--instance", required=True)

    p = add("ratio-sweep", cmd_ratio_sweep, "ratio table over an instance family")
    p.add_argument("--family", choices=experiments.FAMILIES, default="random")
    p.add_argument("--strategy", default="adsch")
    p.add_argument("--m", type=_m_arg, default=5, help="rays, or an inclusive range lo-hi")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--i-max", type=int, default=30)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=adversary.DEFAULT_EPSILON)
    p.add_argument("--w-rule", default="fraction:0.5")

    p = add("adversary", cmd_adversary, "generate one adversarial instance")
    p.add_argument("--family", choices=("single", "subsets", "weights", "killer", "all-targets", "adaptive"),
                   default="single")
    p.add_argument("--strategy", default="adsub")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--i", type=int, default=30)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--objective", type=int, default=1)
    p.add_argument("--budget", type=int, default=60)
    p.add_argument("--epsilon", type=float, default=adversary.DEFAULT_EPSILON)

    p = add("lemma-check", cmd_lemma_check, "numeric lemma checks")
    p.add_argument("--phi-gap", type=int, metavar="Q")
    p.add_argument("--h-bound", type=int, metavar="Q")

    p = add("partial", cmd_partial, "partial-information model")
    p.add_argument("--lambda", dest="lambda_file", required=True,
                   help='JSON file {"W": .., "pairs": [[d, w], ...]}')
    p.add_argument("--oracle", action="store_true", help="compute the intrinsic cost")
    p.add_argument("--reduce", action="store_true", help="check the signed-search reduction")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except (StarSearchError, ValueError, KeyError, OSError) as exc:
        print(f"starsearch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
