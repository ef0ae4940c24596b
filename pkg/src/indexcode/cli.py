"""``indexcode`` command-line front end.

Exit status: 0 success, 1 infeasible instance or failed check, 2 bad input,
3 budget or enumeration cap exceeded.  With ``--machine`` every command
prints ``key value`` lines in a fixed order, identical across worker counts.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cellular, structure
from .code import format_column, parse_generator, render_generator
from .exceptions import BudgetExceeded, CapExceeded, InfeasibleError, InstanceError, SupportError
from .fitting import DEFAULT_BUDGET, minrank_search
from .instance import build_message_graph, load_instance, shared_messages
from .oracle import SearchBounds, oracle_cellular, oracle_multisender, verify_decoding
from .sweeps import SWEEPS, run_sweep, suite_for

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class Report:
    """Collects output lines for text or machine mode."""

    def __init__(self, machine: bool, out=None):
        self.machine = machine
        self.out = out or sys.stdout

    def kv(self, key, value, label=None):
        if self.machine:
            self.out.write(f"{key} {value}\n")
        else:
            self.out.write(f"{label or key}: {value}\n")

    def text(self, line=""):
        if not self.machine:
            self.out.write(f"{line}\n")


def _ints(values) -> str:
    return " ".join(str(v) for v in values) if values else "-"


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _emit_code(rep: Report, gen):
    if rep.machine:
        for s, col in gen.items():
            rep.kv("column", f"s{s} {format_column(col)}")
    else:
        rep.text("code:")
        for line in render_generator(gen).splitlines():
            rep.text(f"  {line}")


def _emit_verdicts(rep: Report, verdicts) -> bool:
    if rep.machine:
        rep.kv("decodes", " ".join("1" if v else "0" for v in verdicts))
    else:
        for k, ok in enumerate(verdicts, start=1):
            rep.text(f"  receiver {k}: {'ok' if ok else 'FAIL'}")
    return all(verdicts)


# commands ----------------------------------------------------------------

def cmd_solve(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    res = minrank_search(inst, args.budget, args.workers, use_prop1=not args.no_prop1)
    rep.kv("N_opt", res.n_opt)
    rep.kv("dof", res.template.dof, "degrees of freedom")
    rep.kv("lengths", _ints(res.generator.lengths), "columns per sender")
    _emit_code(rep, res.generator)
    rep.text("decoding:")
    ok = _emit_verdicts(rep, verify_decoding(inst.without_coverage(), res.generator))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve_cellular(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    res = cellular.cellular_minsearch(inst, args.budget, args.workers)
    rep.kv("N_opt", res.n_opt)
    rep.kv("dof", res.template.dof, "degrees of freedom")
    if rep.machine:
        for name, value in res.dims._asdict().items():
            rep.kv(name, value)
    else:
        rep.text("subspaces: " + ", ".join(f"{k}={v}" for k, v in res.dims._asdict().items()))
    rep.kv("lengths", _ints(res.generator.lengths), "columns per sender")
    _emit_code(rep, res.generator)
    rep.text("decoding:")
    ok = _emit_verdicts(rep, cellular.verify_cellular_decoding(inst, res.generator))
    return EXIT_OK if ok else EXIT_FAIL


def _bounds(args) -> SearchBounds:
    return SearchBounds(max_n=args.max_n)


def cmd_oracle(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    res = oracle_multisender(inst, _bounds(args))
    rep.kv("N_opt", res.n_opt)
    _emit_code(rep, res.generator)
    return EXIT_OK


def cmd_oracle_cellular(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    res = oracle_cellular(inst, _bounds(args))
    if not res.feasible:
        rep.kv("N_opt", "infeasible")
        return EXIT_FAIL
    rep.kv("N_opt", res.n_opt)
    _emit_code(rep, res.generator)
    return EXIT_OK


def _load_generator(inst, path):
    return parse_generator(Path(path).read_text(), inst.q, inst.n, inst.num_senders)


def cmd_verify(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    gen = _load_generator(inst, args.generator)
    verdicts = verify_decoding(inst, gen)
    rep.kv("length", gen.length)
    rep.text("decoding:")
    ok = _emit_verdicts(rep, verdicts)
    rep.kv("verified", _flag(ok))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_encode(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    gen = _load_generator(inst, args.generator)
    gen.check_support(inst)
    raw = args.x.replace(",", " ").split()
    if len(raw) == 1 and len(raw[0]) == inst.n:
        raw = list(raw[0])
    try:
        x = [int(v) for v in raw]
    except ValueError:
        raise InstanceError(f"message vector {args.x!r} is not a list of integers") from None
    if len(x) != inst.n:
        raise InstanceError(f"message vector has {len(x)} entries, expected {inst.n}")
    for s, word in enumerate(gen.encode(x), start=1):
        rep.kv(f"s{s}", _ints(word))
    return EXIT_OK


def cmd_analyze(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    graph = build_message_graph(inst)
    rep.kv("message_edges", " ".join(f"{a}-{b}" for a, b in graph.edges()) or "-",
           "message graph edges")
    rep.kv("shared", _ints(sorted(shared_messages(inst))), "shared messages")
    for cyc in structure.zero_cycles(inst, args.max_subsets):
        rep.kv("zero_cycle:", f"{_ints(sorted(cyc.messages))} | connected={_flag(cyc.connected)}",
               "zero cycle")
    rep.kv("uncoded_optimal", _flag(structure.thm4_predicate(inst, args.max_subsets)),
           "no message-connected zero cycle")
    if inst.coverage is None:
        return EXIT_OK
    pruned = cellular.prune_side_info(inst)
    for k, x in enumerate(pruned.side_info, start=1):
        rep.kv("pruned_side", f"{k} : {_ints(sorted(x))}", "pruned side info")
    for h in cellular.enumerate_H(pruned, args.max_subsets):
        rep.kv("H", f"{_ints(sorted(h.nodes))} | r1={_flag(h.has_r1)} r2={_flag(h.has_r2)}")
    rep.kv("v1_v2_condition", _flag(cellular.prop4_predicate(pruned, args.max_subsets)),
           "graph condition for dim(V1 ∩ V2) > 0")
    for c in cellular.classify_cycles(pruned, args.max_subsets):
        verdict = "reducible" if c.reducible else "irreducible"
        rep.kv("cycle", f"{_ints(c.cycle)} | {verdict} {c.case}")
    return EXIT_OK


def cmd_critical(args, rep: Report) -> int:
    inst = load_instance(args.instance)
    report = structure.criticality_report(inst, budget=args.budget, cap=args.max_subsets)
    bad = 0
    for e in report:
        rep.kv("edge", f"{e.receiver} {e.message} | thm2={_flag(e.thm2)} thm3={_flag(e.thm3)} "
                       f"cor2={_flag(e.cor2)} critical={_flag(e.oracle_critical)}")
        bad += not e.consistent
    rep.kv("inconsistent", bad, "flagged-but-critical edges")
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_sweep(args, rep: Report) -> int:
    names = list(SWEEPS) if args.name == "all" else [args.name]
    failed = False
    for name in names:
        kind, check = SWEEPS[name]
        suite = suite_for(kind, args.max_n, args.seed, args.count)
        result = run_sweep(name, suite, check)
        rep.kv(f"{name}.checked", result.checked)
        rep.kv(f"{name}.failures", len(result.failures))
        for inst, problem in result.failures[:args.show]:
            rep.text(f"  {problem}: side={[sorted(x) for x in inst.side_info]} "
                     f"senders={[sorted(m) for m in inst.senders]}")
        failed |= not result.ok
    return EXIT_FAIL if failed else EXIT_OK


# parser ------------------------------------------------------------------

def _positive(value: str) -> int:
    v = int(value)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="key/value output")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="largest search space to enumerate (default 2^24)")
    common.add_argument("--workers", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes for the search")
    common.add_argument("--max-n", type=_positive, default=None,
                        help="largest n for the oracle (default 5) or a sweep (3, or 4 with --seed)")
    common.add_argument("--max-subsets", type=_positive, default=16,
                        help="largest n for subset and cycle enumeration")

    parser = argparse.ArgumentParser(prog="indexcode",
                                     description="Optimal linear index codes for multiple senders.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, gen=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance")
        if gen:
            p.add_argument("generator")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, "minimum-rank search, all senders audible").add_argument(
        "--no-prop1", action="store_true", help="search the full template")
    add("solve-cellular", cmd_solve_cellular, "cellular search with coverage")
    add("oracle", cmd_oracle, "brute-force shortest code, all senders audible")
    add("oracle-cellular", cmd_oracle_cellular, "brute-force shortest cellular code")
    add("verify", cmd_verify, "check that a code lets every receiver decode", gen=True)
    add("encode", cmd_encode, "encode a message vector", gen=True).add_argument(
        "x", help="message vector, e.g. 1011 or 1,0,1,1")
    add("analyze", cmd_analyze, "zero cycles, H-subgraphs and cycle classes")
    add("critical", cmd_critical, "which side information is critical")

    p = sub.add_parser("sweep", parents=[common], help="small-instance cross-checks")
    p.add_argument("name", choices=["all", *SWEEPS])
    p.add_argument("--seed", type=int, default=None, help="random suite instead of exhaustive")
    p.add_argument("--count", type=_positive, default=200, help="random suite size")
    p.add_argument("--show", type=int, default=5, help="failures to print")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_n is None:
        if args.command == "sweep":
            args.max_n = 3 if args.seed is None else 4
        else:
            args.max_n = 5
    rep = Report(args.machine)
    try:
        return args.func(args, rep)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InstanceError, SupportError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
