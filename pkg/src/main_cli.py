"""Command-line entry point for partition families, posets, weights and weighted cumulants.

Run as ``python -m src.main_cli [--max-n N] [--seed S] [--format json|tsv|dot] [--out PATH] <command> ...``.
Exit codes: 0 success, 1 failed check, 2 usage error, 3 unexpected error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

from dotenv import load_dotenv

from src.algebra.encoding import encode_scalar
from src.algebra.scalars import DomainTag, ScalarDomain
from src.cli.moment_problem import ingest_moment_problem
from src.cli.paper_checks import PaperVerifier
from src.cli.report import FORMATS, ReportWriter, render
from src.cumulants.clt import CLTKind, clt_moments, reference_marginal
from src.cumulants.constants_check import balancedness_check, cancellation_audit, constants_independence_check
from src.cumulants.functional import word_text
from src.cumulants.products import ProductKind, mixed_cumulants_check, product_functional
from src.cumulants.transforms import moebius_inversion_cumulants, moments_to_cumulants
from src.partitions.families import FamilyId, almost_interval_classes, closed_form, contains, enumerate_family
from src.partitions.partition import format_partition, parse_partition
from src.poset.family_poset import (
    hasse_diagram,
    hasse_to_dot,
    join_in_family,
    lattice_report,
    meet_in_family,
    moebius,
    moebius_sequence,
    weisner_check,
)
from src.poset.singleton_inductive import si_check_family, si_check_weight
from src.utilis.helper import get_param, job_id, resolve_param, time_now
from src.utilis.logger import SICumulantsLogger
from src.weights.catalogue import WeightId, classify, evaluate, weight_table

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence
    from logging import Logger

FOLDER_NAME = "si_cumulants"
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


@dataclass
class RunContext:
    """Use this class to carry the resolved global settings into the command handlers."""

    logger: Logger
    max_n: int
    seed: int

    def require(self, n: int, what: str = "n") -> int:
        """Use to reject sizes above the global enumeration cap."""
        if n < 1:
            error = f"{what} must be positive, got {n}."
            raise ValueError(error)
        if n > self.max_n:
            error = f"{what}={n} exceeds the enumeration cap {self.max_n}; raise it with --max-n."
            self.logger.error(error)
            raise ValueError(error)
        return n


@dataclass
class CommandOutput:
    """Use this class to hold what a handler produced: a JSON payload, optional rows or DOT, and the check outcome."""

    payload: object
    rows: list[dict] | None = None
    dot: str | None = None
    passed: bool = True


def parse_range(text: str) -> list[int]:
    """Use to read "5" or "1..9" as a list of sizes."""
    start, sep, stop = text.partition("..")
    try:
        low = int(start)
        high = int(stop) if sep else low
    except ValueError as exc:
        error = f"Expected a size like 5 or a range like 1..9, got {text!r}."
        raise ValueError(error) from exc
    if high < low:
        error = f"Empty range {text!r}."
        raise ValueError(error)
    return list(range(low, high + 1))


# families


def cmd_families_enumerate(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to list the members of a family."""
    family = FamilyId.parse(args.family)
    members = [format_partition(p) for p in enumerate_family(family, ctx.require(args.n), max_n=ctx.max_n)]
    payload = {"family": family.value, "n": args.n, "count": len(members), "partitions": members}
    return CommandOutput(payload, rows=[{"partition": p} for p in members])


def cmd_families_count(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to count a family over a range of sizes, optionally against its closed form."""
    family = FamilyId.parse(args.family)
    rows = []
    for n in parse_range(args.n):
        count = len(enumerate_family(family, ctx.require(n), max_n=ctx.max_n))
        rows.append({"n": n, "count": count, "closed_form": closed_form(family, n)})
    matches = all(r["closed_form"] is None or r["closed_form"] == r["count"] for r in rows)
    payload = {"family": family.value, "rows": rows, "matches_closed_form": matches}
    return CommandOutput(payload, rows=rows, passed=matches or not args.check_closed_form)


def cmd_families_classes(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to split Ĩ(n) by the first right-neighbour of 1."""
    classes = almost_interval_classes(ctx.require(args.n), max_n=ctx.max_n)
    rows = [{"class": r, "count": count} for r, count in classes.items()]
    return CommandOutput({"n": args.n, "classes": rows}, rows=rows)


def cmd_families_contains(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to test membership of one partition."""
    family = FamilyId.parse(args.family)
    p = parse_partition(args.partition, args.n)
    ctx.require(p.n)
    return CommandOutput({"family": family.value, "partition": format_partition(p), "member": contains(family, p)})


# poset


def cmd_poset_moebius(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to get μ(0_n, 1_n) over a range of n, or μ on one interval given by --lower and --upper."""
    family = FamilyId.parse(args.family)
    if args.lower or args.upper:
        if not (args.lower and args.upper):
            error = "--lower and --upper go together."
            raise ValueError(error)
        n = parse_range(args.n)[-1] if args.n else None
        lower, upper = parse_partition(args.lower, n), parse_partition(args.upper, n)
        ctx.require(max(lower.n, upper.n))
        value = moebius(family, lower, upper)
        payload = {"family": family.value, "lower": format_partition(lower), "upper": format_partition(upper), "moebius": value}
        return CommandOutput(payload, rows=[{"lower": payload["lower"], "upper": payload["upper"], "moebius": value}])
    n_values = [ctx.require(n) for n in parse_range(args.n or "1..6")]
    sequence = moebius_sequence(family, n_values)
    rows = [{"n": n, "moebius": value} for n, value in sequence.items()]
    payload = {"family": family.value, "sequence": " ".join(str(v) for v in sequence.values()), "rows": rows}
    return CommandOutput(payload, rows=rows)


def cmd_poset_si_check(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to check the singleton-inductive property of a family or a weight."""
    if bool(args.family) == bool(args.weight):
        error = "Give exactly one of --family or --weight."
        raise ValueError(error)
    n_max = ctx.require(args.n_max, "n-max")
    report = si_check_family(FamilyId.parse(args.family), n_max) if args.family else si_check_weight(WeightId.parse(args.weight), n_max)
    return CommandOutput(report.to_dict(), passed=report.holds)


def cmd_poset_lattice(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to report lattice-hood of f(n) for n up to --n-max."""
    family = FamilyId.parse(args.family)
    report = lattice_report(family, ctx.require(args.n_max, "n-max"))
    rows = [{"n": n, "lattice": value} for n, value in report.items()]
    return CommandOutput({"family": family.value, "rows": rows}, rows=rows)


def cmd_poset_weisner(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to evaluate one Weisner sum."""
    family = FamilyId.parse(args.family)
    result = weisner_check(family, ctx.require(args.n), parse_partition(args.sigma, args.n))
    return CommandOutput(result.to_dict(), passed=result.holds)


def _pair_query(args: argparse.Namespace, ctx: RunContext, op: Callable, label: str) -> CommandOutput:
    family = FamilyId.parse(args.family)
    left, right = parse_partition(args.left, args.n), parse_partition(args.right, args.n)
    ctx.require(max(left.n, right.n))
    result = op(family, left, right)
    return CommandOutput({"family": family.value, "left": format_partition(left), "right": format_partition(right),
                          label: format_partition(result)})


def cmd_poset_join(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to get the join of two members inside their family."""
    return _pair_query(args, ctx, join_in_family, "join")


def cmd_poset_meet(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to get the meet of two members inside their family."""
    return _pair_query(args, ctx, meet_in_family, "meet")


def cmd_poset_hasse(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to build the Hasse diagram of f(n), as JSON or DOT."""
    family = FamilyId.parse(args.family)
    graph = hasse_diagram(family, ctx.require(args.n))
    payload = {"family": family.value, "n": args.n, "nodes": sorted(graph.nodes), "edges": sorted([a, b] for a, b in graph.edges)}
    rows = [{"lower": a, "upper": b} for a, b in payload["edges"]]
    return CommandOutput(payload, rows=rows, dot=hasse_to_dot(graph, name=f"{family.value}_{args.n}"))


# weights


def cmd_weights_eval(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to evaluate a weight on one partition."""
    weight = WeightId.parse(args.weight)
    p = parse_partition(args.partition, args.n)
    ctx.require(p.n)
    return CommandOutput({"weight": weight.name, "partition": format_partition(p), "value": str(evaluate(weight, p))})


def cmd_weights_table(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to list a weight over every member of a family."""
    weight = WeightId.parse(args.weight)
    family = FamilyId.parse(args.family)
    rows = weight_table(weight, ctx.require(args.n), family)
    return CommandOutput({"weight": weight.name, "family": family.value, "n": args.n, "rows": rows}, rows=rows)


def cmd_weights_classify(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to verify the monic and invertible flags of a weight and find its support."""
    weight = WeightId.parse(args.weight)
    return CommandOutput(classify(weight, ctx.require(args.n_max, "n-max")).to_dict())


# cumulants


def _table_rows(entries: dict) -> list[dict]:
    return [{"word": word_text(w), "value": str(encode_scalar(v))} for w, v in entries.items()]


def cmd_cumulants_solve(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to solve the cumulants of a moment-problem file, by recursion or by Möbius inversion."""
    problem = ingest_moment_problem(args.input, ctx.logger)
    ctx.require(problem.max_order, "max_order")
    if args.family:
        table = moebius_inversion_cumulants(problem.functional, FamilyId.parse(args.family), problem.max_order,
                                            include_constant=args.include_constant)
    else:
        table = moments_to_cumulants(problem.functional, problem.weight, problem.max_order, include_constant=args.include_constant)
    ctx.logger.info(f"Solved {len(table.entries)} cumulants for weight {table.weight.name}")
    return CommandOutput(table.to_dict(), rows=_table_rows(table.entries))


def cmd_cumulants_product(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to tabulate joint moments of independent marginals, or check their mixed cumulants."""
    kind = ProductKind.parse(args.kind)
    marginals = [ingest_moment_problem(path, ctx.logger).functional for path in args.marginal]
    max_order = ctx.require(args.max_order, "max-order")
    if args.check_mixed:
        report = mixed_cumulants_check(kind, marginals, max_order)
        return CommandOutput(report.to_dict(), passed=report.holds)
    joint = product_functional(kind, marginals, max_order)
    entries = {w: joint.moment(w) for order in range(1, max_order + 1) for w in joint.words(order)}
    payload = {"kind": kind.value, "functional": joint.name, "max_order": max_order, "rows": _table_rows(entries)}
    return CommandOutput(payload, rows=payload["rows"])


def cmd_cumulants_verify_constants(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to check that every cumulant with a constant argument vanishes."""
    weight = WeightId.parse(args.weight)
    max_order = ctx.require(args.max_order, "max-order")
    tag = DomainTag(args.domain)
    domain = ScalarDomain.matrix(int(get_param("random", "matrix_dimension"))) if tag is DomainTag.MATRIX else ScalarDomain(tag)
    seeds = int(get_param("random", "matrix_seeds")) if tag is not DomainTag.POLY else 1
    check = constants_independence_check(weight, max_order, domain, alphabet=tuple(args.alphabet), seed=ctx.seed, seeds=seeds,
                                         bound=int(get_param("random", "bound")))
    return CommandOutput(check.to_dict(), passed=check.holds)


def cmd_cumulants_audit(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to pair the terms of the moment-cumulant sum along singleton insertion."""
    check = cancellation_audit(WeightId.parse(args.weight), ctx.require(args.max_order, "max-order"))
    return CommandOutput(check.to_dict(), passed=check.holds)


def cmd_cumulants_balancedness(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to compare left and right attachment of the nested extension on random matrices."""
    check = balancedness_check(WeightId.parse(args.weight), ctx.require(args.max_order, "max-order"),
                               dimension=int(get_param("random", "matrix_dimension")), seed=ctx.seed,
                               bound=int(get_param("random", "bound")))
    return CommandOutput(check.to_dict(), passed=check.holds)


def cmd_cumulants_clt(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to get the moments of normalised sums of N independent copies."""
    kind = CLTKind(args.kind)
    order = ctx.require(args.order, "order")
    if args.input:
        marginal = ingest_moment_problem(args.input, ctx.logger).functional
    else:
        marginal = reference_marginal(kind, order)
    rows = []
    for n_copies in args.N:
        moments = clt_moments(kind, marginal, n_copies, order, allow_non_centered=args.allow_non_centered)
        rows.extend({"N": n_copies, "k": k, "moment": str(encode_scalar(m))} for k, m in enumerate(moments, start=1))
    return CommandOutput({"kind": kind.value, "marginal": marginal.name, "order": order, "rows": rows}, rows=rows)


# verify-paper


def cmd_verify_paper(args: argparse.Namespace, ctx: RunContext) -> CommandOutput:
    """Use to run the acceptance checks and summarise them."""
    verifier = PaperVerifier(ctx.logger, ctx.seed, ctx.max_n, weight_filter=args.weight)
    results = verifier.run(args.only)
    report = verifier.report(results)
    rows = [{"check": r.name, "passed": r.passed, "expected": str(r.expected), "computed": str(r.computed)} for r in results]
    return CommandOutput(report, rows=rows, passed=report["passed"])


def build_parser() -> argparse.ArgumentParser:
    """Use to declare the command tree."""
    parser = argparse.ArgumentParser(prog="si-cumulants", description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=None, help="global enumeration cap (env SI_MAX_N)")
    parser.add_argument("--seed", type=int, default=None, help="seed for random functionals (env SI_SEED)")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--out", default=None, help="write the output exactly here")
    commands = parser.add_subparsers(dest="command", required=True)

    families = commands.add_parser("families", help="enumerate and count partition families").add_subparsers(dest="action", required=True)
    sub = families.add_parser("enumerate")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.set_defaults(handler=cmd_families_enumerate)
    sub = families.add_parser("count")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", required=True, help="size or range such as 1..10")
    sub.add_argument("--check-closed-form", action="store_true")
    sub.set_defaults(handler=cmd_families_count)
    sub = families.add_parser("classes")
    sub.add_argument("--n", type=int, required=True)
    sub.set_defaults(handler=cmd_families_classes)
    sub = families.add_parser("contains")
    sub.add_argument("--family", required=True)
    sub.add_argument("--partition", required=True)
    sub.add_argument("--n", type=int, default=None)
    sub.set_defaults(handler=cmd_families_contains)

    poset = commands.add_parser("poset", help="Möbius functions, lattices and Hasse diagrams").add_subparsers(dest="action", required=True)
    sub = poset.add_parser("moebius")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", default=None, help="size or range such as 1..9")
    sub.add_argument("--lower", default=None)
    sub.add_argument("--upper", default=None)
    sub.set_defaults(handler=cmd_poset_moebius)
    sub = poset.add_parser("si-check")
    sub.add_argument("--family", default=None)
    sub.add_argument("--weight", default=None)
    sub.add_argument("--n-max", type=int, required=True)
    sub.set_defaults(handler=cmd_poset_si_check)
    sub = poset.add_parser("lattice")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n-max", type=int, required=True)
    sub.set_defaults(handler=cmd_poset_lattice)
    sub = poset.add_parser("weisner")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--sigma", required=True)
    sub.set_defaults(handler=cmd_poset_weisner)
    for name, handler in (("join", cmd_poset_join), ("meet", cmd_poset_meet)):
        sub = poset.add_parser(name)
        sub.add_argument("--family", required=True)
        sub.add_argument("--left", required=True)
        sub.add_argument("--right", required=True)
        sub.add_argument("--n", type=int, default=None)
        sub.set_defaults(handler=handler)
    sub = poset.add_parser("hasse")
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--dot", action="store_true", help="same as --format dot")
    sub.set_defaults(handler=cmd_poset_hasse)

    weights = commands.add_parser("weights", help="evaluate and classify weights").add_subparsers(dest="action", required=True)
    sub = weights.add_parser("eval")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--partition", required=True)
    sub.add_argument("--n", type=int, default=None)
    sub.set_defaults(handler=cmd_weights_eval)
    sub = weights.add_parser("table")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--family", default="nc")
    sub.set_defaults(handler=cmd_weights_table)
    sub = weights.add_parser("classify")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--n-max", type=int, required=True)
    sub.set_defaults(handler=cmd_weights_classify)

    cumulants = commands.add_parser("cumulants", help="weighted cumulants, products and limit theorems").add_subparsers(dest="action",
                                                                                                                       required=True)
    sub = cumulants.add_parser("solve")
    sub.add_argument("input", help="moment-problem JSON file")
    sub.add_argument("--family", default=None, help="use Möbius inversion over this family instead of the file's weight")
    sub.add_argument("--include-constant", action="store_true")
    sub.set_defaults(handler=cmd_cumulants_solve)
    sub = cumulants.add_parser("product")
    sub.add_argument("--kind", required=True, choices=[k.value for k in ProductKind])
    sub.add_argument("--marginal", action="append", required=True, help="moment-problem JSON file, repeat per marginal")
    sub.add_argument("--max-order", type=int, required=True)
    sub.add_argument("--check-mixed", action="store_true")
    sub.set_defaults(handler=cmd_cumulants_product)
    sub = cumulants.add_parser("verify-constants")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--max-order", type=int, required=True)
    sub.add_argument("--domain", choices=[t.value for t in DomainTag], default=DomainTag.POLY.value)
    sub.add_argument("--alphabet", nargs="+", default=["x", "y"])
    sub.set_defaults(handler=cmd_cumulants_verify_constants)
    sub = cumulants.add_parser("audit")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--max-order", type=int, required=True)
    sub.set_defaults(handler=cmd_cumulants_audit)
    sub = cumulants.add_parser("balancedness")
    sub.add_argument("--weight", required=True)
    sub.add_argument("--max-order", type=int, required=True)
    sub.set_defaults(handler=cmd_cumulants_balancedness)
    sub = cumulants.add_parser("clt")
    sub.add_argument("--kind", required=True, choices=[k.value for k in CLTKind])
    sub.add_argument("--N", type=int, action="append", required=True, help="number of copies, repeatable")
    sub.add_argument("--order", type=int, required=True)
    sub.add_argument("--input", default=None, help="one-symbol moment-problem JSON file; defaults to the reference marginal")
    sub.add_argument("--allow-non-centered", action="store_true")
    sub.set_defaults(handler=cmd_cumulants_clt)

    verify = commands.add_parser("verify-paper", help="run the acceptance checks")
    verify.add_argument("--only", nargs="+", default=None, help="check names or name prefixes")
    verify.add_argument("--weight", default=None, help="restrict the si check to one weight")
    verify.set_defaults(handler=cmd_verify_paper, action=None)
    return parser


def _environment() -> tuple[str, str | None]:
    execution_env = os.getenv("EXECUTION_ENV", "local")
    if execution_env == "local":
        load_dotenv()
        return execution_env, os.getenv("BUCKET_NAME", "local_results")
    if execution_env == "gcp":
        return execution_env, os.getenv("BUCKET_NAME")
    return execution_env, None


def main(argv: Sequence[str] | None = None) -> int:
    """Use to parse the command line, run one command and emit its output; returns the exit code."""
    args = build_parser().parse_args(argv)
    if getattr(args, "dot", False):
        args.format = "dot"
    command = " ".join(c for c in (args.command, args.action) if c)

    ts = time_now()
    jid = job_id(ts)
    execution_env, bucket_name = _environment()
    logger_mgr = SICumulantsLogger(execution_env=execution_env, bucket_name=bucket_name,
                                   folder_name=f"{FOLDER_NAME}/{command.replace(' ', '_')}/{jid}")
    with logger_mgr as logger:
        try:
            if execution_env == "gcp" and not bucket_name:
                error = "The BUCKET_NAME environment variable is not set!"
                logger.error(error)
                raise ValueError(error)
            if execution_env not in ("local", "gcp"):
                logger.warning(f"Running in unknown environment: {execution_env}. Results will not be saved.")
            ctx = RunContext(
                logger=logger,
                max_n=resolve_param("enumeration", "max_n", args.max_n, "SI_MAX_N"),
                seed=resolve_param("random", "seed", args.seed, "SI_SEED"),
            )
            logger.info(f"Running '{command}' (max_n={ctx.max_n}, seed={ctx.seed}, format={args.format})")

            start_time = time.perf_counter()
            output: CommandOutput = args.handler(args, ctx)
            logger.info(f"'{command}' finished in {time.perf_counter() - start_time:.2f} seconds.")
            text = render(output.payload, args.format, output.rows, output.dot)

            writer = ReportWriter(logger, execution_env, bucket_name)
            if args.out:
                writer.write_to(args.out, text)
            else:
                print(text, end="")
                if args.command == "verify-paper":
                    writer.save(f"{FOLDER_NAME}/verify_paper", jid, text, ReportWriter.metadata(jid, ts, execution_env, command))
        except (ValueError, KeyError, FileNotFoundError) as e:
            error = f"{command}: {e}"
            logger.error(error)  # noqa: TRY400
            print(f"error: {error}", file=sys.stderr)
            return EXIT_USAGE
        except Exception as e:
            logger.exception(f"An error occurred while running '{command}': {e}")
            return EXIT_ERROR
        if not output.passed:
            logger.error(f"'{command}' reported a failed check.")
            return EXIT_FAILED
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
