import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, TypeVar

from cli.exporter import compare_golden, format_records, format_table, load_golden, write_output
from cli.schemas import CheckReport, LevelReport, RunConfig, TableRow, WitnessReport
from config import get_logger
from dines.engine import decide
from dines.render import level_payload, trace_lines, verdict_line, verdict_payload
from dines.types import Feasible, Indeterminate, Infeasible, Verdict
from dines.witness import lift_witness
from exact.rational import format_rational, format_rational_list
from gappoly.scene import scene_from_placement
from neumann.cases import (
    NeumannCase,
    describe_interval,
    ensure_supported,
    enumerate_cases,
    enumerate_placements,
    make_case,
    parse_name,
)
from neumann.roots import u_polynomial, verify_roots
from neumann.system import (
    InstanceParameters,
    build_instance_system,
    build_symbolic_system,
    epsilon_vector,
    row_label,
)
from oracle.crosscheck import cross_validate, direct_feasibility, summarize
from oracle.sampling import SampleConfig, sample_instance

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise ValueError(f"{what} must be comma-separated integers: {text!r}") from e


def resolve_case(args) -> NeumannCase:
    if getattr(args, "case", None):
        case = parse_name(args.case)
        if args.n is not None and args.n != case.n:
            raise ValueError(f"--n {args.n} contradicts --case {args.case} (n={case.n})")
        return case
    if args.n is None or not args.subset or not args.placement:
        raise ValueError("Give --case NAME or all of --n, --subset and --placement")
    return make_case(
        args.n, _parse_ints(args.subset, "--subset"), _parse_ints(args.placement, "--placement")
    )


def run_config(args, case: NeumannCase | None = None) -> RunConfig:
    a = getattr(args, "a", None)
    lam = getattr(args, "lam", None)
    return RunConfig(
        command=args.command,
        n=case.n if case else getattr(args, "n", None),
        subset=list(case.subset.members) if case else None,
        placement=list(case.placement.intervals) if case else None,
        a=[format_rational(v) for v in a] if a else None,
        lam=[format_rational(v) for v in lam] if lam else None,
        seed=args.seed,
        samples=args.samples,
        polya_max=args.polya_max,
        pivot=args.pivot,
        format=args.format,
        output=args.output,
    )


def _map(fn: Callable[[T], R], items: Iterable[T], workers: int) -> list[R]:
    """Results in input order, on a process pool when workers > 1."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _timed_decide(case: NeumannCase, polya_max: int, policy: str, seed: int):
    start = time.perf_counter()
    verdict, trace = decide(
        build_symbolic_system(case), "symbolic", policy=policy, polya_max=polya_max, seed=seed
    )
    return verdict, trace, round((time.perf_counter() - start) * 1000, 3)


def table_row(name: str, polya_max: int, policy: str, seed: int) -> TableRow:
    verdict, _, duration_ms = _timed_decide(parse_name(name), polya_max, policy, seed)
    return row_from_verdict(name, verdict, duration_ms)


def row_from_verdict(name: str, verdict: Verdict, duration_ms: float) -> TableRow:
    match verdict:
        case Feasible():
            return TableRow(case=name, verdict=1, duration_ms=duration_ms, status=verdict.label)
        case Infeasible(level=level, pf=pf):
            return TableRow(
                case=name,
                verdict=0,
                fail_level=level,
                pf=pf,
                duration_ms=duration_ms,
                status=verdict.label,
            )
        case Indeterminate(level=level):
            return TableRow(
                case=name, fail_level=level, duration_ms=duration_ms, status=verdict.label
            )


def cmd_check(args) -> int:
    case = resolve_case(args)
    ensure_supported(case.n, args.force)
    scene = scene_from_placement(case.n, case.placement.intervals)
    logger.info(f"Checking {case.name}")
    verdict, trace, duration_ms = _timed_decide(case, args.polya_max, args.pivot, args.seed)

    if args.format == "json":
        report = CheckReport(
            config=run_config(args, case),
            case=case.name,
            scene=scene.render(),
            verdict=verdict_payload(verdict, trace, row_label),
            stop_reason=trace.stop_reason.value,
            levels=[
                LevelReport(**level_payload(level, row_label, args.entries))
                for level in trace.levels
            ]
            if args.trace
            else None,
        )
        write_output(report.model_dump_json(by_alias=True, indent=2) + "\n", args.output)
    elif args.format == "csv":
        row = row_from_verdict(case.name, verdict, duration_ms)
        write_output(format_table([row], "csv", run_config(args, case)), args.output)
    else:
        lines = [
            f"Case {case.name}: n={case.n}, S={case.subset}, "
            f"placement {','.join(map(str, case.placement.intervals))}",
            f"Scene: {scene.render()}",
        ]
        if args.trace:
            lines.extend(trace_lines(trace, verdict, row_label, args.entries))
        else:
            lines.append(f"Verdict: {verdict_line(verdict, trace, row_label)}")
        write_output("\n".join(lines) + "\n", args.output)
    return verdict.exit_code


def cmd_table(args) -> int:
    ensure_supported(args.n, args.force)
    names = [case.name for case in enumerate_cases(args.n)]
    logger.info(f"Deciding {len(names)} cases for n={args.n}")
    rows = _map(
        partial(table_row, polya_max=args.polya_max, policy=args.pivot, seed=args.seed),
        names,
        args.workers,
    )
    write_output(format_table(rows, args.format, run_config(args)), args.output)

    exit_code = 2 if any(row.verdict is None for row in rows) else 0
    if args.golden:
        comparison = compare_golden(rows, load_golden(args.golden))
        for line in comparison.lines():
            print(line, file=sys.stderr)
        if not comparison.matched:
            exit_code = 1
    return exit_code


def _instance_for(args, case: NeumannCase) -> InstanceParameters:
    if args.a or args.lam:
        if not (args.a and args.lam):
            raise ValueError("--a and --lambda must be given together")
        instance = InstanceParameters(args.a, args.lam)
        instance.check_placement(case.placement)
        return instance
    scene = scene_from_placement(case.n, case.placement.intervals)
    config = SampleConfig(seed=args.seed, samples=max(args.samples, 1))
    return sample_instance(scene, config, args.index, case_name=case.name)


def cmd_witness(args) -> int:
    case = resolve_case(args)
    ensure_supported(case.n, args.force)
    symbolic, _, _ = _timed_decide(case, args.polya_max, args.pivot, args.seed)
    if isinstance(symbolic, Infeasible):
        print(
            f"{case.name} is infeasible (level {symbolic.level}): no instance has its roots "
            "in this placement, so there is no witness",
            file=sys.stderr,
        )
        return 1

    instance = _instance_for(args, case)
    verdict, trace = decide(build_instance_system(case, instance), "instance", policy=args.pivot)
    if not isinstance(verdict, Feasible):
        print(
            f"{case.name} at {instance.render()}: {verdict_line(verdict, trace, row_label)}",
            file=sys.stderr,
        )
        return 1

    qsq = lift_witness(trace).qsq
    oracle = direct_feasibility(case, instance)
    u = u_polynomial(qsq, case.subset, instance.a)
    check = verify_roots(u, instance.a, case.placement)
    eps = epsilon_vector(case.subset, case.n)
    constraint = " + ".join(
        f"{'' if e > 0 else '-'}{format_rational(q)}" for e, q in zip(eps, qsq)
    ).replace("+ -", "- ")
    report = WitnessReport(
        config=run_config(args, case),
        case=case.name,
        a=[format_rational(v) for v in instance.a],
        lam=[format_rational(v) for v in instance.lam],
        qsq=[format_rational(v) for v in qsq],
        constraint=f"{constraint} = 1",
        u=u.render(),
        counts=list(check.counts),
        expected=list(check.expected),
        real_roots=check.total,
        matched=check.matched,
        oracle_agrees=oracle.witness == tuple(qsq),
    )

    if args.format == "json":
        write_output(report.model_dump_json(by_alias=True, indent=2) + "\n", args.output)
    else:
        intervals = [describe_interval(t, case.n) for t in range(case.n + 2)]
        lines = [
            f"Case {case.name}: {instance.render()}",
            f"q² = ({format_rational_list(qsq)})",
            f"Σ ε·q²: {report.constraint}",
            f"U(λ) = {report.u}",
            "Sturm counts: "
            + ", ".join(f"{iv}: {c}" for iv, c in zip(intervals, check.counts)),
            f"Placement {'matched' if check.matched else 'NOT matched'} "
            f"(expected {list(check.expected)}, {check.total} real roots)",
            f"Direct solve agrees: {report.oracle_agrees}",
        ]
        write_output("\n".join(lines) + "\n", args.output)
    return 0 if check.matched else 1


def placement_name(intervals: tuple[int, ...]) -> str:
    if len(intervals) <= 8:
        return "L" + "".join(map(str, intervals))
    return "L" + ",".join(map(str, intervals))


def cmd_enumerate(args) -> int:
    placements = enumerate_placements(args.n)
    records = [
        {
            "name": placement_name(p.intervals),
            "intervals": ",".join(map(str, p.intervals)),
            "description": " ".join(describe_interval(t, args.n) for t in p.intervals),
        }
        for p in placements
    ]
    if args.format == "text":
        text = "".join(
            f"{r['name']}\t{r['intervals']}\t{r['description']}\n" for r in records
        )
    else:
        text = format_records(records, args.format, run_config(args), key="placements")
    write_output(text, args.output)
    return 0


def _cross_validate_name(name: str, config: SampleConfig, policy: str, polya_max: int):
    return cross_validate(parse_name(name), config, policy=policy, polya_max=polya_max)


def cmd_oracle(args) -> int:
    if args.all:
        if args.n is None:
            raise ValueError("--all needs --n")
        ensure_supported(args.n, args.force)
        names = [case.name for case in enumerate_cases(args.n)]
        echoed = None
    else:
        case = resolve_case(args)
        ensure_supported(case.n, args.force)
        names = [case.name]
        echoed = case

    config = SampleConfig(seed=args.seed, samples=args.samples)
    logger.info(f"Cross-validating {len(names)} cases with {config.samples} samples each")
    reports = _map(
        partial(_cross_validate_name, config=config, policy=args.pivot, polya_max=args.polya_max),
        names,
        args.workers,
    )
    summary = summarize(reports)

    if args.format == "json":
        lines = [report.model_dump_json(by_alias=True) for report in reports]
        lines.append(
            json.dumps(
                {
                    "summary": summary.model_dump(),
                    "config": run_config(args, echoed).model_dump(by_alias=True),
                }
            )
        )
    else:
        lines = [
            f"{r.case}\t{r.symbolic}\t"
            f"{'agree' if r.agreement else 'DISAGREE'}\t{len(r.samples)} samples"
            for r in reports
        ]
        lines.append(
            f"{summary.agreements}/{summary.cases} agreements, "
            f"{summary.singular_retries} singular retries, "
            f"{summary.nonpositive_lifts} lift failures, "
            f"{summary.witness_mismatches} witness mismatches, "
            f"{summary.root_mismatches} root mismatches"
        )
    write_output("\n".join(lines) + "\n", args.output)
    return 0 if all(r.ok for r in reports) else 1
