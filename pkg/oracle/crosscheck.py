"""Direct Gaussian feasibility and cross-validation of the elimination engine."""

from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction

from config import get_logger, settings
from dines.engine import decide
from dines.types import Feasible, Infeasible, NonPositiveLift, PivotPolicy, Verdict
from dines.witness import lift_witness
from exact.rational import Matrix, SingularReport, format_rational, gauss_solve
from gappoly.scene import scene_from_placement
from neumann.cases import NeumannCase
from neumann.roots import u_polynomial, verify_roots
from neumann.system import InstanceParameters, build_instance_system, build_symbolic_system
from oracle.sampling import SampleConfig, sample_instance
from oracle.schemas import CrossCheckReport, CrossCheckSummary, SampleReport

logger = get_logger(__name__)


class OracleStatus(StrEnum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    SINGULAR = "singular"


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    solution: tuple[Fraction, ...] | None = None
    rank: int | None = None

    @property
    def witness(self) -> tuple[Fraction, ...] | None:
        return self.solution if self.status is OracleStatus.FEASIBLE else None


def direct_feasibility(case: NeumannCase, instance: InstanceParameters) -> OracleResult:
    """Pin the homogenizing coordinate to 1 and solve the square system for q²."""
    system = build_instance_system(case, instance)
    size = system.rows
    square = Matrix.from_rows([system.row(r)[:size] for r in range(size)])
    rhs = [Fraction(1)] + [Fraction(0)] * (size - 1)
    solution = gauss_solve(square, rhs)
    if isinstance(solution, SingularReport):
        return OracleResult(OracleStatus.SINGULAR, rank=solution.rank)
    if all(x > 0 for x in solution):
        return OracleResult(OracleStatus.FEASIBLE, solution)
    return OracleResult(OracleStatus.INFEASIBLE, solution)


def _decisive(verdict: Verdict) -> str | None:
    return verdict.label if isinstance(verdict, (Feasible, Infeasible)) else None


def _check_sample(
    case: NeumannCase,
    instance: InstanceParameters,
    oracle: OracleResult,
    index: int,
    attempt: int,
    policy: PivotPolicy,
) -> SampleReport:
    verdict, trace = decide(build_instance_system(case, instance), "instance", policy=policy)
    report = SampleReport(
        index=index,
        attempt=attempt,
        a=[format_rational(v) for v in instance.a],
        lam=[format_rational(v) for v in instance.lam],
        verdict=verdict.label,
        oracle=oracle.status.value,
    )
    if not isinstance(verdict, Feasible):
        return report

    try:
        witness = lift_witness(trace)
    except NonPositiveLift as e:
        logger.error(f"{case.name} sample {index}: {e}")
        report.lift_error = str(e)
        return report

    qsq = witness.qsq
    report.witness = [format_rational(v) for v in qsq]
    if oracle.witness is not None:
        report.witness_matches_oracle = tuple(qsq) == tuple(oracle.witness)
    check = verify_roots(u_polynomial(qsq, case.subset, instance.a), instance.a, case.placement)
    report.roots_matched = check.matched
    return report


def cross_validate(
    case: NeumannCase,
    config: SampleConfig | None = None,
    *,
    policy: PivotPolicy = settings.pivot_policy,
    polya_max: int = settings.polya_max,
) -> CrossCheckReport:
    config = config or SampleConfig()
    scene = scene_from_placement(case.n, case.placement.intervals)
    symbolic, _ = decide(
        build_symbolic_system(case, scene),
        "symbolic",
        policy=policy,
        polya_max=polya_max,
        seed=config.seed,
    )
    expected = _decisive(symbolic)

    samples: list[SampleReport] = []
    disagreements: list[str] = []
    retries = 0
    for index in range(config.samples):
        for attempt in range(config.singular_retries + 1):
            instance = sample_instance(
                scene, config, index, case_name=case.name, attempt=attempt
            )
            oracle = direct_feasibility(case, instance)
            if oracle.status is not OracleStatus.SINGULAR:
                break
            retries += 1
            logger.warning(
                f"{case.name} sample {index}: singular system (rank {oracle.rank}), resampling"
            )
        else:
            disagreements.append(
                f"sample {index}: singular after {config.singular_retries} retries"
            )
            continue

        report = _check_sample(case, instance, oracle, index, attempt, policy)
        samples.append(report)
        labels = {report.verdict, report.oracle} | ({expected} if expected else set())
        if len(labels) > 1:
            disagreements.append(
                f"sample {index} ({instance.render()}): symbolic={symbolic.label} "
                f"instance={report.verdict} oracle={report.oracle}"
            )

    result = CrossCheckReport(
        case=case.name,
        symbolic=symbolic.label,
        samples=samples,
        agreement=not disagreements,
        singular_retries=retries,
        nonpositive_lifts=sum(1 for s in samples if s.lift_error),
        witness_mismatches=sum(1 for s in samples if s.witness_matches_oracle is False),
        root_mismatches=sum(1 for s in samples if s.roots_matched is False),
        disagreements=disagreements,
    )
    for line in disagreements:
        logger.warning(f"{case.name}: {line}")
    logger.info(
        f"{case.name}: symbolic={symbolic.label}, {len(samples)} samples, "
        f"agreement={result.agreement}"
    )
    return result


def summarize(reports: list[CrossCheckReport]) -> CrossCheckSummary:
    return CrossCheckSummary(
        cases=len(reports),
        agreements=sum(1 for r in reports if r.agreement),
        disagreements=sum(1 for r in reports if not r.agreement),
        singular_retries=sum(r.singular_retries for r in reports),
        nonpositive_lifts=sum(r.nonpositive_lifts for r in reports),
        witness_mismatches=sum(r.witness_mismatches for r in reports),
        root_mismatches=sum(r.root_mismatches for r in reports),
    )
