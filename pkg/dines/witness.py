"""Positive solutions: the obvious one for a single equation, lifted back level by level."""

from fractions import Fraction
from typing import Sequence

from config import get_logger
from dines.types import DinesTrace, NonPositiveLift, ReductionLevel, StopReason, WitnessVector

logger = get_logger(__name__)


def terminal_witness(level: ReductionLevel) -> tuple[Fraction, ...]:
    """x_i = -Σ_J b_j, x_j = Σ_I b_i; columns with a zero coefficient get 1."""
    active = level.active_rows()
    if not active:
        return (Fraction(1),) * level.matrix.cols
    if len(active) != 1:
        raise ValueError(f"Terminal level has {len(active)} active equations, expected 1")

    row = [Fraction(b) for b in level.matrix.row(active[0])]
    positive_total = sum((b for b in row if b > 0), Fraction(0))
    negative_total = sum((b for b in row if b < 0), Fraction(0))
    if positive_total == 0 or negative_total == 0:
        raise ValueError("Terminal equation must have both positive and negative coefficients")

    values = []
    for b in row:
        if b > 0:
            values.append(-negative_total)
        elif b < 0:
            values.append(positive_total)
        else:
            values.append(Fraction(1))
    return tuple(values)


def _lift_one(level: ReductionLevel, below: Sequence[Fraction], below_ancestry) -> list[Fraction]:
    partition = level.partition
    pivot = level.matrix.row(partition.pivot_row)
    by_pair = dict(zip(below_ancestry, below))

    values = [Fraction(0)] * level.matrix.cols
    for k in partition.zero:
        values[k] = by_pair[(k, k)]
    for i in partition.positive:
        values[i] = -sum(
            (Fraction(pivot[j]) * by_pair[(i, j)] for j in partition.negative), Fraction(0)
        )
    for j in partition.negative:
        values[j] = sum(
            (Fraction(pivot[i]) * by_pair[(i, j)] for i in partition.positive), Fraction(0)
        )
    return values


def lift_witness(
    trace: DinesTrace, terminal: Sequence[Fraction] | None = None
) -> WitnessVector:
    """Lift terminal values to level 0 and scale so the last (homogenizing) coordinate is 1."""
    if trace.mode != "instance":
        raise ValueError("Witness lifting needs an instance-mode trace")
    if trace.stop_reason not in (StopReason.SINGLE_EQUATION, StopReason.VACUOUS):
        raise ValueError(f"Cannot lift a trace that stopped with {trace.stop_reason}")

    values = list(terminal if terminal is not None else terminal_witness(trace.final))
    for upper, lower in zip(reversed(trace.levels[:-1]), reversed(trace.levels[1:])):
        values = _lift_one(upper, values, lower.var_ancestry)

    for r, residual in enumerate(trace.levels[0].matrix.apply(values)):
        if residual != 0:
            logger.error(f"Lifted vector leaves residual {residual} in equation {r}")
            raise NonPositiveLift(f"Lifted vector does not satisfy equation {r}")
    if any(x <= 0 for x in values):
        logger.error(f"Lifted vector is not strictly positive: {values}")
        raise NonPositiveLift(f"Lifted vector is not strictly positive: {values}")

    scale = values[-1]
    return WitnessVector(tuple(x / scale for x in values))
