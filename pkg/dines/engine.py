"""Dines elimination over exact rationals or gap polynomials.

Each reduction removes one equation: the pivot row's positive columns I and
negative columns J are replaced by the P·Q products x_(i,j), and the other
rows become b_p,i·b_r,j - b_p,j·b_r,i in vec order. Columns where the pivot
row is zero pass through unchanged.
"""

import math
from dataclasses import replace
from typing import Callable, Sequence

from config import get_logger, settings
from dines.types import (
    DinesTrace,
    Feasible,
    Indeterminate,
    Infeasible,
    Mode,
    NoMixedRow,
    PivotPolicy,
    ReductionLevel,
    RowProfile,
    SignPartition,
    StopReason,
    UndecidedEntry,
    Verdict,
)
from exact.rational import Matrix
from gappoly.polynomial import GapPolynomial
from gappoly.sign import Indeterminate as UndecidedSign
from gappoly.sign import Sign, SignValue, is_plain_product, sign_of

logger = get_logger(__name__)


def row_sign_profile(signs: Sequence[SignValue]) -> RowProfile:
    """Classify a row; a decided + and a decided - make it Mixed regardless of the rest."""
    positive = any(s is Sign.POSITIVE for s in signs)
    negative = any(s is Sign.NEGATIVE for s in signs)
    if positive and negative:
        return RowProfile.MIXED
    for position, s in enumerate(signs):
        if isinstance(s, UndecidedSign):
            raise UndecidedEntry(position)
    if positive:
        return RowProfile.ALL_NONNEG
    if negative:
        return RowProfile.ALL_NONPOS
    return RowProfile.ALL_ZERO


def _profile_or_none(signs: Sequence[SignValue]) -> RowProfile | None:
    try:
        return row_sign_profile(signs)
    except UndecidedEntry:
        return None


def _fully_decided(signs: Sequence[SignValue]) -> bool:
    return all(isinstance(s, Sign) for s in signs)


def partition_pivot(
    signs: Sequence[Sequence[SignValue]],
    policy: PivotPolicy = "first",
    rows: Sequence[int] | None = None,
) -> SignPartition:
    candidates = [
        r
        for r in (range(len(signs)) if rows is None else rows)
        if _fully_decided(signs[r]) and row_sign_profile(signs[r]) is RowProfile.MIXED
    ]
    if not candidates:
        raise NoMixedRow("No fully decided row with both signs is available as pivot")

    def split(r: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        row = signs[r]
        return (
            tuple(c for c, s in enumerate(row) if s is Sign.POSITIVE),
            tuple(c for c, s in enumerate(row) if s is Sign.NEGATIVE),
            tuple(c for c, s in enumerate(row) if s is Sign.ZERO),
        )

    if policy == "first":
        chosen = candidates[0]
    elif policy == "minpq":
        chosen = min(
            candidates, key=lambda r: (len(split(r)[0]) * len(split(r)[1]), r)
        )
    else:
        raise ValueError(f"Unknown pivot policy {policy!r} (expected first or minpq)")

    positive, negative, zero = split(chosen)
    return SignPartition(chosen, positive, negative, zero)


def reduce_once(level: ReductionLevel) -> ReductionLevel:
    partition = level.partition
    if partition is None:
        raise ValueError("reduce_once needs a level with a pivot partition")
    active = level.active_rows()
    if len(active) < 2:
        raise ValueError("reduce_once needs at least two active equations")

    m = level.matrix
    pivot = m.row(partition.pivot_row)
    pairs = partition.pairs()
    rows, origin = [], []
    for r in active:
        if r == partition.pivot_row:
            continue
        row = m.row(r)
        entries = [pivot[i] * row[j] - pivot[j] * row[i] for i, j in pairs]
        entries.extend(row[k] for k in partition.zero)
        rows.append(entries)
        origin.append(level.row_origin[r])

    ancestry = tuple(pairs) + tuple((k, k) for k in partition.zero)
    return ReductionLevel(
        index=level.index + 1,
        matrix=Matrix.from_rows(rows, cols=len(ancestry)),
        var_ancestry=ancestry,
        row_origin=tuple(origin),
    )


def strip_row_factors(matrix: Matrix) -> Matrix:
    """Divide each row by its integer content and by gap runs common to all entries.

    Rows are scaled by positive quantities only, so signs and the existence of a
    positive solution are unchanged.
    """
    rows = []
    for entries in matrix.to_rows():
        nonzero = [e for e in entries if not e.is_zero()]
        if not nonzero:
            rows.append(list(entries))
            continue
        nvars = nonzero[0].nvars
        current = list(entries)
        divided = True
        while divided:
            divided = False
            for first in range(nvars):
                for last in range(first, nvars):
                    quotients = []
                    for e in current:
                        q = e if e.is_zero() else e.divide_by_gap_run(first, last)
                        if q is None:
                            break
                        quotients.append(q)
                    else:
                        current, divided = quotients, True
                        break
                if divided:
                    break
        content = 0
        for e in current:
            content = math.gcd(content, e.content())
        if content > 1:
            current = [e.divide_integer(content) for e in current]
        rows.append(current)
    return Matrix.from_rows(rows, cols=matrix.cols)


def _has_partial_factorization(entries: Sequence[GapPolynomial]) -> bool:
    return any(not e.is_zero() and not is_plain_product(e) for e in entries)


def _undecided(level: ReductionLevel, row: int) -> Indeterminate:
    for column, s in enumerate(level.signs[row]):
        if isinstance(s, UndecidedSign):
            return Indeterminate(level.index, (row, column), s.expression, s)
    return Indeterminate(level.index, None, None)


def decide(
    matrix: Matrix,
    mode: Mode = "instance",
    *,
    policy: PivotPolicy = settings.pivot_policy,
    polya_max: int = settings.polya_max,
    samples: int = settings.sign_samples,
    seed: int = settings.seed,
    strip_factors: bool = settings.strip_row_factors,
) -> tuple[Verdict, DinesTrace]:
    if matrix.rows == 0:
        raise ValueError("decide needs at least one equation")

    sign: Callable[[object], SignValue]
    if mode == "symbolic":
        sign = lambda e: sign_of(e, polya_max, samples, seed)  # noqa: E731
    elif mode == "instance":
        sign = Sign.of
    else:
        raise ValueError(f"Unknown mode {mode!r}")

    level = ReductionLevel(
        index=0,
        matrix=matrix,
        var_ancestry=tuple((c, c) for c in range(matrix.cols)),
        row_origin=tuple(range(matrix.rows)),
    )
    levels: list[ReductionLevel] = []

    def finish(verdict: Verdict, reason: StopReason, last: ReductionLevel):
        levels.append(last)
        logger.debug(f"Stopped at level {last.index}: {reason} -> {verdict.label}")
        return verdict, DinesTrace(mode, tuple(levels), reason)

    while True:
        signs = tuple(
            tuple(sign(e) for e in level.matrix.row(r)) for r in range(level.matrix.rows)
        )
        profiles = tuple(_profile_or_none(row) for row in signs)
        dropped = tuple(r for r, p in enumerate(profiles) if p is RowProfile.ALL_ZERO)
        level = replace(level, signs=signs, profiles=profiles, dropped_rows=dropped)
        active = level.active_rows()
        if dropped:
            logger.debug(f"Level {level.index}: dropping zero rows {list(dropped)}")

        uniform = next(
            (
                r
                for r in active
                if profiles[r] in (RowProfile.ALL_NONNEG, RowProfile.ALL_NONPOS)
            ),
            None,
        )
        if uniform is not None:
            pf = mode == "symbolic" and _has_partial_factorization(
                level.matrix.row(uniform)
            )
            verdict = Infeasible(
                level.index, uniform, tuple(int(s) for s in signs[uniform]), pf
            )
            return finish(verdict, StopReason.UNIFORM_ROW, level)

        if not active:
            return finish(Feasible(), StopReason.VACUOUS, level)

        if len(active) == 1:
            r = active[0]
            if profiles[r] is RowProfile.MIXED:
                return finish(Feasible(), StopReason.SINGLE_EQUATION, level)
            return finish(_undecided(level, r), StopReason.UNDECIDED, level)

        try:
            partition = partition_pivot(signs, policy, rows=active)
        except NoMixedRow:
            r = next(r for r in active if not _fully_decided(signs[r]))
            return finish(_undecided(level, r), StopReason.UNDECIDED, level)

        level = replace(level, partition=partition)
        levels.append(level)
        logger.debug(
            f"Level {level.index}: {len(active)} equations x {level.matrix.cols} columns, "
            f"pivot row {partition.pivot_row}, P={partition.P} Q={partition.Q}"
        )
        level = reduce_once(level)
        if mode == "symbolic" and strip_factors:
            level = replace(level, matrix=strip_row_factors(level.matrix))
