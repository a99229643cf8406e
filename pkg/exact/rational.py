"""Exact rational scalars, matrices and Gaussian elimination.

Rationals are ``fractions.Fraction`` values, which are always stored in
lowest terms with a positive denominator.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Iterable, Sequence, TypeVar

from config import get_logger

logger = get_logger(__name__)

Rational = Fraction

T = TypeVar("T")

_RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with an optional leading minus on p only."""
    token = text.strip()
    if not _RATIONAL_PATTERN.match(token):
        raise ValueError(f"Not a rational literal (expected p/q or p): {text!r}")
    value = Fraction(token)
    return value


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    return tuple(parse_rational(part) for part in text.split(","))


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def format_rational_list(values: Iterable[Fraction]) -> str:
    return ",".join(format_rational(v) for v in values)


@dataclass(frozen=True)
class Matrix(Generic[T]):
    """Row-major matrix over any ring whose elements support + - *."""

    rows: int
    cols: int
    entries: tuple[T, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Matrix of shape {self.rows}x{self.cols} needs "
                f"{self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[T]], cols: int | None = None) -> "Matrix[T]":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(row) != width for row in rows):
            raise ValueError("Every row must have the same number of entries")
        return cls(len(rows), width, tuple(e for row in rows for e in row))

    def __getitem__(self, index: tuple[int, int]) -> T:
        r, c = index
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[T, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def to_rows(self) -> list[tuple[T, ...]]:
        return [self.row(r) for r in range(self.rows)]

    def apply(self, vector: Sequence[T]) -> tuple[T, ...]:
        if len(vector) != self.cols:
            raise ValueError("Vector length does not match the column count")
        return tuple(
            sum((a * x for a, x in zip(self.row(r), vector)), Fraction(0))
            for r in range(self.rows)
        )


RationalMatrix = Matrix[Fraction]


@dataclass(frozen=True)
class SingularReport:
    rank: int
    rows: int


def gauss_solve(
    m: RationalMatrix, rhs: Sequence[Fraction]
) -> tuple[Fraction, ...] | SingularReport:
    """Solve m·x = rhs exactly with full pivoting on the largest magnitude."""
    if m.rows != m.cols:
        raise ValueError(f"gauss_solve needs a square matrix, got {m.rows}x{m.cols}")
    if len(rhs) != m.rows:
        raise ValueError("Right-hand side length does not match the row count")

    size = m.rows
    work = [[Fraction(e) for e in m.row(r)] + [Fraction(rhs[r])] for r in range(size)]
    column_order = list(range(size))

    for step in range(size):
        pivot_row, pivot_col, best = step, step, Fraction(0)
        for r in range(step, size):
            for c in range(step, size):
                if abs(work[r][c]) > best:
                    pivot_row, pivot_col, best = r, c, abs(work[r][c])
        if best == 0:
            logger.debug(f"Singular system: rank {step} of {size}")
            return SingularReport(rank=step, rows=size)

        work[step], work[pivot_row] = work[pivot_row], work[step]
        if pivot_col != step:
            for row in work:
                row[step], row[pivot_col] = row[pivot_col], row[step]
            column_order[step], column_order[pivot_col] = (
                column_order[pivot_col],
                column_order[step],
            )

        pivot = work[step][step]
        for r in range(step + 1, size):
            factor = work[r][step] / pivot
            if factor:
                row, source = work[r], work[step]
                for c in range(step, size + 1):
                    row[c] -= factor * source[c]

    solution = [Fraction(0)] * size
    for step in reversed(range(size)):
        acc = work[step][size] - sum(
            (work[step][c] * solution[c] for c in range(step + 1, size)), Fraction(0)
        )
        solution[step] = acc / work[step][step]

    result = [Fraction(0)] * size
    for position, variable in enumerate(column_order):
        result[variable] = solution[position]
    return tuple(result)
