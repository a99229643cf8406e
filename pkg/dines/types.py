from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction
from typing import Literal

from exact.rational import Matrix
from gappoly.polynomial import GapPolynomial
from gappoly.sign import Indeterminate as UndecidedSign
from gappoly.sign import SignValue

Mode = Literal["symbolic", "instance"]
PivotPolicy = Literal["first", "minpq"]


class UndecidedEntry(ValueError):
    def __init__(self, position: int):
        super().__init__(f"Sign of entry {position} is undecided")
        self.position = position


class NoMixedRow(ValueError):
    pass


class NonPositiveLift(RuntimeError):
    pass


class RowProfile(StrEnum):
    MIXED = "mixed"
    ALL_NONNEG = "all_nonneg"
    ALL_NONPOS = "all_nonpos"
    ALL_ZERO = "all_zero"


class StopReason(StrEnum):
    SINGLE_EQUATION = "single_equation"
    UNIFORM_ROW = "uniform_row"
    UNDECIDED = "undecided"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class SignPartition:
    """Columns of the pivot row split by sign; indices are 0-based and ascending."""

    pivot_row: int
    positive: tuple[int, ...]
    negative: tuple[int, ...]
    zero: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.positive or not self.negative:
            raise ValueError("A pivot partition needs positive and negative columns")
        if set(self.positive) & set(self.negative):
            raise ValueError("Positive and negative column sets overlap")

    @property
    def P(self) -> int:
        return len(self.positive)

    @property
    def Q(self) -> int:
        return len(self.negative)

    def pairs(self) -> list[tuple[int, int]]:
        """(i, j) pairs in vec order: j outer, i inner."""
        return [(i, j) for j in self.negative for i in self.positive]


@dataclass(frozen=True)
class ReductionLevel:
    index: int
    matrix: Matrix
    var_ancestry: tuple[tuple[int, int], ...]
    row_origin: tuple[int, ...]
    signs: tuple[tuple[SignValue, ...], ...] = ()
    profiles: tuple[RowProfile | None, ...] = ()
    partition: SignPartition | None = None
    dropped_rows: tuple[int, ...] = ()

    def active_rows(self) -> list[int]:
        return [r for r in range(self.matrix.rows) if r not in self.dropped_rows]


@dataclass(frozen=True)
class DinesTrace:
    mode: Mode
    levels: tuple[ReductionLevel, ...]
    stop_reason: StopReason

    @property
    def final(self) -> ReductionLevel:
        return self.levels[-1]


@dataclass(frozen=True)
class Feasible:
    label: Literal["feasible"] = "feasible"

    @property
    def exit_code(self) -> int:
        return 0


@dataclass(frozen=True)
class Infeasible:
    level: int
    row: int
    signs: tuple[int, ...]
    pf: bool = False
    label: Literal["infeasible"] = "infeasible"

    @property
    def exit_code(self) -> int:
        return 1

    @property
    def step(self) -> int:
        return self.level + 1


@dataclass(frozen=True)
class Indeterminate:
    level: int
    position: tuple[int, int] | None
    expression: GapPolynomial | None
    detail: UndecidedSign | None = field(default=None, compare=False)
    label: Literal["indeterminate"] = "indeterminate"

    @property
    def exit_code(self) -> int:
        return 2


Verdict = Feasible | Infeasible | Indeterminate


@dataclass(frozen=True)
class WitnessVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise NonPositiveLift(f"Witness has a non-positive coordinate: {self.values}")

    @property
    def qsq(self) -> tuple[Fraction, ...]:
        """Everything except the homogenizing coordinate."""
        return self.values[:-1]
