"""Cases: a real form (subset S) and a placement of the n candidate roots among the a's."""

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from config import get_logger, settings

logger = get_logger(__name__)

_NAME_PATTERN = re.compile(r"^S([0-9,]+)L([0-9,]+)$")
_SHORT_NAME_LIMIT = 8


class MalformedName(ValueError):
    pass


class UnsupportedSize(ValueError):
    pass


@dataclass(frozen=True)
class SubsetS:
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("Subset must be nonempty")
        if any(b <= a for a, b in zip(self.members, self.members[1:])):
            raise ValueError(f"Subset members must be strictly ascending: {self.members}")
        if self.members[0] < 1:
            raise ValueError(f"Subset members start at 1: {self.members}")

    def fits(self, n: int) -> bool:
        return self.members[-1] <= n + 1

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class RootPlacement:
    """intervals[r-1] is where λ_r sits.

    0 = (-inf, a1), t = (a_t, a_{t+1}), n+1 = (a_{n+1}, inf).
    """

    intervals: tuple[int, ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("Placement must hold at least one interval")
        n = len(self.intervals)
        if any(not 0 <= t <= n + 1 for t in self.intervals):
            raise ValueError(f"Placement intervals must lie in 0..{n + 1}: {self.intervals}")
        if any(b < a for a, b in zip(self.intervals, self.intervals[1:])):
            raise ValueError(f"Placement intervals must be nondecreasing: {self.intervals}")

    @property
    def n(self) -> int:
        return len(self.intervals)

    def multiplicities(self) -> tuple[int, ...]:
        """How many roots each of the n+2 intervals should hold."""
        return tuple(self.intervals.count(t) for t in range(self.n + 2))


def describe_interval(t: int, n: int) -> str:
    if t == 0:
        return "(-inf, a1)"
    if t == n + 1:
        return f"(a{n + 1}, inf)"
    return f"(a{t}, a{t + 1})"


@dataclass(frozen=True)
class NeumannCase:
    subset: SubsetS
    placement: RootPlacement

    def __post_init__(self):
        if not self.subset.fits(self.n):
            raise ValueError(
                f"Subset {self.subset} exceeds {{1..{self.n + 1}}} for n={self.n}"
            )

    @property
    def n(self) -> int:
        return self.placement.n

    @cached_property
    def name(self) -> str:
        return case_name(self)

    def __str__(self) -> str:
        return self.name


def case_name(case: NeumannCase) -> str:
    members, intervals = case.subset.members, case.placement.intervals
    if case.n <= _SHORT_NAME_LIMIT:
        return f"S{''.join(map(str, members))}L{''.join(map(str, intervals))}"
    return f"S{','.join(map(str, members))}L{','.join(map(str, intervals))}"


def parse_name(name: str) -> NeumannCase:
    """Parse "S13L12" or the long form "S1,3L1,2"."""
    match = _NAME_PATTERN.match(name.strip())
    if not match:
        raise MalformedName(
            f"{name!r} is not a case name; expected S<subset digits>L<placement digits>, "
            "e.g. S13L12 or S1,3L1,2"
        )
    subset_part, placement_part = match.groups()
    long_form = "," in subset_part or "," in placement_part

    def split(part: str) -> tuple[int, ...]:
        tokens = part.split(",") if long_form else list(part)
        if any(not token for token in tokens):
            raise MalformedName(f"Empty index in {name!r}")
        return tuple(int(token) for token in tokens)

    try:
        case = NeumannCase(SubsetS(split(subset_part)), RootPlacement(split(placement_part)))
    except ValueError as e:
        raise MalformedName(f"{name!r}: {e}") from e
    if not long_form and case.n > _SHORT_NAME_LIMIT:
        raise MalformedName(f"{name!r}: n={case.n} needs the comma-separated long form")
    return case


def make_case(n: int, subset: tuple[int, ...], placement: tuple[int, ...]) -> NeumannCase:
    if len(placement) != n:
        raise ValueError(f"Placement {placement} does not have n={n} intervals")
    return NeumannCase(SubsetS(tuple(subset)), RootPlacement(tuple(placement)))


def enumerate_placements(n: int) -> list[RootPlacement]:
    if n < 1:
        raise ValueError("n must be at least 1")
    return [RootPlacement(c) for c in combinations_with_replacement(range(n + 2), n)]


def enumerate_subsets(n: int) -> list[SubsetS]:
    """Nonempty subsets of {1..n+1}, by size and then lexicographically."""
    return [
        SubsetS(members)
        for size in range(1, n + 2)
        for members in combinations(range(1, n + 2), size)
    ]


def enumerate_cases(n: int) -> Iterator[NeumannCase]:
    for subset in enumerate_subsets(n):
        for placement in enumerate_placements(n):
            yield NeumannCase(subset, placement)


def ensure_supported(n: int, force: bool = False, cap: int | None = None) -> None:
    cap = settings.max_n if cap is None else cap
    if n < 1:
        raise UnsupportedSize("n must be at least 1")
    if n > cap:
        if not force:
            raise UnsupportedSize(
                f"n={n} exceeds the supported cap {cap}; pass --force to run anyway"
            )
        logger.warning(
            f"Running n={n} above the cap {cap}: column counts grow multiplicatively per level"
        )
