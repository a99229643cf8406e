"""Ordered scenes: the total order of a_1..a_{n+1} and λ_1..λ_n fixed by a placement."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from gappoly.polynomial import GapPolynomial


@dataclass(frozen=True, order=True)
class Symbol:
    kind: Literal["a", "lambda"]
    index: int

    def __str__(self) -> str:
        return f"a{self.index}" if self.kind == "a" else f"λ{self.index}"


def a_symbol(j: int) -> Symbol:
    return Symbol("a", j)


def lambda_symbol(r: int) -> Symbol:
    return Symbol("lambda", r)


@dataclass(frozen=True)
class OrderedScene:
    n: int
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        expected = {a_symbol(j) for j in range(1, self.n + 2)} | {
            lambda_symbol(r) for r in range(1, self.n + 1)
        }
        if len(self.symbols) != 2 * self.n + 1 or set(self.symbols) != expected:
            raise ValueError(f"Scene must hold each of {sorted(map(str, expected))} once")
        for kind in ("a", "lambda"):
            indices = [s.index for s in self.symbols if s.kind == kind]
            if indices != sorted(indices):
                raise ValueError(f"{kind}-symbols must appear in index order")

    @property
    def gap_count(self) -> int:
        return 2 * self.n

    def position(self, symbol: Symbol) -> int:
        return self.symbols.index(symbol)

    def value_polynomials(self) -> dict[Symbol, GapPolynomial]:
        """k-th symbol = g1 + ... + g_{k-1}; the first symbol sits at 0."""
        return {
            symbol: GapPolynomial.gap_sum(range(k), self.gap_count)
            for k, symbol in enumerate(self.symbols)
        }

    def difference(self, upper: Symbol, lower: Symbol) -> GapPolynomial:
        """value(upper) - value(lower) as a signed run of gaps."""
        hi, lo = self.position(upper), self.position(lower)
        if hi >= lo:
            return GapPolynomial.gap_sum(range(lo, hi), self.gap_count)
        return -GapPolynomial.gap_sum(range(hi, lo), self.gap_count)

    def values_from_gaps(self, gaps: Sequence[Fraction]) -> dict[Symbol, Fraction]:
        if len(gaps) != self.gap_count:
            raise ValueError(f"Expected {self.gap_count} gaps, got {len(gaps)}")
        values, running = {}, Fraction(0)
        for k, symbol in enumerate(self.symbols):
            if k:
                running += Fraction(gaps[k - 1])
            values[symbol] = running
        return values

    def gaps_from_values(self, values: dict[Symbol, Fraction]) -> tuple[Fraction, ...]:
        ordered = [Fraction(values[s]) for s in self.symbols]
        return tuple(b - a for a, b in zip(ordered, ordered[1:]))

    def render(self) -> str:
        return " < ".join(str(s) for s in self.symbols)


def scene_from_placement(n: int, intervals: Sequence[int]) -> OrderedScene:
    """Merge λ_r into interval intervals[r-1]; λ's sharing an interval keep index order.

    Interval 0 is (-inf, a1), t is (a_t, a_{t+1}), n+1 is (a_{n+1}, inf).
    """
    if len(intervals) != n:
        raise ValueError(f"Placement for n={n} needs {n} intervals, got {len(intervals)}")
    order: list[Symbol] = []
    for t in range(n + 2):
        order.extend(
            lambda_symbol(r) for r, slot in enumerate(intervals, start=1) if slot == t
        )
        if t <= n:
            order.append(a_symbol(t + 1))
    return OrderedScene(n, tuple(order))
