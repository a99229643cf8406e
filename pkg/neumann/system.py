"""The homogeneous linear system whose positive solutions are the admissible q².

Row 0 is Σ ε_s·x_s - x_{n+2} = 0; row r is Σ ε_s·Π_{j≠s}(λ_r - a_j)·x_s = 0.
A positive solution with x_{n+2} = 1 gives q_s² = x_s.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from config import get_logger
from exact.rational import Matrix, format_rational_list
from gappoly.polynomial import GapPolynomial
from gappoly.scene import OrderedScene, a_symbol, lambda_symbol, scene_from_placement
from neumann.cases import NeumannCase, RootPlacement, SubsetS, describe_interval

logger = get_logger(__name__)


class PlacementMismatch(ValueError):
    pass


def epsilon_vector(subset: SubsetS, n: int) -> tuple[int, ...]:
    if not subset.fits(n):
        raise ValueError(f"Subset {subset} exceeds {{1..{n + 1}}}")
    return tuple(1 if j in subset.members else -1 for j in range(1, n + 2))


def interval_of(value: Fraction, a: Sequence[Fraction]) -> int | None:
    """Index of the open interval cut by a that holds value; None on a boundary."""
    if value in a:
        return None
    return sum(1 for cut in a if cut < value)


@dataclass(frozen=True)
class InstanceParameters:
    a: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(v) for v in self.a))
        object.__setattr__(self, "lam", tuple(Fraction(v) for v in self.lam))
        if len(self.a) != len(self.lam) + 1:
            raise ValueError(
                f"Need n+1 a-values for n λ-values, got {len(self.a)} and {len(self.lam)}"
            )
        for name, values in (("a", self.a), ("lambda", self.lam)):
            if any(b <= x for x, b in zip(values, values[1:])):
                raise ValueError(f"{name} values must be strictly ascending: {values}")

    @property
    def n(self) -> int:
        return len(self.lam)

    def placement(self) -> RootPlacement | None:
        intervals = [interval_of(v, self.a) for v in self.lam]
        if any(t is None for t in intervals):
            return None
        return RootPlacement(tuple(intervals))

    def check_placement(self, placement: RootPlacement) -> None:
        if placement.n != self.n:
            raise PlacementMismatch(f"Placement is for n={placement.n}, instance has n={self.n}")
        for r, (value, t) in enumerate(zip(self.lam, placement.intervals), start=1):
            actual = interval_of(value, self.a)
            if actual != t:
                where = "a boundary" if actual is None else describe_interval(actual, self.n)
                raise PlacementMismatch(
                    f"λ{r}={value} lies on {where}, not inside {describe_interval(t, self.n)}"
                )

    def render(self) -> str:
        return f"a=({format_rational_list(self.a)}) λ=({format_rational_list(self.lam)})"


def build_symbolic_system(
    case: NeumannCase, scene: OrderedScene | None = None
) -> Matrix[GapPolynomial]:
    n = case.n
    scene = scene or scene_from_placement(n, case.placement.intervals)
    g = scene.gap_count
    eps = epsilon_vector(case.subset, n)

    rows = [[GapPolynomial.constant(e, g) for e in eps] + [GapPolynomial.constant(-1, g)]]
    for r in range(1, n + 1):
        differences = [scene.difference(lambda_symbol(r), a_symbol(j)) for j in range(1, n + 2)]
        row = []
        for s in range(n + 1):
            product = GapPolynomial.constant(eps[s], g)
            for j, d in enumerate(differences):
                if j != s:
                    product = product * d
            row.append(product)
        row.append(GapPolynomial.zero(g))
        rows.append(row)
    return Matrix.from_rows(rows)


def build_instance_system(case: NeumannCase, instance: InstanceParameters) -> Matrix[Fraction]:
    instance.check_placement(case.placement)
    n = case.n
    eps = epsilon_vector(case.subset, n)

    rows = [[Fraction(e) for e in eps] + [Fraction(-1)]]
    for lam in instance.lam:
        row = [
            eps[s]
            * math.prod(
                (lam - a for j, a in enumerate(instance.a) if j != s), start=Fraction(1)
            )
            for s in range(n + 1)
        ]
        row.append(Fraction(0))
        rows.append(row)
    return Matrix.from_rows(rows)


def build_system(
    case: NeumannCase,
    mode: Literal["symbolic", "instance"],
    instance: InstanceParameters | None = None,
    scene: OrderedScene | None = None,
) -> Matrix:
    if mode == "symbolic":
        return build_symbolic_system(case, scene)
    if instance is None:
        raise ValueError("Instance mode needs InstanceParameters")
    return build_instance_system(case, instance)


def row_label(origin: int) -> str:
    """Row 0 is the normalization equation, row r belongs to λ_r."""
    return "norm" if origin == 0 else f"λ{origin}"
