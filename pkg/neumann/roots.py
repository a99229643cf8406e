from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from config import get_logger
from exact.poly import UnivariatePolynomial, count_per_interval, real_root_count
from neumann.cases import RootPlacement, SubsetS
from neumann.system import epsilon_vector

logger = get_logger(__name__)


class ConstraintViolated(ValueError):
    pass


def u_polynomial(
    qsq: Sequence[Fraction], subset: SubsetS, a: Sequence[Fraction]
) -> UnivariatePolynomial:
    """U(λ) = Σ_j ε_j·q_j²·Π_{k≠j}(λ - a_k)."""
    n = len(a) - 1
    if len(qsq) != n + 1:
        raise ValueError(f"Need {n + 1} q² values, got {len(qsq)}")
    qsq = [Fraction(q) for q in qsq]
    if any(q < 0 for q in qsq):
        raise ValueError(f"q² values must be nonnegative: {qsq}")
    eps = epsilon_vector(subset, n)
    total = sum((e * q for e, q in zip(eps, qsq)), Fraction(0))
    if total != 1:
        raise ConstraintViolated(f"Σ ε·q² = {total}, expected 1")
    zeros = [j + 1 for j, q in enumerate(qsq) if q == 0]
    if zeros:
        logger.warning(f"q² vanishes at positions {zeros}: U has a root at the matching a_j")

    u = UnivariatePolynomial(())
    for j, (e, q) in enumerate(zip(eps, qsq)):
        if q:
            others = [value for k, value in enumerate(a) if k != j]
            u = u + UnivariatePolynomial.from_roots(others) * (e * q)
    return u


@dataclass(frozen=True)
class RootCheck:
    counts: tuple[int, ...]
    expected: tuple[int, ...]
    total: int

    @property
    def matched(self) -> bool:
        return self.counts == self.expected and self.total == sum(self.expected)


def verify_roots(
    u: UnivariatePolynomial, a: Sequence[Fraction], placement: RootPlacement
) -> RootCheck:
    """Sturm counts on the n+2 open intervals cut by a, against the placement multiset."""
    if u.degree != placement.n or u.leading != 1:
        raise ValueError(f"Expected a monic polynomial of degree {placement.n}: {u.render()}")
    counts = count_per_interval(u, [Fraction(v) for v in a])
    check = RootCheck(counts, placement.multiplicities(), real_root_count(u))
    if not check.matched:
        logger.info(f"Root counts {counts} do not match placement {placement.intervals}")
    return check
