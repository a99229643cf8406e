"""Class-wide sign decisions for gap polynomials.

A polynomial whose coefficients all share one sign is sign-definite on the
open positive orthant. When the plain expansion is mixed, the polynomial is
multiplied by (g1 + ... + gk)^m for growing m (Polya's certificate). What is
still mixed after ``polya_max`` steps is reported as Indeterminate together
with a seeded sampling summary.
"""

import random
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

from config import get_logger, settings
from gappoly.polynomial import GapPolynomial

logger = get_logger(__name__)


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


@dataclass(frozen=True)
class SamplingSummary:
    samples: int
    positive: int
    negative: int
    zero: int
    seed: int

    @property
    def status(self) -> str:
        if self.positive and self.negative:
            return "class-dependent"
        if self.positive and not self.zero:
            return "conjectured positive"
        if self.negative and not self.zero:
            return "conjectured negative"
        return "inconclusive"


@dataclass(frozen=True)
class Indeterminate:
    expression: GapPolynomial
    summary: SamplingSummary

    def describe(self) -> str:
        s = self.summary
        return (
            f"{self.expression.render()} [{s.status}: +{s.positive} "
            f"-{s.negative} 0:{s.zero} of {s.samples}]"
        )


SignValue = Sign | Indeterminate


def _uniform_sign(p: GapPolynomial) -> Sign | None:
    coefficients = p.coefficients()
    if all(c > 0 for c in coefficients):
        return Sign.POSITIVE
    if all(c < 0 for c in coefficients):
        return Sign.NEGATIVE
    return None


def polya_certificate(p: GapPolynomial, polya_max: int) -> tuple[Sign, int] | None:
    """(sign, m) for the smallest m <= polya_max that makes the expansion one-signed."""
    if p.is_zero():
        return Sign.ZERO, 0
    multiplier = GapPolynomial.gap_sum(range(p.nvars), p.nvars)
    current = p
    for m in range(polya_max + 1):
        decided = _uniform_sign(current)
        if decided is not None:
            if m:
                logger.debug(f"Polya multiplier m={m} decided {decided.name}")
            return decided, m
        if m < polya_max:
            current = current * multiplier
    return None


def sample_signs(p: GapPolynomial, samples: int, seed: int) -> SamplingSummary:
    # entries are homogeneous, so integer gap vectors reach every ray of the orthant
    rng = random.Random(f"{seed}:{p.nvars}:{hash(p)}")
    positive = negative = zero = 0
    for _ in range(samples):
        gaps = [rng.randint(1, 1 << 16) for _ in range(p.nvars)]
        value = p._evaluate_raw(gaps)
        if value > 0:
            positive += 1
        elif value < 0:
            negative += 1
        else:
            zero += 1
    return SamplingSummary(samples, positive, negative, zero, seed)


@lru_cache(maxsize=65536)
def sign_of(
    p: GapPolynomial,
    polya_max: int = settings.polya_max,
    samples: int = settings.sign_samples,
    seed: int = settings.seed,
) -> SignValue:
    certificate = polya_certificate(p, polya_max)
    if certificate is not None:
        return certificate[0]
    summary = sample_signs(p, samples, seed)
    logger.info(
        f"Sign undecided after Polya level {polya_max}: {summary.status} "
        f"({summary.positive}+/{summary.negative}-/{summary.zero}0)"
    )
    return Indeterminate(p, summary)


def difference_cofactor(p: GapPolynomial) -> tuple[list[tuple[int, int]], GapPolynomial]:
    """Strip every factor g_k + ... + g_l (a difference of two ordered values).

    Returns the stripped runs (0-based, inclusive) and the remaining cofactor.
    """
    runs: list[tuple[int, int]] = []
    current = p
    if current.is_zero():
        return runs, current
    progress = True
    while progress and current.degree > 0:
        progress = False
        for first in range(p.nvars):
            for last in range(first, p.nvars):
                quotient = current.divide_by_gap_run(first, last)
                if quotient is not None:
                    runs.append((first, last))
                    current = quotient
                    progress = True
                    break
            if progress:
                break
    return runs, current


def is_plain_product(p: GapPolynomial) -> bool:
    """True when p is a constant times differences of ordered values."""
    return difference_cofactor(p)[1].is_constant()
