"""Reproducible rational instances inside an ordering class."""

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from config import settings
from exact.rational import parse_rational
from gappoly.scene import OrderedScene, a_symbol, lambda_symbol
from neumann.system import InstanceParameters


@dataclass(frozen=True)
class SampleConfig:
    seed: int = settings.seed
    samples: int = settings.samples
    gap_low: Fraction = parse_rational(settings.gap_low)
    gap_high: Fraction = parse_rational(settings.gap_high)
    denominator_bound: int = settings.denominator_bound
    singular_retries: int = settings.singular_retries

    def __post_init__(self):
        if not 0 < self.gap_low < self.gap_high:
            raise ValueError(f"Need 0 < gap_low < gap_high, got {self.gap_low}, {self.gap_high}")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.denominator_bound < 1:
            raise ValueError("denominator_bound must be at least 1")


def instance_from_gaps(scene: OrderedScene, gaps: Sequence[Fraction]) -> InstanceParameters:
    values = scene.values_from_gaps(gaps)
    return InstanceParameters(
        a=tuple(values[a_symbol(j)] for j in range(1, scene.n + 2)),
        lam=tuple(values[lambda_symbol(r)] for r in range(1, scene.n + 1)),
    )


def _rng(seed: int, case_name: str, index: int, attempt: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{case_name}:{index}:{attempt}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_gaps(config: SampleConfig, count: int, rng: random.Random) -> tuple[Fraction, ...]:
    gaps = []
    for _ in range(count):
        while True:
            d = rng.randint(1, config.denominator_bound)
            low = math.ceil(config.gap_low * d)
            high = math.floor(config.gap_high * d)
            if low <= high:
                break
        gaps.append(Fraction(rng.randint(low, high), d))
    return tuple(gaps)


def sample_instance(
    scene: OrderedScene,
    config: SampleConfig,
    index: int,
    *,
    case_name: str = "",
    attempt: int = 0,
) -> InstanceParameters:
    """Gaps drawn from (seed, case, index, attempt); values are prefix sums from 0."""
    rng = _rng(config.seed, case_name or scene.render(), index, attempt)
    return instance_from_gaps(scene, sample_gaps(config, scene.gap_count, rng))
