import pandas as pd
import pytest

from config import settings
from gappoly.polynomial import GapPolynomial
from gappoly.scene import a_symbol, lambda_symbol, scene_from_placement
from neumann.cases import NeumannCase


def symbol_values(case: NeumannCase) -> dict[str, GapPolynomial]:
    """a1.. and l1.. as gap polynomials in the case's scene."""
    scene = scene_from_placement(case.n, case.placement.intervals)
    values = scene.value_polynomials()
    named = {f"a{j}": values[a_symbol(j)] for j in range(1, case.n + 2)}
    named |= {f"l{r}": values[lambda_symbol(r)] for r in range(1, case.n + 1)}
    return named


def quadratic_factors(case: NeumannCase) -> dict[str, GapPolynomial]:
    v = symbol_values(case)
    a1, a2, a3, l1, l2 = v["a1"], v["a2"], v["a3"], v["l1"], v["l2"]
    return {
        "E1": a1 * a2 - a1 * a3 + a2 * a3 - a2 * l1 - a2 * l2 + l1 * l2,
        "E2": a1 * a2 + a1 * a3 - a2 * a3 - a1 * l1 - a1 * l2 + l1 * l2,
        "E3": a1 * a2 - a1 * a3 - a2 * a3 + a3 * l1 + a3 * l2 - l1 * l2,
    }


@pytest.fixture(scope="session")
def golden() -> pd.DataFrame:
    return pd.read_csv(settings.golden_table, dtype={"case": str})
