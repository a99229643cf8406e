from fractions import Fraction

import pytest
import sympy

from conftest import quadratic_factors, symbol_values
from dines.engine import decide
from dines.render import sign_char
from dines.types import Feasible, Infeasible, StopReason
from dines.witness import lift_witness
from gappoly.polynomial import GapPolynomial
from gappoly.sign import Sign, polya_certificate
from neumann.cases import enumerate_cases, parse_name
from neumann.system import InstanceParameters, build_instance_system, build_symbolic_system

FEASIBLE_N2 = {
    "S1L23",
    "S2L03",
    "S3L01",
    "S12L13",
    "S13L00",
    "S13L11",
    "S13L22",
    "S13L33",
    "S23L02",
    "S123L12",
}

# final-row signs and the non-product factors that show up in the offending row
PARTIAL_FACTORIZATION_N2 = {
    "S12L11": ((-1, -1, -1, -1), ("E1", "E2")),
    "S12L33": ((1, 1, 1, 1), ("E2", "E1")),
    "S13L01": ((1, 1, 1), ("E2",)),
    "S13L02": ((1, 1, 1), ("E2",)),
    "S13L03": ((1, 1, 1), ("E2",)),
    "S13L12": ((1, 1, 1), ("E3",)),
    "S13L13": ((1, 1, 1), ("E3",)),
    "S13L23": ((1, 1, 1), ("E2",)),
    "S23L00": ((-1, -1, -1, -1), ("E1", "E3")),
    "S23L22": ((1, 1, 1, 1), ("E1", "E3")),
}


def _symbolic(name: str, **kwargs):
    case = parse_name(name)
    return decide(build_symbolic_system(case), "symbolic", **kwargs)


def _sympy(p: GapPolynomial, gens):
    return sympy.Poly.from_dict(dict(p.terms), *gens, domain="QQ")


def _divides(divisor: GapPolynomial, p: GapPolynomial) -> bool:
    gens = sympy.symbols(f"g1:{p.nvars + 1}")
    _, remainder = _sympy(p, gens).div(_sympy(divisor, gens))
    return remainder.is_zero


def _sign_chars(level) -> list[str]:
    return ["".join(sign_char(s) for s in row) for row in level.signs]


@pytest.fixture(scope="module")
def n2_verdicts():
    return {case.name: _symbolic(case.name) for case in enumerate_cases(2)}


def test_golden_verdicts_n2(n2_verdicts, golden):
    assert len(n2_verdicts) == 70
    assert list(golden["case"]) == list(n2_verdicts)
    for record in golden.to_dict(orient="records"):
        verdict, _ = n2_verdicts[record["case"]]
        expected = "feasible" if record["verdict"] == 1 else "infeasible"
        assert verdict.label == expected, record["case"]


def test_exactly_ten_feasible_n2(n2_verdicts):
    feasible = {name for name, (v, _) in n2_verdicts.items() if isinstance(v, Feasible)}
    assert feasible == FEASIBLE_N2


def test_no_indeterminate_n2(n2_verdicts):
    assert all(isinstance(v, (Feasible, Infeasible)) for v, _ in n2_verdicts.values())


def test_pivot_policies_agree_n2(n2_verdicts):
    for name, (verdict, _) in n2_verdicts.items():
        other, _ = _symbolic(name, policy="minpq")
        assert other.label == verdict.label, name


def test_partial_factorization_flags_n2(n2_verdicts):
    flagged = {
        name
        for name, (v, _) in n2_verdicts.items()
        if isinstance(v, Infeasible) and v.pf
    }
    assert flagged == set(PARTIAL_FACTORIZATION_N2)


@pytest.mark.parametrize("name", sorted(PARTIAL_FACTORIZATION_N2))
def test_partial_factorization_rows(name):
    signs, factors = PARTIAL_FACTORIZATION_N2[name]
    verdict, trace = _symbolic(name, strip_factors=False)

    assert isinstance(verdict, Infeasible)
    assert verdict.level == 2
    assert verdict.step == 3
    assert verdict.signs == signs
    assert verdict.pf

    row = trace.final.matrix.row(verdict.row)
    expressions = quadratic_factors(parse_name(name))
    for factor in factors:
        assert any(_divides(expressions[factor], entry) for entry in row), factor
    for entry in row:
        certificate = polya_certificate(entry, 0)
        assert certificate is not None
        assert certificate[0] == Sign(signs[0])


@pytest.mark.parametrize("name", ["S12L11", "S13L01", "S13L12", "S23L22"])
def test_quadratic_factor_identities(name):
    v = symbol_values(parse_name(name))
    e = quadratic_factors(parse_name(name))
    a1, a2, a3, l1, l2 = v["a1"], v["a2"], v["a3"], v["l1"], v["l2"]

    assert e["E1"] == (l1 - a1) * (a3 - a2) + (a3 - l2) * (a2 - l1)
    assert e["E1"] == (l1 - a1) * (l2 - a2) + (a3 - l2) * (a2 - a1)
    assert e["E2"] == (a2 - l1) * (a1 - a3) + (a1 - l1) * (a3 - l2)
    assert e["E2"] == (a2 - l1) * (a1 - l2) + (a3 - l2) * (a1 - a2)
    assert e["E3"] == (l1 - a1) * (a3 - a2) + (l1 - a3) * (a2 - l2)


def test_e1_has_positive_expansion_when_roots_share_a_gap():
    # a1 < λ1 < λ2 < a2 < a3
    e1 = quadratic_factors(parse_name("S12L11"))["E1"]
    assert all(c > 0 for c in e1.coefficients())


def test_worked_example_symbolic_levels():
    verdict, trace = _symbolic("S13L00", strip_factors=False)
    assert isinstance(verdict, Feasible)
    assert trace.stop_reason is StopReason.SINGLE_EQUATION
    assert [level.index for level in trace.levels] == [0, 1, 2]

    base = trace.levels[0]
    assert [[int(s) for s in row] for row in base.signs] == [
        [1, -1, 1, -1],
        [1, -1, 1, 0],
        [1, -1, 1, 0],
    ]
    assert base.partition.positive == (0, 2)
    assert base.partition.negative == (1, 3)

    first = trace.levels[1]
    assert first.var_ancestry == ((0, 1), (2, 1), (0, 3), (2, 3))
    assert [int(s) for s in first.signs[0]] == [1, -1, 1, 1]
    assert first.partition.positive == (0, 2, 3)
    assert first.partition.negative == (1,)

    final = trace.final
    assert final.matrix.rows == 1
    assert final.matrix.cols == 3
    v = symbol_values(parse_name("S13L00"))
    a1, a2, a3, l1, l2 = v["a1"], v["a2"], v["a3"], v["l1"], v["l2"]
    row = final.matrix.row(0)
    assert row[0] == (a2 - a1) * (a3 - a1) * (a3 - a2) * (l2 - l1)
    assert row[2] == -(a3 - a2) * (a1 - l1) * (a1 - l2) * (l2 - l1)
    assert final.signs[0][0] is Sign.POSITIVE
    assert final.signs[0][2] is Sign.NEGATIVE
    assert not row[1].is_zero()


def test_worked_example_instance_witness():
    case = parse_name("S13L00")
    instance = InstanceParameters(a=(2, 3, 4), lam=(0, 1))
    verdict, trace = decide(build_instance_system(case, instance), "instance")
    assert isinstance(verdict, Feasible)

    assert trace.levels[1].matrix.row(0) == tuple(map(Fraction, (4, -2, 12, 6)))
    assert trace.levels[1].matrix.row(1) == tuple(map(Fraction, (3, -1, 6, 2)))
    assert trace.final.matrix.row(0) == tuple(map(Fraction, (2, 0, -2)))

    witness = lift_witness(trace)
    assert witness.values == tuple(map(Fraction, (1, 6, 6, 1)))
    assert witness.qsq == (Fraction(1), Fraction(6), Fraction(6))


def test_stripped_and_raw_rows_share_signs():
    for name in ("S13L00", "S12L11", "S123L12", "S2L03"):
        stripped, stripped_trace = _symbolic(name)
        raw, raw_trace = _symbolic(name, strip_factors=False)
        assert stripped == raw
        assert len(stripped_trace.levels) == len(raw_trace.levels)
        for a, b in zip(stripped_trace.levels, raw_trace.levels):
            assert _sign_chars(a) == _sign_chars(b), (name, a.index)
