from fractions import Fraction

import pytest

from gappoly.scene import a_symbol, lambda_symbol, scene_from_placement
from neumann.cases import enumerate_cases, parse_name
from neumann.system import InstanceParameters
from oracle.crosscheck import OracleStatus, cross_validate, direct_feasibility, summarize
from oracle.sampling import SampleConfig, instance_from_gaps, sample_instance
from oracle.schemas import SampleReport

F = Fraction


def test_sample_config_validation():
    assert SampleConfig().gap_low == F(1, 8)
    with pytest.raises(ValueError):
        SampleConfig(gap_low=F(2), gap_high=F(1))
    with pytest.raises(ValueError):
        SampleConfig(samples=0)
    with pytest.raises(ValueError):
        SampleConfig(denominator_bound=0)


def test_samples_respect_placement_and_bounds():
    case = parse_name("S13L11")
    scene = scene_from_placement(case.n, case.placement.intervals)
    config = SampleConfig(seed=7, samples=20)
    for index in range(config.samples):
        instance = sample_instance(scene, config, index, case_name=case.name)
        instance.check_placement(case.placement)
        assert instance.a[0] == 0
        values = {a_symbol(j): v for j, v in enumerate(instance.a, start=1)}
        values |= {lambda_symbol(r): v for r, v in enumerate(instance.lam, start=1)}
        gaps = scene.gaps_from_values(values)
        assert all(config.gap_low <= g <= config.gap_high for g in gaps)
        assert all(g.denominator <= config.denominator_bound for g in gaps)


def test_sampling_is_reproducible():
    scene = scene_from_placement(2, (0, 3))
    config = SampleConfig(seed=3)
    first = sample_instance(scene, config, 4, case_name="S2L03")
    assert first == sample_instance(scene, config, 4, case_name="S2L03")
    assert first != sample_instance(scene, config, 5, case_name="S2L03")
    assert first != sample_instance(scene, config, 4, case_name="S2L03", attempt=1)
    assert first != sample_instance(scene, SampleConfig(seed=4), 4, case_name="S2L03")


def test_instance_from_gaps():
    scene = scene_from_placement(2, (1, 1))
    instance = instance_from_gaps(scene, (F(1, 4), F(1, 2), F(1, 4), F(1)))
    assert instance == InstanceParameters(a=(0, 1, 2), lam=(F(1, 4), F(3, 4)))


def test_direct_feasibility_feasible():
    case = parse_name("S13L11")
    result = direct_feasibility(case, InstanceParameters(a=(0, 1, 2), lam=(F(1, 4), F(3, 4))))
    assert result.status is OracleStatus.FEASIBLE
    assert result.witness == (F(3, 32), F(3, 16), F(35, 32))


def test_direct_feasibility_infeasible():
    case = parse_name("S1L00")
    result = direct_feasibility(case, InstanceParameters(a=(2, 3, 4), lam=(0, 1)))
    assert result.status is OracleStatus.INFEASIBLE
    assert result.solution == (F(1), F(6), F(-6))
    assert result.witness is None


@pytest.mark.parametrize("name, label", [("S13L11", "feasible"), ("S1L00", "infeasible")])
def test_cross_validate_small(name, label):
    report = cross_validate(parse_name(name), SampleConfig(samples=5))
    assert report.symbolic == label
    assert report.agreement
    assert report.ok
    assert len(report.samples) == 5
    assert all(s.verdict == label and s.oracle == label for s in report.samples)
    if label == "feasible":
        assert all(s.witness_matches_oracle and s.roots_matched for s in report.samples)
    else:
        assert all(s.witness is None for s in report.samples)


def test_cross_validate_is_deterministic():
    case = parse_name("S2L03")
    config = SampleConfig(seed=11, samples=3)
    first = cross_validate(case, config).model_dump_json(by_alias=True)
    assert first == cross_validate(case, config).model_dump_json(by_alias=True)


def test_summarize():
    reports = [
        cross_validate(parse_name(name), SampleConfig(samples=2))
        for name in ("S123L12", "S12L11")
    ]
    summary = summarize(reports)
    assert summary.cases == 2
    assert summary.agreements == 2
    assert summary.disagreements == 0
    assert summary.nonpositive_lifts == 0


def test_sample_report_alias():
    report = SampleReport(
        index=0, a=["0", "1"], lam=["1/2"], verdict="feasible", oracle="feasible"
    )
    dumped = report.model_dump(by_alias=True)
    assert dumped["lambda"] == ["1/2"]
    assert SampleReport.model_validate({**dumped}).lam == ["1/2"]


@pytest.mark.slow
def test_full_sweep_n2():
    config = SampleConfig(samples=100)
    reports = [cross_validate(case, config) for case in enumerate_cases(2)]
    summary = summarize(reports)
    assert summary.cases == 70
    assert summary.agreements == 70
    assert summary.nonpositive_lifts == 0
    assert summary.witness_mismatches == 0
    assert summary.root_mismatches == 0
    assert sum(1 for r in reports if r.symbolic == "feasible") == 10
