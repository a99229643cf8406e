"""Verdicts and witnesses do not move under a common shift or a positive scaling of a and λ."""

import random
from fractions import Fraction

import pytest

from dines.engine import decide
from dines.types import Feasible
from dines.witness import lift_witness
from gappoly.scene import a_symbol, lambda_symbol, scene_from_placement
from neumann.cases import enumerate_cases, parse_name
from neumann.system import InstanceParameters, build_instance_system, build_symbolic_system
from oracle.crosscheck import cross_validate
from oracle.sampling import SampleConfig, sample_instance

TRIALS = 50


def _decide(case, instance):
    verdict, trace = decide(build_instance_system(case, instance), "instance")
    witness = lift_witness(trace).qsq if isinstance(verdict, Feasible) else None
    return verdict.label, witness


def _transform(instance: InstanceParameters, shift: Fraction, scale: Fraction):
    return InstanceParameters(
        a=tuple(scale * v + shift for v in instance.a),
        lam=tuple(scale * v + shift for v in instance.lam),
    )


@pytest.mark.parametrize("name", ["S13L11", "S123L12", "S2L03", "S12L11", "S1L00"])
def test_shift_and_scale(name):
    case = parse_name(name)
    scene = scene_from_placement(case.n, case.placement.intervals)
    config = SampleConfig(seed=5, samples=TRIALS)
    rng = random.Random(name)
    for index in range(TRIALS):
        instance = sample_instance(scene, config, index, case_name=name)
        shift = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        scale = Fraction(rng.randint(1, 40), rng.randint(1, 9))
        assert _decide(case, instance) == _decide(case, _transform(instance, shift, scale))


def _gaps(scene, instance: InstanceParameters):
    values = {a_symbol(j): v for j, v in enumerate(instance.a, start=1)}
    values |= {lambda_symbol(r): v for r, v in enumerate(instance.lam, start=1)}
    return scene.gaps_from_values(values)


@pytest.mark.parametrize("name", ["S13L00", "S12L11", "S2L03", "S123L12", "S13L022"])
def test_symbolic_entries_ignore_a_common_shift(name):
    case = parse_name(name)
    scene = scene_from_placement(case.n, case.placement.intervals)
    symbolic = build_symbolic_system(case, scene)
    config = SampleConfig(seed=13, samples=TRIALS)
    rng = random.Random(f"shift:{name}")
    for index in range(10):
        instance = sample_instance(scene, config, index, case_name=name)
        shift = Fraction(rng.randint(-500, 500), rng.randint(1, 30))
        shifted = _transform(instance, shift, Fraction(1))
        assert _gaps(scene, shifted) == _gaps(scene, instance)

        numeric = build_instance_system(case, shifted)
        assert numeric == build_instance_system(case, instance)
        gaps = _gaps(scene, shifted)
        for r in range(symbolic.rows):
            assert tuple(e.evaluate(gaps) for e in symbolic.row(r)) == numeric.row(r)


@pytest.mark.slow
def test_sweep_n3():
    config = SampleConfig(samples=25)
    for case in enumerate_cases(3):
        report = cross_validate(case, config)
        assert report.agreement, (case.name, report.disagreements)
        assert report.nonpositive_lifts == 0, case.name
        assert report.root_mismatches == 0, case.name
