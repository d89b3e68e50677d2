import math

import pytest

from rpsmax.core import (
    MassFunction,
    PermutationMassFunction,
    ProbabilityDistribution,
    degenerate_to_mass_function,
    mass_function_from_dict,
    mass_function_to_dict,
    pmf_from_dict,
    pmf_to_dict,
    renormalize,
    require_valid,
    restrict_to_singletons,
    singleton_pmf,
    uniform_singleton_distribution,
    validate,
)
from rpsmax.errors import DomainError, PreconditionError, ValidationError
from rpsmax.pes import FrameOfDiscernment

from conftest import load

XY = FrameOfDiscernment(["X", "Y"])


class TestValidate:
    def test_example1_pmf_is_valid(self, example1_pmf):
        assert validate(example1_pmf) == []

    def test_rounded_example1_pmf_needs_renormalizing(self):
        pmf = pmf_from_dict(load("example1_max_rps_rounded.json"))
        assert validate(pmf) == ["sum = 0.9999 ≠ 1"]
        assert validate(renormalize(pmf)) == []

    def test_short_sum(self):
        pmf = PermutationMassFunction(XY, {(0,): 0.5})
        assert validate(pmf) == ["sum = 0.5 ≠ 1"]

    def test_empty_event_mass(self):
        pmf = PermutationMassFunction(XY, {(): 0.1, (0,): 0.9})
        problems = validate(pmf)
        assert any("empty event has nonzero mass" in p for p in problems)

    def test_negative_and_invalid(self):
        pmf = PermutationMassFunction(XY, {(0,): 1.2, (1,): -0.2, (0, 0): 0.0, (5,): 0.0})
        problems = validate(pmf)
        assert any("negative" in p for p in problems)
        assert sum("invalid event" in p for p in problems) == 2

    def test_reports_every_violation_at_once(self):
        pmf = PermutationMassFunction(XY, {(): 0.3, (1,): -0.1})
        assert len(validate(pmf)) == 3

    def test_sum_tolerance(self):
        assert validate(PermutationMassFunction(XY, {(0,): 0.5, (1,): 0.5 + 5e-10})) == []
        assert validate(PermutationMassFunction(XY, {(0,): 0.5, (1,): 0.5 + 5e-9})) != []

    def test_zero_mass_entries_are_ignored(self):
        pmf = PermutationMassFunction(XY, {(0,): 1.0, (1,): 0.0, (): 0.0})
        assert validate(pmf) == []
        assert pmf.support() == [(0,)]

    def test_mass_function_and_distribution(self):
        assert validate(MassFunction(XY, {frozenset({0, 1}): 1.0})) == []
        assert validate(MassFunction(XY, {frozenset(): 0.5, frozenset({0}): 0.5})) != []
        assert validate(ProbabilityDistribution(XY, [0.7, 0.4])) != []

    def test_require_valid_raises(self):
        with pytest.raises(ValidationError) as info:
            require_valid(PermutationMassFunction(XY, {(0,): 0.5}))
        assert info.value.violations == ["sum = 0.5 ≠ 1"]


class TestDegenerateToMassFunction:
    def test_two_element_maximizer(self):
        pmf = PermutationMassFunction(XY, {(0,): 0.1, (1,): 0.1, (0, 1): 0.4, (1, 0): 0.4})
        m = degenerate_to_mass_function(pmf)
        assert m.mass({0}) == pytest.approx(0.1, abs=1e-15)
        assert m.mass({1}) == pytest.approx(0.1, abs=1e-15)
        assert m.mass({0, 1}) == pytest.approx(0.8, abs=1e-15)

    def test_all_mass_on_one_ordering(self):
        m = degenerate_to_mass_function(PermutationMassFunction(XY, {(1, 0): 1.0}))
        assert m.masses == {frozenset({0, 1}): 1.0}

    def test_example1_pmf(self, example1_pmf, example1_mass):
        m = degenerate_to_mass_function(example1_pmf)
        assert validate(m) == []
        assert round(m.mass({0}), 4) == 0.0085
        assert round(m.mass({0, 2}), 4) == 0.0684
        assert round(m.mass({0, 1, 2}), 4) == 0.7692
        # collapsing the RPS maximizer does not give the Deng maximizer
        assert m.mass({0, 1, 2}) != pytest.approx(example1_mass.mass({0, 1, 2}), abs=1e-3)

    def test_invalid_input_rejected(self):
        with pytest.raises(ValidationError):
            degenerate_to_mass_function(PermutationMassFunction(XY, {(0,): 0.5}))


class TestRestrictToSingletons:
    def test_uniform(self):
        p = restrict_to_singletons(PermutationMassFunction(XY, {(0,): 0.5, (1,): 0.5}))
        assert p.probs == (0.5, 0.5)

    def test_point_mass(self):
        assert restrict_to_singletons(PermutationMassFunction(XY, {(0,): 1.0})).probs == (1.0, 0.0)

    def test_rejects_mass_on_longer_events(self, example1_pmf):
        with pytest.raises(PreconditionError, match=r"\(R,B\)"):
            restrict_to_singletons(example1_pmf)

    def test_negligible_mass_elsewhere_tolerated(self):
        pmf = PermutationMassFunction(XY, {(0,): 0.5, (1,): 0.5, (0, 1): 1e-13})
        assert restrict_to_singletons(pmf).probs == (0.5, 0.5)

    def test_round_trip_with_degeneration(self):
        pmf = PermutationMassFunction(XY, {(0,): 0.3, (1,): 0.7})
        m = degenerate_to_mass_function(pmf)
        p = restrict_to_singletons(pmf)
        assert {min(s): v for s, v in m.masses.items()} == dict(enumerate(p.probs))


@pytest.mark.parametrize("n,value", [(1, 1.0), (3, 1 / 3), (4, 0.25)])
def test_uniform_singleton_distribution(n, value):
    p = uniform_singleton_distribution(FrameOfDiscernment.generic(n))
    assert p.probs == (value,) * n


def test_uniform_three_rounds_to_table_value():
    p = uniform_singleton_distribution(FrameOfDiscernment(["R", "B", "G"]))
    assert [round(x, 4) for x in p.probs] == [0.3333] * 3


def test_distribution_length_checked():
    with pytest.raises(DomainError):
        ProbabilityDistribution(XY, [1.0])


def test_singleton_pmf_embedding():
    pmf = singleton_pmf(ProbabilityDistribution(XY, [0.25, 0.75]))
    assert pmf.masses == {(0,): 0.25, (1,): 0.75}


class TestDocuments:
    def test_round_trip(self, example1_pmf):
        doc = pmf_to_dict(example1_pmf)
        assert doc["elements"] == ["R", "B", "G"]
        assert doc["pmf"][0] == {"event": ["R"], "mass": 1 / 117}
        assert pmf_from_dict(doc) == example1_pmf

    def test_event_order_matters(self):
        doc = {"elements": ["R", "B"], "pmf": [{"event": ["R", "B"], "mass": 0.5}, {"event": ["B", "R"], "mass": 0.5}]}
        pmf = pmf_from_dict(doc)
        assert pmf.masses == {(0, 1): 0.5, (1, 0): 0.5}

    def test_empty_event_serialized_as_empty_list(self):
        doc = {"elements": ["R"], "pmf": [{"event": [], "mass": 0.0}, {"event": ["R"], "mass": 1.0}]}
        pmf = pmf_from_dict(doc)
        assert pmf_to_dict(pmf, include_zero=True)["pmf"][0] == {"event": [], "mass": 0.0}

    @pytest.mark.parametrize(
        "entries,needle",
        [
            ([{"event": ["R"], "mass": 0.5}, {"event": ["R"], "mass": 0.5}], "duplicate event"),
            ([{"event": ["Q"], "mass": 1.0}], "unknown element"),
            ([{"event": ["R"], "mass": -1.0}], "non-negative"),
            ([{"event": ["R"], "mass": float("inf")}], "finite"),
            ([{"event": ["R"], "mass": "1"}], "must be a number"),
            ([{"event": "R", "mass": 1.0}], "list of labels"),
            ([{"event": ["R", "R"], "mass": 1.0}], "repeats"),
        ],
    )
    def test_load_errors(self, entries, needle):
        with pytest.raises(ValidationError) as info:
            pmf_from_dict({"elements": ["R", "B"], "pmf": entries})
        assert any(needle in v for v in info.value.violations)

    def test_missing_keys(self):
        with pytest.raises(ValidationError):
            pmf_from_dict({"elements": ["R"]})
        with pytest.raises(ValidationError):
            pmf_from_dict({"pmf": []})
        with pytest.raises(ValidationError):
            pmf_from_dict({"elements": ["R", "R"], "pmf": []})

    def test_mass_function_documents(self, example1_mass):
        doc = mass_function_to_dict(example1_mass)
        assert doc["mass_function"][-1] == {"subset": ["R", "B", "G"], "mass": 7 / 19}
        assert mass_function_from_dict(doc) == example1_mass

    def test_mass_function_duplicate_subset(self):
        doc = {
            "elements": ["X", "Y"],
            "mass_function": [{"subset": ["X", "Y"], "mass": 0.5}, {"subset": ["Y", "X"], "mass": 0.5}],
        }
        with pytest.raises(ValidationError, match="duplicate subset"):
            mass_function_from_dict(doc)

    def test_precision_rounding(self, example1_pmf):
        doc = pmf_to_dict(example1_pmf, precision=4)
        assert {e["mass"] for e in doc["pmf"]} == {0.0085, 0.0342, 0.1282}


def test_renormalize_rejects_zero_total():
    with pytest.raises(ValidationError):
        renormalize(PermutationMassFunction(XY, {}))


def test_renormalize_distribution():
    p = renormalize(ProbabilityDistribution(XY, [0.3333, 0.3333]))
    assert math.isclose(p.total(), 1.0, abs_tol=1e-15)
