"""Property-based checks over random mass assignments."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpsmax.core import (
    PermutationMassFunction,
    degenerate_to_mass_function,
    restrict_to_singletons,
    validate,
)
from rpsmax.entropy import (
    deng_entropy,
    max_deng_entropy,
    max_rps_entropy,
    max_rps_pmf,
    rps_entropy,
    shannon_entropy,
)
from rpsmax.pes import FrameOfDiscernment, enumerate_events

EVENTS = {n: list(enumerate_events(FrameOfDiscernment.generic(n))) for n in range(1, 6)}


@st.composite
def pmfs(draw, max_n=5, sparse=True):
    n = draw(st.integers(1, max_n))
    events = EVENTS[n]
    weights = draw(
        st.lists(
            st.floats(0, 1e3, allow_nan=False) if sparse else st.floats(1e-3, 1e3),
            min_size=len(events),
            max_size=len(events),
        )
    )
    total = math.fsum(weights)
    if total == 0:
        weights[0], total = 1.0, 1.0
    return PermutationMassFunction(
        FrameOfDiscernment.generic(n), {e: w / total for e, w in zip(events, weights)}
    )


@settings(max_examples=300, deadline=None)
@given(pmfs())
def test_rps_entropy_bounds(pmf):
    h = rps_entropy(pmf).value
    assert h >= 0
    assert h <= max_rps_entropy(pmf.frame.n) + 1e-9


@settings(max_examples=200, deadline=None)
@given(pmfs())
def test_degeneration_preserves_mass(pmf):
    m = degenerate_to_mass_function(pmf)
    assert validate(m) == []
    assert abs(m.total() - pmf.total()) <= 1e-12
    assert deng_entropy(m).value <= max_deng_entropy(pmf.frame.n) + 1e-9


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.lists(st.floats(0, 1e3), min_size=5, max_size=5))
def test_singleton_support(n, weights):
    weights = weights[:n]
    total = math.fsum(weights)
    if total == 0:
        return
    frame = FrameOfDiscernment.generic(n)
    pmf = PermutationMassFunction(frame, {(k,): w / total for k, w in enumerate(weights)})
    p = restrict_to_singletons(pmf)
    assert abs(p.total() - pmf.total()) <= 1e-12
    assert rps_entropy(pmf).value == pytest.approx(shannon_entropy(p).value, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(pmfs(max_n=4, sparse=False))
def test_only_the_maximizer_reaches_the_maximum(pmf):
    best = max_rps_pmf(pmf.frame)
    distance = max(abs(pmf.mass(e) - best.mass(e)) for e in best.masses)
    gap = max_rps_entropy(pmf.frame.n) - rps_entropy(pmf).value
    if distance > 1e-9:
        assert gap > 0
    else:
        assert gap <= 1e-9


@settings(max_examples=100, deadline=None)
@given(pmfs(max_n=3), st.floats(1.01, 100))
def test_base_change(pmf, base):
    h2 = rps_entropy(pmf).value
    assert rps_entropy(pmf, base=base).value == pytest.approx(h2 / math.log2(base), rel=1e-9, abs=1e-12)
