"""Shannon, Deng and RPS entropies and their closed-form maxima.

All entropies use the ``0 * log 0 = 0`` convention and default to base 2.
Closed-form maxima are the logarithm of an exact integer normalizer from
:mod:`rpsmax.combinatorics`, converted to float only at the last step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import combinatorics as comb
from .core import (
    MassFunction,
    PermutationMassFunction,
    ProbabilityDistribution,
    require_valid,
)
from .errors import CapacityError, DomainError
from .pes import FrameOfDiscernment, enumerate_events

DEFAULT_BASE = 2.0
RPS_PMF_CAP = 8
DENG_MASS_CAP = 20


@dataclass(frozen=True)
class EntropyReport:
    """An entropy value with its log base and, optionally, per-event terms.

    ``terms`` is a tuple of ``(key, contribution)`` pairs where ``key`` is an
    event tuple, a frozenset or an element index depending on the entropy.
    """

    value: float
    base: float
    terms: tuple = None

    def __float__(self):
        return self.value

    def to_dict(self, frame: FrameOfDiscernment = None, precision=None) -> dict:
        rnd = (lambda x: x) if precision is None else (lambda x: round(x, precision))
        out = {"value": rnd(self.value), "base": self.base}
        if self.terms is not None:
            out["terms"] = [
                {"event": _key_labels(frame, key), "contribution": rnd(c)}
                for key, c in self.terms
            ]
        return out


def _key_labels(frame, key):
    if frame is None:
        return sorted(key) if isinstance(key, frozenset) else list(key)
    if isinstance(key, frozenset):
        return frame.labels(sorted(key))
    return frame.labels(key)


def check_base(base) -> float:
    base = float(base)
    if not math.isfinite(base) or base <= 1:
        raise DomainError(f"log base must be a finite number > 1, got {base}")
    return base


def log_base(x, base: float) -> float:
    """Logarithm of a positive int or float; exact ints go through math.log2."""
    if base == 2:
        return math.log2(x)
    return math.log2(x) / math.log2(base)


def _report(terms, base, with_terms):
    value = math.fsum(c for _, c in terms)
    # tiny negative sums only come from cancellation in all-zero terms
    if value < 0 and value > -1e-15:
        value = 0.0
    return EntropyReport(value, base, tuple(terms) if with_terms else None)


def shannon_entropy(p: ProbabilityDistribution, base=DEFAULT_BASE, terms=False) -> EntropyReport:
    base = check_base(base)
    require_valid(p)
    contributions = [(k, -pk * log_base(pk, base)) for k, pk in enumerate(p.probs) if pk > 0]
    return _report(contributions, base, terms)


def deng_entropy(m: MassFunction, base=DEFAULT_BASE, terms=False) -> EntropyReport:
    """-sum m(A) log(m(A) / (2**|A| - 1)) over focal elements."""
    base = check_base(base)
    require_valid(m)
    contributions = [
        (s, -ms * log_base(ms / (comb.f_sum_combinatorial(len(s)) - 1), base))
        for s in m.support()
        for ms in (m.masses[s],)
    ]
    return _report(contributions, base, terms)


def rps_entropy(pmf: PermutationMassFunction, base=DEFAULT_BASE, terms=False) -> EntropyReport:
    """-sum M(A) log(M(A) / (F(|A|) - 1)) over events with positive mass."""
    base = check_base(base)
    require_valid(pmf)
    contributions = [
        (e, -me * log_base(me / (comb.f_sum(len(e)) - 1), base))
        for e in pmf.support()
        for me in (pmf.masses[e],)
    ]
    return _report(contributions, base, terms)


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def max_shannon_entropy(n: int, base=DEFAULT_BASE) -> float:
    _check_n(n)
    return log_base(n, check_base(base))


def max_deng_entropy(n: int, base=DEFAULT_BASE) -> float:
    _check_n(n)
    return log_base(comb.deng_normalizer(n), check_base(base))


def max_rps_entropy(n: int, base=DEFAULT_BASE) -> float:
    _check_n(n)
    return log_base(comb.rps_normalizer(n), check_base(base))


def max_rps_entropy_order_ignored(n: int, base=DEFAULT_BASE) -> float:
    """Maximum RPS entropy recomputed with C(n, i) and binomial F."""
    _check_n(n)
    return log_base(comb.order_ignored_normalizer(n), check_base(base))


def max_rps_entropy_singleton_only(n: int, base=DEFAULT_BASE) -> float:
    """Maximum RPS entropy recomputed with one-element events only."""
    _check_n(n)
    return log_base(comb.singleton_only_normalizer(n), check_base(base))


def max_deng_mass_function(frame: FrameOfDiscernment, cap=DENG_MASS_CAP) -> MassFunction:
    """Mass (2**|A| - 1) / sum_B (2**|B| - 1) on every non-empty subset A."""
    n = frame.n
    if n > cap:
        raise CapacityError(f"{2**n - 1} subsets for n={n} exceeds the cap n <= {cap}")
    total = comb.deng_normalizer(n)
    return MassFunction(
        frame,
        {
            frozenset(s): (comb.f_sum_combinatorial(i) - 1) / total
            for i in range(1, n + 1)
            for s in combinations(range(n), i)
        },
    )


def max_rps_pmf(frame: FrameOfDiscernment, cap=RPS_PMF_CAP) -> PermutationMassFunction:
    """Mass (F(i) - 1) / normalizer on every event of cardinality i."""
    n = frame.n
    if n > cap:
        raise CapacityError(
            f"{comb.permutation_count(n, n)}+ events for n={n} exceeds the cap n <= {cap}; "
            "raise the cap to materialize it anyway"
        )
    total = comb.rps_normalizer(n)
    by_size = [None] + [(comb.f_sum(i) - 1) / total for i in range(1, n + 1)]
    return PermutationMassFunction(frame, {e: by_size[len(e)] for e in enumerate_events(frame)})
