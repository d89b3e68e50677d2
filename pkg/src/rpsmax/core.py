"""Mass assignments over permutation events, subsets and singletons.

Three containers live here:

* :class:`PermutationMassFunction` -- mass on ordered events (an RPS),
* :class:`MassFunction` -- mass on unordered subsets (Dempster-Shafer),
* :class:`ProbabilityDistribution` -- one probability per element.

Containers do not validate on construction so that malformed inputs can be
inspected and reported; :func:`validate` lists every violated invariant and
:func:`require_valid` turns a non-empty report into a :class:`ValidationError`.
Events with zero mass may be stored or left out, both mean the same thing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, PreconditionError, ValidationError
from .pes import FrameOfDiscernment, check_event, forget_order

SUM_TOLERANCE = 1e-9
EMPTY_TOLERANCE = 1e-12
SUPPORT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PermutationMassFunction:
    frame: FrameOfDiscernment
    masses: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "masses", {tuple(e): float(m) for e, m in dict(self.masses).items()}
        )

    def mass(self, event) -> float:
        return self.masses.get(tuple(event), 0.0)

    def total(self) -> float:
        return math.fsum(self.masses.values())

    def support(self):
        """Events carrying positive mass, in canonical enumeration order."""
        return sorted((e for e, m in self.masses.items() if m > 0), key=lambda e: (len(e), e))


@dataclass(frozen=True)
class MassFunction:
    frame: FrameOfDiscernment
    masses: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "masses", {frozenset(s): float(m) for s, m in dict(self.masses).items()}
        )

    def mass(self, subset) -> float:
        return self.masses.get(frozenset(subset), 0.0)

    def total(self) -> float:
        return math.fsum(self.masses.values())

    def support(self):
        return sorted(
            (s for s, m in self.masses.items() if m > 0), key=lambda s: (len(s), sorted(s))
        )


@dataclass(frozen=True)
class ProbabilityDistribution:
    frame: FrameOfDiscernment
    probs: tuple

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if len(self.probs) != self.frame.n:
            raise DomainError(
                f"expected {self.frame.n} probabilities, got {len(self.probs)}"
            )

    def total(self) -> float:
        return math.fsum(self.probs)


def _mass_violations(items, total, fmt):
    problems = []
    for key, m in items:
        if not math.isfinite(m):
            problems.append(f"mass of {fmt(key)} is not finite ({m})")
        elif m < 0:
            problems.append(f"mass of {fmt(key)} is negative ({m})")
    if math.isfinite(total) and abs(total - 1.0) > SUM_TOLERANCE:
        problems.append(f"sum = {total:.12g} ≠ 1")
    return problems


def validate(obj) -> list:
    """Return a list of violated invariants; an empty list means valid.

    Accepts any of the three containers.
    """
    if isinstance(obj, ProbabilityDistribution):
        items = [((k,), p) for k, p in enumerate(obj.probs)]
        return _mass_violations(items, obj.total(), obj.frame.format_event)

    if isinstance(obj, PermutationMassFunction):
        problems = []
        for event in obj.masses:
            try:
                check_event(obj.frame, event)
            except DomainError as exc:
                problems.append(f"invalid event {event}: {exc}")
        fmt = lambda e: _safe_format(obj.frame.format_event, e)
        empty_key = ()
    elif isinstance(obj, MassFunction):
        problems = []
        for subset in obj.masses:
            if any(not isinstance(k, int) or not 0 <= k < obj.frame.n for k in subset):
                problems.append(f"invalid subset {sorted(subset)}: index out of range")
        fmt = lambda s: _safe_format(obj.frame.format_subset, s)
        empty_key = frozenset()
    else:
        raise TypeError(f"cannot validate {type(obj).__name__}")

    empty = obj.masses.get(empty_key, 0.0)
    if abs(empty) > EMPTY_TOLERANCE:
        problems.append(f"empty event has nonzero mass ({empty})")
    problems += _mass_violations(obj.masses.items(), obj.total(), fmt)
    return problems


def _safe_format(fmt, key):
    try:
        return fmt(key)
    except (IndexError, TypeError):
        return repr(key)


def require_valid(obj):
    """Return ``obj`` unchanged, or raise :class:`ValidationError`."""
    problems = validate(obj)
    if problems:
        raise ValidationError(problems)
    return obj


def renormalize(obj):
    """Rescale masses so they sum to exactly one (up to rounding).

    Opt-in fix-up for inputs written with few decimals, e.g. 0.3333.
    Negative or non-finite masses are not repaired.
    """
    total = obj.total()
    if not total > 0 or not math.isfinite(total):
        raise ValidationError([f"cannot renormalize masses summing to {total}"])
    if isinstance(obj, ProbabilityDistribution):
        return ProbabilityDistribution(obj.frame, [p / total for p in obj.probs])
    return type(obj)(obj.frame, {k: m / total for k, m in obj.masses.items()})


def degenerate_to_mass_function(pmf: PermutationMassFunction) -> MassFunction:
    """Forget event order: each subset collects the mass of all its orderings."""
    require_valid(pmf)
    grouped = {}
    for event, m in pmf.masses.items():
        grouped.setdefault(forget_order(event), []).append(m)
    return MassFunction(pmf.frame, {s: math.fsum(ms) for s, ms in grouped.items()})


def restrict_to_singletons(pmf: PermutationMassFunction) -> ProbabilityDistribution:
    """Read a PMF supported on one-element events as a probability vector."""
    require_valid(pmf)
    for event, m in pmf.masses.items():
        if len(event) != 1 and m > SUPPORT_TOLERANCE:
            raise PreconditionError(
                f"event {pmf.frame.format_event(event)} has cardinality {len(event)} "
                f"and mass {m}; only one-element events may carry mass"
            )
    return ProbabilityDistribution(pmf.frame, [pmf.mass((k,)) for k in range(pmf.frame.n)])


def uniform_singleton_distribution(frame: FrameOfDiscernment) -> ProbabilityDistribution:
    return ProbabilityDistribution(frame, [1.0 / frame.n] * frame.n)


# -- JSON documents -------------------------------------------------------------


def _round(x, precision):
    return x if precision is None else round(x, precision)


def _read_frame(doc, problems):
    try:
        return FrameOfDiscernment(doc["elements"])
    except KeyError:
        problems.append('document has no "elements" list')
    except (DomainError, TypeError) as exc:
        problems.append(f"bad elements: {exc}")
    return None


def _read_mass(entry, where, problems):
    m = entry.get("mass")
    if isinstance(m, bool) or not isinstance(m, (int, float)):
        problems.append(f"{where}: mass must be a number, got {m!r}")
        return None
    if not math.isfinite(m) or m < 0:
        problems.append(f"{where}: mass must be finite and non-negative, got {m!r}")
        return None
    return float(m)


def pmf_from_dict(doc: Mapping) -> PermutationMassFunction:
    """Load ``{"elements": [...], "pmf": [{"event": [...], "mass": x}, ...]}``.

    Raises :class:`ValidationError` listing every load problem (unknown
    labels, duplicate events, malformed masses). Normalization is *not*
    checked here; see :func:`validate`.
    """
    problems = []
    frame = _read_frame(doc, problems)
    entries = doc.get("pmf")
    if not isinstance(entries, list):
        problems.append('document has no "pmf" list')
        raise ValidationError(problems)
    if frame is None:
        raise ValidationError(problems)
    masses = {}
    for pos, entry in enumerate(entries):
        where = f"pmf[{pos}]"
        labels = entry.get("event") if isinstance(entry, dict) else None
        if not isinstance(labels, list):
            problems.append(f"{where}: event must be a list of labels")
            continue
        try:
            event = frame.event(labels)
        except DomainError as exc:
            problems.append(f"{where}: {exc}")
            continue
        m = _read_mass(entry, where, problems)
        if event in masses:
            problems.append(f"{where}: duplicate event {frame.format_event(event)}")
        elif m is not None:
            masses[event] = m
    if problems:
        raise ValidationError(problems)
    return PermutationMassFunction(frame, masses)


def pmf_to_dict(pmf: PermutationMassFunction, precision=None, include_zero=False) -> dict:
    events = sorted(pmf.masses, key=lambda e: (len(e), e))
    return {
        "elements": list(pmf.frame.elements),
        "pmf": [
            {"event": pmf.frame.labels(e), "mass": _round(pmf.masses[e], precision)}
            for e in events
            if include_zero or pmf.masses[e] != 0
        ],
    }


def mass_function_from_dict(doc: Mapping) -> MassFunction:
    """Load ``{"elements": [...], "mass_function": [{"subset": [...], "mass": x}]}``.

    Subsets are unordered: ``["X","Y"]`` and ``["Y","X"]`` are the same key
    and listing both is a duplicate.
    """
    problems = []
    frame = _read_frame(doc, problems)
    entries = doc.get("mass_function")
    if not isinstance(entries, list):
        problems.append('document has no "mass_function" list')
        raise ValidationError(problems)
    if frame is None:
        raise ValidationError(problems)
    masses = {}
    for pos, entry in enumerate(entries):
        where = f"mass_function[{pos}]"
        labels = entry.get("subset") if isinstance(entry, dict) else None
        if not isinstance(labels, list):
            problems.append(f"{where}: subset must be a list of labels")
            continue
        try:
            subset = forget_order(frame.event(labels))
        except DomainError as exc:
            problems.append(f"{where}: {exc}")
            continue
        m = _read_mass(entry, where, problems)
        if subset in masses:
            problems.append(f"{where}: duplicate subset {frame.format_subset(subset)}")
        elif m is not None:
            masses[subset] = m
    if problems:
        raise ValidationError(problems)
    return MassFunction(frame, masses)


def mass_function_to_dict(m: MassFunction, precision=None) -> dict:
    subsets = sorted(m.masses, key=lambda s: (len(s), sorted(s)))
    return {
        "elements": list(m.frame.elements),
        "mass_function": [
            {"subset": m.frame.labels(sorted(s)), "mass": _round(m.masses[s], precision)}
            for s in subsets
            if m.masses[s] != 0
        ],
    }


def singleton_pmf(dist: ProbabilityDistribution) -> PermutationMassFunction:
    """Embed a probability vector as a PMF on one-element events."""
    return PermutationMassFunction(dist.frame, {(k,): p for k, p in enumerate(dist.probs)})
