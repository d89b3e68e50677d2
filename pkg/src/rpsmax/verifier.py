"""Numerical check of the maximum-entropy PMF.

:func:`maximize_rps_entropy` climbs the RPS entropy over the probability
simplex by projected gradient ascent, using nothing but the objective and its
gradient. Only after it stops is the result compared against the closed form
from :mod:`rpsmax.entropy`. :func:`random_search_oracle` is a second,
optimizer-free check: no Dirichlet sample may beat the analytic maximum.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import combinatorics as comb
from .core import PermutationMassFunction, require_valid
from .entropy import DEFAULT_BASE, check_base, max_rps_entropy, max_rps_pmf
from .errors import CapacityError, PreconditionError
from .pes import FrameOfDiscernment, enumerate_events

OPTIMIZER_CAP = 7
MASS_FLOOR = 1e-15
MIN_STEP = 1e-30
ORACLE_CHUNK = 8192


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 100_000
    step_size: float = 0.1
    tolerance: float = 1e-10
    seed: int = 0
    start: str = "uniform"  # or "random": Dirichlet(1) draw from ``seed``
    base: float = DEFAULT_BASE

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.step_size > 0:
            raise ValueError("step_size must be > 0")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if self.start not in ("uniform", "random"):
            raise ValueError(f"start must be 'uniform' or 'random', got {self.start!r}")
        check_base(self.base)


@dataclass(frozen=True)
class VerificationResult:
    converged: bool
    iterations_used: int
    achieved_entropy: float
    analytic_entropy: float
    entropy_gap: float
    pmf_sup_distance: float
    kkt_residual: float

    def to_dict(self) -> dict:
        return asdict(self)


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of ``v`` onto {x >= 0, sum x = 1}.

    Sort-and-threshold method: find the largest ``rho`` with
    ``u[rho] > (cumsum(u)[rho] - 1) / (rho + 1)`` for ``u`` sorted descending.
    """
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    x = np.maximum(v - theta, 0.0)
    # the threshold is exact in real arithmetic; fix the last-ulp drift
    return x / x.sum()


def _event_space(frame, cap):
    if frame.n > cap:
        raise CapacityError(f"n={frame.n} exceeds the optimizer cap n <= {cap}")
    events = list(enumerate_events(frame))
    caps = np.array([float(comb.f_sum(len(e)) - 1) for e in events])
    return events, caps


def _objective(x, caps, base):
    pos = x > 0
    xp = x[pos]
    return float(-np.sum(xp * np.log(xp / caps[pos])) / math.log(base)) + 0.0


def _gradient(x, caps, base):
    return -np.log(np.maximum(x, MASS_FLOOR) / caps) / math.log(base) - 1.0 / math.log(base)


def maximize_rps_entropy(frame: FrameOfDiscernment, config: OptimizerConfig = None, cap=OPTIMIZER_CAP):
    """Maximize RPS entropy numerically over all non-empty events of ``frame``.

    Each iteration takes a gradient step from ``config.step_size``, projects
    onto the simplex and halves the step until the entropy does not drop
    below its current value. The run stops once no coordinate moves by
    ``config.tolerance`` or more.

    Returns ``(pmf, VerificationResult)``.
    """
    config = config or OptimizerConfig()
    base = config.base
    events, caps = _event_space(frame, cap)
    size = len(events)

    if config.start == "random":
        rng = np.random.default_rng(config.seed)
        x = rng.exponential(size=size)
        x /= x.sum()
    else:
        x = np.full(size, 1.0 / size)

    f = _objective(x, caps, base)
    converged = size == 1
    iterations = 0
    while not converged and iterations < config.max_iterations:
        iterations += 1
        g = _gradient(x, caps, base)
        step = config.step_size
        while True:
            candidate = project_to_simplex(x + step * g)
            f_new = _objective(candidate, caps, base)
            if f_new >= f or step < MIN_STEP:
                break
            step *= 0.5
        change = float(np.max(np.abs(candidate - x)))
        if f_new < f:
            # no non-decreasing step exists at float resolution: x is stationary
            converged = change < config.tolerance or step < MIN_STEP
            break
        x, f = candidate, f_new
        converged = change < config.tolerance

    pmf = PermutationMassFunction(frame, dict(zip(events, x.tolist())))
    analytic = max_rps_entropy(frame.n, base)
    reference = max_rps_pmf(frame, cap=max(cap, frame.n))
    distance = max(abs(pmf.mass(e) - reference.mass(e)) for e in events)
    try:
        kkt = check_stationarity(pmf, base)
    except PreconditionError:
        kkt = math.inf
    result = VerificationResult(
        converged=bool(converged),
        iterations_used=iterations,
        achieved_entropy=f,
        analytic_entropy=analytic,
        entropy_gap=analytic - f,
        pmf_sup_distance=distance,
        kkt_residual=kkt,
    )
    return pmf, result


def check_stationarity(pmf: PermutationMassFunction, base=DEFAULT_BASE) -> float:
    """Relative spread of the ratio M(A) / (F(|A|) - 1) across all events.

    At the maximizer the ratio is the same constant for every non-empty
    event, so the result is ``max |r - mean r| / mean r``, zero exactly at a
    stationary point. ``base`` does not change the ratios; it is accepted for
    symmetry with the entropy functions.
    """
    check_base(base)
    require_valid(pmf)
    ratios = []
    for event in enumerate_events(pmf.frame):
        m = pmf.mass(event)
        if not m > 0:
            raise PreconditionError(
                f"event {pmf.frame.format_event(event)} has zero mass; "
                "the stationarity test needs full support"
            )
        ratios.append(m / (comb.f_sum(len(event)) - 1))
    r = np.array(ratios)
    mean = math.fsum(ratios) / len(ratios)
    return float(np.max(np.abs(r - mean)) / mean)


def random_search_oracle(frame: FrameOfDiscernment, samples: int, seed=0, base=DEFAULT_BASE, cap=OPTIMIZER_CAP) -> float:
    """Best RPS entropy among ``samples`` uniform draws from the simplex.

    Draws are normalized i.i.d. exponentials (a symmetric Dirichlet with
    concentration 1), generated in fixed-size chunks so the result depends
    only on ``seed`` and ``samples``.
    """
    base = check_base(base)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _, caps = _event_space(frame, cap)
    if caps.size == 1:
        return 0.0
    rng = np.random.default_rng(seed)
    log_caps = np.log(caps)
    best = -math.inf
    remaining = samples
    while remaining:
        k = min(remaining, ORACLE_CHUNK)
        remaining -= k
        x = rng.exponential(size=(k, caps.size))
        x /= x.sum(axis=1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(x > 0, x * (np.log(x) - log_caps), 0.0)
        h = -terms.sum(axis=1) / math.log(base)
        best = max(best, float(h.max()))
    return best
