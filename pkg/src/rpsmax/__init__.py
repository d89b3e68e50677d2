"""Random permutation sets: permutation event spaces, mass functions,
RPS / Deng / Shannon entropies and their maximum-entropy distributions."""

from .combinatorics import (
    combination_count,
    degenerate_permutation_count,
    f_sum,
    f_sum_combinatorial,
    permutation_count,
    rps_normalizer,
)
from .core import (
    MassFunction,
    PermutationMassFunction,
    ProbabilityDistribution,
    degenerate_to_mass_function,
    renormalize,
    restrict_to_singletons,
    uniform_singleton_distribution,
    validate,
)
from .entropy import (
    EntropyReport,
    deng_entropy,
    max_deng_entropy,
    max_deng_mass_function,
    max_rps_entropy,
    max_rps_entropy_order_ignored,
    max_rps_entropy_singleton_only,
    max_rps_pmf,
    max_shannon_entropy,
    rps_entropy,
    shannon_entropy,
)
from .errors import CapacityError, DomainError, PreconditionError, RPSError, ValidationError
from .pes import FrameOfDiscernment, enumerate_events, forget_order, pes_size
from .verifier import (
    OptimizerConfig,
    VerificationResult,
    check_stationarity,
    maximize_rps_entropy,
    random_search_oracle,
)

__version__ = "0.1.0"
