"""Exact integer combinatorics.

Every function returns a plain Python ``int`` (arbitrary precision), so the
counts stay exact well past the 64-bit range (``20!`` already overflows it).
"""

from functools import lru_cache
from math import comb, perm

from .errors import DomainError

BigCount = int


def _check_nonneg(**kwargs):
    for name, value in kwargs.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise DomainError(f"{name} must be a non-negative integer, got {value!r}")


def permutation_count(n: int, i: int) -> BigCount:
    """Number of ordered arrangements of ``i`` items drawn from ``n``: n!/(n-i)!."""
    _check_nonneg(n=n, i=i)
    if i > n:
        raise DomainError(f"permutation_count requires i <= n, got n={n}, i={i}")
    return perm(n, i)


def combination_count(n: int, i: int) -> BigCount:
    """Binomial coefficient n!/(i!(n-i)!)."""
    _check_nonneg(n=n, i=i)
    if i > n:
        raise DomainError(f"combination_count requires i <= n, got n={n}, i={i}")
    return comb(n, i)


@lru_cache(maxsize=None)
def f_sum(i: int) -> BigCount:
    """Sum of P(i, k) for k = 0..i.

    This counts every ordered arrangement of every subset of an ``i``-set,
    the empty arrangement included, so ``f_sum(0) == 1``.
    """
    _check_nonneg(i=i)
    # P(i, k) = P(i, k-1) * (i - k + 1): a running product avoids factorials
    total = term = 1
    for k in range(1, i + 1):
        term *= i - k + 1
        total += term
    return total


def f_sum_combinatorial(i: int) -> BigCount:
    """Sum of C(i, k) for k = 0..i, i.e. ``2**i``.

    This is the order-ignored counterpart of :func:`f_sum`.
    """
    _check_nonneg(i=i)
    return 1 << i


def degenerate_permutation_count(n: int, i: int) -> BigCount:
    """Permutation count once events are restricted to a single element.

    1 for ``i == 0``, ``n`` for ``i == 1`` and 0 otherwise. Only defined for
    ``n >= 1``.
    """
    _check_nonneg(n=n, i=i)
    if n < 1:
        raise DomainError("degenerate_permutation_count requires n >= 1, got n=0")
    if i == 0:
        return 1
    if i == 1:
        return n
    return 0


@lru_cache(maxsize=None)
def rps_normalizer(n: int) -> BigCount:
    """Sum over i = 1..n of P(n, i) * (F(i) - 1).

    Its logarithm is the maximum RPS entropy on an ``n``-element frame and
    its reciprocal is the ratio mass/(F(i) - 1) shared by every event of the
    maximizing mass function.
    """
    _check_nonneg(n=n)
    if n < 1:
        raise DomainError("rps_normalizer requires n >= 1, got n=0")
    return sum(perm(n, i) * (f_sum(i) - 1) for i in range(1, n + 1))


@lru_cache(maxsize=None)
def deng_normalizer(n: int) -> BigCount:
    """Sum over non-empty subsets A of an ``n``-set of (2**|A| - 1).

    Expanding (2 + 1)**n - (1 + 1)**n binomially shows the sum is
    ``3**n - 2**n``.
    """
    _check_nonneg(n=n)
    if n < 1:
        raise DomainError("deng_normalizer requires n >= 1, got n=0")
    return 3**n - 2**n


def order_ignored_normalizer(n: int) -> BigCount:
    """The RPS normalizer with P replaced by C and F by the binomial sum."""
    _check_nonneg(n=n)
    if n < 1:
        raise DomainError("order_ignored_normalizer requires n >= 1, got n=0")
    return sum(
        combination_count(n, i) * (f_sum_combinatorial(i) - 1) for i in range(1, n + 1)
    )


def singleton_only_normalizer(n: int) -> BigCount:
    """The RPS normalizer with P replaced by the single-element count.

    F is rebuilt from the same restricted count, which makes F(i) = i + 1.
    """
    _check_nonneg(n=n)
    if n < 1:
        raise DomainError("singleton_only_normalizer requires n >= 1, got n=0")

    def restricted_f(i):
        return sum(degenerate_permutation_count(i, k) for k in range(i + 1))

    return sum(
        degenerate_permutation_count(n, i) * (restricted_f(i) - 1)
        for i in range(1, n + 1)
    )
