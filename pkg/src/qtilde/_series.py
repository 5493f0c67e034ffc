"""Exact sums of series whose terms become periodic after a finite prefix."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

Term = Callable[[int], Fraction]


def periodic_sum(coef: Term, ratio: Term, start: int, period: int) -> Fraction:
    """Exact value of ``sum_{n>=1} coef(n) * prod_{j<n} ratio(j)``.

    ``coef`` and ``ratio`` must satisfy ``f(n + period) == f(n)`` for every
    ``n >= start``.  The tail then obeys ``T = B + R * T`` where ``B`` and
    ``R`` are the sum and product over one period, so ``T = B / (1 - R)``.
    """
    if start < 1 or period < 1:
        raise ValueError("start and period must be positive")
    total = Fraction(0)
    prod = Fraction(1)
    for n in range(1, start):
        total += coef(n) * prod
        prod *= ratio(n)
    if prod == 0:
        return total
    block_sum = Fraction(0)
    block_prod = Fraction(1)
    for n in range(start, start + period):
        block_sum += coef(n) * block_prod
        block_prod *= ratio(n)
    if abs(block_prod) >= 1:
        raise ValueError(f"series does not converge: period product {block_prod}")
    return total + prod * block_sum / (1 - block_prod)


def partial_sum(coef: Term, ratio: Term, count: int) -> tuple[Fraction, Fraction]:
    """``(sum_{n<=count} coef(n) prod_{j<n} ratio(j), prod_{j<=count} ratio(j))``."""
    total = Fraction(0)
    prod = Fraction(1)
    for n in range(1, count + 1):
        total += coef(n) * prod
        prod *= ratio(n)
    return total, prod
