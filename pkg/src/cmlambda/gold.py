"""Unit-power test for lambda_p > 1 at split primes.

Let alpha generate the h-th power of a prime above p. Reduce alpha modulo
the square of the conjugate prime, which is a copy of Z/p**2: the image of
whichever of alpha, conj(alpha) is a unit mod p is raised to the p - 1.
The power equals 1 exactly when the lambda invariant exceeds 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modmath import Residue, is_prime, mod_pow, primes_up_to
from .quadfield import (
    ImagQuadField,
    PrimeSplit,
    QuadInt,
    embed,
    prime_power_generator,
    split_data,
    splits,
)

__all__ = ["PreconditionViolated", "GoldVerdict", "gold_test", "gold_scan"]


class PreconditionViolated(ValueError):
    """The inputs do not satisfy the hypotheses of the criterion."""


@dataclass(frozen=True)
class GoldVerdict:
    """Outcome at one split prime.

    alpha_power is the residue u**(p-1) mod p**2 for the unit image u;
    lambda_gt_one just records whether it equals 1.
    """

    p: int
    d: int
    lambda_gt_one: bool
    alpha_power: Residue
    generator: QuadInt


def _unit_image(alpha: QuadInt, split: PrimeSplit) -> Residue:
    """Embed whichever conjugate of alpha is a unit mod p.

    Exactly one of the two images is divisible by p (the one generating
    the power of the prime cut out by R).
    """
    u = embed(alpha, split)
    if u.value % split.p == 0:
        u = embed(alpha.conj(), split)
    return u


def _verdict(field: ImagQuadField, p: int, split: PrimeSplit,
             alpha: QuadInt) -> GoldVerdict:
    power = mod_pow(_unit_image(alpha, split), p - 1)
    return GoldVerdict(
        p=p,
        d=field.d,
        lambda_gt_one=(power.value == 1),
        alpha_power=power,
        generator=alpha,
    )


def gold_test(field: ImagQuadField, p: int) -> GoldVerdict:
    """Decide lambda_p > 1 for Q(sqrt(-d)) at the split prime p.

    Requires p > 3 prime, p split in the field, and p not dividing the
    class number.
    """
    if p <= 3:
        raise PreconditionViolated(f"p must exceed 3, got {p}")
    if not is_prime(p):
        raise PreconditionViolated(f"p = {p} is not prime")
    if not splits(field, p):
        raise PreconditionViolated(
            f"p = {p} does not split in Q(sqrt({-field.d}))"
        )
    if field.h % p == 0:
        raise PreconditionViolated(
            f"p = {p} divides the class number {field.h}"
        )
    alpha = prime_power_generator(field, p)
    return _verdict(field, p, split_data(field, p), alpha)


def gold_scan(field: ImagQuadField, p_max: int) -> list[GoldVerdict]:
    """Verdicts for every admissible split prime p with 3 < p <= p_max."""
    out = []
    for p in primes_up_to(p_max):
        if p <= 3 or field.h % p == 0 or not splits(field, p):
            continue
        out.append(gold_test(field, p))
    return out
