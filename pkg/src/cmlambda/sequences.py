"""Product criterion for 1-exceptional primes and the special sequences
tied to it.

For p = 1 (mod m), p is 1-exceptional when the product of all a <= (p**2-1)/m
prime to p satisfies product**(p-1) = 1 (mod p**2). For m = 3 this matches
the vanishing mod p**2 of the Glaisher number G_{p-1} (exponential generating
function (3/2)/(e^x + e^{-x} + 1)) and for m = 4 of the Euler number E_{p-1}
(generating function 2/(e^x + e^{-x})), and both match the point count of a
fixed curve: y**2 = x**3 - 1 resp. y**2 = x**3 + x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ellcurve import CurveFp, count_mod_p2
from .modmath import Residue, is_prime

__all__ = [
    "CongruenceViolated",
    "SequenceVerdict",
    "one_exceptional",
    "euler_mod",
    "glaisher_mod",
    "equivalence_check",
    "PRODUCT_CAP",
]

PRODUCT_CAP = 10**4  # the product test is O(p**2 / m) multiplications


class CongruenceViolated(ValueError):
    """p fails the congruence p = 1 (mod m) required by the definition."""


@dataclass(frozen=True)
class SequenceVerdict:
    """The three equivalent predicates at (p, m), computed independently."""

    p: int
    m: int
    product_is_one: bool
    special_value: Residue
    curve_residue: Residue

    @property
    def agree(self) -> bool:
        return (
            self.product_is_one
            == (self.special_value.value == 0)
            == (self.curve_residue.value == 0)
        )


def _check_pm(p: int, m: int, cap: int = PRODUCT_CAP) -> None:
    if m not in (3, 4):
        raise ValueError(f"m must be 3 or 4, got {m}")
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime greater than 3, got {p}")
    if p > cap:
        raise ValueError(f"p = {p} exceeds the cap {cap}")
    if p % m != 1:
        raise CongruenceViolated(f"need p = 1 (mod {m}), got p = {p}")


def _truncated_product(p: int, m: int) -> int:
    """Product of 1 <= a <= (p**2 - 1)/m with p not dividing a, mod p**2."""
    p2 = p * p
    prod = 1
    for a in range(1, (p2 - 1) // m + 1):
        if a % p == 0:
            continue
        prod = prod * a % p2
    return prod


def one_exceptional(p: int, m: int, cap: int = PRODUCT_CAP) -> bool:
    """Whether p is 1-exceptional for m: product**(p-1) = 1 (mod p**2)."""
    _check_pm(p, m, cap)
    return pow(_truncated_product(p, m), p - 1, p * p) == 1


def _pascal_rows(n_max: int, modulus: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append(
            [1]
            + [(prev[i - 1] + prev[i]) % modulus for i in range(1, n)]
            + [1]
        )
    return rows


def euler_mod(p: int, upto: int) -> list[Residue]:
    """[E_0, E_2, ..., E_upto] mod p**2, from 2/(e^x + e^{-x}).

    The defining recurrence sum(C(n,k) E_{n-k}, k even) = 0 uses Pascal
    binomials only, so no divisions occur; upto may not exceed p - 1.
    """
    _check_upto(p, upto)
    m = p * p
    rows = _pascal_rows(upto, m)
    evens = [1]
    for n in range(2, upto + 1, 2):
        acc = 0
        for k in range(2, n + 1, 2):
            acc = (acc + rows[n][k] * evens[(n - k) // 2]) % m
        evens.append(-acc % m)
    return [Residue(v, m) for v in evens]


def glaisher_mod(p: int, upto: int) -> list[Residue]:
    """[G_0, G_2, ..., G_upto] mod p**2, from (3/2)/(e^x + e^{-x} + 1).

    G_0 = 1/2, and 3 G_n = -sum(2 C(n,k) G_{n-k}, k even, 2 <= k <= n).
    The only divisions are by 2 and 3, both units mod p**2 for p > 3.
    """
    _check_upto(p, upto)
    m = p * p
    rows = _pascal_rows(upto, m)
    inv3 = pow(3, -1, m)
    evens = [pow(2, -1, m)]
    for n in range(2, upto + 1, 2):
        acc = 0
        for k in range(2, n + 1, 2):
            acc = (acc + 2 * rows[n][k] * evens[(n - k) // 2]) % m
        evens.append(-acc * inv3 % m)
    return [Residue(v, m) for v in evens]


def _check_upto(p: int, upto: int) -> None:
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime greater than 3, got {p}")
    if upto < 0 or upto % 2:
        raise ValueError(f"upto must be a nonnegative even integer, got {upto}")
    if upto > p - 1:
        raise ValueError(f"upto = {upto} exceeds p - 1 = {p - 1}")


_CURVE_FOR_M = {3: (0, -1), 4: (1, 0)}  # y**2 = x**3 - 1 and x**3 + x


def equivalence_check(p: int, m: int, cap: int = PRODUCT_CAP) -> SequenceVerdict:
    """Evaluate all three predicates at (p, m) through independent routes."""
    _check_pm(p, m, cap)
    product_is_one = one_exceptional(p, m, cap)
    seq = glaisher_mod(p, p - 1) if m == 3 else euler_mod(p, p - 1)
    A, B = _CURVE_FOR_M[m]
    curve = CurveFp(p, A % p, B % p)
    return SequenceVerdict(
        p=p,
        m=m,
        product_is_one=product_is_one,
        special_value=seq[-1],
        curve_residue=count_mod_p2(curve, p - 1),
    )
