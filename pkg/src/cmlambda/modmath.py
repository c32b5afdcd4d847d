"""Exact modular arithmetic and shared number-theoretic primitives.

Moduli in this package are typically an odd prime p or its square. All
functions are pure and everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "ModulusMismatch",
    "NotInvertible",
    "NotAResidue",
    "Residue",
    "mod_pow",
    "mod_inv",
    "kronecker",
    "sqrt_mod_p",
    "hensel_lift_sqrt",
    "is_prime",
    "binomial_mod",
    "primes_up_to",
]


class ModulusMismatch(ValueError):
    """Arithmetic attempted on residues with different moduli."""


class NotInvertible(ValueError):
    """The element shares a factor with the modulus."""


class NotAResidue(ValueError):
    """No square root exists modulo the given prime."""


@dataclass(frozen=True, slots=True)
class Residue:
    """An element of Z/m, normalized to 0 <= value < modulus.

    Every residue carries its modulus, and mixing two moduli raises
    ModulusMismatch: confusing p with p**2 must fail loudly, not coerce.
    """

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _require_same_modulus(self, other: Residue) -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"moduli differ: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: Residue) -> Residue:
        self._require_same_modulus(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: Residue) -> Residue:
        self._require_same_modulus(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: Residue) -> Residue:
        self._require_same_modulus(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> Residue:
        return Residue(-self.value, self.modulus)


def mod_pow(base: Residue, exp: int) -> Residue:
    """base**exp in Z/m. The exponent must be nonnegative."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return Residue(pow(base.value, exp, base.modulus), base.modulus)


def mod_inv(a: Residue) -> Residue:
    """Multiplicative inverse in Z/m."""
    try:
        inv = pow(a.value, -1, a.modulus)
    except ValueError as exc:
        raise NotInvertible(
            f"{a.value} is not invertible mod {a.modulus}"
        ) from exc
    return Residue(inv, a.modulus)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for odd positive n (the Jacobi symbol).

    Computed by quadratic reciprocity, no factoring. For prime n this
    classifies a as zero, residue or nonresidue.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be a positive odd integer, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_p(a: int, p: int) -> int:
    """The smaller square root of a modulo an odd prime p.

    Tonelli-Shanks; the p = 3 (mod 4) shortcut a**((p+1)/4) is used when it
    applies. Raises NotAResidue unless kronecker(a, p) == 1.
    """
    a %= p
    if kronecker(a, p) != 1:
        raise NotAResidue(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while kronecker(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    return min(r, p - r)


def hensel_lift_sqrt(r: int, a: int, p: int) -> int:
    """Lift r with r**2 = a (mod p) to R with R**2 = a (mod p**2).

    One Newton step; the result satisfies R = r (mod p). Requires r to be a
    unit mod p, so a itself must be a unit.
    """
    if (r * r - a) % p != 0:
        raise ValueError(f"{r} is not a square root of {a} mod {p}")
    if r % p == 0:
        raise ValueError("root must be a unit mod p")
    p2 = p * p
    inv = pow(2 * r, -1, p2)
    return (r - (r * r - a) * inv) % p2


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def binomial_mod(n: int, k: int, modulus: int) -> Residue:
    """C(n, k) mod modulus via Pascal's rule: additions only, no division."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n} k={k}")
    row = [1]
    for _ in range(n):
        row = (
            [1]
            + [(row[i] + row[i + 1]) % modulus for i in range(len(row) - 1)]
            + [1]
        )
    return Residue(row[k], modulus)


def primes_up_to(n: int) -> list[int]:
    """Primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for q in range(2, int(n**0.5) + 1):
        if flags[q]:
            flags[q * q :: q] = bytearray(len(flags[q * q :: q]))
    return [i for i, f in enumerate(flags) if f]
