"""Tests for field construction, class numbers, the norm equation, and the
embedding into Z/p**2.

The class-number oracle below enumerates reduced forms with a loop order
deliberately different from the implementation, and the Cornacchia oracle
is a full brute-force solution listing.
"""

import math

import pytest
import sympy

from cmlambda.modmath import NotAResidue, kronecker, primes_up_to
from cmlambda.quadfield import (
    ImagQuadField,
    NoSolution,
    NotFundamental,
    NotSquarefree,
    PrimeSplit,
    QuadInt,
    class_number,
    cornacchia,
    embed,
    make_field,
    prime_power_generator,
    split_data,
    splits,
)

HEEGNER_D = [1, 2, 3, 7, 11, 19, 43, 67, 163]

# classical class numbers, used as a cross-check on top of the oracle below
KNOWN_H = {
    -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -19: 1, -20: 2, -23: 3,
    -24: 2, -31: 3, -35: 2, -39: 4, -40: 2, -43: 1, -47: 5, -52: 2,
    -56: 4, -67: 1, -71: 7, -79: 5, -84: 4, -163: 1,
}


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in sympy.factorint(n).values())


def _fundamental_discriminants(limit: int) -> list[int]:
    out = []
    for m in range(3, limit + 1):
        if m % 4 == 3 and _squarefree(m):
            out.append(-m)
        if m % 4 in (1, 2) and _squarefree(m):
            out.append(-4 * m)
    return [D for D in out if -D <= limit]


def _class_number_oracle(D: int) -> int:
    """Count reduced primitive forms by iterating a first, then b."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue  # the reduced representative of this class has b > 0
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


class TestMakeField:
    def test_d3(self):
        assert make_field(3) == ImagQuadField(d=3, D=-3, h=1)

    def test_d1(self):
        assert make_field(1) == ImagQuadField(d=1, D=-4, h=1)

    def test_d15(self):
        field = make_field(15)
        assert (field.D, field.h) == (-15, 2)

    @pytest.mark.parametrize("d", [4, 8, 9, 12, 18, 45, 50])
    def test_square_factor_rejected(self, d):
        with pytest.raises(NotSquarefree):
            make_field(d)

    @pytest.mark.parametrize("d", [0, -1, -3])
    def test_nonpositive_rejected(self, d):
        with pytest.raises(ValueError):
            make_field(d)

    def test_discriminant_congruence(self):
        for d in range(1, 60):
            try:
                field = make_field(d)
            except (NotSquarefree, ValueError):
                continue
            assert field.D % 4 in (0, 1)
            assert field.D == (-d if d % 4 == 3 else -4 * d)


class TestClassNumber:
    def test_pinned_values(self):
        assert class_number(-3) == 1
        assert class_number(-23) == 3
        assert class_number(-11) == 1

    def test_non_fundamental_rejected(self):
        for D in (-12, -27, -28, -100, -5, -9, 5, 0):
            with pytest.raises(NotFundamental):
                class_number(D)

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            class_number(-23, cap=10)

    def test_against_independent_enumeration_below_500(self):
        for D in _fundamental_discriminants(500):
            assert class_number(D) == _class_number_oracle(D), D

    def test_against_classical_table(self):
        for D, h in KNOWN_H.items():
            assert class_number(D) == h, D
            assert _class_number_oracle(D) == h, D


class TestSplits:
    def test_pinned(self):
        assert splits(make_field(3), 7) is True
        assert splits(make_field(3), 5) is False
        assert splits(make_field(11), 5) is True

    def test_matches_kronecker_classification(self):
        for d in (1, 2, 3, 7, 11, 15, 19):
            field = make_field(d)
            for p in primes_up_to(60):
                if p <= 3:
                    continue
                assert splits(field, p) == (kronecker(field.D, p) == 1)


def _all_solutions(m: int, n: int) -> list[tuple[int, int]]:
    sols = []
    y = 0
    while n * y * y <= m:
        r = m - n * y * y
        x = math.isqrt(r)
        if x * x == r:
            sols.append((x, y))
        y += 1
    return sols


def _canonical_solution(m: int, n: int):
    sols = _all_solutions(m, n)
    if not sols:
        return None
    least_gcd = min(math.gcd(x, y) for x, y in sols)
    return max(s for s in sols if math.gcd(s[0], s[1]) == least_gcd)


class TestCornacchia:
    def test_4p_examples(self):
        assert cornacchia(52, 3) == (7, 1)  # 49 + 3; (5, 3) also primitive
        assert cornacchia(20, 11) == (3, 1)
        assert cornacchia(28, 3) == (5, 1)  # not (4, 2), not (1, 3)

    def test_no_solution(self):
        assert cornacchia(3, 5) is None
        assert cornacchia(15, 7) is None

    def test_edges(self):
        assert cornacchia(1, 7) == (1, 0)
        assert cornacchia(5, 5) == (0, 1)
        assert cornacchia(4, 1) == (2, 0)  # only imprimitive solutions exist

    def test_exhaustive_small_inputs(self):
        for n in range(1, 14):
            for m in range(1, 400):
                got = cornacchia(m, n)
                want = _canonical_solution(m, n)
                assert got == want, (m, n, got, want)
                if got is not None:
                    x, y = got
                    assert x * x + n * y * y == m
                    assert x >= 0 and y >= 0


class TestPrimePowerGenerator:
    def test_examples(self):
        assert prime_power_generator(make_field(3), 13) == QuadInt(7, 1)
        assert prime_power_generator(make_field(11), 5) == QuadInt(3, 1)
        assert prime_power_generator(make_field(3), 7) == QuadInt(5, 1)

    @pytest.mark.parametrize("d", HEEGNER_D + [5, 15, 23, 79])
    def test_norm_is_p_to_h_for_split_p(self, d):
        field = make_field(d)
        for p in primes_up_to(100):
            if p <= 3 or not splits(field, p) or field.h % p == 0:
                continue
            alpha = prime_power_generator(field, p)
            assert alpha.norm(field.D) == p**field.h
            # alpha must generate a power of one prime only: p cannot
            # divide it in the ring of integers
            assert not (alpha.x % p == 0 and alpha.y % p == 0)
            # integrality: x = y*D (mod 2)
            assert (alpha.x - alpha.y * field.D) % 2 == 0


class TestSplitData:
    def test_d3_p7(self):
        sd = split_data(make_field(3), 7)
        assert sd.R == 37  # lift of the smaller root 2 of -3 mod 7
        assert sd.R**2 % 49 == 46

    def test_d3_p13(self):
        sd = split_data(make_field(3), 13)
        assert sd.R == 45
        assert sd.R**2 % 169 == 166

    def test_d1_p5(self):
        sd = split_data(make_field(1), 5)
        assert sd.R == 11  # the other root of -4 mod 25 is 14
        assert sd.R**2 % 25 == 21

    def test_square_root_invariant(self):
        for d in HEEGNER_D:
            field = make_field(d)
            for p in primes_up_to(100):
                if p <= 3 or not splits(field, p):
                    continue
                sd = split_data(field, p)
                assert 0 <= sd.R < p * p
                assert (sd.R * sd.R - field.D) % (p * p) == 0


class TestEmbed:
    def test_ring_map_basics(self):
        field = make_field(3)
        sd = split_data(field, 13)
        one = embed(QuadInt(2, 0), sd)
        assert one.value == 1 and one.modulus == 169
        assert embed(QuadInt(0, 2), sd).value == sd.R

    def test_d3_p13_generator_image(self):
        field = make_field(3)
        sd = split_data(field, 13)
        img = embed(QuadInt(7, 1), sd)
        assert img.value == (7 + sd.R) * pow(2, -1, 169) % 169 == 26

    def test_norm_compatibility_and_unit_selection(self):
        for d in (1, 2, 3, 7, 11, 19):
            field = make_field(d)
            for p in primes_up_to(100):
                if p <= 3 or not splits(field, p):
                    continue
                alpha = prime_power_generator(field, p)
                sd = split_data(field, p)
                u = embed(alpha, sd)
                v = embed(alpha.conj(), sd)
                assert (u * v).value == pow(p, field.h, p * p)
                # the conjugates separate the two primes above p
                assert (u.value % p == 0) != (v.value % p == 0)


class TestQuadInt:
    def test_conj_negates_y(self):
        assert QuadInt(5, 2).conj() == QuadInt(5, -2)

    def test_norm(self):
        assert QuadInt(7, 1).norm(-3) == 13
        assert QuadInt(0, 2).norm(-4) == 4

    def test_mul_matches_norm_multiplicativity(self):
        D = -3
        a, b = QuadInt(5, 1), QuadInt(7, 1)
        assert a.mul(b, D).norm(D) == a.norm(D) * b.norm(D)
