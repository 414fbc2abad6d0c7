"""Tests for the bivariate polynomial kernel.

Small expected values (2x2 and 3x3 Sylvester determinants, factored root
sets) were computed by hand before the implementation and are frozen here;
randomized properties cross-check gcd, resultants and root extraction
against each other and against planted constructions.
"""

import random
from fractions import Fraction as F

import pytest

from sumprod.poly import (
    BivariatePolynomial as BP,
    UnivariatePolynomial as UP,
    evaluate,
    poly_gcd,
    rational_roots,
    resultant,
)

# the collision-system exponent shapes used throughout the project
TWO_ROW_SHAPES = [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
THREE_ROW_SHAPES = TWO_ROW_SHAPES + [
    (0, 2, 2), (0, 0, 2), (2, 2, 2), (2, 0, 2), (1, 1, 2),
    (2, 1, 1), (1, 2, 2), (2, 1, 2), (0, 1, 2), (1, 0, 2),
]


def collision_poly(shape, octuple_half):
    """r^a + s^t r^b - s^u r^c - s^v r^d for shape (t, u, v)."""
    t, u, v = shape
    a, b, c, d = octuple_half
    return BP.from_terms([(a, 0, 1), (b, t, 1), (c, u, -1), (d, v, -1)])


def random_system(rng, shapes, hi=6):
    p = collision_poly(rng.choice(shapes), [rng.randint(0, hi) for _ in range(4)])
    q = collision_poly(rng.choice(shapes), [rng.randint(0, hi) for _ in range(4)])
    return p, q


class TestGcd:
    def test_two_row_collision_pair(self):
        # hand-factored: p = (r+1)(r^2-r+1-s), q = -(s-r^2+r-1)
        p = BP.from_terms({(0, 0): 1, (3, 0): 1, (0, 1): -1, (1, 1): -1})
        q = BP.from_terms({(0, 0): 1, (2, 0): 1, (1, 0): -1, (0, 1): -1})
        g = poly_gcd(p, q)
        assert g == BP.from_terms({(2, 0): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
        assert str(g) == "r^2 - r - s + 1"
        p.div_exact(g)
        q.div_exact(g)

    def test_gcd_with_self(self):
        p = BP.from_terms({(2, 1): 3, (0, 0): -6})
        assert poly_gcd(p, p) == p.sign_normalized()

    def test_monomials(self):
        rs = BP.from_terms({(1, 1): 1})
        r2 = BP.from_terms({(2, 0): 1})
        assert poly_gcd(rs, r2) == BP.from_terms({(1, 0): 1})

    def test_integer_content(self):
        a = BP.from_terms({(1, 0): 4, (0, 0): 4})
        b = BP.from_terms({(0, 1): 6, (0, 0): 6})
        assert poly_gcd(a, b) == BP.constant(2)

    def test_zero_operands(self):
        p = BP.from_terms({(1, 1): -2})
        assert poly_gcd(p, BP.zero()) == BP.from_terms({(1, 1): 2})
        assert poly_gcd(BP.zero(), BP.zero()) == BP.zero()

    def test_gcd_divides_both(self):
        rng = random.Random(101)
        for _ in range(300):
            p, q = random_system(rng, THREE_ROW_SHAPES)
            g = poly_gcd(p, q)
            if g.is_zero():
                assert p.is_zero() and q.is_zero()
                continue
            assert p.div_exact(g) * g == p
            assert q.div_exact(g) * g == q

    def test_gcd_of_planted_common_factor(self):
        rng = random.Random(103)
        for _ in range(100):
            g = collision_poly(rng.choice(THREE_ROW_SHAPES), [rng.randint(0, 3) for _ in range(4)])
            if g.is_zero():
                continue
            a = BP.from_terms({(rng.randint(0, 2), rng.randint(0, 1)): rng.randint(1, 3)})
            b = BP.from_terms({(rng.randint(0, 2), rng.randint(0, 1)): -rng.randint(1, 3)})
            if (a - b).is_zero():
                continue
            d = poly_gcd(g * a, g * b)
            # the planted factor divides the gcd, and the gcd divides g*a
            d.div_exact(g)
            assert (g * a).div_exact(d) * d == g * a


class TestResultant:
    def test_res_s_linear_pair(self):
        # det [[1, -r], [1, -r^2]] = r - r^2
        p = BP.from_terms({(0, 1): 1, (1, 0): -1})
        q = BP.from_terms({(0, 1): 1, (2, 0): -1})
        assert resultant(p, q, "s") == UP.of([0, 1, -1], "r")

    def test_res_r_linear_pair(self):
        # det [[1, -2], [1, -s]] = 2 - s
        p = BP.from_terms({(1, 0): 1, (0, 0): -2})
        q = BP.from_terms({(1, 0): 1, (0, 1): -1})
        assert resultant(p, q, "r") == UP.of([2, -1], "s")

    def test_common_factor_gives_zero(self):
        p = BP.from_terms({(0, 1): 1, (1, 0): -1})
        q = BP.from_terms({(0, 1): 2, (1, 1): 1})
        assert resultant(p * q, q, "s").is_zero()

    def test_conventions(self):
        c2, c3 = BP.constant(2), BP.constant(3)
        assert resultant(c2, c3, "s") == UP.of([1], "r")
        assert resultant(BP.zero(), c3, "s").is_zero()
        # constant against degree n: c^n
        p = BP.from_terms({(0, 2): 1, (1, 0): 5})
        assert resultant(c3, p, "s") == UP.of([9], "r")

    def test_bad_variable(self):
        with pytest.raises(ValueError):
            resultant(BP.constant(1), BP.constant(1), "t")

    def test_vanishes_exactly_at_common_roots(self):
        rng = random.Random(107)
        checked = 0
        while checked < 200:
            p, q = random_system(rng, THREE_ROW_SHAPES, hi=4)
            if p.is_zero() or q.is_zero() or p.degree("s") < 1 or q.degree("s") < 1:
                continue
            res = resultant(p, q, "s")
            g = poly_gcd(p, q)
            # res_s == 0 iff the gcd has positive degree in s
            assert res.is_zero() == (g.degree("s") >= 1)
            if not res.is_zero():
                for r0 in rational_roots(res):
                    # at a root of res_s the specializations share a root
                    # or both drop s-degree; verify via the univariate gcd
                    ps = [c.evaluate(F(r0)) for c in _as_upolys(p)]
                    qs = [c.evaluate(F(r0)) for c in _as_upolys(q)]
                    assert _frac_gcd_degree(ps, qs) >= 1 or (ps[-1] == 0 and qs[-1] == 0)
            checked += 1

    def test_planted_common_rational_point(self):
        rng = random.Random(109)
        for _ in range(150):
            r0 = F(rng.randint(2, 9), rng.randint(1, 4))
            s0 = F(rng.randint(2, 9), rng.randint(1, 4))
            # p = (r - r0)*A + (s - s0)*B vanishes at (r0, s0) by construction
            def planted():
                A = BP.from_terms({(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)})
                B = BP.from_terms({(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 3)})
                rminus = BP.from_terms({(1, 0): r0.denominator, (0, 0): -r0.numerator})
                sminus = BP.from_terms({(0, 1): s0.denominator, (0, 0): -s0.numerator})
                return rminus * A + sminus * B

            p, q = planted(), planted()
            assert p.evaluate(r0, s0) == 0 and q.evaluate(r0, s0) == 0
            res = resultant(p, q, "s")
            if not res.is_zero():
                assert r0 in rational_roots(res)


def _as_upolys(p):
    return [UP.of(c, "r") for c in p.s_coefficients()]


def _frac_gcd_degree(a, b):
    """Degree of gcd of two polynomials given by Fraction coefficient lists."""
    a, b = list(a), list(b)

    def norm(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = norm(a), norm(b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        lead = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= lead * c
        a = norm(a)
        a, b = b, a
    return len(a) - 1


class TestRationalRoots:
    def test_quadratic(self):
        assert rational_roots([2, -5, 2]) == (F(1, 2), F(2))

    def test_pure_power(self):
        assert rational_roots([0, 0, 0, 1]) == (F(0),)

    def test_no_rational_roots(self):
        assert rational_roots([1, 0, 1]) == ()
        assert rational_roots([-2, 0, 1]) == ()

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            rational_roots([0, 0])

    def test_constant(self):
        assert rational_roots([7]) == ()

    def test_fraction_coefficients(self):
        assert rational_roots([F(1, 2), F(-3, 2), 1]) == (F(1, 2), F(1))

    def test_planted_factorizations(self):
        rng = random.Random(113)
        for _ in range(300):
            roots = set()
            coeffs = [1]
            for _ in range(rng.randint(1, 4)):
                n, d = rng.randint(-9, 9), rng.randint(1, 5)
                from math import gcd
                g = gcd(abs(n), d)
                if g == 0:
                    n, d = 0, 1
                else:
                    n, d = n // g, d // g
                roots.add(F(n, d))
                coeffs = _mul(coeffs, [-n, d])
            if rng.random() < 0.5:
                coeffs = _mul(coeffs, [1, 0, 1])  # irreducible factor
            assert set(rational_roots(coeffs)) == roots

    def test_multiplicity_collapsed(self):
        assert rational_roots([1, 2, 1]) == (F(-1),)


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestEvaluateAndSerialization:
    def test_evaluate(self):
        p = BP.from_terms({(0, 0): 1, (3, 0): 1, (0, 1): -1, (1, 1): -1})
        assert evaluate(p, 2, 3) == 0
        assert evaluate(p, F(3, 2), 2) == F(1) + F(27, 8) - 2 - 3

    def test_evaluate_homomorphism(self):
        rng = random.Random(127)
        for _ in range(200):
            p, q = random_system(rng, THREE_ROW_SHAPES, hi=4)
            r0 = F(rng.randint(-5, 5), rng.randint(1, 4))
            s0 = F(rng.randint(-5, 5), rng.randint(1, 4))
            assert (p * q).evaluate(r0, s0) == p.evaluate(r0, s0) * q.evaluate(r0, s0)
            assert (p + q).evaluate(r0, s0) == p.evaluate(r0, s0) + q.evaluate(r0, s0)

    def test_canonical_string(self):
        p = BP.from_terms({(2, 0): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
        assert str(p) == "r^2 - r - s + 1"
        assert str(BP.zero()) == "0"
        assert str(BP.from_terms({(1, 1): -2, (0, 0): 5})) == "-2*r*s + 5"

    def test_from_terms_accumulates(self):
        p = BP.from_terms([(1, 0, 1), (1, 0, 1), (0, 0, -1)])
        assert p == BP.from_terms({(1, 0): 2, (0, 0): -1})
        assert BP.from_terms([(1, 0, 1), (1, 0, -1)]).is_zero()

    def test_degree_conventions(self):
        assert BP.zero().degree("r") == -1
        assert BP.constant(4).degree("s") == 0
        p = BP.from_terms({(3, 2): 1})
        assert p.degree("r") == 3 and p.degree("s") == 2

    def test_div_exact_raises_on_inexact(self):
        p = BP.from_terms({(1, 0): 1, (0, 0): 1})
        q = BP.from_terms({(0, 1): 1})
        with pytest.raises(ArithmeticError):
            p.div_exact(q)
        with pytest.raises(ZeroDivisionError):
            p.div_exact(BP.zero())
