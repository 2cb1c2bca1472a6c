"""Ring membership, causality, canonical forms, and textual roundtrips."""

import random
from fractions import Fraction as F

import pytest

from ringstab.exact import Poly, QuadElem
from ringstab.rings import (
    RingElement,
    TransferFunction,
    causal_representation,
    contains,
    delay,
    divides,
    format_poly,
    format_quad,
    in_causality_set,
    is_causal,
    is_unit,
    parse_poly,
    parse_quad,
    parse_ring_element,
    parse_transfer_function,
    quadratic,
)

Z5 = quadratic(5)
D = delay()


def quad_tf(a, b, c, d=0, m=5):
    desc = quadratic(m)
    return TransferFunction.make(desc, QuadElem.of(a, b, m), QuadElem.of(c, d, m))


def delay_tf(num, den):
    return TransferFunction.make(D, num, den)


def rand_a_poly(rng, max_deg, span=6):
    cs = [F(rng.randint(-span, span)) for _ in range(max_deg + 1)]
    if len(cs) > 1:
        cs[1] = F(0)
    return Poly.from_list(cs)


class TestDescriptors:
    def test_quadratic_validation(self):
        assert quadratic(5).is_maximal_order
        assert quadratic(13).is_maximal_order
        assert quadratic(14).is_maximal_order  # 14 = 2 mod 4
        assert not quadratic(3).is_maximal_order  # 3 mod 4: proper order, representable
        assert not quadratic(20).is_maximal_order  # not square-free
        with pytest.raises(ValueError):
            quadratic(9)
        with pytest.raises(ValueError):
            quadratic(0)

    def test_delay_takes_no_parameter(self):
        assert delay().is_delay


class TestRingElementValidation:
    def test_quadratic_needs_integers(self):
        with pytest.raises(ValueError):
            RingElement(Z5, QuadElem.of(F(1, 2), 0, 5))

    def test_delay_rejects_degree_one(self):
        with pytest.raises(ValueError):
            RingElement(D, Poly.of(1, 1))
        RingElement(D, Poly.of(1, 0, 2))  # fine


class TestContains:
    def test_quadratic_divisible(self):
        f = quad_tf(6, 0, 1, 1)
        el = contains(f)
        assert el is not None and el.value == QuadElem.of(1, -1, 5)
        # reinterpreting the element in F gives back f
        assert el.to_tf() == f

    def test_delay_plant_outside(self):
        assert contains(delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, 0, -1))) is None

    def test_monomial_member(self):
        f = delay_tf(Poly.x_pow(5), Poly.one())
        el = contains(f)
        assert el is not None and el.value == Poly.x_pow(5)
        assert el.to_tf() == f

    def test_delay_quotient_roundtrip(self):
        f = delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, -1))  # quotient 1 + x + x^2... outside A
        assert contains(f) is None
        g = delay_tf(Poly.of(1, 0, -2, 0, 1), Poly.of(1, 0, -1))  # quotient 1 - x^2 in A
        el = contains(g)
        assert el is not None and el.to_tf() == g

    def test_quotient_with_degree_one_term_rejected(self):
        # (x + x^2)/1 divides evenly but has a unit-delay term
        assert contains(delay_tf(Poly.of(0, 1, 1), Poly.one())) is None


class TestCausality:
    def test_quadratic_always_causal(self):
        assert is_causal(quad_tf(1, 1, 2))
        rng = random.Random(4242)
        for _ in range(200):
            num = QuadElem.of(rng.randint(-30, 30), rng.randint(-30, 30), 5)
            den = QuadElem.of(rng.randint(-30, 30), rng.randint(-30, 30), 5)
            if den.is_zero():
                continue
            assert is_causal(TransferFunction.make(Z5, num, den))

    def test_delay_worked_plant(self):
        p = delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, 0, -1))
        assert is_causal(p)
        n, d = causal_representation(p)
        assert n.value == Poly.of(1, 0, 0, -1)
        assert d.value == Poly.of(1, 0, -1)

    def test_inverse_square_delay_not_causal(self):
        assert not is_causal(delay_tf(Poly.one(), Poly.x_pow(2)))

    def test_unmatchable_degree_one_not_causal(self):
        assert not is_causal(delay_tf(Poly.of(1, 1), Poly.of(1, 2)))

    def test_zero_plant_causal(self):
        assert is_causal(delay_tf(Poly.zero(), Poly.one()))


class TestCausalitySet:
    def test_quadratic_only_zero(self):
        assert in_causality_set(RingElement.zero(Z5))
        assert not in_causality_set(RingElement.quad(Z5, 1))

    def test_delay_zero_constant_term(self):
        assert in_causality_set(RingElement(D, Poly.of(0, 0, 1, 1)))
        assert not in_causality_set(RingElement(D, Poly.of(1, 0, -1)))

    def test_ideal_property(self):
        rng = random.Random(11)
        for _ in range(100):
            z = rand_a_poly(rng, 5)
            z = z - Poly.constant(z(0))  # drop constant term -> member of Z
            a = rand_a_poly(rng, 4)
            prod = RingElement(D, z) * RingElement(D, a)
            assert in_causality_set(prod)

    def test_monomial_splitting(self):
        # every member of Z decomposes as alpha*x^2 + beta*x^3 with alpha, beta in A
        rng = random.Random(12)
        for _ in range(100):
            z = rand_a_poly(rng, 7)
            z = z - Poly.constant(z(0))
            alpha = []
            beta = []
            for k, c in enumerate(z.coeffs):
                if c == 0:
                    continue
                # x^k = x^2 * x^(k-2) for even-ish splits avoiding x^1 cofactors
                if k - 2 != 1 and k >= 2:
                    alpha.append((k - 2, c))
                else:
                    beta.append((k - 3, c))
            pa = Poly.from_list([F(0)] * 8)
            pb = Poly.from_list([F(0)] * 8)
            for k, c in alpha:
                pa = pa + Poly.x_pow(k, c)
            for k, c in beta:
                pb = pb + Poly.x_pow(k, c)
            assert pa.coeff(1) == 0 and pb.coeff(1) == 0
            assert Poly.x_pow(2) * pa + Poly.x_pow(3) * pb == z


class TestMonomialGeneration:
    def test_every_allowed_monomial_is_a_product_of_generators(self):
        # x^k with k = 0 or k >= 2 decomposes as (x^2)^a * (x^3)^b
        for k in [0, *range(2, 25)]:
            found = False
            for b in range(k // 3 + 1):
                if (k - 3 * b) % 2 == 0:
                    a = (k - 3 * b) // 2
                    assert Poly.x_pow(2) ** a * Poly.x_pow(3) ** b == Poly.x_pow(k)
                    found = True
                    break
            assert found, k

    def test_unit_delay_not_generated(self):
        # degree bookkeeping: no product of x^2 and x^3 has degree 1
        assert all(2 * a + 3 * b != 1 for a in range(3) for b in range(3))


class TestDivides:
    def test_quadratic(self):
        assert divides(RingElement.quad(Z5, 1, 1), RingElement.quad(Z5, 6))

    def test_delay_nondivisible(self):
        assert not divides(RingElement(D, Poly.of(1, 0, -1)), RingElement(D, Poly.of(1, 0, 0, -1)))

    def test_everything_divides_zero(self):
        assert divides(RingElement.quad(Z5, 3, 2), RingElement.zero(Z5))

    def test_zero_divisor_rejected(self):
        with pytest.raises(ZeroDivisionError):
            divides(RingElement.zero(Z5), RingElement.one(Z5))


class TestUnits:
    def test_quadratic_units(self):
        assert is_unit(RingElement.quad(Z5, -1))
        assert not is_unit(RingElement.quad(Z5, 2))
        assert not is_unit(RingElement.quad(Z5, 1, 1))
        assert is_unit(RingElement.quad(quadratic(1), 0, 1))  # i in the Gaussian integers

    def test_delay_units(self):
        assert is_unit(RingElement(D, Poly.constant(F(3, 2))))
        assert not is_unit(RingElement(D, Poly.of(1, 0, 1)))
        assert not is_unit(RingElement.zero(D))


class TestClosure:
    def test_delay_ring_closed_under_ops(self):
        rng = random.Random(13)
        for _ in range(200):
            e1 = rand_a_poly(rng, 5)
            e2 = rand_a_poly(rng, 5)
            assert (Poly(e1.coeffs) + e2).coeff(1) == 0
            assert (e1 * e2).coeff(1) == 0


class TestCanonicalForms:
    def test_quadratic_reduction(self):
        assert quad_tf(2, 2, 4) == quad_tf(1, 1, 2)
        f = quad_tf(1, 1, 2)
        assert int(f.den.re) == 2 and f.den.im == 0

    def test_quadratic_negative_denominator(self):
        assert quad_tf(1, 1, -2) == quad_tf(-1, -1, 2)

    def test_delay_reduction(self):
        a = delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, 0, -1))
        b = delay_tf(Poly.of(1, 1, 1), Poly.of(1, 1))
        assert a == b
        assert a.den(0) == 1

    def test_rational_components_cleared(self):
        f = TransferFunction.make(Z5, QuadElem.of(F(1, 2), F(1, 2), 5), QuadElem.of(1, 0, 5))
        assert f == quad_tf(1, 1, 2)

    def test_field_arithmetic(self):
        p = quad_tf(1, 1, 2)
        assert p * p.inverse() == TransferFunction.one(Z5)
        assert p - p == TransferFunction.zero(Z5)
        assert (p + p) == quad_tf(1, 1, 1)


class TestTextualForms:
    def test_quadratic_roundtrip(self):
        rng = random.Random(3)
        for _ in range(200):
            v = QuadElem.of(
                F(rng.randint(-20, 20), rng.randint(1, 7)), F(rng.randint(-20, 20), rng.randint(1, 7)), 13
            )
            assert parse_quad(format_quad(v), 13) == v

    def test_poly_roundtrip(self):
        rng = random.Random(5)
        for _ in range(200):
            p = Poly.from_list([F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(0, 7))])
            assert parse_poly(format_poly(p)) == p

    def test_fixture_strings(self):
        assert format_quad(QuadElem.of(-1, 1, 5)) == "-1+i5"
        assert parse_quad("-1+i5", 5) == QuadElem.of(-1, 1, 5)
        assert format_poly(Poly.of(1, 0, F(-7, 9), F(2, 9))) == "1 - 7/9*x^2 + 2/9*x^3"
        assert parse_poly("1 - 7/9*x^2 + 2/9*x^3") == Poly.of(1, 0, F(-7, 9), F(2, 9))

    def test_element_roundtrip(self):
        e = RingElement.quad(Z5, 7, -3)
        assert parse_ring_element(Z5, str(e)) == e

    def test_tf_roundtrip(self):
        p = delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, 0, -1))
        assert parse_transfer_function(D, str(p)) == p
        q = quad_tf(-1, 1, 2)
        assert parse_transfer_function(Z5, str(q)) == q
        assert parse_transfer_function(Z5, "3") == quad_tf(3, 0, 1)

    def test_display_prefers_in_ring_pair(self):
        p = delay_tf(Poly.of(1, 0, 0, -1), Poly.of(1, 0, -1))
        assert str(p) == "(1 - x^3)/(1 - x^2)"
