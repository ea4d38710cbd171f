import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from revdickson.dickson import (
    DicksonQuery,
    Kind,
    construct,
    construct_query,
    eval_reversed_dickson,
    first_kind_closed,
    generate_by_recurrence,
    lucas_binom,
    second_kind_closed,
)
from revdickson.polyring import SparsePoly, poly_pow_p

PRIMES = (3, 5, 7, 11, 13)


def P(p, terms):
    return SparsePoly(p, terms)


def bigint_poly(kind, n, d, p):
    """Closed form evaluated with exact rationals, then reduced mod p."""
    terms = {}
    for i in range(1, n // 2 + 1):
        c = Fraction(math.comb(n - i, i))
        if kind is Kind.FIRST:
            c *= Fraction(n, n - i)
        assert c.denominator == 1
        terms[d * i] = int(c) * (-1) ** i
    return SparsePoly(p, terms)


def test_lucas_examples():
    assert all(lucas_binom(n, 0, 3) == 1 for n in range(50))
    assert lucas_binom(7, 4, 3) == 2
    assert lucas_binom(14, 1, 3) == 2
    assert lucas_binom(3, 5, 7) == 0


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from(PRIMES))
def test_lucas_matches_math_comb(n, k, p):
    assert lucas_binom(n, k, p) == math.comb(n, k) % p


@pytest.mark.parametrize("n,d,p,expected", [
    (5, 2, 3, {2: 1, 4: 2}),
    (7, 2, 3, {2: 2, 4: 2, 6: 2}),
    (2, 1, 5, {1: 3}),
    (3, 1, 7, {1: 4}),
])
def test_first_kind_examples(n, d, p, expected):
    assert first_kind_closed(n, d, p) == P(p, expected)


@pytest.mark.parametrize("n,d,p,expected", [
    (6, 1, 3, {1: 1, 3: 2}),
    (13, 2, 3, {4: 1, 10: 1, 12: 1}),
    (7, 1, 5, {1: 4, 3: 1}),
    (2, 1, 7, {1: 6}),
])
def test_second_kind_examples(n, d, p, expected):
    assert second_kind_closed(n, d, p) == P(p, expected)


def test_trivial_indices_vanish():
    for kind in Kind:
        for n in (0, 1):
            assert construct(kind, n, 3, 5).is_zero()


def test_no_constant_term():
    for kind in Kind:
        for n in range(40):
            assert construct(kind, n, 1, 3).coeff(0) == 0


def test_recurrence_examples():
    assert generate_by_recurrence(Kind.FIRST, 2, 3)[2] == P(3, {1: 1})
    assert generate_by_recurrence(Kind.SECOND, 3, 3)[3] == P(3, {1: 1})
    seq = generate_by_recurrence("first", 7, 3, 2)
    assert seq[7] == P(3, {2: 2, 4: 2, 6: 2}) == first_kind_closed(7, 2, 3)
    assert len(seq) == 8


@pytest.mark.parametrize("p", PRIMES)
def test_dual_path_small(p):
    for kind in Kind:
        for d in (1, 2, 3):
            rec = generate_by_recurrence(kind, 80, p, d)
            for n in range(81):
                assert construct(kind, n, d, p) == rec[n], (kind, n, d)


@pytest.mark.parametrize("p", PRIMES)
def test_exact_integer_oracle(p):
    for kind in Kind:
        for n in range(61):
            for d in (1, 2):
                assert construct(kind, n, d, p) == bigint_poly(kind, n, d, p), (kind, n, d)


@pytest.mark.parametrize("p", PRIMES)
def test_frobenius_index_first_kind(p):
    for n in range(1, 101):
        if n % p:
            assert first_kind_closed(n * p, 1, p) == poly_pow_p(first_kind_closed(n, 1, p))


@pytest.mark.parametrize("p", PRIMES)
def test_frobenius_substitution(p):
    for kind in Kind:
        for d in (1, 2):
            for n in range(101):
                assert construct(kind, n, p * d, p) == poly_pow_p(construct(kind, n, d, p))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_second_kind_index_is_not_frobenius(p):
    assert any(second_kind_closed(n * p, 1, p) != poly_pow_p(second_kind_closed(n, 1, p))
               for n in range(2, 11))


def test_second_kind_witness_p3():
    assert second_kind_closed(6, 1, 3) == P(3, {1: 1, 3: 2})
    assert poly_pow_p(second_kind_closed(2, 1, 3)) == P(3, {3: 2})


def test_query_validation():
    q = DicksonQuery("second", 7, 2, 5)
    assert q.kind is Kind.SECOND
    assert construct_query(q) == P(5, {2: 4, 6: 1})
    with pytest.raises(ValueError):
        DicksonQuery(Kind.FIRST, 3, 0, 5)
    with pytest.raises(ValueError):
        DicksonQuery(Kind.FIRST, -1, 1, 5)
    with pytest.raises(ValueError):
        DicksonQuery(Kind.FIRST, 3, 1, 9)


def test_eval_examples(gf):
    f5 = gf(5)
    assert eval_reversed_dickson(Kind.FIRST, 2, f5.element(2), f5.element(1)) == f5.element(2)
    f9 = gf(3, 2)
    for a in f9.elements():
        for x in list(f9.elements())[:3]:
            assert eval_reversed_dickson(Kind.SECOND, 1, a, x) == a
    for n in range(1, 20):
        assert eval_reversed_dickson(Kind.FIRST, n, f9.one(), f9.zero()) == f9.one()
        assert eval_reversed_dickson(Kind.SECOND, n, f9.one(), f9.zero()) == f9.one()


@pytest.mark.parametrize("p,e", [(3, 2), (5, 1)])
def test_eval_matches_binomial_sum(p, e, gf):
    """Recurrence values agree with the defining binomial sums at a general a."""
    fld = gf(p, e)
    els = list(fld.elements())
    for kind in Kind:
        for n in range(2, 16):
            for a in els[1::2]:
                for x in els[::2]:
                    acc = fld.zero()
                    for i in range(n // 2 + 1):
                        c = Fraction(math.comb(n - i, i))
                        if kind is Kind.FIRST:
                            c *= Fraction(n, n - i)
                        term = (-x) ** i * a ** (n - 2 * i)
                        acc = acc + term * (int(c) % p)
                    assert eval_reversed_dickson(kind, n, a, x, fld) == acc


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (3, 3)])
def test_scaling_identity(p, e, gf):
    fld = gf(p, e)
    els = list(fld.elements())
    for kind in Kind:
        for a in els[1:]:
            scale = (a * a).inverse()
            for c in els[::3]:
                for n in (0, 1, 2, 5, 11, 30):
                    lhs = eval_reversed_dickson(kind, n, a, c, fld)
                    rhs = a**n * eval_reversed_dickson(kind, n, fld.one(), c * scale, fld)
                    assert lhs == rhs
