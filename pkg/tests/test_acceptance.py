"""End-to-end acceptance checks; each logs one PASS/FAIL line to the terminal summary."""

import random
import time
from fractions import Fraction
from itertools import product
from math import comb, gcd

import pytest

from revdickson.dickson import Kind, construct, first_kind_closed, generate_by_recurrence, second_kind_closed
from revdickson.doclassify import (
    REMARK_ITEMS,
    classify_first,
    classify_second,
    expected_remark_poly,
    is_do,
    remark_instance,
)
from revdickson.fieldcore import find_irreducible
from revdickson.polyring import SparsePoly, poly_pow_p
from revdickson.verify import check_scaling, is_planar_map, planarity_survey, second_kind_index_witness

pytestmark = pytest.mark.acceptance

PRIMES = (3, 5, 7, 11, 13)
ERRATA = {("R1-4", "last"), ("R2-9", "middle")}


def record(log, number, ok, detail):
    log.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def oracle_poly(kind, n, d, p):
    """Big-integer closed form, reduced mod p only at the end."""
    terms = {}
    for i in range(1, n // 2 + 1):
        c = comb(n - i, i)
        if kind is Kind.FIRST:
            c = Fraction(n, n - i) * c
            assert c.denominator == 1
            c = c.numerator
        c = (c * (-1) ** i) % p
        if c:
            terms[i * d] = c
    return SparsePoly(p, terms)


def test_criterion_1_remarks(acceptance_log):
    start = time.perf_counter()
    found = set()
    other = []
    for item_id, item in REMARK_ITEMS.items():
        for p in item.primes:
            for values in product((0, 1, 2), repeat=len(item.params)):
                params = dict(zip(item.params, values))
                kind, n, d, _ = remark_instance(item_id, params, p)
                printed = expected_remark_poly(kind, item_id, params, p)
                computed = oracle_poly(kind, n, d, p)
                assert computed == construct(kind, n, d, p)
                if printed.exponents() != computed.exponents():
                    other.append((item_id, params, p, "exponent set"))
                    continue
                exps = printed.exponents()
                for pos, t in enumerate(exps):
                    if printed.coeff(t) == computed.coeff(t):
                        continue
                    where = "last" if pos == len(exps) - 1 else "middle" if 0 < pos else "first"
                    if (item_id, where) in ERRATA and (printed.coeff(t), computed.coeff(t)) == (1, 2):
                        found.add((item_id, where))
                    else:
                        other.append((item_id, params, p, t))
    elapsed = time.perf_counter() - start
    ok = not other and found == ERRATA and elapsed < 1.0
    record(acceptance_log, 1, ok,
           f"21 items, errata {sorted(found)}, unexpected {other[:3]}, {elapsed:.2f}s")


def _equivalence(classifier, builder, n_coprime):
    mismatches, cells = [], 0
    for p in PRIMES:
        for n in range(2, 151):
            if n_coprime and n % p == 0:
                continue
            for d in range(1, 61):
                if d % p == 0:
                    continue
                cells += 1
                if classifier(p, n, d).matched != is_do(builder(n, d, p)).is_do:
                    mismatches.append((p, n, d))
    return cells, mismatches


def test_criterion_2_first_kind_equivalence(acceptance_log):
    start = time.perf_counter()
    cells, bad = _equivalence(classify_first, first_kind_closed, True)
    elapsed = time.perf_counter() - start
    record(acceptance_log, 2, not bad and elapsed < 60,
           f"{cells} cells, {len(bad)} mismatches {bad[:3]}, {elapsed:.2f}s")


def test_criterion_3_second_kind_equivalence(acceptance_log):
    start = time.perf_counter()
    cells, bad = _equivalence(classify_second, second_kind_closed, False)
    elapsed = time.perf_counter() - start
    record(acceptance_log, 3, not bad and elapsed < 60,
           f"{cells} cells, {len(bad)} mismatches {bad[:3]}, {elapsed:.2f}s")


def test_criterion_4_dual_path(acceptance_log):
    start = time.perf_counter()
    bad = []
    for kind in Kind:
        for p in PRIMES:
            for d in range(1, 6):
                rec = generate_by_recurrence(kind, 300, p, d)
                bad += [(kind.value, p, d, n) for n in range(301) if rec[n] != construct(kind, n, d, p)]
    elapsed = time.perf_counter() - start
    record(acceptance_log, 4, not bad and elapsed < 10,
           f"{2 * 5 * 5 * 301} polynomials, {len(bad)} differ {bad[:3]}, {elapsed:.2f}s")


def test_criterion_5_frobenius(acceptance_log):
    bad = []
    for p in PRIMES:
        for n in range(1, 101):
            if n % p and first_kind_closed(n * p, 1, p) != poly_pow_p(first_kind_closed(n, 1, p)):
                bad.append(("index", p, n))
            for kind in Kind:
                for d in (1, 2):
                    if construct(kind, n, p * d, p) != poly_pow_p(construct(kind, n, d, p)):
                        bad.append(("substitution", kind.value, p, n, d))
    witnesses = {}
    for p in (3, 5, 7):
        n = second_kind_index_witness(p, 10)
        witnesses[p] = n
        if n is None or second_kind_closed(n * p, 1, p) == poly_pow_p(second_kind_closed(n, 1, p)):
            bad.append(("witness", p, n))
    ok = not bad and witnesses[3] == 2
    record(acceptance_log, 5, ok, f"second-kind witnesses {witnesses}, failures {bad[:3]}")


def test_criterion_6_scaling(acceptance_log):
    start = time.perf_counter()
    fields = [find_irreducible(p, e) for p, e in ((3, 2), (5, 2), (3, 3), (7, 2))]
    result = check_scaling(fields, 30)
    elapsed = time.perf_counter() - start
    record(acceptance_log, 6, result.passed and elapsed < 30,
           f"{result.checked} evaluations over q in 9,25,27,49, "
           f"{result.counterexample or 'no counterexample'}, {elapsed:.2f}s")


def test_criterion_7_planarity(acceptance_log):
    bad = []
    for p, e in ((3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2)):
        if not is_planar_map(SparsePoly.monomial(p, 2), find_irreducible(p, e)):
            bad.append(f"x^2 over q={p**e}")
    if is_planar_map(SparsePoly.monomial(5, 1), find_irreducible(5, 1)):
        bad.append("x over F_5 reported planar")
    if not is_planar_map(SparsePoly.monomial(3, 4), find_irreducible(3, 3)):
        bad.append("x^4 over GF(27)")
    rows = planarity_survey("first", 3, [1, 2], 10, 4)
    if not any((r.n, r.d, r.q, r.is_do, r.is_planar) == (2, 2, 9, True, True) for r in rows):
        bad.append("survey row (2, 2, 9) missing")
    record(acceptance_log, 7, not bad, f"{len(rows)} survey rows, failures {bad}")


def _two_power_table(p, limit):
    pw = []
    a = 1
    while a <= limit:
        pw.append(a)
        a *= p
    return {a + b for a in pw for b in pw if a + b <= limit}


def test_criterion_8_detector(acceptance_log):
    rng = random.Random(20240601)
    limit = 10**6
    bad = []
    for p in (3, 5, 7):
        table = _two_power_table(p, limit)
        pool = sorted(table)
        for _ in range(1000):
            k = rng.randint(0, 6)
            exps = set()
            while len(exps) < k:
                exps.add(rng.choice(pool) if rng.random() < 0.7 else rng.randint(1, limit))
            f = SparsePoly(p, {t: rng.randint(1, p - 1) for t in exps})
            verdict = is_do(f).is_do
            if verdict != all(t in table for t in exps):
                bad.append(("enumeration", p, sorted(exps)))
            if verdict != is_do(poly_pow_p(f)).is_do:
                bad.append(("frobenius", p, sorted(exps)))
    record(acceptance_log, 8, not bad, f"3000 random polynomials, {len(bad)} disagreements {bad[:2]}")
