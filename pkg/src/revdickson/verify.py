"""Exhaustive checks of the classification oracles and related identities.

Everything here returns plain report objects; nothing raises on a failed
check. Rendering to JSON/CSV/text lives in :mod:`revdickson.cli`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .dickson import (
    Kind,
    construct,
    eval_reversed_dickson_upto,
    generate_by_recurrence,
)
from .doclassify import ErratumDiff, audit_remarks, classify, is_do
from .errors import ExponentOverflow, FieldTooLarge, MixedCharacteristic
from .fieldcore import FieldParams, find_irreducible, validate_odd_prime
from .polyring import SparsePoly, evaluate_all, evaluate_poly, poly_pow_p, render

PLANARITY_CAP = 2401


# -- sweeps ------------------------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    n: int
    d: int
    oracle: bool
    detector: bool


@dataclass(frozen=True)
class DOInstance:
    n: int
    d: int
    rule_id: str | None
    polynomial: str


@dataclass
class SweepReport:
    kind: str
    p: int
    n_range: tuple[int, int]
    d_range: tuple[int, int]
    total_checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    do_instances: list[DOInstance] = field(default_factory=list)
    errata_diffs: list[ErratumDiff] = field(default_factory=list)
    overflow_skipped: list[tuple[int, int]] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "kind": self.kind,
            "p": self.p,
            "n_range": list(self.n_range),
            "d_range": list(self.d_range),
            "total_checked": self.total_checked,
            "passed": self.passed,
            "mismatches": [asdict(m) for m in self.mismatches],
            "do_instances": [asdict(r) for r in self.do_instances],
            "errata_diffs": [_erratum_dict(e) for e in self.errata_diffs],
            "overflow_skipped": [list(c) for c in self.overflow_skipped],
        }
        if timing:
            out["runtime"] = self.runtime
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SweepReport:
        return cls(
            kind=data["kind"],
            p=data["p"],
            n_range=tuple(data["n_range"]),
            d_range=tuple(data["d_range"]),
            total_checked=data["total_checked"],
            mismatches=[Mismatch(**m) for m in data["mismatches"]],
            do_instances=[DOInstance(**r) for r in data["do_instances"]],
            errata_diffs=[_erratum_from_dict(e) for e in data["errata_diffs"]],
            overflow_skipped=[tuple(c) for c in data["overflow_skipped"]],
            runtime=data.get("runtime", 0.0),
        )


def _erratum_dict(e: ErratumDiff) -> dict[str, Any]:
    return {
        "item": e.item_id,
        "params": dict(e.params),
        "p": e.p,
        "term": e.term,
        "exponent": e.exponent,
        "printed_coeff": e.printed_coeff,
        "computed_coeff": e.computed_coeff,
    }


def _erratum_from_dict(d: dict[str, Any]) -> ErratumDiff:
    return ErratumDiff(d["item"], tuple(sorted(d["params"].items())), d["p"], d["term"],
                       d["exponent"], d["printed_coeff"], d["computed_coeff"])


def sweep_cells(kind: Kind | str, p: int, n_max: int, d_max: int) -> list[tuple[int, int]]:
    """Cells in iteration order (n outer, d inner) under the kind's side conditions."""
    kind = Kind.parse(kind)
    ns = [n for n in range(2, n_max + 1) if kind is Kind.SECOND or n % p]
    ds = [d for d in range(1, d_max + 1) if d % p]
    return [(n, d) for n in ns for d in ds]


def _check_rows(kind: Kind, p: int, ns: Sequence[int], d_max: int):
    """Worker: evaluate every cell whose n is in ``ns``."""
    mismatches, instances, overflow = [], [], []
    ds = [d for d in range(1, d_max + 1) if d % p]
    for n in ns:
        for d in ds:
            try:
                f = construct(kind, n, d, p)
            except ExponentOverflow:
                overflow.append((n, d))
                continue
            oracle = classify(kind, p, n, d)
            verdict = is_do(f).is_do
            if oracle.matched != verdict:
                mismatches.append(Mismatch(n, d, oracle.matched, verdict))
            if verdict:
                instances.append(DOInstance(n, d, oracle.rule_id, render(f)))
    return mismatches, instances, overflow


def sweep(kind: Kind | str, p: int, n_max: int, d_max: int, jobs: int = 1,
          with_errata: bool = True) -> SweepReport:
    """Compare the classification oracle with direct DO detection on every cell.

    With ``jobs > 1`` rows of n are farmed out to worker processes; results
    are merged back in (n, d) order so the report does not depend on it.
    """
    kind = Kind.parse(kind)
    validate_odd_prime(p)
    if n_max < 2 or d_max < 2:
        raise ValueError("n_max and d_max must be >= 2")
    start = time.perf_counter()
    ns = [n for n in range(2, n_max + 1) if kind is Kind.SECOND or n % p]
    report = SweepReport(kind.value, p, (2, n_max), (1, d_max))
    report.total_checked = len(sweep_cells(kind, p, n_max, d_max))

    if jobs > 1 and len(ns) > 1:
        chunks = [ns[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_check_rows, [kind] * jobs, [p] * jobs, chunks, [d_max] * jobs))
    else:
        parts = [_check_rows(kind, p, ns, d_max)]

    def key(x):
        return (x[0], x[1]) if isinstance(x, tuple) else (x.n, x.d)

    for mm, inst, ovf in parts:
        report.mismatches.extend(mm)
        report.do_instances.extend(inst)
        report.overflow_skipped.extend(ovf)
    report.mismatches.sort(key=key)
    report.do_instances.sort(key=key)
    report.overflow_skipped.sort(key=key)
    if with_errata:
        report.errata_diffs = audit_remarks(kind=kind, p=p)
    report.runtime = time.perf_counter() - start
    return report


# -- identity suite ----------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None
    note: str | None = None


@dataclass
class SuiteSummary:
    p: int
    n_max: int
    fields: list[str]
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "n_max": self.n_max,
            "fields": self.fields,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def exact_integer_coeffs(kind: Kind | str, n: int, p: int) -> dict[int, int]:
    """Coefficients of the d = 1 polynomial from exact big-integer binomials."""
    kind = Kind.parse(kind)
    out = {}
    for i in range(1, n // 2 + 1):
        c = math.comb(n - i, i)
        if kind is Kind.FIRST:
            num = n * c
            assert num % (n - i) == 0
            c = num // (n - i)
        c = (-1) ** i * c % p
        if c:
            out[i] = c
    return out


def check_dual_path(p: int, n_max: int, d_values: Iterable[int] = range(1, 6)) -> CheckResult:
    checked = 0
    for kind in Kind:
        for d in d_values:
            rec = generate_by_recurrence(kind, n_max, p, d)
            for n in range(n_max + 1):
                checked += 1
                closed = construct(kind, n, d, p)
                if closed != rec[n]:
                    return CheckResult("dual_path", False, checked,
                                       f"{kind.value} n={n} d={d}: {render(closed)} != {render(rec[n])}")
    return CheckResult("dual_path", True, checked)


def check_exact_integer(p: int, n_max: int = 60) -> CheckResult:
    checked = 0
    for kind in Kind:
        for n in range(n_max + 1):
            checked += 1
            expected = SparsePoly(p, exact_integer_coeffs(kind, n, p))
            got = construct(kind, n, 1, p)
            if got != expected:
                return CheckResult("exact_integer_oracle", False, checked,
                                   f"{kind.value} n={n}: {render(got)} != {render(expected)}")
    return CheckResult("exact_integer_oracle", True, checked)


def check_frobenius_index(p: int, n_max: int) -> CheckResult:
    """First kind: D_{np} equals D_n^p."""
    checked = 0
    for n in range(1, n_max + 1):
        if n % p == 0:
            continue
        checked += 1
        lhs = construct(Kind.FIRST, n * p, 1, p)
        rhs = poly_pow_p(construct(Kind.FIRST, n, 1, p))
        if lhs != rhs:
            return CheckResult("frobenius_index", False, checked, f"n={n}")
    return CheckResult("frobenius_index", True, checked)


def check_frobenius_substitution(p: int, n_max: int, d_values: Iterable[int] = (1, 2)) -> CheckResult:
    checked = 0
    for kind in Kind:
        for d in d_values:
            for n in range(n_max + 1):
                checked += 1
                if construct(kind, n, p * d, p) != poly_pow_p(construct(kind, n, d, p)):
                    return CheckResult("frobenius_substitution", False, checked,
                                       f"{kind.value} n={n} d={d}")
    return CheckResult("frobenius_substitution", True, checked)


def second_kind_index_witness(p: int, n_limit: int = 10) -> int | None:
    """Least 2 <= n <= n_limit whose second-kind polynomial at np is not the p-th power at n."""
    for n in range(2, n_limit + 1):
        if construct(Kind.SECOND, n * p, 1, p) != poly_pow_p(construct(Kind.SECOND, n, 1, p)):
            return n
    return None


def check_second_kind_non_identity(p: int, n_limit: int = 10) -> CheckResult:
    n = second_kind_index_witness(p, n_limit)
    if n is None:
        return CheckResult("second_kind_non_identity", False, n_limit,
                           f"no n <= {n_limit} separates E_np from E_n^p")
    big = construct(Kind.SECOND, n * p, 1, p)
    small = poly_pow_p(construct(Kind.SECOND, n, 1, p))
    return CheckResult("second_kind_non_identity", True, n,
                       note=f"n={n}: E_{n * p} = {render(big)} != {render(small)} = E_{n}^{p}")


def check_scaling(fields: Sequence[FieldParams], n_max: int = 30) -> CheckResult:
    """X_n(a, c) == a^n X_n(1, c / a^2) for both kinds, every a != 0 and c."""
    checked = 0
    for fld in fields:
        one = fld.one()
        elements = list(fld.elements())
        for a in fld.nonzero_elements():
            inv_a2 = fld.inv(fld.mul(a, a))
            a_pows = [one]
            for _ in range(n_max):
                a_pows.append(fld.mul(a_pows[-1], a))
            for c in elements:
                c_scaled = fld.mul(c, inv_a2)
                for kind in Kind:
                    lhs = eval_reversed_dickson_upto(kind, n_max, a, c, fld)
                    rhs = eval_reversed_dickson_upto(kind, n_max, one, c_scaled, fld)
                    for n in range(n_max + 1):
                        checked += 1
                        if lhs[n] != fld.mul(a_pows[n], rhs[n]):
                            return CheckResult("scaling", False, checked,
                                               f"{fld} {kind.value} n={n} a={a} x={c}")
    return CheckResult("scaling", True, checked)


def identity_suite(p: int, n_max: int, field_list: Sequence[FieldParams] | None = None,
                   scaling_n_max: int = 30) -> SuiteSummary:
    validate_odd_prime(p)
    fields = list(field_list) if field_list is not None else [find_irreducible(p, 2)]
    for fld in fields:
        if fld.p != p:
            raise MixedCharacteristic(f"{fld} does not have characteristic {p}")
    checks = [
        check_dual_path(p, n_max),
        check_exact_integer(p, min(n_max, 60)),
        check_frobenius_index(p, n_max),
        check_frobenius_substitution(p, n_max),
        check_second_kind_non_identity(p),
        check_scaling(fields, min(n_max, scaling_n_max)),
    ]
    return SuiteSummary(p, n_max, [str(f) for f in fields], checks)


# -- functional properties over GF(q) ------------------------------------------------

def _guard(f: SparsePoly, fld: FieldParams, cap: int) -> None:
    if fld.p != f.p:
        raise MixedCharacteristic(f"polynomial over F_{f.p} used in {fld}")
    if fld.q > cap:
        raise FieldTooLarge(f"q={fld.q} exceeds the cap {cap}")


def _digit_matrix(values: Sequence[int] | np.ndarray, fld: FieldParams) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    return np.stack([(v // fld.p**i) % fld.p for i in range(fld.e)], axis=1)


def is_permutation_map(f: SparsePoly, fld: FieldParams, cap: int = PLANARITY_CAP) -> bool:
    _guard(f, fld, cap)
    return len(set(evaluate_all(f, fld))) == fld.q


def difference_map(g: SparsePoly, a: int, fld: FieldParams) -> list[int]:
    """Encoded values of x -> g(x + a) - g(x) for every x (``a`` is an encoded element)."""
    av = fld.from_int(a)
    out = []
    for x in fld.elements():
        gx = evaluate_poly(g, x, fld)
        gxa = evaluate_poly(g, fld.add(x, av), fld)
        out.append(fld.sub(gxa, gx).to_int())
    return out


def is_planar_map(g: SparsePoly, fld: FieldParams, cap: int = PLANARITY_CAP) -> bool:
    """True iff x -> g(x + a) - g(x) is a bijection for every nonzero a."""
    _guard(g, fld, cap)
    p, q = fld.p, fld.q
    weights = p ** np.arange(fld.e, dtype=np.int64)
    xs = _digit_matrix(np.arange(q), fld)
    vals = _digit_matrix(evaluate_all(g, fld), fld)
    for a in range(1, q):
        shifted = ((xs + xs[a]) % p) @ weights
        diff = ((vals[shifted] - vals) % p) @ weights
        if np.unique(diff).size != q:
            return False
    return True


@dataclass(frozen=True)
class SurveyRow:
    n: int
    d: int
    q: int
    is_do: bool
    is_planar: bool
    is_permutation: bool


def planarity_survey(kind: Kind | str, p: int, e_list: Iterable[int], n_max: int, d_max: int,
                     cap: int = PLANARITY_CAP) -> list[SurveyRow]:
    """Planarity and permutation behaviour of every oracle-DO member over each GF(p^e)."""
    kind = Kind.parse(kind)
    fields = [find_irreducible(p, e) for e in e_list]
    for fld in fields:
        if fld.q > cap:
            raise FieldTooLarge(f"q={fld.q} exceeds the cap {cap}")
    rows = []
    for n, d in sweep_cells(kind, p, n_max, d_max):
        if not classify(kind, p, n, d).matched:
            continue
        f = construct(kind, n, d, p)
        verdict = is_do(f).is_do
        for fld in fields:
            rows.append(SurveyRow(n, d, fld.q, verdict, is_planar_map(f, fld, cap),
                                  is_permutation_map(f, fld, cap)))
    return rows
