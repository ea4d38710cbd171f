"""Reversed Dickson polynomials of the first and second kind.

Two independent constructions are provided for the constant-free
polynomials ``D_n(1, x^d) - D_n(1, 0)`` and ``E_n(1, x^d) - E_n(1, 0)``
over F_p: a closed form from binomial coefficients and the three-term
recurrence. The closed form is the primary constructor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .fieldcore import FieldElement, FieldParams, validate_odd_prime
from .polyring import SparsePoly, poly_add, substitute_monomial


class Kind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"

    @classmethod
    def parse(cls, value: "Kind | str") -> "Kind":
        if isinstance(value, Kind):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class DicksonQuery:
    kind: Kind
    n: int
    d: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        validate_odd_prime(self.p)


def lucas_binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p from the base-p digits of n and k."""
    if k < 0 or k > n:
        return 0
    result = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        # digits are < p so exact small binomials are cheap
        result = result * _small_binom(ni, ki, p) % p
    return result


@lru_cache(maxsize=4096)
def _small_binom(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


@lru_cache(maxsize=8192)
def _first_kind_coeffs(n: int, p: int) -> tuple[tuple[int, int], ...]:
    # n/(n-i) * C(n-i, i) == C(n-i, i) + C(n-i-1, i-1) for 1 <= i <= n/2
    out = []
    for i in range(1, n // 2 + 1):
        c = (lucas_binom(n - i, i, p) + lucas_binom(n - i - 1, i - 1, p)) % p
        if i % 2:
            c = -c % p
        if c:
            out.append((i, c))
    return tuple(out)


@lru_cache(maxsize=8192)
def _second_kind_coeffs(n: int, p: int) -> tuple[tuple[int, int], ...]:
    out = []
    for i in range(1, n // 2 + 1):
        c = lucas_binom(n - i, i, p)
        if i % 2:
            c = -c % p
        if c:
            out.append((i, c))
    return tuple(out)


def first_kind_closed(n: int, d: int, p: int) -> SparsePoly:
    """The constant-free first-kind polynomial in x^d over F_p."""
    DicksonQuery(Kind.FIRST, n, d, p)
    base = SparsePoly._raw(p, dict(_first_kind_coeffs(n, p)))
    return substitute_monomial(base, d)


def second_kind_closed(n: int, d: int, p: int) -> SparsePoly:
    """The constant-free second-kind polynomial in x^d over F_p."""
    DicksonQuery(Kind.SECOND, n, d, p)
    base = SparsePoly._raw(p, dict(_second_kind_coeffs(n, p)))
    return substitute_monomial(base, d)


def construct(kind: Kind | str, n: int, d: int, p: int) -> SparsePoly:
    if Kind.parse(kind) is Kind.FIRST:
        return first_kind_closed(n, d, p)
    return second_kind_closed(n, d, p)


def construct_query(q: DicksonQuery) -> SparsePoly:
    return construct(q.kind, q.n, q.d, q.p)


def generate_by_recurrence(kind: Kind | str, n_max: int, p: int, d: int = 1) -> list[SparsePoly]:
    """Constant-free polynomials for n = 0..n_max from f_n = f_{n-1} - x f_{n-2}.

    Uses no binomial coefficients, so it serves as a check on the closed form.
    """
    kind = Kind.parse(kind)
    validate_odd_prime(p)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    seeds = (2, 1) if kind is Kind.FIRST else (1, 1)
    prev, cur = SparsePoly(p, {0: seeds[0]}), SparsePoly(p, {0: seeds[1]})
    full = [prev, cur]
    minus_x = SparsePoly(p, {1: -1})
    for _ in range(2, n_max + 1):
        prev, cur = cur, poly_add(cur, minus_x * prev)
        full.append(cur)
    return [substitute_monomial(f.without_constant(), d) for f in full[: n_max + 1]]


def eval_reversed_dickson(kind: Kind | str, n: int, a: FieldElement, x: FieldElement,
                          field: FieldParams | None = None) -> FieldElement:
    """Value of D_n(a, x) or E_n(a, x) in the field, via f_n = a f_{n-1} - x f_{n-2}."""
    return eval_reversed_dickson_upto(kind, n, a, x, field)[n]


def eval_reversed_dickson_upto(kind: Kind | str, n_max: int, a: FieldElement, x: FieldElement,
                               field: FieldParams | None = None) -> list[FieldElement]:
    """Values for every index 0..n_max from one run of the recurrence."""
    fld = field if field is not None else a.field
    kind = Kind.parse(kind)
    f0 = fld.element(2) if kind is Kind.FIRST else fld.one()
    vals = [f0, a]
    for _ in range(2, n_max + 1):
        vals.append(fld.sub(fld.mul(a, vals[-1]), fld.mul(x, vals[-2])))
    return vals[: n_max + 1]
