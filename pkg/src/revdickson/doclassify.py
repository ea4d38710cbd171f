"""Dembowski-Ostrom detection and closed-form classification oracles.

``is_do`` decides the property directly from the exponents of a formal
polynomial. ``classify_first`` / ``classify_second`` predict the same
verdict for the reversed Dickson families from (p, n, d) alone, and
``REMARK_ITEMS`` lists the explicit polynomials those families reduce to
when they are DO.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping

from .dickson import Kind, construct
from .errors import BadIndex, ConstantTermPresent, UnknownItem
from .fieldcore import U64_MAX, validate_odd_prime
from .polyring import SparsePoly, _check_exponent


# -- p-adic helpers ------------------------------------------------------------

def strip_p_powers(v: int, p: int) -> tuple[int, int]:
    """Split ``v = v0 * p**m`` with gcd(v0, p) = 1."""
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    m = 0
    while v % p == 0:
        v //= p
        m += 1
    return v, m


@lru_cache(maxsize=None)
def _powers(p: int) -> tuple[int, ...]:
    out, a = [], 1
    while a <= U64_MAX:
        out.append(a)
        a *= p
    return tuple(out)


@lru_cache(maxsize=None)
def _power_index(p: int) -> dict[int, int]:
    return {a: i for i, a in enumerate(_powers(p))}


def p_power_plus_one(v: int, p: int) -> int | None:
    """The alpha >= 0 with ``p**alpha + 1 == v``, or None."""
    a, alpha = 1, 0
    while a + 1 <= v:
        if a + 1 == v:
            return alpha
        a *= p
        alpha += 1
    return None


# -- DO detection ------------------------------------------------------------------

@dataclass(frozen=True)
class TwoPowerWitness:
    exponent: int
    i: int
    j: int


@dataclass(frozen=True)
class DOVerdict:
    is_do: bool
    witnesses: tuple[TwoPowerWitness, ...] = ()
    failing_exponent: int | None = None
    trivially_zero: bool = False


def decompose_two_powers(e: int, p: int) -> TwoPowerWitness | None:
    """Canonical (i, j), i <= j, with p**i + p**j == e, or None."""
    if e < 1:
        raise ValueError(f"exponent must be positive, got {e}")
    index = _power_index(p)
    for i, a in enumerate(_powers(p)):
        if 2 * a > e:
            break
        j = index.get(e - a)
        if j is not None:
            return TwoPowerWitness(e, i, j)
    return None


def is_do(f: SparsePoly) -> DOVerdict:
    """DO verdict for a constant-free polynomial, with per-monomial witnesses.

    The zero polynomial counts as DO and is flagged ``trivially_zero``.
    When the verdict is negative the least non-decomposable exponent is
    reported.
    """
    if f.coeff(0):
        raise ConstantTermPresent("DO polynomials have no constant term")
    if f.is_zero():
        return DOVerdict(True, (), None, True)
    witnesses = []
    for t in f.exponents():  # ascending
        w = decompose_two_powers(t, f.p)
        if w is None:
            return DOVerdict(False, (), t, False)
        witnesses.append(w)
    return DOVerdict(True, tuple(witnesses), None, False)


# -- classification oracles --------------------------------------------------------

@dataclass(frozen=True)
class RuleMatch:
    kind: Kind
    p: int
    n: int
    d: int
    matched: bool
    rule_id: str | None
    n0: int
    m: int
    d0: int
    k_or_ell: int
    pattern_exponent: int | None = None

    def reconstruct(self) -> tuple[int, int]:
        """Rebuild (n, d) from the rule's own pattern and the recorded exponents."""
        if not self.matched:
            raise ValueError("no rule matched")
        p, a = self.p, self.pattern_exponent
        n_base, d_shape = _RULE_SHAPES[self.rule_id]
        if d_shape == "p^a+1":
            d_base = p**a + 1
        elif d_shape == "(p^a+1)/2":
            d_base = (p**a + 1) // 2
        else:
            d_base = d_shape
        if self.kind is Kind.FIRST:
            return n_base * p**self.m, d_base * p**self.k_or_ell
        return self.n, d_base * p**self.k_or_ell


# rule id -> (base n, shape of the p-free part of d)
_RULE_SHAPES: dict[str, tuple[int | None, int | str]] = {
    "Thm2.1-i": (2, "p^a+1"),
    "Thm2.1-ii": (4, 2),
    "Thm2.1-iii": (5, 2),
    "Thm2.1-iv": (7, 2),
    "Thm2.1-v": (2, "p^a+1"),
    "Thm2.1-vi": (3, "p^a+1"),
    "T2.3-i": (None, "p^a+1"),
    "T2.3-ii": (4, "(p^a+1)/2"),
    "T2.3-iii": (7, 2),
    "T2.3-iv": (10, 2),
    "T2.3-v": (13, 2),
    "T2.3-vi": (15, 4),
    "T2.3-vii": (19, 2),
    "T2.4-i": (None, "p^a+1"),
    "T2.4-ii": (7, 2),
    "T2.5-i": (None, "p^a+1"),
}

_SECOND_P3_FIXED = {7: "T2.3-iii", 10: "T2.3-iv", 13: "T2.3-v", 19: "T2.3-vii"}


def _check_args(p: int, n: int, d: int) -> None:
    validate_odd_prime(p)
    if n < 2:
        raise BadIndex(f"classification needs n >= 2, got {n}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")


def classify_first(p: int, n: int, d: int) -> RuleMatch:
    """Predict whether the first-kind polynomial for (n, d) is DO.

    Both n and d are reduced to their p-free parts first.
    """
    _check_args(p, n, d)
    n0, m = strip_p_powers(n, p)
    d0, k = strip_p_powers(d, p)
    rule, alpha = None, None
    if p == 3:
        if n0 == 2:
            alpha = p_power_plus_one(d0, p)
            rule = "Thm2.1-i" if alpha is not None else None
        elif d0 == 2 and n0 in (4, 5, 7):
            rule = {4: "Thm2.1-ii", 5: "Thm2.1-iii", 7: "Thm2.1-iv"}[n0]
    elif n0 in (2, 3):
        alpha = p_power_plus_one(d0, p)
        if alpha is not None:
            rule = "Thm2.1-v" if n0 == 2 else "Thm2.1-vi"
    if rule is None:
        alpha = None
    return RuleMatch(Kind.FIRST, p, n, d, rule is not None, rule, n0, m, d0, k, alpha)


def classify_second(p: int, n: int, d: int) -> RuleMatch:
    """Predict whether the second-kind polynomial for (n, d) is DO.

    Only d is reduced; n is used as given.
    """
    _check_args(p, n, d)
    n0, m = strip_p_powers(n, p)
    d0, k = strip_p_powers(d, p)
    rule, alpha = None, None
    if n in (2, 3) or (p == 3 and n in (5, 6)):
        alpha = p_power_plus_one(d0, p)
        if alpha is not None:
            rule = {3: "T2.3-i", 5: "T2.4-i"}.get(p, "T2.5-i")
    elif p == 3 and n == 4:
        alpha = p_power_plus_one(2 * d0, p)
        if alpha is not None:
            rule = "T2.3-ii"
    elif p == 3 and n in _SECOND_P3_FIXED and d0 == 2:
        rule = _SECOND_P3_FIXED[n]
    elif p == 3 and n == 15 and d0 == 4:
        rule = "T2.3-vi"
    elif p == 5 and n == 7 and d0 == 2:
        rule = "T2.4-ii"
    if rule is None:
        alpha = None
    return RuleMatch(Kind.SECOND, p, n, d, rule is not None, rule, n0, m, d0, k, alpha)


def classify(kind: Kind | str, p: int, n: int, d: int) -> RuleMatch:
    if Kind.parse(kind) is Kind.FIRST:
        return classify_first(p, n, d)
    return classify_second(p, n, d)


# -- explicit polynomials for the DO families ------------------------------------------

Params = Mapping[str, int]


@dataclass(frozen=True)
class RemarkTerm:
    label: str
    coeff: Callable[[int], int]
    exponent: Callable[[Params, int], int]


@dataclass(frozen=True)
class RemarkItem:
    item_id: str
    kind: Kind
    params: tuple[str, ...]
    primes: tuple[int, ...]  # representative characteristics; first is the default
    n: Callable[[Params, int], int]
    d: Callable[[Params, int], int]
    terms: tuple[RemarkTerm, ...] = field(default=())


def _t(label, coeff, exponent):
    return RemarkTerm(label, coeff if callable(coeff) else (lambda p, c=coeff: c), exponent)


def _first_items() -> list[RemarkItem]:
    def s(prm, p):
        return p ** (prm["l"] + prm["m"])

    items = [
        RemarkItem(
            "R1-1", Kind.FIRST, ("i", "l", "m"), (3,),
            n=lambda prm, p: 2 * p ** prm["m"],
            d=lambda prm, p: (p ** prm["i"] + 1) * p ** prm["l"],
            terms=(_t("x^(p^(l+m+i)+p^(l+m))", 1,
                      lambda prm, p: p ** (prm["l"] + prm["m"] + prm["i"]) + s(prm, p)),),
        ),
    ]
    printed = {
        "R1-2": (4, ((2, 2), (2, 4))),
        "R1-3": (5, ((1, 2), (2, 4))),
        "R1-4": (7, ((2, 2), (2, 4), (1, 6))),
    }
    for item_id, (n_base, terms) in printed.items():
        items.append(RemarkItem(
            item_id, Kind.FIRST, ("l", "m"), (3,),
            n=lambda prm, p, nb=n_base: nb * p ** prm["m"],
            d=lambda prm, p: 2 * p ** prm["l"],
            terms=tuple(_t(f"x^({mult}*p^(l+m))", c, lambda prm, p, k=mult: k * s(prm, p))
                        for c, mult in terms),
        ))
    for item_id, n_base, c in (("R1-5", 2, 2), ("R1-6", 3, 3)):
        items.append(RemarkItem(
            item_id, Kind.FIRST, ("i", "l", "m"), (5, 7, 11, 13),
            n=lambda prm, p, nb=n_base: nb * p ** prm["m"],
            d=lambda prm, p: (p ** prm["i"] + 1) * p ** prm["l"],
            terms=(_t("x^(d*p^m)", lambda p, c=c: p - c,
                      lambda prm, p: (p ** prm["i"] + 1) * p ** (prm["l"] + prm["m"])),),
        ))
    return items


def _second_items() -> list[RemarkItem]:
    def u(prm, p):
        return p ** prm["k"] * (p ** prm["l"] + 1)

    def mono(item_id, n, primes, coeff, d=u):
        return RemarkItem(item_id, Kind.SECOND, ("k", "l"), primes,
                          n=lambda prm, p: n, d=d,
                          terms=(_t("x^(p^k*(p^l+1))", coeff, u),))

    def pk(prm, p):
        return p ** prm["k"]

    def fixed(item_id, n, primes, d_mult, terms):
        return RemarkItem(
            item_id, Kind.SECOND, ("k",), primes,
            n=lambda prm, p: n,
            d=lambda prm, p: d_mult * pk(prm, p),
            terms=tuple(_t(label, c, lambda prm, p, a=a, b=b: a * p ** (prm["k"] + b))
                        for label, c, a, b in terms),
        )

    return [
        mono("R2-1", 2, (3,), 2),
        mono("R2-2", 3, (3,), 1),
        mono("R2-3", 4, (3,), 1, d=lambda prm, p: pk(prm, p) * ((p ** prm["l"] + 1) // 2)),
        mono("R2-4", 5, (3,), 2),
        RemarkItem("R2-5", Kind.SECOND, ("k", "l"), (3,),
                   n=lambda prm, p: 6, d=u,
                   terms=(_t("x^(p^k*(p^l+1))", 1, u),
                          _t("x^(p^(k+1)*(p^l+1))", 2, lambda prm, p: p * u(prm, p)))),
        fixed("R2-6", 7, (3,), 2, (("x^(4*p^k)", 1, 4, 0), ("x^(2*p^(k+1))", 2, 2, 1))),
        fixed("R2-7", 10, (3,), 2, (("x^(4*p^k)", 1, 4, 0), ("x^(2*p^(k+1))", 1, 2, 1),
                                   ("x^(10*p^k)", 2, 10, 0))),
        fixed("R2-8", 13, (3,), 2, (("x^(4*p^k)", 1, 4, 0), ("x^(10*p^k)", 1, 10, 0),
                                   ("x^(12*p^k)", 1, 12, 0))),
        fixed("R2-9", 15, (3,), 4, (("x^(4*p^k)", 1, 4, 0), ("x^(4*p^(k+1))", 1, 4, 1),
                                   ("x^(28*p^k)", 1, 28, 0))),
        fixed("R2-10", 19, (3,), 2, (("x^(4*p^k)", 1, 4, 0), ("x^(2*p^(k+1))", 1, 2, 1),
                                    ("x^(10*p^k)", 2, 10, 0), ("x^(2*p^(k+2))", 2, 2, 2))),
        mono("R2-11", 2, (5,), 4),
        mono("R2-12", 3, (5,), 3),
        fixed("R2-13", 7, (5,), 2, (("x^(2*p^k)", 4, 2, 0), ("x^(6*p^k)", 1, 6, 0))),
        mono("R2-14", 2, (7, 11, 13), lambda p: p - 1),
        mono("R2-15", 3, (7, 11, 13), lambda p: p - 2),
    ]


REMARK_ITEMS: dict[str, RemarkItem] = {it.item_id: it for it in _first_items() + _second_items()}

_PARAM_ALIASES = {"ℓ": "l", "ell": "l", "j": "i"}


def remark_item(item_id: str) -> RemarkItem:
    try:
        return REMARK_ITEMS[item_id]
    except KeyError:
        raise UnknownItem(f"unknown remark item {item_id!r}") from None


def _normalize_params(item: RemarkItem, params: Params) -> dict[str, int]:
    norm = {_PARAM_ALIASES.get(k, k): v for k, v in params.items()}
    missing = [name for name in item.params if name not in norm]
    if missing:
        raise ValueError(f"{item.item_id} needs parameters {missing}")
    if any(norm[name] < 0 for name in item.params):
        raise ValueError("parameters must be nonnegative")
    return {name: norm[name] for name in item.params}


def _item_prime(item: RemarkItem, p: int | None) -> int:
    if p is None:
        return item.primes[0]
    validate_odd_prime(p)
    lo = item.primes[0]
    # single-prime items apply only to that prime, the others to every p >= lo
    ok = p == lo if len(item.primes) == 1 else p >= lo
    if not ok:
        raise ValueError(f"{item.item_id} does not apply to p={p}")
    return p


def expected_remark_poly(kind: Kind | str, item_id: str, params: Params,
                         p: int | None = None) -> SparsePoly:
    """The polynomial exactly as listed for ``item_id``, instantiated at ``params``."""
    item = remark_item(item_id)
    if Kind.parse(kind) is not item.kind:
        raise UnknownItem(f"{item_id} is not a {Kind.parse(kind).value}-kind item")
    prm = _normalize_params(item, params)
    p = _item_prime(item, p)
    terms: dict[int, int] = {}
    for term in item.terms:
        t = _check_exponent(term.exponent(prm, p))
        terms[t] = (terms.get(t, 0) + term.coeff(p)) % p
    return SparsePoly(p, terms)


def remark_instance(item_id: str, params: Params, p: int | None = None) -> tuple[Kind, int, int, int]:
    """(kind, n, d, p) of the family member an item describes."""
    item = remark_item(item_id)
    prm = _normalize_params(item, params)
    p = _item_prime(item, p)
    return item.kind, item.n(prm, p), item.d(prm, p), p


@dataclass(frozen=True)
class ErratumDiff:
    item_id: str
    params: tuple[tuple[str, int], ...]
    p: int
    term: str
    exponent: int
    printed_coeff: int
    computed_coeff: int


def remark_diffs(item_id: str, params: Params, p: int | None = None) -> list[ErratumDiff]:
    """Terms where the listed polynomial and the closed-form construction differ."""
    item = remark_item(item_id)
    prm = _normalize_params(item, params)
    p = _item_prime(item, p)
    printed = expected_remark_poly(item.kind, item_id, prm, p)
    kind, n, d, _ = remark_instance(item_id, prm, p)
    computed = construct(kind, n, d, p)
    labels = {term.exponent(prm, p): term.label for term in item.terms}
    diffs = []
    for t in sorted(set(printed.exponents()) | set(computed.exponents())):
        if printed.coeff(t) != computed.coeff(t):
            diffs.append(ErratumDiff(item_id, tuple(sorted(prm.items())), p,
                                     labels.get(t, f"x^{t} (unlisted)"), t,
                                     printed.coeff(t), computed.coeff(t)))
    return diffs


def audit_remarks(param_values=(0, 1, 2), kind: Kind | str | None = None,
                  p: int | None = None) -> list[ErratumDiff]:
    """Compare every listed item against the construction over a parameter grid.

    ``kind`` and ``p`` restrict the audit to items that apply; without
    ``p`` each item is checked at all of its representative primes.
    """
    out = []
    for item in REMARK_ITEMS.values():
        if kind is not None and item.kind is not Kind.parse(kind):
            continue
        if p is not None:
            try:
                primes = (_item_prime(item, p),)
            except ValueError:
                continue
        else:
            primes = item.primes
        for prime in primes:
            for values in product(param_values, repeat=len(item.params)):
                out.extend(remark_diffs(item.item_id, dict(zip(item.params, values)), prime))
    return out
