"""Sparse univariate polynomials over F_p.

A :class:`SparsePoly` maps exponents to nonzero residues mod p. It is
immutable, and equal polynomials compare and hash equal.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from types import MappingProxyType

from .errors import ExponentOverflow, MixedCharacteristic
from .fieldcore import FieldElement, FieldParams, U64_MAX, pow_element


def _check_exponent(t: int) -> int:
    if t > U64_MAX:
        raise ExponentOverflow(f"exponent {t} exceeds 64 bits")
    return t


class SparsePoly:
    __slots__ = ("p", "_terms")

    def __init__(self, p: int, terms: Mapping[int, int] | None = None):
        self.p = p
        norm: dict[int, int] = {}
        for t, c in (terms or {}).items():
            if t < 0:
                raise ValueError(f"negative exponent {t}")
            _check_exponent(t)
            c %= p
            if c:
                norm[t] = c
        self._terms = MappingProxyType(dict(sorted(norm.items())))

    @classmethod
    def _raw(cls, p: int, terms: dict[int, int]) -> SparsePoly:
        # trusted constructor: terms already reduced, nonzero and bounded
        obj = cls.__new__(cls)
        obj.p = p
        obj._terms = MappingProxyType(dict(sorted(terms.items())))
        return obj

    @classmethod
    def zero(cls, p: int) -> SparsePoly:
        return cls._raw(p, {})

    @classmethod
    def monomial(cls, p: int, exponent: int, coeff: int = 1) -> SparsePoly:
        return cls(p, {exponent: coeff})

    @property
    def terms(self) -> Mapping[int, int]:
        return self._terms

    def exponents(self) -> list[int]:
        return list(self._terms)

    def coeff(self, t: int) -> int:
        return self._terms.get(t, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return next(reversed(self._terms), -1) if self._terms else -1

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.p == other.p and self._terms == other._terms

    def __hash__(self):
        return hash((self.p, tuple(self._terms.items())))

    def __repr__(self):
        return f"SparsePoly({self.p}, {dict(self._terms)!r})"

    def __str__(self):
        return render(self)

    def __add__(self, other: SparsePoly) -> SparsePoly:
        return poly_add(self, other)

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return poly_add(self, other.scale(-1))

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        return poly_mul(self, other)

    def scale(self, c: int) -> SparsePoly:
        c %= self.p
        if not c:
            return SparsePoly.zero(self.p)
        return SparsePoly._raw(self.p, {t: a * c % self.p for t, a in self._terms.items()})

    def without_constant(self) -> SparsePoly:
        if 0 not in self._terms:
            return self
        return SparsePoly._raw(self.p, {t: c for t, c in self._terms.items() if t})


def render(f: SparsePoly) -> str:
    """Canonical text form, ascending exponents: ``2*x^2 + 2*x^4``.

    The zero polynomial renders as ``0``.
    """
    if f.is_zero():
        return "0"
    return " + ".join(f"{c}*x^{t}" for t, c in f)


def parse(text: str, p: int) -> SparsePoly:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return SparsePoly.zero(p)
    terms: dict[int, int] = {}
    for chunk in text.split(" + "):
        c, _, t = chunk.partition("*x^")
        terms[int(t)] = terms.get(int(t), 0) + int(c)
    return SparsePoly(p, terms)


def _same_char(f: SparsePoly, g: SparsePoly) -> int:
    if f.p != g.p:
        raise MixedCharacteristic(f"characteristics differ: {f.p} vs {g.p}")
    return f.p


def poly_add(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    p = _same_char(f, g)
    out = dict(f.terms)
    for t, c in g:
        s = (out.get(t, 0) + c) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return SparsePoly._raw(p, out)


def poly_mul(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    p = _same_char(f, g)
    if f.is_zero() or g.is_zero():
        return SparsePoly.zero(p)
    _check_exponent(f.degree() + g.degree())
    out: dict[int, int] = {}
    for s, a in f:
        for t, b in g:
            out[s + t] = (out.get(s + t, 0) + a * b) % p
    return SparsePoly._raw(p, {t: c for t, c in out.items() if c})


def poly_pow_p(f: SparsePoly) -> SparsePoly:
    """``f**p`` via the Frobenius rule c*x^t -> c*x^(p*t)."""
    p = f.p
    if f.is_zero():
        return f
    _check_exponent(p * f.degree())
    return SparsePoly._raw(p, {p * t: c for t, c in f})


def substitute_monomial(f: SparsePoly, d: int) -> SparsePoly:
    """Compose with x^d: every exponent t becomes d*t."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if f.is_zero() or d == 1:
        return f
    _check_exponent(d * f.degree())
    return SparsePoly._raw(f.p, {d * t: c for t, c in f})


def evaluate_poly(f: SparsePoly, x: FieldElement, field: FieldParams | None = None) -> FieldElement:
    fld = field if field is not None else x.field
    if fld.p != f.p:
        raise MixedCharacteristic(f"polynomial over F_{f.p} evaluated in {fld}")
    acc = fld.zero()
    for t, c in f:
        acc = fld.add(acc, fld.scale(pow_element(x, t), c))
    return acc


def evaluate_all(f: SparsePoly, field: FieldParams) -> list[int]:
    """Integer-encoded values of ``f`` at every element, in encoding order.

    Exponents are first reduced modulo q - 1 (keeping them >= 1), which
    leaves the function on GF(q) unchanged.
    """
    if field.p != f.p:
        raise MixedCharacteristic(f"polynomial over F_{f.p} evaluated in {field}")
    q = field.q
    reduced: dict[int, int] = {}
    for t, c in f:
        r = t if t < q else (t - 1) % (q - 1) + 1
        reduced[r] = (reduced.get(r, 0) + c) % field.p
    g = SparsePoly(field.p, reduced)
    return [evaluate_poly(g, x, field).to_int() for x in field.elements()]
