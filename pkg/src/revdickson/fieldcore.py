"""Exact arithmetic in F_p and GF(p^e) for odd primes p.

Elements of GF(p^e) are coefficient tuples (constant term first) of
polynomials of degree < e, reduced modulo a fixed monic irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import Composite, EvenPrime, FieldOverflow

U64_MAX = 2**64 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; these bases are exact below 3.3e24.
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
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


def validate_odd_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime, else raise.

    >>> validate_odd_prime(3)
    3
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError(f"p must be an int, got {type(p).__name__}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if p == 2:
        raise EvenPrime("characteristic 2 is not supported")
    if not _is_prime(p):
        raise Composite(f"{p} is not prime")
    return p


# -- dense polynomials over F_p (lists, constant term first) -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _dmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo ``m``; ``m`` need not be monic."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(r) - 1 >= dm and r:
        c = r[-1] * inv_lead % p
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _trim(r)
    return r


def _ddivmod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    q = [0] * max(len(r) - dm, 0)
    while r and len(r) - 1 >= dm:
        c = r[-1] * inv_lead % p
        shift = len(r) - 1 - dm
        q[shift] = c
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _trim(r)
    return _trim(q), r


def _dsub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _dgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _dmod(a, b, p)
    return a


def _dpowmod(base: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _dmod(base, m, p)
    while k:
        if k & 1:
            result = _dmod(_dmul(result, base, p), m, p)
        base = _dmod(_dmul(base, base, p), m, p)
        k >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    No factor of degree k <= e/2 exists iff gcd(f, x^(p^k) - x) = 1 for
    each such k.
    """
    f = _trim(list(poly))
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if f[0] == 0:
        return False
    xpow = [0, 1]
    for _ in range(e // 2):
        xpow = _dpowmod(xpow, p, f, p)
        if len(_dgcd(f, _dsub(xpow, [0, 1], p), p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    # Candidates enumerated in increasing sum(c_i * p**i): the highest
    # non-leading coefficient is the most significant.
    for high_first in product(range(p), repeat=e):
        coeffs = tuple(reversed(high_first)) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no irreducible of degree {e} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldParams:
    """GF(p^e) defined by a monic irreducible ``modulus`` (constant term first)."""

    p: int
    e: int
    q: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        validate_odd_prime(self.p)
        if self.e < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.e}")
        if self.q != self.p**self.e:
            raise ValueError("q must equal p**e")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")

    def __str__(self):
        return f"GF({self.p}^{self.e})"

    # -- element construction ------------------------------------------------

    def element(self, coeffs: Sequence[int] | int) -> FieldElement:
        """Build an element from a coefficient sequence or an F_p integer."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.e:
            c = _dmod(c, self.modulus, self.p)
        c = c + [0] * (self.e - len(c))
        return FieldElement(self, tuple(c))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.e)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def from_int(self, k: int) -> FieldElement:
        """Element whose base-p digits (least significant first) are its coefficients."""
        if not 0 <= k < self.q:
            raise ValueError(f"index {k} outside [0, {self.q})")
        digits = []
        for _ in range(self.e):
            k, r = divmod(k, self.p)
            digits.append(r)
        return FieldElement(self, tuple(digits))

    def elements(self) -> Iterator[FieldElement]:
        """All q elements, ordered by integer encoding."""
        for k in range(self.q):
            yield self.from_int(k)

    def nonzero_elements(self) -> Iterator[FieldElement]:
        for k in range(1, self.q):
            yield self.from_int(k)

    # -- arithmetic on coefficient tuples --------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(self, tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p, e = self.p, self.e
        if e == 1:
            return FieldElement(self, (a.coeffs[0] * b.coeffs[0] % p,))
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # Reduce top-down using the monic modulus: x^e = -(m_0 + ... + m_{e-1} x^{e-1}).
        mod = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                base = k - e
                for i in range(e):
                    prod[base + i] = (prod[base + i] - c * mod[i]) % p
        return FieldElement(self, tuple(prod[:e]))

    def scale(self, a: FieldElement, c: int) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple(x * c % p for x in a.coeffs))

    def inv(self, a: FieldElement) -> FieldElement:
        """Inverse via extended Euclid on polynomial representatives."""
        if a.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _ddivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _dsub(s0, _dmul(q, s1, p), p)
        # r0 is a nonzero constant since the modulus is irreducible
        c = pow(r0[0], -1, p)
        return self.element([x * c for x in s0])

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        return pow_element(a, k)


@dataclass(frozen=True)
class FieldElement:
    field: FieldParams = dc_field(repr=False)
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def __add__(self, other: FieldElement) -> FieldElement:
        return self.field.add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self.field.sub(self, other)

    def __neg__(self) -> FieldElement:
        return self.field.neg(self)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return self.field.scale(self, other)
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self.field.mul(self, self.field.inv(other))

    def __pow__(self, k: int) -> FieldElement:
        return pow_element(self, k)

    def inverse(self) -> FieldElement:
        return self.field.inv(self)

    def __str__(self):
        if self.field.e == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(map(str, self.coeffs)) + ")"


def find_irreducible(p: int, e: int) -> FieldParams:
    """Field parameters for GF(p^e) with the least monic irreducible modulus.

    Candidates are ordered by the integer ``sum(c_i * p**i)`` of their
    non-leading coefficients. For ``e == 1`` the modulus is ``x``.
    """
    validate_odd_prime(p)
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > U64_MAX:
        raise FieldOverflow(f"{p}^{e} exceeds 64 bits")
    return FieldParams(p, e, q, _least_irreducible(p, e))


def pow_element(x: FieldElement, k: int) -> FieldElement:
    """``x**k`` by square-and-multiply; ``x**0`` is 1, also for x = 0."""
    if k < 0:
        raise ValueError("negative exponent")
    fld = x.field
    result = fld.one()
    base = x
    while k:
        if k & 1:
            result = fld.mul(result, base)
        k >>= 1
        if k:
            base = fld.mul(base, base)
    return result
