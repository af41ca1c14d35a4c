"""Exact sparse multivariate polynomials.

Monomials are integer exponent tuples against a fixed ambient variable
list; coefficients live in a small pluggable domain (Q via Fraction,
F_p via ints reduced mod p, or Z for construction work).  Operations
return fresh objects, nothing is mutated in place.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import DomainError

DEFAULT_PRIME = 32003

PI_NAME = "π"  # the distinguished uniformizer variable


class RationalDomain:
    is_field = True
    tag = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    def __repr__(self):
        return "QQ"


class IntegerDomain:
    """Z: good enough for building ideals; division is not available."""

    is_field = False
    tag = "Z"
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        raise DomainError("Z is not a field")

    @staticmethod
    def from_int(n):
        return n

    def __repr__(self):
        return "ZZ"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.tag = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        if isinstance(n, Fraction):
            return self.mul(n.numerator % self.p, self.inv(n.denominator % self.p))
        return n % self.p

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalDomain()
ZZ = IntegerDomain()


@lru_cache(maxsize=None)
def prime_field(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """Parse a field tag: "Q", or "Fp:<prime>" (bare "Fp" means 32003)."""
    if tag == "Q":
        return QQ
    if tag == "Fp":
        return prime_field(DEFAULT_PRIME)
    if tag.startswith("Fp:"):
        return prime_field(int(tag.split(":", 1)[1]))
    raise DomainError(f"unknown field tag {tag!r}")


class MonomialOrder:
    """A term order on exponent tuples: lex, degrevlex, or an
    elimination block order (degrevlex on the first k variables, ties
    broken by degrevlex on the rest).  Variable 0 is always largest."""

    KINDS = ("lex", "degrevlex", "block")

    def __init__(self, kind: str = "degrevlex", block: int = 0):
        if kind not in self.KINDS:
            raise DomainError(f"unknown order kind {kind!r}")
        if kind == "block" and block < 1:
            raise DomainError("block order needs block >= 1")
        self.kind = kind
        self.block = block if kind == "block" else 0

    def key(self, exps: tuple[int, ...]):
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return _drl_key(exps)
        k = self.block
        return (_drl_key(exps[:k]), _drl_key(exps[k:]))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.kind!r})"


def _drl_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


# A frozen polynomial is the hashable canonical form used by ideal
# containers: ((exps, coeff), ...) sorted by exponent tuple.
FrozenPoly = tuple


class Poly:
    """Sparse polynomial: dict from exponent tuple to nonzero coefficient."""

    __slots__ = ("dom", "nvars", "terms")

    def __init__(self, dom, nvars: int, terms: dict | None = None):
        self.dom = dom
        self.nvars = nvars
        if terms:
            zero = dom.zero
            self.terms = {e: c for e, c in terms.items() if c != zero}
        else:
            self.terms = {}

    @classmethod
    def zero(cls, dom, nvars: int) -> "Poly":
        return cls(dom, nvars)

    @classmethod
    def const(cls, dom, nvars: int, c) -> "Poly":
        return cls(dom, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, dom, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(dom, nvars, {tuple(e): dom.one})

    @classmethod
    def from_frozen(cls, frozen: FrozenPoly, dom, nvars: int) -> "Poly":
        return cls(dom, nvars, {e: dom.from_int(c) for e, c in frozen})

    def freeze(self) -> FrozenPoly:
        return tuple(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def copy(self) -> "Poly":
        p = Poly(self.dom, self.nvars)
        p.terms = dict(self.terms)
        return p

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.freeze()))

    def __add__(self, other: "Poly") -> "Poly":
        dom = self.dom
        terms = dict(self.terms)
        zero = dom.zero
        for e, c in other.terms.items():
            s = dom.add(terms.get(e, zero), c)
            if s == zero:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = Poly(dom, self.nvars)
        out.terms = terms
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        dom = self.dom
        out = Poly(dom, self.nvars)
        out.terms = {e: dom.neg(c) for e, c in self.terms.items()}
        return out

    def __mul__(self, other: "Poly") -> "Poly":
        dom = self.dom
        zero = dom.zero
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = dom.add(terms.get(e, zero), dom.mul(c1, c2))
                if s == zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Poly(dom, self.nvars)
        out.terms = terms
        return out

    def scale(self, c) -> "Poly":
        dom = self.dom
        if c == dom.zero:
            return Poly.zero(dom, self.nvars)
        out = Poly(dom, self.nvars)
        out.terms = {e: dom.mul(c, v) for e, v in self.terms.items()}
        return out

    def term_mul(self, coeff, exps: tuple[int, ...]) -> "Poly":
        """Multiply by a single term coeff * x^exps."""
        dom = self.dom
        out = Poly(dom, self.nvars)
        out.terms = {
            tuple(a + b for a, b in zip(e, exps)): dom.mul(c, coeff)
            for e, c in self.terms.items()
        }
        return out

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative power")
        result = Poly.const(self.dom, self.nvars, self.dom.one)
        for _ in range(n):
            result = result * self
        return result

    def convert(self, dom) -> "Poly":
        """Coerce coefficients into another domain."""
        out = Poly(dom, self.nvars)
        terms = {}
        for e, c in self.terms.items():
            if isinstance(c, Fraction) and dom is not QQ:
                v = dom.from_int(c)
            else:
                v = dom.from_int(c) if dom is not self.dom else c
            if v != dom.zero:
                terms[e] = v
        out.terms = terms
        return out

    def leading(self, order: MonomialOrder):
        """(exponent tuple, coefficient) of the order-largest term."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder) -> "Poly":
        _, c = self.leading(order)
        if c == self.dom.one:
            return self
        return self.scale(self.dom.inv(c))

    def __repr__(self):
        return f"Poly({len(self.terms)} terms, nvars={self.nvars})"


def monomial_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def primitive_int_terms(terms: dict) -> dict:
    """Clear denominators and content so coefficients are coprime ints,
    with the coefficient of the largest exponent tuple positive."""
    if not terms:
        return {}
    from math import gcd, lcm

    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = {e: int(c * den) if isinstance(c, Fraction) else c * den for e, c in terms.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, abs(c))
    if g > 1:
        ints = {e: c // g for e, c in ints.items()}
    lead = max(ints)
    if ints[lead] < 0:
        ints = {e: -c for e, c in ints.items()}
    return ints


def int_polys_from(polys: Iterable[Poly]) -> list[FrozenPoly]:
    """Canonical primitive integer form of each polynomial."""
    out = []
    for p in polys:
        out.append(tuple(sorted(primitive_int_terms(p.terms).items())))
    return out
