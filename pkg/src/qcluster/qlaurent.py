"""Exact arithmetic in the coefficient ring Z[q^{1/2}, q^{-1/2}].

Exponents are half-integers stored doubled, so a term c * q^(e/2) is kept as
``terms[e] = c`` with integer ``e``.  Coefficients are Python ints, hence
arbitrary precision.  Values are immutable.
"""
from __future__ import annotations

from typing import Iterator, Mapping


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in the ring."""


class QLaurent:
    """A Laurent polynomial in q^(1/2) with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> QLaurent:
        return cls()

    @classmethod
    def one(cls) -> QLaurent:
        return cls({0: 1})

    @classmethod
    def from_int(cls, n: int) -> QLaurent:
        return cls({0: n})

    @classmethod
    def q_power(cls, doubled_exponent: int, coeff: int = 1) -> QLaurent:
        """coeff * q^(doubled_exponent / 2)."""
        return cls({doubled_exponent: coeff})

    @classmethod
    def quantum_integer(cls, n: int) -> QLaurent:
        """[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
        if n < 0:
            return -cls.quantum_integer(-n)
        return cls({2 * e: 1 for e in range(1 - n, n, 2)})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_positive(self) -> bool:
        """True iff every coefficient is >= 0."""
        return all(c >= 0 for c in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return QLaurent(out)

    def __neg__(self) -> QLaurent:
        return QLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: QLaurent) -> QLaurent:
        return self + (-other)

    def __mul__(self, other: QLaurent) -> QLaurent:
        if isinstance(other, int):
            return QLaurent({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, QLaurent):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QLaurent:
        if n < 0:
            return self.inverse() ** (-n)
        out = QLaurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> QLaurent:
        """Inverse of a unit (+- q^(e/2)); raises NotDivisible otherwise."""
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            if c in (1, -1):
                return QLaurent({-e: c})
        raise NotDivisible(f"{self!r} is not a unit")

    def exact_div(self, other: QLaurent) -> QLaurent:
        """Exact quotient self / other, or raise NotDivisible.

        Leading-exponent peeling; the iteration cap 1 + (exponent span of
        self) guarantees termination on non-divisible input.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return QLaurent.zero()
        rem = self
        lead_e = other.max_exponent()
        lead_c = other._terms[lead_e]
        quot: dict[int, int] = {}
        cap = 1 + (self.max_exponent() - self.min_exponent())
        for _ in range(cap + 1):
            if rem.is_zero():
                return QLaurent(quot)
            e = rem.max_exponent() - lead_e
            c, r = divmod(rem._terms[rem.max_exponent()], lead_c)
            if r != 0:
                raise NotDivisible(f"{self!r} not divisible by {other!r}")
            quot[e] = quot.get(e, 0) + c
            rem = rem - QLaurent({e: c}) * other
            if not rem.is_zero() and rem.max_exponent() >= lead_e + e:
                raise NotDivisible(f"{self!r} not divisible by {other!r}")
        raise NotDivisible(f"{self!r} not divisible by {other!r}")

    def bar(self) -> QLaurent:
        """The involution q^(1/2) -> q^(-1/2)."""
        return QLaurent({-e: c for e, c in self._terms.items()})

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    # -- serialization / display ----------------------------------------

    def to_json(self) -> dict[str, str]:
        """{"2e": coefficient} with doubled exponents, both as decimal strings."""
        return {str(e): str(c) for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> QLaurent:
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self) -> str:
        return f"QLaurent({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^{{{e}/2}}"
            if mono == "":
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


ZERO = QLaurent.zero()
ONE = QLaurent.one()
Q = QLaurent.q_power(2)
Q_HALF = QLaurent.q_power(1)
