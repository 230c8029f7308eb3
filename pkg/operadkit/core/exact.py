"""
Exact rational arithmetic helpers and the combinatorial numbers used by the
dimension formulas.

Rationals are ``fractions.Fraction`` values; this module adds the text form
used in files and reports and a memoized Bernoulli table.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import List, Tuple, Union

from operadkit.errors import NumberError, ParseError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

__all__ = [
    "Rational",
    "to_rational",
    "format_rational",
    "parse_rational",
    "NumberContext",
    "bernoulli",
    "binomial",
    "factorial",
    "double_factorial",
]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and text ("p/q", "-3") into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot convert {type(value).__name__} to a rational")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse the rational text form.

    Args:
        text: "p/q" or "p", with an optional sign

    Returns:
        The parsed Fraction

    Raises:
        ParseError: if the text is not a rational literal
    """
    stripped = text.strip()
    body = stripped[1:] if stripped[:1] in "+-" else stripped
    parts = body.split("/")
    if not body or len(parts) > 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"Invalid rational literal '{text}'")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ParseError(f"Zero denominator in '{text}'")
    return Fraction(stripped)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def double_factorial(n: int) -> int:
    """n!! with the conventions (-1)!! = 0!! = 1."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


@dataclass(frozen=True)
class NumberContext:
    """
    Immutable table of memoized numbers.

    Bernoulli numbers use the convention B1 = -1/2, computed from the
    recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0. Extending a context returns
    a new context; existing ones never change.
    """

    bernoulli_numbers: Tuple[Fraction, ...] = (Fraction(1),)

    def extended_to(self, n: int) -> "NumberContext":
        if n < 0:
            raise NumberError(f"Bernoulli index must be >= 0, got {n}")
        if n < len(self.bernoulli_numbers):
            return self
        table = list(self.bernoulli_numbers)
        while len(table) <= n:
            m = len(table)
            if m >= 3 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            s = sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0))
            table.append(-s / (m + 1))
        return replace(self, bernoulli_numbers=tuple(table))

    def bernoulli(self, n: int) -> Fraction:
        return self.extended_to(n).bernoulli_numbers[n]

    def bernoulli_table(self, n: int) -> List[Fraction]:
        return list(self.extended_to(n).bernoulli_numbers[: n + 1])


_DEFAULT_CONTEXT = NumberContext().extended_to(32)


@lru_cache(maxsize=64)
def _context_for(n: int) -> NumberContext:
    return _DEFAULT_CONTEXT.extended_to(n)


def bernoulli(n: int) -> Fraction:
    """
    Bernoulli number B_n (B1 = -1/2).

    Args:
        n: index, n >= 0

    Returns:
        B_n as an exact Fraction
    """
    return _context_for(n).bernoulli(n)


@lru_cache(maxsize=None)
def permutation_sign(perm: tuple) -> int:
    """Sign of a permutation given as a tuple of distinct comparable keys."""
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1
