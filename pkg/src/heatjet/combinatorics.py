"""Exact combinatorics: multi-indices, half-integer binomials and the
summation identities behind the heat-invariant formulas.

Everything here works over :class:`fractions.Fraction`; no floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Tuple, Union

MultiIndex = Tuple[int, ...]

Number = Union[int, Fraction, "HalfInteger"]


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An element of ``(1/2)Z``, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        value = Fraction(value)
        doubled = 2 * value
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not a multiple of 1/2")
        return cls(int(doubled))

    def __add__(self, other):
        return HalfInteger(self.twice + HalfInteger.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInteger(self.twice - HalfInteger.of(other).twice)

    def __rsub__(self, other):
        return HalfInteger(HalfInteger.of(other).twice - self.twice)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def is_nonneg_integer(self) -> bool:
        return self.twice >= 0 and self.twice % 2 == 0

    def __str__(self):
        return str(self.value)


def _half(z) -> HalfInteger:
    return HalfInteger.of(z)


# --------------------------------------------------------------------------
# multi-indices


def multi_indices(d: int, total: int) -> Iterator[MultiIndex]:
    """All ``alpha`` in N^d with ``|alpha| = total``, in lexicographic order."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if total < 0:
        return
    if d == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in multi_indices(d - 1, total - first):
            yield (first,) + rest


def mi_factorial(alpha: MultiIndex) -> int:
    return prod(factorial(a) for a in alpha)


def mi_add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def mi_scale(alpha: MultiIndex, c: int) -> MultiIndex:
    return tuple(c * a for a in alpha)


# --------------------------------------------------------------------------
# binomials


def binomial_general(z, a: int) -> Fraction:
    """Falling-factorial binomial ``z (z-1) ... (z-a+1) / a!`` for half-integer ``z``."""
    if a < 0:
        raise ValueError("lower index must be a nonnegative integer")
    z = _half(z).value
    num = Fraction(1)
    for i in range(a):
        num *= z - i
    return num / factorial(a)


def binomial_symmetric(z, a) -> Fraction:
    """``binom(z, a)`` with the convention ``binom(z, a) = binom(z, z - a)``.

    One of ``a`` and ``z - a`` has to be a nonnegative integer; the other
    cases would need the Gamma function off the integers and are rejected.
    """
    z, a = _half(z), _half(a)
    if a.is_nonneg_integer():
        return binomial_general(z, a.twice // 2)
    rest = z - a
    if rest.is_nonneg_integer():
        return binomial_general(z, rest.twice // 2)
    raise ValueError(f"binom({z}, {a}): neither {a} nor {rest} is a nonnegative integer")


def gamma_half_rational(k: int) -> Fraction:
    """``Gamma(k + 1/2) / sqrt(pi) = (2k)! / (4^k k!)``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return Fraction(factorial(2 * k), 4**k * factorial(k))


# --------------------------------------------------------------------------
# identities, literal side and closed side


def vandermonde_half_lhs(z, w, u: int) -> Fraction:
    z, w = _half(z), _half(w)
    return sum(
        (binomial_general(z + a, a) * binomial_general(w + (u - a), u - a) for a in range(u + 1)),
        Fraction(0),
    )


def vandermonde_half_rhs(z, w, u: int) -> Fraction:
    z, w = _half(z), _half(w)
    return binomial_symmetric(z + w + (u + 1), z + w + 1)


@lru_cache(maxsize=None)
def comb1_lhs(beta: MultiIndex, u: int) -> Fraction:
    """Literal sum over ``|alpha| = u`` of ``(2a+2b)! b! / (a! (a+b)! (2b)!)``."""
    beta = tuple(beta)
    two_beta = mi_factorial(mi_scale(beta, 2))
    beta_fact = mi_factorial(beta)
    total = Fraction(0)
    for alpha in multi_indices(len(beta), u):
        ab = mi_add(alpha, beta)
        total += Fraction(
            mi_factorial(mi_scale(ab, 2)) * beta_fact,
            mi_factorial(alpha) * mi_factorial(ab) * two_beta,
        )
    return total


def comb1_rhs(v: int, u: int, d: int) -> Fraction:
    """Closed form ``4^u binom(u + v - 1 + d/2, u)``."""
    return 4**u * binomial_general(HalfInteger(2 * (u + v - 1) + d), u)


def multinomial_check(k_minus_n: int, d: int) -> bool:
    """Expand ``sum_{|b|=s} x^{2b}/b!`` and ``|x|^{2s}/s!`` as jets and compare."""
    from .jet import Jet, monomial, radius_squared_power

    s = k_minus_n
    order = 2 * s
    lhs = Jet.zero(d, order)
    for beta in multi_indices(d, s):
        lhs = lhs + monomial(d, order, mi_scale(beta, 2), Fraction(1, mi_factorial(beta)))
    rhs = radius_squared_power(d, order, s).scale(Fraction(1, factorial(s)))
    return lhs == rhs
