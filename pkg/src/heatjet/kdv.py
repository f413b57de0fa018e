"""KdV hierarchy polynomials ``G_n[U]`` in the formal variables ``U_0, U_1, ...``.

``U_k`` stands for the k-th x-derivative of the potential.  Two independent
constructions are provided: powers of the Schrodinger operator
``L = d^2/dx^2 + U`` applied to ``x^(2j)`` (:func:`g_n_operator`), and the
fully expanded sum over compositions and chain coefficients
(:func:`g_n_expanded`).
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, Sequence, Tuple

from .combinatorics import HalfInteger, binomial_symmetric

Monomial = Tuple[int, ...]


class DiffPolynomial:
    """Polynomial in ``U_0, U_1, ...``; monomials are sorted index tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, object] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            if any(k < 0 for k in mono):
                raise ValueError(f"negative variable index in {mono}")
            clean[mono] = clean.get(mono, 0) + Fraction(c)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def variable(cls, k: int) -> "DiffPolynomial":
        return cls({(k,): 1})

    @classmethod
    def constant(cls, c) -> "DiffPolynomial":
        return cls({(): c})

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return DiffPolynomial._raw(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = {m: c for m, c in terms.items() if c}
        return p

    def scale(self, c) -> "DiffPolynomial":
        c = Fraction(c)
        return DiffPolynomial._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffPolynomial):
            return self.scale(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return DiffPolynomial._raw(out)

    __rmul__ = __mul__

    def derivative(self) -> "DiffPolynomial":
        """Total x-derivative: ``U_k -> U_(k+1)`` by the Leibniz rule."""
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            for k, mult in Counter(mono).items():
                rest = list(mono)
                rest.remove(k)
                m = tuple(sorted(rest + [k + 1]))
                out[m] = out.get(m, 0) + c * mult
        return DiffPolynomial._raw(out)

    def max_index(self) -> int:
        return max((max(m) for m in self.terms if m), default=-1)

    def weights(self) -> set[int]:
        """Weights ``sum (k_i + 2)`` of the monomials present."""
        return {sum(k + 2 for k in m) for m in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(k + 2 for k in kv[0]), len(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"U{k}" + (f"^{e}" if e > 1 else "") for k, e in sorted(Counter(mono).items())]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self):
        return f"DiffPolynomial({self})"


U0 = DiffPolynomial.variable(0)


class XSeries:
    """Finite sum ``sum_a x^a P_a[U]`` where the ``U_k`` are functions of ``x``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, DiffPolynomial] | None = None):
        self.coeffs = {a: p for a, p in (coeffs or {}).items() if p}

    @classmethod
    def power(cls, a: int) -> "XSeries":
        return cls({a: DiffPolynomial.constant(1)})

    def __eq__(self, other):
        if isinstance(other, XSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other: "XSeries") -> "XSeries":
        out = dict(self.coeffs)
        for a, p in other.coeffs.items():
            out[a] = out[a] + p if a in out else p
        return XSeries(out)

    def derivative(self) -> "XSeries":
        out: Dict[int, DiffPolynomial] = {}
        for a, p in self.coeffs.items():
            pieces = [(a, p.derivative())]
            if a:
                pieces.append((a - 1, p.scale(a)))
            for b, q in pieces:
                out[b] = out[b] + q if b in out else q
        return XSeries(out)

    def times_potential(self) -> "XSeries":
        return XSeries({a: p * U0 for a, p in self.coeffs.items()})

    def drop_above(self, degree: int) -> "XSeries":
        return XSeries({a: p for a, p in self.coeffs.items() if a <= degree})

    def at_zero(self) -> DiffPolynomial:
        return self.coeffs.get(0, DiffPolynomial())

    def __repr__(self):
        return "XSeries(" + ", ".join(f"x^{a}: {p}" for a, p in sorted(self.coeffs.items())) + ")"


def schrodinger_apply(f: XSeries) -> XSeries:
    """``L f = f'' + U f``."""
    return f.derivative().derivative() + f.times_potential()


def p_nj(n: int, j: int) -> DiffPolynomial:
    """``L^(j+n)(x^(2j))`` at ``x = 0``, with ``U_i(0)`` read as ``U_i``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= j <= n:
        raise ValueError(f"j = {j} outside 0..{n}")
    f = XSeries.power(2 * j)
    steps = j + n
    for s in range(1, steps + 1):
        # L lowers the x-degree by at most 2
        f = schrodinger_apply(f).drop_above(2 * (steps - s))
    p = f.at_zero()
    cap = 2 * n + 2 * j - 2
    if p.max_index() > cap:
        raise AssertionError(f"U index {p.max_index()} exceeds {cap}")
    return p


def _prefactor(n: int) -> Fraction:
    return Fraction(factorial(2 * n), 2 * factorial(n))


def _half_binomial(n: int, j: int) -> Fraction:
    # binom(n + 1/2, j + 1/2)
    return binomial_symmetric(HalfInteger(2 * n + 1), HalfInteger(2 * j + 1))


def g_n_operator(n: int) -> DiffPolynomial:
    if n < 1:
        raise ValueError("n must be >= 1")
    total = DiffPolynomial()
    for j in range(n + 1):
        w = _half_binomial(n, j) * Fraction((-1) ** j, 4**j * factorial(j) * factorial(j + n))
        total = total + p_nj(n, j).scale(w)
    return total.scale(_prefactor(n))


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def c_coefficient(k_list: Sequence[int], j: int, n: int) -> int:
    """Chain sum ``sum prod_i binom(2 l_i - k_1 - ... - k_i, k_(i+1))``.

    Chains run over ``0 <= l_0 <= ... <= l_(p-1) <= j + n - p`` subject to
    ``2 l_i >= k_1 + ... + k_(i+1)``.  ``l_i`` counts the second-derivative
    factors standing left of the (i+1)-th potential in a word of ``L^(j+n)``.
    """
    ks = list(k_list)
    p = len(ks)
    if p < 1:
        raise ValueError("need at least one index")
    if any(k < 0 for k in ks):
        raise ValueError("indices must be nonnegative")
    if sum(ks) != 2 * (n - p):
        raise ValueError(f"indices must sum to 2(n - p) = {2 * (n - p)}")
    top = j + n - p
    if top < 0:
        return 0

    def chains(i: int, lo: int, used: int) -> int:
        total = 0
        need = used + ks[i]
        for l in range(lo, top + 1):
            if 2 * l < need:
                continue
            b = comb(2 * l - used, ks[i])
            total += b if i == p - 1 else b * chains(i + 1, l, need)
        return total

    return chains(0, 0, 0)


def g_n_expanded(n: int) -> DiffPolynomial:
    if n < 1:
        raise ValueError("n must be >= 1")
    acc: Dict[Monomial, Fraction] = {}
    for j in range(n + 1):
        w = _half_binomial(n, j) * Fraction((-1) ** j * factorial(2 * j), 4**j * factorial(j) * factorial(j + n))
        for p in range(1, min(j + n, n) + 1):
            for ks in compositions(2 * (n - p), p):
                c = c_coefficient(ks, j, n)
                if c:
                    mono = tuple(sorted(ks))
                    acc[mono] = acc.get(mono, 0) + w * c
    return DiffPolynomial(acc).scale(_prefactor(n))


def heat_coefficient_h_n(n: int) -> DiffPolynomial:
    """``h_n = (2 n! / (2n)!) G_n``."""
    return g_n_operator(n).scale(1 / _prefactor(n))


METHODS = {"operator": g_n_operator, "expanded": g_n_expanded}
