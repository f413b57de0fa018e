"""Truncated multivariate polynomials ("jets") over the rationals.

A :class:`Jet` in ``d`` variables of order ``N`` keeps every monomial of
total degree ``<= N`` and silently drops the rest under multiplication.
Coefficients are stored as integer numerators over one shared positive
denominator, so the product kernel only ever touches integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

from . import kernels
from .combinatorics import MultiIndex

SLOT = kernels.SLOT_BITS
MAX_ORDER = (1 << SLOT) - 1


def pack(alpha: MultiIndex) -> int:
    key = 0
    for i, e in enumerate(alpha):
        if e < 0:
            raise ValueError(f"negative exponent in {alpha}")
        key |= e << (SLOT * i)
    return key | (sum(alpha) << (SLOT * len(alpha)))


def unpack(key: int, d: int) -> MultiIndex:
    mask = (1 << SLOT) - 1
    return tuple((key >> (SLOT * i)) & mask for i in range(d))


def key_degree(key: int, d: int) -> int:
    return key >> (SLOT * d)


def _normalized(num: Dict[int, int], den: int) -> Tuple[Dict[int, int], int]:
    if not num:
        return {}, 1
    if den < 0:
        num = {k: -v for k, v in num.items()}
        den = -den
    g = gcd(den, *num.values())
    if g != 1:
        num = {k: v // g for k, v in num.items()}
        den //= g
    return num, den


class Jet:
    """Polynomial in ``x_1..x_d`` truncated above total degree ``order``."""

    __slots__ = ("dim", "order", "_num", "_den", "_sorted", "_hash")

    def __init__(self, dim: int, order: int, coeffs: Mapping[MultiIndex, object] | None = None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"order must be in [0, {MAX_ORDER}]")
        num: Dict[int, Fraction] = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != dim:
                raise ValueError(f"multi-index {alpha} does not have dimension {dim}")
            if sum(alpha) > order:
                raise ValueError(f"monomial {alpha} exceeds order {order}")
            c = Fraction(c)
            if c:
                key = pack(alpha)
                num[key] = num.get(key, 0) + c
        den = 1
        for c in num.values():
            den = den * c.denominator // gcd(den, c.denominator)
        self._init(dim, order, {k: int(c * den) for k, c in num.items() if c}, den)

    def _init(self, dim, order, num, den):
        self.dim = dim
        self.order = order
        self._num, self._den = _normalized(num, den)
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, order: int, num: Dict[int, int], den: int = 1) -> "Jet":
        jet = cls.__new__(cls)
        jet._init(dim, order, num, den)
        return jet

    @classmethod
    def zero(cls, dim: int, order: int) -> "Jet":
        return cls._raw(dim, order, {})

    @classmethod
    def constant(cls, dim: int, order: int, c) -> "Jet":
        c = Fraction(c)
        if not c:
            return cls._raw(dim, order, {}, 1)
        return cls._raw(dim, order, {0: c.numerator}, c.denominator)

    # -- inspection ---------------------------------------------------------

    def coefficients(self) -> Dict[MultiIndex, Fraction]:
        d, den = self.dim, self._den
        return {unpack(k, d): Fraction(v, den) for k, v in sorted(self._num.items())}

    def __getitem__(self, alpha: MultiIndex) -> Fraction:
        return Fraction(self._num.get(pack(tuple(alpha)), 0), self._den)

    def __len__(self):
        return len(self._num)

    def __bool__(self):
        return bool(self._num)

    def value_at_origin(self) -> Fraction:
        return Fraction(self._num.get(0, 0), self._den)

    def degree(self) -> int:
        """Largest total degree present; -1 for the zero jet."""
        return max((key_degree(k, self.dim) for k in self._num), default=-1)

    def homogeneous_part(self, degree: int) -> "Jet":
        d = self.dim
        return Jet._raw(d, self.order, {k: v for k, v in self._num.items() if key_degree(k, d) == degree}, self._den)

    def sorted_terms(self):
        """``(keys, numerators)`` sorted by packed key, hence by degree first."""
        if self._sorted is None:
            keys = sorted(self._num)
            self._sorted = (keys, [self._num[k] for k in keys])
        return self._sorted

    @property
    def denominator(self) -> int:
        return self._den

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self.dim, self.order, self._den, self._num) == (other.dim, other.order, other._den, other._num)
        if isinstance(other, Rational):
            return self == Jet.constant(self.dim, self.order, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.order, self._den, frozenset(self._num.items())))
        return self._hash

    def __repr__(self):
        return f"Jet(d={self.dim}, N={self.order}, {self})"

    def __str__(self):
        if not self._num:
            return "0"
        d = self.dim
        items = sorted(self.coefficients().items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))
        out = []
        for alpha, c in items:
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        head = ("-" if out[0][0] == "-" else "") + out[0][1]
        return head + "".join(f" {s} {b}" for s, b in out[1:])

    # -- ring structure -----------------------------------------------------

    def _check(self, other: "Jet"):
        if self.dim != other.dim or self.order != other.order:
            raise ValueError(
                f"jet shape mismatch: (d={self.dim}, N={self.order}) vs (d={other.dim}, N={other.order})"
            )

    def _coerce(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return other
        if isinstance(other, Rational):
            return Jet.constant(self.dim, self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        da, db = self._den, other._den
        den = da * db // gcd(da, db)
        fa, fb = den // da, den // db
        num = {k: v * fa for k, v in self._num.items()}
        for k, v in other._num.items():
            num[k] = num.get(k, 0) + v * fb
        return Jet._raw(self.dim, self.order, {k: v for k, v in num.items() if v}, den)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw(self.dim, self.order, {k: -v for k, v in self._num.items()}, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Jet":
        c = Fraction(c)
        if not c:
            return Jet.zero(self.dim, self.order)
        return Jet._raw(
            self.dim, self.order, {k: v * c.numerator for k, v in self._num.items()}, self._den * c.denominator
        )

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        return dot([(self, other)])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: use reciprocal()")
        result = Jet.constant(self.dim, self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- truncation ---------------------------------------------------------

    def truncate(self, order: int) -> "Jet":
        """The same polynomial cut at total degree ``order`` (a new jet of that order)."""
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"order must be in [0, {MAX_ORDER}]")
        d = self.dim
        limit = (order + 1) << (SLOT * d)
        return Jet._raw(d, order, {k: v for k, v in self._num.items() if k < limit}, self._den)

    # -- calculus -----------------------------------------------------------

    def partial(self, axis: int) -> "Jet":
        """Formal partial derivative in ``x_{axis+1}`` (``axis`` is 0-based)."""
        d = self.dim
        if not 0 <= axis < d:
            raise IndexError(f"axis {axis} out of range for dimension {d}")
        shift = SLOT * axis
        mask = (1 << SLOT) - 1
        step = (1 << shift) + (1 << (SLOT * d))
        num = {}
        for k, v in self._num.items():
            e = (k >> shift) & mask
            if e:
                num[k - step] = v * e
        return Jet._raw(d, self.order, num, self._den)

    # -- inversion ----------------------------------------------------------

    def _newton(self, start: "Jet", step) -> "Jet":
        # each step doubles the number of correct low-degree terms
        b = start
        correct = 1
        while correct <= self.order:
            correct = min(2 * correct, self.order + 1)
            m = correct - 1
            b = step(self.truncate(m), b.truncate(m) if b.order >= m else b.lift(m))
        return b.lift(self.order) if b.order < self.order else b

    def lift(self, order: int) -> "Jet":
        """Reinterpret the stored polynomial as a jet of a higher order."""
        if order < self.degree():
            raise ValueError("lift would drop terms; use truncate")
        return Jet._raw(self.dim, order, dict(self._num), self._den)

    def reciprocal(self) -> "Jet":
        c0 = self.value_at_origin()
        if not c0:
            raise ZeroDivisionError("jet with zero constant term is not invertible")
        start = Jet.constant(self.dim, 0, 1 / c0)
        return self._newton(start, lambda a, b: b * (2 - a * b))

    def inv_sqrt(self) -> "Jet":
        """``a^(-1/2)`` for a jet with constant term exactly 1."""
        if self.value_at_origin() != 1:
            raise ValueError("inv_sqrt needs constant term 1")
        start = Jet.constant(self.dim, 0, 1)
        half = Fraction(1, 2)
        return self._newton(start, lambda a, b: (b * (3 - a * b * b)).scale(half))


def dot(pairs: Iterable[Tuple[Jet, Jet]], order: int | None = None) -> Jet:
    """``sum a_i * b_i`` in one kernel call, truncated at ``order``.

    All operands must share the dimension; ``order`` defaults to the order
    of the first operand and may not exceed any operand's order.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("dot() of nothing")
    d = pairs[0][0].dim
    if order is None:
        order = pairs[0][0].order
    den = 1
    for a, b in pairs:
        if a.dim != d or b.dim != d:
            raise ValueError("dimension mismatch in dot()")
        if a.order < order or b.order < order:
            raise ValueError("operand order below requested truncation order")
        pd = a._den * b._den
        den = den * pd // gcd(den, pd)
    work = []
    for a, b in pairs:
        if not a._num or not b._num:
            continue
        ka, ca = a.sorted_terms()
        kb, cb = b.sorted_terms()
        f = den // (a._den * b._den)
        if f != 1:
            ca = [c * f for c in ca]
        work.append((ka, ca, kb, cb))
    num = kernels.mul_many(work, d, order) if work else {}
    return Jet._raw(d, order, num, den)


def add(a: Jet, b: Jet) -> Jet:
    a._check(b)
    return a + b


def mul(a: Jet, b: Jet) -> Jet:
    a._check(b)
    return a * b


def scale(a: Jet, c) -> Jet:
    return a.scale(c)


def partial_derivative(a: Jet, i: int) -> Jet:
    """``d/dx_i`` with the 1-based axis of the printed variables ``x1..xd``."""
    if not 1 <= i <= a.dim:
        raise IndexError(f"axis {i} out of range 1..{a.dim}")
    return a.partial(i - 1)


def monomial(d: int, order: int, alpha: MultiIndex, c=1) -> Jet:
    alpha = tuple(alpha)
    if len(alpha) != d:
        raise ValueError(f"multi-index {alpha} does not have dimension {d}")
    if sum(alpha) > order:
        raise ValueError(f"|{alpha}| = {sum(alpha)} exceeds order {order}")
    c = Fraction(c)
    return Jet._raw(d, order, {pack(alpha): c.numerator} if c else {}, c.denominator)


def coordinate(d: int, order: int, axis: int) -> Jet:
    """The jet ``x_{axis+1}``."""
    alpha = [0] * d
    alpha[axis] = 1
    return monomial(d, order, tuple(alpha))


def radius_squared_power(d: int, order: int, j: int) -> Jet:
    """``(x_1^2 + ... + x_d^2)^j``."""
    if 2 * j > order:
        raise ValueError(f"|x|^{2 * j} does not fit in order {order}")
    r2 = Jet._raw(d, order, {pack(tuple(2 if i == a else 0 for i in range(d))): 1 for a in range(d)})
    return r2**j
