"""Normalized heat invariants ``(4 pi)^(d/2) a_n(0)`` of a metric jet.

Two routes are implemented and compared:

* ``multiindex``: the quadruple sum over ``m, k, alpha, beta`` of operator
  powers applied to ``x^(2 beta)``;
* ``binomial``: the single sum over ``j`` of half-integer binomials times
  ``Delta^(j+n)(|x|^(2j))(0)``.

Both evaluate operator powers at the origin only.  ``(Delta^k p)(0)`` for
the polynomials used here is weighted-homogeneous of degree ``2n`` in the
metric Taylor coefficients, so operator coefficients above degree ``2n``
cannot contribute and are dropped before the powers are taken.
"""
from __future__ import annotations

import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinatorics import HalfInteger, binomial_symmetric, comb1_lhs, mi_factorial, mi_scale, multi_indices
from .jet import Jet, monomial, radius_squared_power
from .laplacian import LaplaceOperator, MetricJet, build_laplacian, power_at_origin

log = logging.getLogger(__name__)

FORMS = ("multiindex", "binomial")
N_MAX_DEFAULT = 3


class InsufficientOrderError(ValueError):
    pass


class NotNormalCoordinatesWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HeatInvariantResult:
    n: int
    d: int
    normalized_value: Fraction
    form: str
    truncation_order: int

    def __str__(self):
        return str(self.normalized_value)


def sufficient_order(n: int) -> int:
    return 8 * n


def resolve_order(g: MetricJet, n: int, order: int | None = None) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if order is None:
        if n > N_MAX_DEFAULT:
            raise InsufficientOrderError(f"n = {n} > {N_MAX_DEFAULT} needs an explicit truncation order (>= {8 * n})")
        order = sufficient_order(n)
    if order < sufficient_order(n):
        raise InsufficientOrderError(f"truncation order {order} < {sufficient_order(n)} required for n = {n}")
    if g.order < order:
        raise InsufficientOrderError(f"metric jet has order {g.order}, need {order} for n = {n}")
    return order


def _operator(g: MetricJet, n: int, order: int | None) -> tuple[LaplaceOperator, int]:
    N = resolve_order(g, n, order)
    if not g.normal_form:
        warnings.warn(
            "metric is not in normal coordinates (sum_j g_ij x_j != x_i); "
            "the formulas are evaluated literally but need not give heat invariants",
            NotNormalCoordinatesWarning,
            stacklevel=3,
        )
    if g.order > N:
        g = g.truncate(N)
    return build_laplacian(g), N


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("HEATJET_THREADS", "1")))
    except ValueError:
        return 1


def _power_task(args):
    op, f, k, cdeg = args
    return power_at_origin(op, f, k, cdeg)


def _evaluate(tasks):
    """Run ``power_at_origin`` over tasks; results come back in task order."""
    workers = min(_workers(), len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_power_task, tasks))
    return [_power_task(t) for t in tasks]


def multiindex_polynomial(d: int, n: int, k: int, order: int) -> Jet:
    """``sum_{|beta|=k-n} c_beta x^(2 beta)``, the weight attached to ``Delta^k`` at level ``n``.

    ``c_beta = sum_{m=k}^{4n} 1/(k! 4^(m-n)) sum_{|alpha|=m-k} (2a+2b)!/(a!(a+b)!(2b)!)``,
    with the alpha-sum enumerated term by term.
    """
    terms = Jet.zero(d, order)
    for beta in multi_indices(d, k - n):
        c = Fraction(0)
        for m in range(k, 4 * n + 1):
            alpha_sum = comb1_lhs(beta, m - k) / mi_factorial(beta)
            c += alpha_sum / (factorial(k) * 4 ** (m - n))
        terms = terms + monomial(d, order, mi_scale(beta, 2), c)
    return terms


def a_n_multiindex_form(g: MetricJet, n: int, order: int | None = None) -> HeatInvariantResult:
    op, N = _operator(g, n, order)
    d = g.dim
    ks = list(range(n, 4 * n + 1))
    tasks = [(op, multiindex_polynomial(d, n, k, N), k, 2 * n) for k in ks]
    values = _evaluate(tasks)
    total = Fraction(0)
    for k, v in zip(ks, values):
        log.debug("multiindex n=%d k=%d: %s", n, k, v)
        total += v
    return HeatInvariantResult(n, d, (-1) ** n * total, "multiindex", N)


def binomial_weight(d: int, n: int, j: int) -> Fraction:
    """``binom(3n + d/2, j + d/2) / (4^j j! (j+n)!)``."""
    top = HalfInteger(6 * n + d)
    return binomial_symmetric(top, HalfInteger(2 * j + d)) / (4**j * factorial(j) * factorial(j + n))


def a_n_binomial_form(g: MetricJet, n: int, order: int | None = None) -> HeatInvariantResult:
    op, N = _operator(g, n, order)
    d = g.dim
    js = list(range(3 * n + 1))
    tasks = [(op, radius_squared_power(d, N, j), j + n, 2 * n) for j in js]
    values = _evaluate(tasks)
    total = Fraction(0)
    for j, v in zip(js, values):
        log.debug("binomial n=%d j=%d: %s", n, j, v)
        total += binomial_weight(d, n, j) * v
    return HeatInvariantResult(n, d, (-1) ** n * total, "binomial", N)


def heat_invariant(g: MetricJet, n: int, form: str = "binomial", order: int | None = None) -> HeatInvariantResult:
    if form == "multiindex":
        return a_n_multiindex_form(g, n, order)
    if form == "binomial":
        return a_n_binomial_form(g, n, order)
    raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")


def cross_check(g: MetricJet, n: int, order: int | None = None) -> bool:
    a = a_n_multiindex_form(g, n, order)
    b = a_n_binomial_form(g, n, order)
    return a.normalized_value == b.normalized_value
