"""Test metrics with known geometry, and the spectral oracle on the round sphere."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Sequence, Tuple

import numpy as np

from .jet import Jet, coordinate, monomial, radius_squared_power
from .laplacian import MetricJet


class FitConditionError(RuntimeError):
    def __init__(self, cond: float):
        super().__init__(f"least-squares system is ill-conditioned (cond ~ {cond:.3g})")
        self.cond = cond


def flat_metric(d: int, order: int) -> MetricJet:
    return MetricJet.flat(d, order)


def constant_curvature_metric(d: int, K, order: int) -> MetricJet:
    """Model space of curvature ``K`` in normal coordinates, as an order-``N`` jet.

    ``g_ij = delta_ij + phi(r^2) (r^2 delta_ij - x_i x_j)`` with
    ``phi(u) = (sn(u) - 1)/u`` and ``sn(r^2) = (sin(sqrt(K) r) / (sqrt(K) r))^2``.
    """
    if order < 2 or order % 2:
        raise ValueError("order must be even and >= 2")
    K = Fraction(K)
    # sn(u) = sum_m (-1)^m 2^(2m+1) K^m u^m / (2m+2)!, phi drops the m = 0 term
    r2 = radius_squared_power(d, order, 1)
    phi = Jet.zero(d, order)
    r2_pow = Jet.constant(d, order, 1)
    for m in range(1, order // 2 + 1):
        c = Fraction((-1) ** m * 2 ** (2 * m + 1), factorial(2 * m + 2)) * K**m
        phi = phi + r2_pow.scale(c)
        if 2 * m <= order - 2:
            r2_pow = r2_pow * r2
        else:
            break
    xs = [coordinate(d, order, i) for i in range(d)]
    h = {}
    for i in range(d):
        for j in range(i, d):
            shape = (r2 if i == j else Jet.zero(d, order)) - xs[i] * xs[j]
            h[(i, j)] = phi * shape
    return MetricJet.from_perturbation(d, order, h, normal_form=True)


@dataclass(frozen=True)
class CurvatureTensor:
    """Components ``C[i][k][j][l]`` with the algebraic symmetries of a curvature tensor."""

    dim: int
    components: Tuple[Tuple[Tuple[Tuple[Fraction, ...], ...], ...], ...]

    def __getitem__(self, ikjl):
        i, k, j, l = ikjl
        return self.components[i][k][j][l]

    def symmetry_violations(self) -> list[str]:
        d, C = self.dim, self
        bad = []
        r = range(d)
        for i in r:
            for k in r:
                for j in r:
                    for l in r:
                        if C[i, k, j, l] != -C[k, i, j, l]:
                            bad.append(f"antisymmetry (ik) at {(i, k, j, l)}")
                        if C[i, k, j, l] != -C[i, k, l, j]:
                            bad.append(f"antisymmetry (jl) at {(i, k, j, l)}")
                        if C[i, k, j, l] != C[j, l, i, k]:
                            bad.append(f"pair symmetry at {(i, k, j, l)}")
                        if C[i, k, j, l] + C[i, j, l, k] + C[i, l, k, j] != 0:
                            bad.append(f"first Bianchi at {(i, k, j, l)}")
        return bad

    @classmethod
    def from_dense(cls, d: int, dense) -> "CurvatureTensor":
        comps = tuple(
            tuple(tuple(tuple(Fraction(dense[i][k][j][l]) for l in range(d)) for j in range(d)) for k in range(d))
            for i in range(d)
        )
        return cls(d, comps)

    @classmethod
    def zero(cls, d: int) -> "CurvatureTensor":
        return cls.from_dense(d, np.zeros((d, d, d, d), dtype=int).tolist())


def _kulkarni_nomizu_square(h) -> list:
    # (1/2)(h (.) h)_{abcd} = h_ac h_bd - h_ad h_bc
    d = len(h)
    r = range(d)
    return [[[[h[a][c] * h[b][d_] - h[a][d_] * h[b][c] for d_ in r] for c in r] for b in r] for a in r]


def random_curvature_tensor(d: int, seed: int, bound: int = 3) -> CurvatureTensor:
    """Signed sum of Kulkarni-Nomizu squares of small symmetric integer matrices.

    Samples are redrawn until every component lies in ``[-bound, bound]``.
    """
    rng = random.Random(seed)
    while True:
        total = np.zeros((d, d, d, d), dtype=int)
        for _ in range(2):
            h = np.zeros((d, d), dtype=int)
            for i in range(d):
                for j in range(i, d):
                    h[i, j] = h[j, i] = rng.randint(-1, 1)
            total += rng.choice((-1, 1)) * np.array(_kulkarni_nomizu_square(h.tolist()))
        if np.abs(total).max() <= bound:
            return CurvatureTensor.from_dense(d, total.tolist())


def metric_from_curvature(C: CurvatureTensor, order: int = 2) -> MetricJet:
    """``g_ij = delta_ij + sum_kl C_ikjl x_k x_l``; normal form by (jl)-antisymmetry."""
    d = C.dim
    h = {}
    for i in range(d):
        for j in range(i, d):
            coeffs: Dict[tuple, Fraction] = {}
            for k in range(d):
                for l in range(d):
                    c = C[i, k, j, l]
                    if c:
                        alpha = [0] * d
                        alpha[k] += 1
                        alpha[l] += 1
                        coeffs[tuple(alpha)] = coeffs.get(tuple(alpha), 0) + c
            h[(i, j)] = Jet(d, order, coeffs)
    return MetricJet.from_perturbation(d, order, h, normal_form=True)


def random_normal_2jet(d: int, seed: int, order: int = 16) -> MetricJet:
    if d < 2:
        raise ValueError("random curvature needs d >= 2")
    return metric_from_curvature(random_curvature_tensor(d, seed), order)


# --------------------------------------------------------------------------
# spectral oracle (the only floating point in the package)


def sphere_heat_trace(t: float, k_max: int) -> float:
    """``sum_{k <= k_max} (2k+1) exp(-t k(k+1))``: the heat trace of the unit 2-sphere."""
    k = np.arange(k_max + 1, dtype=float)
    return float(np.sum((2 * k + 1) * np.exp(-t * k * (k + 1))))


def default_times(count: int = 8, t_min: float = 0.004, t_max: float = 0.04) -> list[float]:
    return list(np.geomspace(t_min, t_max, count))


def sphere_trace_fit(
    n_max: int,
    t_list: Sequence[float] | None = None,
    k_max: int = 4000,
    extra_terms: int = 3,
    max_condition: float = 1e12,
) -> list[float]:
    """Fit ``a_0/t + a_1 + a_2 t + ...`` to the S^2 heat trace; return ``[a_0..a_n_max]``.

    ``extra_terms`` higher powers are fitted and discarded so that they do
    not leak into the reported coefficients.
    """
    t = np.asarray(t_list if t_list is not None else default_times(), dtype=float)
    if np.any(t <= 0):
        raise ValueError("times must be positive")
    if np.exp(-t.min() * k_max**2) > 1e-15:
        raise ValueError("k_max too small: spectral tail is not negligible")
    n_cols = n_max + 1 + extra_terms
    if len(t) < n_cols:
        raise ValueError(f"need at least {n_cols} times for {n_cols} unknowns")
    y = np.array([sphere_heat_trace(ti, k_max) for ti in t]) * t
    # columns t^0..t^(n_cols-1) after multiplying the model through by t
    V = np.vander(t, n_cols, increasing=True)
    scale = np.abs(V).max(axis=0)
    Vs = V / scale
    cond = np.linalg.cond(Vs)
    if cond > max_condition:
        raise FitConditionError(cond)
    coef, *_ = np.linalg.lstsq(Vs, y, rcond=None)
    coef = coef / scale
    return [float(c) for c in coef[: n_max + 1]]
