"""Metric jets and the Laplace-Beltrami operator built from them.

Sign convention is the geometer's: on flat space ``Delta = -sum d^2/dx_i^2``.
The operator is stored in non-divergence form

    Delta f = sum_ij A^ij d_i d_j f + sum_i B^i d_i f,
    A^ij = -g^ij,   B^i = -(1/sqrt g) sum_j d_j(sqrt g g^ij).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .jet import Jet, coordinate, dot


class MetricError(ValueError):
    """Metric jet violates symmetry or the ``g(0) = I`` normalization."""


class MetricJet:
    """Symmetric ``d x d`` matrix of jets with ``g_ij(0) = delta_ij``.

    ``normal_form`` records whether the Gauss condition
    ``sum_j g_ij(x) x_j = x_i`` holds through order ``N``; if not given it
    is detected, and claiming it for a metric that fails the check raises.
    """

    __slots__ = ("dim", "order", "entries", "normal_form", "_hash")

    def __init__(self, entries: Sequence[Sequence[Jet]], normal_form: bool | None = None):
        rows = tuple(tuple(row) for row in entries)
        d = len(rows)
        if d < 1 or any(len(row) != d for row in rows):
            raise MetricError("metric must be a square, non-empty matrix of jets")
        order = rows[0][0].order
        for i in range(d):
            for j in range(d):
                e = rows[i][j]
                if e.dim != d or e.order != order:
                    raise MetricError(f"entry ({i + 1},{j + 1}) has shape (d={e.dim}, N={e.order})")
                if e.value_at_origin() != (1 if i == j else 0):
                    raise MetricError(f"g_{i + 1}{j + 1}(0) must be {1 if i == j else 0}")
                if j > i and e != rows[j][i]:
                    raise MetricError(f"g_{i + 1}{j + 1} != g_{j + 1}{i + 1}")
        self.dim = d
        self.order = order
        self.entries = rows
        self._hash = None
        holds = self.gauss_condition_holds()
        if normal_form and not holds:
            raise MetricError("normal_form claimed but sum_j g_ij x_j != x_i")
        self.normal_form = holds if normal_form is None else bool(normal_form)

    @classmethod
    def flat(cls, d: int, order: int) -> "MetricJet":
        one, zero = Jet.constant(d, order, 1), Jet.zero(d, order)
        return cls([[one if i == j else zero for j in range(d)] for i in range(d)])

    @classmethod
    def from_perturbation(cls, d: int, order: int, h: Dict[Tuple[int, int], Jet], normal_form=None) -> "MetricJet":
        """``g = I + h`` with ``h`` given on ``i <= j`` (0-based), mirrored below."""
        rows = [[Jet.constant(d, order, 1 if i == j else 0) for j in range(d)] for i in range(d)]
        for (i, j), jet in h.items():
            if i > j:
                i, j = j, i
            rows[i][j] = rows[i][j] + jet
            if i != j:
                rows[j][i] = rows[i][j]
        return cls(rows, normal_form)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, MetricJet):
            return NotImplemented
        return self.entries == other.entries and self.normal_form == other.normal_form

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.entries, self.normal_form))
        return self._hash

    def __repr__(self):
        return f"MetricJet(d={self.dim}, N={self.order}, normal_form={self.normal_form})"

    def truncate(self, order: int) -> "MetricJet":
        return MetricJet([[e.truncate(order) for e in row] for row in self.entries], self.normal_form)

    def gauss_condition_holds(self) -> bool:
        # g x has degree up to N + 1, so compare one order higher
        d, N = self.dim, self.order + 1
        xs = [coordinate(d, N, i) for i in range(d)]
        rows = [[e.lift(N) for e in row] for row in self.entries]
        for i in range(d):
            lhs = dot([(rows[i][j], xs[j]) for j in range(d)])
            if lhs != xs[i]:
                return False
        return True


def invert_matrix(m: Sequence[Sequence[Jet]]):
    """Gauss-Jordan inverse over the jet ring; returns ``(inverse, det)``.

    Pivots are taken on the diagonal, so every leading principal minor must
    have an invertible constant term (true when ``m(0) = I``).
    """
    d = len(m)
    a = [list(row) for row in m]
    inv = [[Jet.constant(row[0].dim, row[0].order, 1 if i == j else 0) for j in range(d)] for i, row in enumerate(m)]
    det = Jet.constant(a[0][0].dim, a[0][0].order, 1)
    for c in range(d):
        pivot = a[c][c]
        if not pivot.value_at_origin():
            raise MetricError("singular pivot in jet matrix inversion")
        det = det * pivot
        p_inv = pivot.reciprocal()
        a[c] = [e * p_inv for e in a[c]]
        inv[c] = [e * p_inv for e in inv[c]]
        for r in range(d):
            if r == c or not a[r][c]:
                continue
            f = a[r][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
    return inv, det


@dataclass(frozen=True, eq=False)
class LaplaceOperator:
    """``f -> sum A^ij d_i d_j f + sum B^i d_i f`` with jet coefficients.

    ``B`` is built from first derivatives of order-``N`` jets, so its
    degree-``N`` part is not a Taylor coefficient of the true operator.
    """

    dim: int
    order: int
    second_order: Tuple[Tuple[Jet, ...], ...]
    first_order: Tuple[Jet, ...]
    _terms: dict = field(default_factory=dict, repr=False)

    def terms(self, max_coeff_degree: int | None = None):
        """Fused ``[(coefficient, (i, j))]`` list; ``j is None`` marks a first-order term.

        Off-diagonal second-order terms are folded pairwise (``A`` is
        symmetric).  Coefficient terms above ``max_coeff_degree`` are dropped.
        """
        cached = self._terms.get(max_coeff_degree)
        if cached is not None:
            return cached
        d = self.dim
        out = []
        for i in range(d):
            for j in range(i, d):
                c = self.second_order[i][j]
                if i != j:
                    c = c.scale(2)
                out.append((c, (i, j)))
        for i in range(d):
            out.append((self.first_order[i], (i, None)))
        if max_coeff_degree is not None:
            out = [(_drop_above(c, max_coeff_degree), ij) for c, ij in out]
        out = [(c, ij) for c, ij in out if c]
        self._terms[max_coeff_degree] = out
        return out

    def __call__(self, f: Jet) -> Jet:
        return apply(self, f)


def _drop_above(jet: Jet, degree: int) -> Jet:
    return jet.truncate(degree).lift(jet.order) if degree < jet.order else jet


@lru_cache(maxsize=32)
def build_laplacian(g: MetricJet) -> LaplaceOperator:
    d, N = g.dim, g.order
    ginv, det = invert_matrix(g.entries)
    s = det.inv_sqrt()
    sqrt_g = det * s
    A = tuple(tuple(-ginv[i][j] for j in range(d)) for i in range(d))
    B = []
    for i in range(d):
        div = Jet.zero(d, N)
        for j in range(d):
            div = div + (sqrt_g * ginv[i][j]).partial(j)
        B.append(-(s * div))
    return LaplaceOperator(d, N, A, tuple(B))


def _apply_terms(terms, f: Jet, order: int) -> Jet:
    if not terms:
        return Jet.zero(f.dim, order)
    firsts = {}
    pairs = []
    for coeff, (i, j) in terms:
        if i not in firsts:
            firsts[i] = f.partial(i)
        df = firsts[i] if j is None else firsts[i].partial(j)
        if df:
            pairs.append((coeff, df))
    if not pairs:
        return Jet.zero(f.dim, order)
    return dot(pairs, order)


def _check_shape(op: LaplaceOperator, f: Jet):
    if f.dim != op.dim or f.order != op.order:
        raise ValueError(f"jet (d={f.dim}, N={f.order}) does not match operator (d={op.dim}, N={op.order})")


def apply(op: LaplaceOperator, f: Jet) -> Jet:
    _check_shape(op, f)
    return _apply_terms(op.terms(), f, op.order)


def apply_power(op: LaplaceOperator, f: Jet, k: int) -> Jet:
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_shape(op, f)
    for _ in range(k):
        f = _apply_terms(op.terms(), f, op.order)
    return f


def power_at_origin(op: LaplaceOperator, f: Jet, k: int, max_coeff_degree: int | None = None) -> Fraction:
    """``(Delta^k f)(0)``, computing only the degrees that can still reach 0.

    After ``s`` of ``k`` applications only degrees ``<= 2(k - s)`` matter.
    ``max_coeff_degree`` further cuts the operator coefficients; for a
    result of weight ``2n`` (see the heat invariants) ``2n`` is exact.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_shape(op, f)
    if 2 * k - 2 > op.order:
        raise ValueError(f"order {op.order} too small for {k} applications")
    terms = op.terms(max_coeff_degree)
    for s in range(1, k + 1):
        target = 2 * (k - s)
        f = f.truncate(min(target + 2, f.order))
        f = _apply_terms(terms, f, target)
    return f.value_at_origin()


def scalar_curvature_at_origin(g: MetricJet) -> Fraction:
    """Scalar curvature at ``x = 0`` from Christoffel symbols; unit ``S^d`` gives ``d(d-1)``."""
    if g.order < 2:
        raise ValueError("scalar curvature needs a metric jet of order >= 2")
    d = g.dim
    m = [[e.truncate(2) for e in row] for row in g.entries]
    # g(0) = I, so g^-1 = I - E + E^2 through order 2
    eye = [[Jet.constant(d, 2, 1 if i == j else 0) for j in range(d)] for i in range(d)]
    E = [[m[i][j] - eye[i][j] for j in range(d)] for i in range(d)]
    E2 = [[dot([(E[i][k], E[k][j]) for k in range(d)]) for j in range(d)] for i in range(d)]
    ginv = [[eye[i][j] - E[i][j] + E2[i][j] for j in range(d)] for i in range(d)]
    dg = [[[m[i][j].partial(k) for k in range(d)] for j in range(d)] for i in range(d)]

    def christoffel(k, i, j):
        return dot([(ginv[k][l], (dg[j][l][i] + dg[i][l][j] - dg[i][j][l]).scale(Fraction(1, 2))) for l in range(d)])

    gamma = [[[christoffel(k, i, j) for j in range(d)] for i in range(d)] for k in range(d)]
    gam0 = [[[gamma[k][i][j].value_at_origin() for j in range(d)] for i in range(d)] for k in range(d)]
    tau = Fraction(0)
    for b in range(d):
        for c in range(d):
            h = ginv[b][c].value_at_origin()
            if not h:
                continue
            ric = Fraction(0)
            for a in range(d):
                ric += gamma[a][b][c].partial(a).value_at_origin()
                ric -= gamma[a][a][b].partial(c).value_at_origin()
                for e in range(d):
                    ric += gam0[a][a][e] * gam0[e][b][c] - gam0[a][c][e] * gam0[e][a][b]
            tau += h * ric
    return tau
