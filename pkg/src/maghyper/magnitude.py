"""Magnitude of a hypergraph.

The similarity matrix has entry x^(2 d) for each pair of hyperedges (zero for
unreachable pairs). Its weighting ``w`` solves ``Z w = 1`` and the magnitude is
the coordinate sum of ``w``. :func:`neumann_magnitude` computes the same power
series independently, as an alternating sum over tuples of adjacent-distinct
hyperedges.
"""

from __future__ import annotations

from .core import Hypergraph
from .metric import INF, DistanceMatrix, distance_matrix
from .series import ONE, ZERO, HalfPoly, HalfSeries, RationalFn, linsolve_rational, series_expand


def z_matrix(h: Hypergraph, dist: DistanceMatrix | None = None) -> list[list[HalfPoly]]:
    dist = dist or distance_matrix(h)
    return [[ZERO if d == INF else HalfPoly.monomial(d) for d in row] for row in dist.d]


def weighting(h: Hypergraph) -> list[RationalFn]:
    Z = z_matrix(h)
    return linsolve_rational(Z, [ONE] * len(Z))


def magnitude_rational(h: Hypergraph) -> RationalFn:
    total = RationalFn(0)
    for w in weighting(h):
        total = total + w
    return total


def magnitude_series(h: Hypergraph, order: int) -> HalfSeries:
    return series_expand(magnitude_rational(h), order, integral=True)


def neumann_magnitude(h: Hypergraph, order: int, dist: DistanceMatrix | None = None) -> HalfSeries:
    """Alternating tuple sum truncated after x^order.

    ``layer[i][e]`` counts tuples of the current length ending at hyperedge
    ``i`` with x-degree ``e``. Every step between distinct hyperedges costs at
    least one half-unit, so at most ``order`` steps contribute.
    """
    dist = dist or distance_matrix(h)
    n = h.n_edges
    total = [0] * (order + 1)
    if n == 0:
        return HalfSeries(total, order)
    layer = [[0] * (order + 1) for _ in range(n)]
    for i in range(n):
        layer[i][0] = 1
    total[0] = n
    steps = [[(j, d) for j, d in enumerate(row) if j != i and d != INF and d <= order]
             for i, row in enumerate(dist.d)]
    sign = 1
    for _ in range(order):
        sign = -sign
        nxt = [[0] * (order + 1) for _ in range(n)]
        for i in range(n):
            src = layer[i]
            for j, d in steps[i]:
                dst = nxt[j]
                for e in range(order + 1 - d):
                    if src[e]:
                        dst[e + d] += src[e]
        for row in nxt:
            for e, c in enumerate(row):
                total[e] += sign * c
        layer = nxt
    return HalfSeries(total, order)
