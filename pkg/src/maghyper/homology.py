"""Magnitude chain complexes and their integral homology.

Two flavors are supported. In the ``"hyperedge"`` flavor generators are tuples
of hyperedge indices and distances come from :func:`metric.distance_matrix`;
in the ``"simple"`` flavor they are tuples of vertex indices with distances
from :func:`metric.vertex_distance_matrix`.

Lengths are keyed by ``length2``, the total length in half-units.

Neither end face of a tuple ever preserves length (distinct neighbours are at
positive distance), so the differential fixes the first and last entries and
every complex splits into blocks by endpoint pair. Homology is computed block
by block.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Mapping

from .core import Hypergraph, ResourceCapExceeded
from .metric import DistanceMatrix, distance_matrix, format_half, vertex_distance_matrix
from .smith import Matrix, identity, matmul, smith_decomposition, smith_normal_form

FLAVORS = ("hyperedge", "simple")
DEFAULT_GENERATOR_CAP = 10**7

Generator = tuple[int, ...]
Chain = dict  # Generator -> int


class GeneratorCapExceeded(ResourceCapExceeded):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def _check_flavor(flavor: str):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


def flavor_distances(h: Hypergraph, flavor: str) -> DistanceMatrix:
    _check_flavor(flavor)
    return distance_matrix(h) if flavor == "hyperedge" else vertex_distance_matrix(h)


def min_step(flavor: str) -> int:
    """Smallest length of one step between distinct items, in half-units."""
    _check_flavor(flavor)
    return 1 if flavor == "hyperedge" else 2


def tuple_length2(d, items) -> float:
    return sum(d[a][b] for a, b in zip(items, items[1:]))


# -- finitely generated abelian groups ---------------------------------------


def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors(orders) -> tuple[int, ...]:
    """Canonical divisor chain of ``⊕ Z/n`` over the given finite orders."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for n in orders:
        if n < 0:
            raise ValueError("orders must be nonnegative")
        for q in _prime_powers(n):
            p = next(d for d in range(2, q + 1) if q % d == 0)
            by_prime[p].append(q)
    if not by_prime:
        return ()
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max(len(qs) for qs in by_prime.values())
    factors = []
    for i in range(length):
        f = 1
        for qs in by_prime.values():
            if i < len(qs):
                f *= qs[i]
        factors.append(f)
    return tuple(sorted(factors))


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tm`` with ``t1 | t2 | ... | tm``, all ``> 1``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = invariant_factors(x for x in self.torsion if x != 1)
        if any(x == 0 for x in self.torsion):
            raise ValueError("torsion orders must be positive; use rank for Z summands")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, orders) -> "HomologyGroup":
        """Direct sum of cyclic groups; order 0 means a copy of Z."""
        orders = list(orders)
        return cls(sum(1 for o in orders if o == 0), tuple(o for o in orders if o > 1))

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def direct_sum(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup(self.rank + other.rank, self.torsion + other.torsion)

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        return self.direct_sum(other)

    def tensor(self, other: "HomologyGroup") -> "HomologyGroup":
        tors = [t for t in self.torsion for _ in range(other.rank)]
        tors += [t for t in other.torsion for _ in range(self.rank)]
        tors += [gcd(a, b) for a in self.torsion for b in other.torsion]
        return HomologyGroup(self.rank * other.rank, tuple(tors))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def direct_sum(groups) -> HomologyGroup:
    return reduce(HomologyGroup.direct_sum, groups, HomologyGroup())


# -- generators and complexes -------------------------------------------------


def enumerate_generators(
    h: Hypergraph,
    flavor: str,
    length2_max: int,
    *,
    k_max: int | None = None,
    cap: int = DEFAULT_GENERATOR_CAP,
    dist: DistanceMatrix | None = None,
) -> dict[tuple[int, int], list[Generator]]:
    """All generators with total length at most ``length2_max``.

    Keys are ``(k, length2)``; each list is in lexicographic order of item
    indices. ``k_max`` bounds the number of steps.
    """
    if length2_max < 0:
        raise ValueError("length2_max must be nonnegative")
    dist = dist or flavor_distances(h, flavor)
    d = dist.d
    n = dist.size
    nbrs = [[(j, d[i][j]) for j in range(n) if j != i and d[i][j] <= length2_max]
            for i in range(n)]
    out: dict[tuple[int, int], list[Generator]] = defaultdict(list)
    count = 0
    depth_cap = k_max if k_max is not None else length2_max

    def extend(prefix: list[int], used: int):
        nonlocal count
        out[(len(prefix) - 1, used)].append(tuple(prefix))
        count += 1
        if count > cap:
            raise GeneratorCapExceeded(f"more than {cap} generators")
        if len(prefix) - 1 >= depth_cap:
            return
        last = prefix[-1]
        for j, w in nbrs[last]:
            if used + w <= length2_max:
                prefix.append(j)
                extend(prefix, used + w)
                prefix.pop()

    for s in range(n):
        extend([s], 0)
    return dict(out)


def faces(d, gen: Generator, length2: int):
    """Surviving faces ``(i, face)`` of ``gen``: consecutive items distinct and length kept."""
    k = len(gen) - 1
    if k == 0:
        return
    for i in range(k + 1):
        face = gen[:i] + gen[i + 1:]
        if any(a == b for a, b in zip(face, face[1:])):
            continue
        if tuple_length2(d, face) == length2:
            yield i, face


def chain_boundary(d, chain: Mapping[Generator, int]) -> Chain:
    """Differential applied to a formal combination of generators."""
    out: Chain = defaultdict(int)
    for gen, c in chain.items():
        if not c:
            continue
        l2 = tuple_length2(d, gen)
        for i, face in faces(d, gen, l2):
            out[face] += -c if i % 2 else c
    return {g: c for g, c in out.items() if c}


@dataclass
class GradedComplex:
    """Magnitude chain complex in one length grading."""

    flavor: str
    length2: int
    levels: dict[int, list[Generator]]
    dist: DistanceMatrix = field(repr=False)
    _index: dict = field(default_factory=dict, repr=False)

    def level(self, k: int) -> list[Generator]:
        return self.levels.get(k, [])

    def index(self, k: int) -> dict[Generator, int]:
        if k not in self._index:
            self._index[k] = {g: i for i, g in enumerate(self.level(k))}
        return self._index[k]

    @property
    def top(self) -> int:
        return max((k for k, v in self.levels.items() if v), default=-1)

    @property
    def length(self) -> str:
        return format_half(self.length2)


def build_complexes(
    h: Hypergraph,
    flavor: str,
    length2_max: int,
    *,
    k_max: int | None = None,
    cap: int = DEFAULT_GENERATOR_CAP,
    dist: DistanceMatrix | None = None,
) -> dict[int, GradedComplex]:
    dist = dist or flavor_distances(h, flavor)
    gens = enumerate_generators(h, flavor, length2_max, k_max=k_max, cap=cap, dist=dist)
    levels: dict[int, dict[int, list]] = defaultdict(dict)
    for (k, l2), lst in gens.items():
        levels[l2][k] = lst
    return {l2: GradedComplex(flavor, l2, levels.get(l2, {}), dist) for l2 in range(length2_max + 1)}


def build_complex(h: Hypergraph, flavor: str, length2: int, **kw) -> GradedComplex:
    return build_complexes(h, flavor, length2, **kw)[length2]


def boundary_matrix(cx: GradedComplex, k: int) -> Matrix:
    """Integer matrix of ∂: level k -> level k-1 (rows index level k-1)."""
    src = cx.level(k)
    tgt = cx.index(k - 1)
    M = [[0] * len(src) for _ in range(len(tgt))]
    if k == 0:
        return M
    d = cx.dist.d
    for col, gen in enumerate(src):
        for i, face in faces(d, gen, cx.length2):
            M[tgt[face]][col] += -1 if i % 2 else 1
    return M


# -- homology ------------------------------------------------------------------


@dataclass
class HomologyTable:
    """Bigraded groups ``MH_{k, l}`` keyed by ``(k, length2)``."""

    flavor: str
    entries: dict[tuple[int, int], HomologyGroup]
    complete: dict[tuple[int, int], bool]
    length2_max: int
    k_max: int | None = None

    def group(self, k: int, length2: int) -> HomologyGroup:
        if (k, length2) in self.entries:
            return self.entries[(k, length2)]
        if self.is_complete(k, length2):
            return HomologyGroup()
        raise KeyError(f"cell ({k}, {format_half(length2)}) was not computed")

    def is_complete(self, k: int, length2: int) -> bool:
        if (k, length2) in self.complete:
            return self.complete[(k, length2)]
        if length2 > self.length2_max or k < 0:
            return False
        return self.k_max is None or k <= self.k_max

    def rank(self, k: int, length2: int) -> int:
        return self.group(k, length2).rank

    def euler(self, length2: int) -> int:
        return sum((-1) ** k * g.rank for (k, l2), g in self.entries.items() if l2 == length2)

    def to_json(self) -> dict:
        out = {}
        for (k, l2) in sorted(self.entries):
            g = self.entries[(k, l2)]
            out[f"({k},{format_half(l2)})"] = {**g.to_json(), "complete": self.complete[(k, l2)]}
        return out


def _blocks(gens: list[Generator]) -> dict[tuple[int, int], list[Generator]]:
    out: dict[tuple[int, int], list[Generator]] = defaultdict(list)
    for g in gens:
        out[(g[0], g[-1])].append(g)
    return out


def _block_matrix(d, length2: int, src: list[Generator], tgt_index: dict) -> Matrix:
    M = [[0] * len(src) for _ in range(len(tgt_index))]
    for col, gen in enumerate(src):
        for i, face in faces(d, gen, length2):
            try:
                row = tgt_index[face]
            except KeyError:  # pragma: no cover - end faces never survive
                raise AssertionError(f"face {face} of {gen} left its endpoint block")
            M[row][col] += -1 if i % 2 else 1
    return M


def grading_homology(cx: GradedComplex, k_limit: int | None = None) -> dict[int, HomologyGroup]:
    """``MH_{k,l}`` for every ``k`` up to the top level (or ``k_limit``)."""
    d = cx.dist.d
    top = cx.top
    if top < 0:
        return {}
    kmax = top if k_limit is None else min(top, k_limit)
    ranks: dict[int, int] = defaultdict(int)      # rank of ∂_k
    torsion: dict[int, list[int]] = defaultdict(list)  # divisors > 1 of ∂_k
    if cx.length2 == 0:
        # a length-0 tuple has no steps; only level 0 is populated
        return {0: HomologyGroup(len(cx.level(0)))}
    block_levels: dict[tuple[int, int], dict[int, list[Generator]]] = defaultdict(dict)
    for k in range(top + 1):
        for key, lst in _blocks(cx.level(k)).items():
            block_levels[key][k] = lst
    for key, lv in block_levels.items():
        for k in range(1, kmax + 2):
            src, tgt = lv.get(k, []), lv.get(k - 1, [])
            if not src or not tgt:
                continue
            M = _block_matrix(d, cx.length2, src, {g: i for i, g in enumerate(tgt)})
            divs, r = smith_normal_form(M)
            ranks[k] += r
            torsion[k].extend(x for x in divs if x > 1)
    out = {}
    for k in range(kmax + 1):
        n_k = len(cx.level(k))
        out[k] = HomologyGroup(n_k - ranks[k] - ranks[k + 1], tuple(torsion[k + 1]))
    return out


def homology_table(
    h: Hypergraph,
    flavor: str,
    length2_max: int,
    *,
    k_max: int | None = None,
    cap: int = DEFAULT_GENERATOR_CAP,
) -> HomologyTable:
    """Integral magnitude homology for every grading up to ``length2_max``.

    Without ``k_max`` every grading is complete: a tuple with ``k`` steps has
    length at least ``k`` times the minimum step, so the complexes are finite.
    With ``k_max`` generators are enumerated through ``k_max + 1`` steps and
    cells up to ``k_max`` are reported.
    """
    dist = flavor_distances(h, flavor)
    try:
        cxs = build_complexes(h, flavor, length2_max,
                              k_max=None if k_max is None else k_max + 1, cap=cap, dist=dist)
    except GeneratorCapExceeded as exc:
        partial = _partial_table(h, flavor, length2_max, k_max, cap, dist)
        raise GeneratorCapExceeded(str(exc), partial) from None
    return _table_from(flavor, cxs, length2_max, k_max)


def _table_from(flavor, cxs, length2_max, k_max) -> HomologyTable:
    entries, complete = {}, {}
    step = min_step(flavor)
    for l2, cx in sorted(cxs.items()):
        bound = l2 // step
        kmax = bound if k_max is None else min(bound, k_max)
        groups = grading_homology(cx, kmax)
        for k in range(kmax + 1):
            entries[(k, l2)] = groups.get(k, HomologyGroup())
            complete[(k, l2)] = True
    return HomologyTable(flavor, entries, complete, length2_max, k_max)


def _partial_table(h, flavor, length2_max, k_max, cap, dist) -> HomologyTable:
    done = {}
    for l2 in range(length2_max + 1):
        try:
            cxs = build_complexes(h, flavor, l2,
                                  k_max=None if k_max is None else k_max + 1, cap=cap, dist=dist)
        except GeneratorCapExceeded:
            return _table_from(flavor, done, l2 - 1, k_max)
        done[l2] = cxs[l2]
    return _table_from(flavor, done, length2_max, k_max)


# -- explicit homology bases (used for induced maps) -----------------------------


@dataclass
class _BlockBasis:
    positions: list[int]    # indices of the block's generators within level k
    vinv_rows: Matrix
    uprime: Matrix
    keep: list[int]
    orders: list[int]
    reps: list[list[int]]   # local to the block

    def coordinates(self, cycle: list[int]) -> list[int]:
        local = [cycle[p] for p in self.positions]
        c = [sum(a * b for a, b in zip(row, local) if a) for row in self.vinv_rows]
        y = [sum(a * b for a, b in zip(row, c) if a) for row in self.uprime]
        return [y[i] % o if o else y[i] for i, o in zip(self.keep, self.orders)]


def _block_basis(A: Matrix, B: Matrix, n_k: int, n_next: int, positions: list[int]) -> _BlockBasis:
    """Homology basis of ``ker A / im B`` for one block; ``A`` may have no rows."""
    if A and any(map(any, A)):
        sa = smith_decomposition(A)
        rank_a, V, Vinv = sa.rank, sa.V, sa.V_inv
    else:
        rank_a = 0
        V = Vinv = identity(n_k)
    kernel_cols = list(range(rank_a, n_k))
    vinv_rows = [Vinv[i] for i in kernel_cols]
    m = len(kernel_cols)
    if n_next and m:
        sb = smith_decomposition(matmul(vinv_rows, B, inner=n_k))
        divs, up, up_inv = sb.divisors, sb.U, sb.U_inv
    else:
        divs, up = [], identity(m)
        up_inv = up
    r = len(divs)
    keep = [i for i in range(r) if divs[i] > 1] + list(range(r, m))
    orders = [divs[i] if i < r else 0 for i in keep]
    reps = []
    for i in keep:
        coeff = [(b, up_inv[b][i]) for b in range(m) if up_inv[b][i]]
        reps.append([sum(V[a][kernel_cols[b]] * c for b, c in coeff) for a in range(n_k)])
    return _BlockBasis(positions, vinv_rows, up, keep, orders, reps)


@dataclass
class HomologyBasis:
    """Generators of ``MH_{k,l}`` and a coordinate map for cycles.

    ``orders[i]`` is 0 for a free generator and ``d > 1`` for a ``Z/d``
    generator; :meth:`coordinates` returns torsion coordinates reduced mod
    their order. The basis is assembled block by block over the endpoint
    pairs ``(first, last)``, which the differential preserves.
    """

    group: HomologyGroup
    generators: list[Generator]     # chain basis of level k
    orders: list[int]
    representatives: list[list[int]]
    _parts: list[_BlockBasis] = field(repr=False)

    def coordinates(self, cycle: list[int]) -> list[int]:
        out: list[int] = []
        for part in self._parts:
            out.extend(part.coordinates(cycle))
        return out


def homology_basis(cx: GradedComplex, k: int) -> HomologyBasis:
    d, l2 = cx.dist.d, cx.length2
    gens = cx.level(k)
    index = cx.index(k)
    below = _blocks(cx.level(k - 1)) if k > 0 else {}
    above = _blocks(cx.level(k + 1))
    parts, orders, reps = [], [], []
    for key, src in sorted(_blocks(gens).items()):
        local = {g: i for i, g in enumerate(src)}
        prev = below.get(key, [])
        A = _block_matrix(d, l2, src, {g: i for i, g in enumerate(prev)}) if prev else []
        nxt = above.get(key, [])
        B = _block_matrix(d, l2, nxt, local) if nxt else []
        positions = [index[g] for g in src]
        part = _block_basis(A, B, len(src), len(nxt), positions)
        parts.append(part)
        orders.extend(part.orders)
        for rep in part.reps:
            full = [0] * len(gens)
            for p, c in zip(positions, rep):
                full[p] = c
            reps.append(full)
    group = HomologyGroup(sum(1 for o in orders if not o), tuple(o for o in orders if o))
    return HomologyBasis(group, gens, orders, reps, parts)


# -- checks ---------------------------------------------------------------------


@dataclass
class GradingVerdict:
    length2: int
    homology_euler: int
    chain_euler: int
    magnitude_coeff: int

    @property
    def ok(self) -> bool:
        return self.homology_euler == self.chain_euler == self.magnitude_coeff

    def to_json(self) -> dict:
        return {
            "l": format_half(self.length2),
            "homology": self.homology_euler,
            "chains": self.chain_euler,
            "magnitude": self.magnitude_coeff,
            "ok": self.ok,
        }


def euler_check(h: Hypergraph, length2_max: int, *, cap: int = DEFAULT_GENERATOR_CAP) -> list[GradingVerdict]:
    """Compare the alternating rank sum of each grading against the magnitude series."""
    from .magnitude import magnitude_series

    series = magnitude_series(h, length2_max)
    dist = flavor_distances(h, "hyperedge")
    cxs = build_complexes(h, "hyperedge", length2_max, cap=cap, dist=dist)
    table = _table_from("hyperedge", cxs, length2_max, None)
    out = []
    for l2 in range(length2_max + 1):
        chains = sum((-1) ** k * len(v) for k, v in cxs[l2].levels.items())
        out.append(GradingVerdict(l2, table.euler(l2), chains, series[l2]))
    return out


@dataclass
class StructuralVerdict:
    degree00_rank: int
    n_edges: int
    degree1half_rank: int
    inclusion_pairs: list[tuple[int, int]]
    degree1half_basis: list[Generator]
    torsion_free: bool

    @property
    def ok(self) -> bool:
        return (
            self.degree00_rank == self.n_edges
            and self.degree1half_rank == len(self.inclusion_pairs)
            and sorted(self.degree1half_basis) == sorted(self.inclusion_pairs)
            and self.torsion_free
        )


def structural_checks(h: Hypergraph) -> StructuralVerdict:
    """Degree (0, 0) is free on hyperedges; degree (1, 1/2) is free on proper inclusions."""
    dist = distance_matrix(h)
    cxs = build_complexes(h, "hyperedge", 1, dist=dist)
    table = _table_from("hyperedge", cxs, 1, None)
    sets = [frozenset(e) for e in h.edges]
    pairs = [(i, j) for i in range(h.n_edges) for j in range(h.n_edges)
             if i != j and (sets[i] < sets[j] or sets[j] < sets[i])]
    g00, g1 = table.group(0, 0), table.group(1, 1)
    basis = homology_basis(cxs[1], 1)
    basis_gens = []
    for rep in basis.representatives:
        nz = [cxs[1].level(1)[i] for i, c in enumerate(rep) if c]
        if len(nz) == 1 and abs(rep[cxs[1].index(1)[nz[0]]]) == 1:
            basis_gens.append(nz[0])
    return StructuralVerdict(
        g00.rank, h.n_edges, g1.rank, pairs, basis_gens,
        not g00.torsion and not g1.torsion,
    )
