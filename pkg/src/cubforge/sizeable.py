"""Sizeable graphs: verification, generators, Zarankiewicz bounds and counting bounds.

A sizeable graph is a simple bipartite graph on ``A | B`` without 4-cycles,
together with splits ``A = A0 | A1`` and ``B = B0 | B1`` such that each of the
four *defining subgraphs* ``G[A^s | B^t]`` is connected (and non-empty).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

import numpy as np
from sympy import isprime

from .graph import (
    GraphError,
    LabeledGraph,
    components,
    contains_four_cycle,
    parallel_pair,
)

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class SizeablePartition:
    A0: tuple[int, ...]
    A1: tuple[int, ...]
    B0: tuple[int, ...]
    B1: tuple[int, ...]

    def __post_init__(self):
        for name in ("A0", "A1", "B0", "B1"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(sorted(self.A0 + self.A1))

    @property
    def B(self) -> tuple[int, ...]:
        return tuple(sorted(self.B0 + self.B1))

    def a(self, s: int) -> tuple[int, ...]:
        return self.A1 if s else self.A0

    def b(self, t: int) -> tuple[int, ...]:
        return self.B1 if t else self.B0

    def defining_set(self, s: int, t: int) -> tuple[int, ...]:
        return tuple(sorted(self.a(s) + self.b(t)))

    def sizes(self) -> tuple[int, int, int, int]:
        return len(self.A0), len(self.A1), len(self.B0), len(self.B1)

    def side_of(self, v: int) -> str:
        return "A" if v in self.A0 or v in self.A1 else "B"

    def part_of(self, v: int) -> int:
        return 1 if (v in self.A1 or v in self.B1) else 0

    def check_covers(self, g: LabeledGraph) -> None:
        sets = [set(self.A0), set(self.A1), set(self.B0), set(self.B1)]
        seen: set[int] = set()
        for s in sets:
            if s & seen:
                raise GraphError("partition parts overlap")
            seen |= s
        if seen != set(range(g.n)):
            missing = sorted(set(range(g.n)) - seen)
            extra = sorted(seen - set(range(g.n)))
            raise GraphError(f"partition does not cover the vertices (missing {missing}, unknown {extra})")
        if g.side is not None:
            for v in self.A:
                if g.side[v] not in (None, "A"):
                    raise GraphError(f"vertex {v} is tagged {g.side[v]} but placed on side A")
            for v in self.B:
                if g.side[v] not in (None, "B"):
                    raise GraphError(f"vertex {v} is tagged {g.side[v]} but placed on side B")

    def apply(self, g: LabeledGraph) -> LabeledGraph:
        """Copy of ``g`` carrying this partition as side/part tags."""
        side = ["A" if v in self.A else "B" for v in range(g.n)]
        part = [self.part_of(v) for v in range(g.n)]
        return LabeledGraph(g.n, g.edges, tuple(side), tuple(part), g.names, crossing=False)

    @classmethod
    def from_tags(cls, g: LabeledGraph) -> SizeablePartition:
        if g.side is None or g.part is None or None in g.side or None in g.part:
            raise GraphError("graph needs side and part tags on every vertex")
        pick = lambda sd, pt: [v for v in range(g.n) if g.side[v] == sd and g.part[v] == pt]
        return cls(pick("A", 0), pick("A", 1), pick("B", 0), pick("B", 1))

    def to_json(self) -> dict:
        return {k: list(getattr(self, k)) for k in ("A0", "A1", "B0", "B1")}


@dataclass
class SizeableReport:
    verdict: bool
    failures: list[tuple[str, object]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "failures": [{"condition": c, "witness": w} for c, w in self.failures]}


def verify_sizeable(g: LabeledGraph, p: SizeablePartition) -> SizeableReport:
    """Check every sizeable condition; each failure carries a witness."""
    p.check_covers(g)
    failures: list[tuple[str, object]] = []
    A = set(p.A)
    for u, v in g.edges:
        if (u in A) == (v in A):
            failures.append(("bipartite", [u, v]))
            break
    pp = parallel_pair(g)
    if pp is not None:
        failures.append(("simple", list(pp)))
    c4 = contains_four_cycle(g)
    if c4 is not None:
        failures.append(("no-4-cycle", c4.to_json()))
    empty = [name for name in ("A0", "A1", "B0", "B1") if not getattr(p, name)]
    if empty:
        failures.append(("non-empty parts", empty))
    for s, t in PAIRS:
        verts = p.defining_set(s, t)
        comps = components(g, verts)
        if len(comps) != 1:
            witness = [comps[0][0], comps[1][0]] if len(comps) > 1 else []
            failures.append((f"connected({s},{t})", witness))
    return SizeableReport(not failures, failures)


def is_sizeable(g: LabeledGraph, p: SizeablePartition) -> bool:
    return verify_sizeable(g, p).verdict


# -- arithmetic graphs ------------------------------------------------------


@dataclass(frozen=True)
class ArithmeticParams:
    """``a_s^i`` is joined to ``b_t^(i + h[s][t])`` and ``b_t^(i + k[s][t])``."""

    n: int
    h: tuple[tuple[int, int], tuple[int, int]]
    k: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        red = lambda m: tuple(tuple(int(x) % self.n for x in row) for row in m)
        object.__setattr__(self, "h", red(self.h))
        object.__setattr__(self, "k", red(self.k))

    @classmethod
    def from_normal_form(cls, n: int, a: int, b: int, c: int, d: int, e: int) -> ArithmeticParams:
        """Parameters with ``h00 = h01 = h10 = 0`` and ``a = k00, b = -k10,
        c = k01, d = -h11, e = -k11``."""
        return cls(n, ((0, 0), (0, -d)), ((a, c), (-b, -e)))

    def normal_form(self) -> tuple[int, int, int, int, int] | None:
        """``(a, b, c, d, e)`` if already normalised, else None."""
        h, k, n = self.h, self.k, self.n
        if h[0][0] or h[0][1] or h[1][0]:
            return None
        return k[0][0], (-k[1][0]) % n, k[0][1], (-h[1][1]) % n, (-k[1][1]) % n

    def to_json(self) -> dict:
        return {"n": self.n, "h": [list(r) for r in self.h], "k": [list(r) for r in self.k]}


def arithmetic_graph(params: ArithmeticParams) -> tuple[LabeledGraph, SizeablePartition]:
    """The 4n-vertex arithmetic graph; ids ``A0, A1, B0, B1`` in blocks of n."""
    n = params.n
    for s, t in PAIRS:
        if params.h[s][t] == params.k[s][t]:
            raise ValueError(f"h[{s}][{t}] == k[{s}][{t}] (mod {n}) would create a parallel edge")
    a_id = lambda s, i: s * n + i
    b_id = lambda t, i: 2 * n + t * n + i % n
    edges = []
    for s, t in PAIRS:
        for i in range(n):
            edges.append((a_id(s, i), b_id(t, i + params.h[s][t])))
            edges.append((a_id(s, i), b_id(t, i + params.k[s][t])))
    side = ("A",) * (2 * n) + ("B",) * (2 * n)
    part = tuple([0] * n + [1] * n + [0] * n + [1] * n)
    names = tuple(f"{x}{s}_{i}" for x in "ab" for s in (0, 1) for i in range(n))
    g = LabeledGraph(4 * n, tuple(edges), side, part, names, crossing=True)
    r = range(n)
    partition = SizeablePartition([a_id(0, i) for i in r], [a_id(1, i) for i in r],
                                  [b_id(0, i) for i in r], [b_id(1, i) for i in r])
    return g, partition


def arithmetic_is_sizeable(params: ArithmeticParams) -> bool:
    """Closed-form test using the translation symmetry ``i -> i + 1``.

    Each defining subgraph is 2-regular and circulant, so it is connected iff
    ``h - k`` generates Z/n. A 4-cycle exists iff two distinct length-2 paths
    from ``a_0^0`` or ``a_1^0`` end at the same A-vertex.
    """
    n, h, k = params.n, params.h, params.k
    for s, t in PAIRS:
        diff = (h[s][t] - k[s][t]) % n
        if diff == 0 or gcd(diff, n) != 1:
            return False
    for s in (0, 1):
        ends = set()
        for t in (0, 1):
            for fwd in (h[s][t], k[s][t]):
                for s2 in (0, 1):
                    for back in (h[s2][t], k[s2][t]):
                        if s2 == s and back == fwd:
                            continue
                        end = (s2, (fwd - back) % n)
                        if end in ends:
                            return False
                        ends.add(end)
    return True


def search_arithmetic(n: int) -> list[ArithmeticParams]:
    """All normalised arithmetic sizeable graphs for modulus ``n``.

    Runs over the five free parameters after fixing ``h00 = h01 = h10 = 0``;
    every hit is re-checked with :func:`verify_sizeable`.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    hits = []
    for a, b, c, d, e in itertools.product(range(n), repeat=5):
        if 0 in (a, b, c) or d == e:
            continue
        params = ArithmeticParams.from_normal_form(n, a, b, c, d, e)
        if arithmetic_is_sizeable(params):
            g, p = arithmetic_graph(params)
            if not verify_sizeable(g, p).verdict:
                raise AssertionError(f"closed-form test disagrees with verification for {params}")
            hits.append(params)
    return hits


REFERENCE_ARITHMETIC_9 = ArithmeticParams(9, ((0, 0), (0, -1)), ((-1, 2), (2, -2)))


# -- projective planes --------------------------------------------------------


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    pts = []
    for v in itertools.product(range(q), repeat=3):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return sorted(pts)


def pg_incidence(order: int) -> LabeledGraph:
    """Point/line incidence graph of PG(2, order) for prime ``order``.

    Points are ids ``0..N-1`` (side A), lines ``N..2N-1`` (side B), with
    ``N = order^2 + order + 1``. Both are normalised vectors of GF(order)^3;
    a point lies on a line iff their dot product vanishes.
    """
    if not isprime(order):
        raise NotImplementedError(f"order {order} is not prime; only prime fields are supported")
    pts = _projective_points(order)
    N = len(pts)
    edges = [(i, N + j) for i, p in enumerate(pts) for j, l in enumerate(pts)
             if sum(x * y for x, y in zip(p, l)) % order == 0]
    names = tuple("P" + "".join(map(str, p)) for p in pts) + tuple("L" + "".join(map(str, l)) for l in pts)
    return LabeledGraph(2 * N, tuple(edges), ("A",) * N + ("B",) * N, None, names, crossing=True)


# -- Zarankiewicz bounds ------------------------------------------------------

ZARANKIEWICZ_TABLE: dict[tuple[int, int], int] = {
    (7, 15): 33,
    (8, 14): 35,
    (9, 13): 37,
    (10, 12): 39,
    (11, 11): 39,
    (11, 12): 42,
}


def zarankiewicz_formula(n: int, c: int) -> int:
    """Upper bound ``n^2 (n+1) + c n`` for ``Z_{2,2}(n^2 + c, n^2 + n)``."""
    return n * n * (n + 1) + c * n


def zarankiewicz_bound(m: int, n: int) -> int:
    key = (min(m, n), max(m, n))
    if key not in ZARANKIEWICZ_TABLE:
        raise KeyError(f"no stored bound for side sizes {key}")
    return ZARANKIEWICZ_TABLE[key]


def zarankiewicz_table_check(g: LabeledGraph) -> bool:
    """True iff the edge count of ``g`` is within the stored Z_{2,2} value."""
    a = len(g.vertices_on_side("A"))
    b = len(g.vertices_on_side("B"))
    return g.m <= zarankiewicz_bound(a, b)


# -- counting certificates -----------------------------------------------------


def part_size_conditions(x0: int, x1: int) -> dict:
    """Necessary conditions on the two part sizes of the smaller side."""
    general = (x0 - 3) * (x1 - 3)
    paths = (x0 - 4) * (x1 - 4)
    return {
        "sizes": [x0, x1],
        "general": {"value": general, "bound": 5, "holds": general >= 5},
        "paths": {"value": paths, "bound": 8, "holds": paths >= 8},
    }


def _pair_count(g: LabeledGraph, x0, x1, y_parts) -> dict:
    x0, x1 = set(x0), set(x1)
    per_part = []
    for ys in y_parts:
        total = 0
        lower = 0
        for y in ys:
            nb = g.simple_adjacency[y]
            d, e = len(nb & x0), len(nb & x1)
            total += d * e
            lower += d + e - 1
        per_part.append({"sum_de": total, "lower": lower})
    joined = sum(r["sum_de"] for r in per_part)
    return {"per_part": per_part, "pairs_joined": joined, "capacity": len(x0) * len(x1),
            "holds": joined <= len(x0) * len(x1)}


def degree_pair_bounds(g: LabeledGraph, p: SizeablePartition) -> dict:
    """Double count pairs of ``X0 x X1`` joined through the opposite side.

    For C4-free graphs each pair is joined through at most one vertex, so the
    count cannot exceed ``|X0| |X1|``. The part-size inequalities apply to
    the smaller side; the path inequality only when all four defining
    subgraphs are paths.
    """
    p.check_covers(g)
    a_side = _pair_count(g, p.A0, p.A1, (p.B0, p.B1))
    b_side = _pair_count(g, p.B0, p.B1, (p.A0, p.A1))
    small = (len(p.A0), len(p.A1)) if len(p.A) <= len(p.B) else (len(p.B0), len(p.B1))
    conds = part_size_conditions(*small)
    conds["paths"]["applicable"] = all_defining_subgraphs_paths(g, p)
    return {"A": a_side, "B": b_side, "smaller_side_conditions": conds}


def all_defining_subgraphs_paths(g: LabeledGraph, p: SizeablePartition) -> bool:
    for s, t in PAIRS:
        sub, _ = g.induced(p.defining_set(s, t))
        degs = sub.degrees()
        if sub.m != sub.n - 1 or len(components(sub)) != 1 or max(degs, default=0) > 2:
            return False
    return True


def spanning_tree_core(g: LabeledGraph, p: SizeablePartition) -> tuple[LabeledGraph, list[tuple[int, int]]]:
    """Drop edges that close cycles inside a defining subgraph.

    Every edge lies in exactly one defining subgraph, so keeping a spanning
    tree of each (greedily, in edge-id order) leaves a sizeable graph with
    ``2 * n - 4`` edges, the fewest possible.  Returns the graph and the
    removed edges.
    """
    A = set(p.A)
    keep, removed = [], []
    # one union-find forest per defining subgraph
    forests: dict[tuple[int, int], dict[int, int]] = {}
    for u, v in g.edges:
        a, b = (u, v) if u in A else (v, u)
        key = (p.part_of(a), p.part_of(b))
        par = forests.setdefault(key, {})

        def root(x):
            par.setdefault(x, x)
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        ra, rb = root(a), root(b)
        if ra == rb:
            removed.append((u, v))
        else:
            par[ra] = rb
            keep.append((u, v))
    return LabeledGraph(g.n, tuple(keep), g.side, g.part, g.names, g.crossing), removed


# -- random bipartite graphs ----------------------------------------------------


def expected_c4(n: int) -> Fraction:
    """Expected 4-cycle count of a random bipartite graph, sides ``2n``, p = 2/n."""
    if n < 2:
        raise ValueError("edge probability 2/n exceeds 1 for n < 2")
    return (1 - Fraction(1, 2 * n)) ** 2 * 64


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    trials: int
    seed: int

    def within(self, target: float, k: float = 3.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr


def count_c4_bipartite(adj: np.ndarray) -> np.ndarray:
    """4-cycle counts for a batch of bipartite adjacency matrices ``(batch, |A|, |B|)``."""
    codeg = np.einsum("tib,tjb->tij", adj, adj)
    iu = np.triu_indices(adj.shape[1], k=1)
    c = codeg[:, iu[0], iu[1]]
    return (c * (c - 1) // 2).sum(axis=1)


def monte_carlo_c4(n: int, trials: int, seed: int, batch: int = 10_000) -> MonteCarloResult:
    if n < 2:
        raise ValueError("edge probability 2/n exceeds 1 for n < 2")
    rng = np.random.default_rng(seed)
    counts = []
    done = 0
    while done < trials:
        size = min(batch, trials - done)
        adj = (rng.random((size, 2 * n, 2 * n)) < 2.0 / n).astype(np.int64)
        counts.append(count_c4_bipartite(adj))
        done += size
    x = np.concatenate(counts).astype(float)
    stderr = float(x.std(ddof=1) / np.sqrt(len(x))) if len(x) > 1 else float("inf")
    return MonteCarloResult(float(x.mean()), stderr, trials, seed)


def possible_four_cycles(n: int) -> int:
    return comb(2 * n, 2) ** 2
