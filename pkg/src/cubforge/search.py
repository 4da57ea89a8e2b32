"""Exhaustive searches for sizeable partitions and the minimal-graph results.

The bipartition search fixes the lowest vertex of each side in part 0 (this
kills the ``A0 <-> A1`` and ``B0 <-> B1`` swaps), walks every remaining split
of side A, and decides all splits of side B at once: for a fixed vertex set
``X`` of side A, connectivity of ``G[X | S]`` is computed for every subset
``S`` of side B by a bit-parallel BFS over a numpy array of masks.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import LabeledGraph, bipartition, contains_four_cycle, parallel_pair
from .sizeable import (
    SizeablePartition,
    degree_pair_bounds,
    pg_incidence,
    spanning_tree_core,
    verify_sizeable,
    zarankiewicz_bound,
    zarankiewicz_formula,
    zarankiewicz_table_check,
)

log = logging.getLogger(__name__)

CHECKPOINT_EVERY = 1_000_000


def default_workers() -> int:
    env = os.environ.get("CUBFORGE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class SearchResult:
    partitions: list[SizeablePartition] = field(default_factory=list)
    states: int = 0
    a_splits: int = 0
    a_splits_pruned: int = 0
    reason: str | None = None
    witness: object = None
    complete: bool = True

    def __len__(self):
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)

    def to_json(self) -> dict:
        return {
            "found": len(self.partitions),
            "partitions": [p.to_json() for p in self.partitions],
            "states": self.states,
            "a_splits": self.a_splits,
            "a_splits_pruned": self.a_splits_pruned,
            "reason": self.reason,
            "witness": self.witness,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class _Problem:
    A: tuple[int, ...]
    B: tuple[int, ...]
    nbrB: tuple[int, ...]  # per A index: mask over B indices
    nbrA: tuple[int, ...]  # per B index: mask over A indices

    @classmethod
    def from_graph(cls, g: LabeledGraph, A, B) -> _Problem:
        bi = {v: i for i, v in enumerate(B)}
        ai = {v: i for i, v in enumerate(A)}
        nbrB = [0] * len(A)
        nbrA = [0] * len(B)
        for u, v in g.edges:
            if u in bi:
                u, v = v, u
            nbrB[ai[u]] |= 1 << bi[v]
            nbrA[bi[v]] |= 1 << ai[u]
        return cls(tuple(A), tuple(B), tuple(nbrB), tuple(nbrA))


def connected_for_all_subsets(a_mask: int, nbrB, nbrA, nB: int) -> np.ndarray:
    """``out[S]`` is True iff ``G[X | S]`` is connected with ``X, S`` non-empty.

    ``X`` is given by ``a_mask`` (over A indices) and ``S`` ranges over all
    ``2**nB`` subsets of side B.
    """
    S = np.arange(1 << nB, dtype=np.int64)
    a_bits = [i for i in range(len(nbrB)) if a_mask >> i & 1]
    if not a_bits:
        return np.zeros(1 << nB, dtype=bool)
    a_shift = np.array(a_bits, dtype=np.int64)
    b_shift = np.arange(nB, dtype=np.int64)
    nbrB_sel = np.array([nbrB[i] for i in a_bits], dtype=np.int64)
    nbrA_sel = np.array([m & a_mask for m in nbrA], dtype=np.int64)
    rA = np.full(S.shape, 1 << a_bits[0], dtype=np.int64)
    rB = np.zeros_like(S)
    while True:
        newB = np.bitwise_or.reduce(((rA[:, None] >> a_shift) & 1) * nbrB_sel, axis=1) & S
        newA = np.bitwise_or.reduce(((newB[:, None] >> b_shift) & 1) * nbrA_sel, axis=1) | rA
        if np.array_equal(newA, rA) and np.array_equal(newB, rB):
            break
        rA, rB = newA, newB
    return (rA == a_mask) & (rB == S) & (S != 0)


def _solve_a_splits(prob: _Problem, a_masks: list[int], limit: int | None) -> tuple[list[tuple[int, int]], int, int]:
    """Hits ``(a0_mask, b0_mask)`` over the given A-splits, plus state and prune counts."""
    nA, nB = len(prob.A), len(prob.B)
    fullA, fullB = (1 << nA) - 1, (1 << nB) - 1
    cand = np.arange(1 << nB, dtype=np.int64)
    cand = cand[(cand & 1).astype(bool) & (cand != fullB)]
    comp = fullB ^ cand
    hits = []
    pruned = 0
    for a0 in a_masks:
        a1 = fullA ^ a0
        if any(not (m & a0 and m & a1) for m in prob.nbrA):
            pruned += 1
            continue
        c0 = connected_for_all_subsets(a0, prob.nbrB, prob.nbrA, nB)
        c1 = connected_for_all_subsets(a1, prob.nbrB, prob.nbrA, nB)
        ok = c0[cand] & c1[cand] & c0[comp] & c1[comp]
        for b0 in cand[ok].tolist():
            hits.append((a0, b0))
            if limit is not None and len(hits) >= limit:
                return hits, len(cand), pruned
    return hits, len(cand), pruned


def _worker(args):
    prob, masks, limit = args
    return _solve_a_splits(prob, masks, limit)


def _graph_digest(g: LabeledGraph) -> str:
    payload = json.dumps([g.n, g.edges, g.side], sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()


def _sides(g: LabeledGraph) -> tuple[list[int], list[int]]:
    if g.side is not None and None not in g.side:
        return g.vertices_on_side("A"), g.vertices_on_side("B")
    color = bipartition(g)
    if color is None:
        raise ValueError("graph is not bipartite")
    return [v for v in range(g.n) if color[v] == 0], [v for v in range(g.n) if color[v] == 1]


def search_bipartitions(
    g: LabeledGraph,
    limit: int | None = None,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    chunk: int = 64,
    progress: bool = False,
) -> SearchResult:
    """Enumerate reduced part assignments of both sides and return those that
    make ``g`` sizeable, in ascending ``(A0 mask, B0 mask)`` order."""
    pp = parallel_pair(g)
    if pp is not None:
        return SearchResult(reason="graph has parallel edges", witness=list(pp))
    c4 = contains_four_cycle(g)
    if c4 is not None:
        return SearchResult(reason="graph contains a 4-cycle", witness=c4.to_json())
    A, B = _sides(g)
    for u, v in g.edges:
        if (u in A) == (v in A):
            return SearchResult(reason="edge inside one side", witness=[u, v])
    if len(A) < 2 or len(B) < 2:
        return SearchResult(reason="a side has fewer than two vertices")
    prob = _Problem.from_graph(g, A, B)
    nA = len(A)
    fullA = (1 << nA) - 1
    a_masks = [m for m in range(1, fullA) if m & 1]

    result = SearchResult()
    hits: list[tuple[int, int]] = []
    start = 0
    digest = _graph_digest(g)
    ckpt = Path(checkpoint) if checkpoint else None
    if ckpt and ckpt.exists():
        state = json.loads(ckpt.read_text())
        if state.get("digest") == digest and state.get("limit") == limit:
            start = state["next"]
            hits = [tuple(h) for h in state["hits"]]
            result.states = state["states"]
            result.a_splits_pruned = state["pruned"]
            log.info("resuming from A-split %d of %d", start, len(a_masks))

    batches = [a_masks[i:i + chunk] for i in range(start, len(a_masks), chunk)]
    since_ckpt = 0
    done = start

    def absorb(batch, out):
        nonlocal since_ckpt, done
        h, per, pr = out
        hits.extend(h)
        result.states += per * len(batch)
        result.a_splits_pruned += pr
        since_ckpt += per * len(batch)
        done += len(batch)
        if progress:
            print(f"[search] {done}/{len(a_masks)} A-splits, {len(hits)} hits", file=sys.stderr)
        if ckpt and since_ckpt >= CHECKPOINT_EVERY:
            _write_checkpoint(ckpt, digest, limit, done, hits, result)
            since_ckpt = 0

    def enough():
        return limit is not None and len(hits) >= limit

    if workers <= 1 or len(batches) <= 1:
        for batch in batches:
            absorb(batch, _solve_a_splits(prob, batch, None if limit is None else limit - len(hits)))
            if enough():
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch, out in zip(batches, pool.map(_worker, [(prob, b, limit) for b in batches])):
                absorb(batch, out)
                if enough():
                    break

    hits.sort()
    if limit is not None:
        hits = hits[:limit]
    result.complete = done >= len(a_masks) or not enough()
    result.a_splits = done
    if ckpt:
        _write_checkpoint(ckpt, digest, limit, done, hits, result)
    for a0, b0 in hits:
        A0 = [A[i] for i in range(nA) if a0 >> i & 1]
        A1 = [A[i] for i in range(nA) if not a0 >> i & 1]
        B0 = [B[i] for i in range(len(B)) if b0 >> i & 1]
        B1 = [B[i] for i in range(len(B)) if not b0 >> i & 1]
        p = SizeablePartition(A0, A1, B0, B1)
        if not verify_sizeable(g, p).verdict:
            raise AssertionError(f"search produced a partition that fails verification: {p}")
        result.partitions.append(p)
    return result


def _write_checkpoint(path: Path, digest, limit, done, hits, result) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({"digest": digest, "limit": limit, "next": done,
                               "hits": [list(h) for h in hits], "states": result.states,
                               "pruned": result.a_splits_pruned}))
    tmp.replace(path)


# -- the minimal-graph results -----------------------------------------------------


@dataclass
class Minimal24:
    """A 24-vertex sizeable subgraph of the PG(2,3) incidence graph.

    ``induced`` is the graph left after deleting one point and one line;
    ``graph`` additionally drops the edges closing cycles inside a defining
    subgraph, so all four defining subgraphs are trees.
    """

    graph: LabeledGraph
    partition: SizeablePartition
    deleted_point: int
    deleted_line: int
    incident: bool
    candidates_tried: int
    induced: LabeledGraph | None = None
    removed_edges: list = field(default_factory=list)

    def to_json(self) -> dict:
        from .graph import to_json as graph_json

        return {
            "vertices": self.graph.n,
            "edges": self.graph.m,
            "induced_edges": self.induced.m if self.induced is not None else self.graph.m,
            "removed_edges": [list(e) for e in self.removed_edges],
            "deleted": {"point": self.deleted_point, "line": self.deleted_line,
                        "incident": self.incident},
            "candidates_tried": self.candidates_tried,
            "graph": graph_json(self.partition.apply(self.graph)),
            "partition": self.partition.to_json(),
        }


def find_minimal_24(workers: int = 1, trim: bool = True) -> Minimal24:
    """First sizeable graph obtained from PG(2,3) by deleting one point and one line.

    Deletions are tried point-major in id order and the first hit is kept.
    With ``trim`` the hit is reduced to its spanning-tree core (still a
    subgraph of the incidence graph, still sizeable, same vertices).
    """
    pg = pg_incidence(3)
    N = 13
    tried = 0
    for point in range(N):
        for line in range(N, 2 * N):
            tried += 1
            sub, _ = pg.delete_vertices([point, line])
            res = search_bipartitions(sub, limit=1, workers=workers)
            if res.partitions:
                p = res.partitions[0]
                incident = line in pg.simple_adjacency[point]
                g, removed = spanning_tree_core(sub, p) if trim else (sub, [])
                if not verify_sizeable(g, p).verdict:
                    raise AssertionError("trimmed graph lost sizeability")
                return Minimal24(g, p, point, line - N, incident, tried, sub, removed)
    raise RuntimeError("no 24-vertex sizeable subgraph of PG(2,3) found")


def collinear_candidate(pg: LabeledGraph, p1: int = 0, p2: int = 1) -> tuple[LabeledGraph, int]:
    """PG(2,3) minus two points and the line through both; returns (graph, line id)."""
    (line,) = pg.simple_adjacency[p1] & pg.simple_adjacency[p2]
    sub, _ = pg.delete_vertices([p1, p2, line])
    return sub, line


def concurrent_candidate(pg: LabeledGraph, l1: int = 13, l2: int = 14) -> tuple[LabeledGraph, int]:
    """PG(2,3) minus two lines and their common point."""
    (point,) = pg.simple_adjacency[l1] & pg.simple_adjacency[l2]
    sub, _ = pg.delete_vertices([l1, l2, point])
    return sub, point


def refute_23(workers: int = 1) -> dict:
    """Search both 23-vertex extremal candidates for sizeable partitions."""
    pg = pg_incidence(3)
    report = {"zarankiewicz_formula_3_2": zarankiewicz_formula(3, 2),
              "table_11_12": zarankiewicz_bound(11, 12), "candidates": []}
    for kind, (sub, removed) in (("two points + joining line", collinear_candidate(pg)),
                                 ("two lines + common point", concurrent_candidate(pg))):
        sides = (len(sub.vertices_on_side("A")), len(sub.vertices_on_side("B")))
        res = search_bipartitions(sub, workers=workers)
        report["candidates"].append({
            "kind": kind,
            "removed_incident_vertex": removed,
            "vertices": sub.n,
            "edges": sub.m,
            "sides": list(sides),
            "meets_table_bound": zarankiewicz_table_check(sub),
            "sizeable_partitions": len(res.partitions),
            "states": res.states,
            "a_splits": res.a_splits,
            "a_splits_pruned": res.a_splits_pruned,
        })
    report["refuted"] = all(c["sizeable_partitions"] == 0 and c["edges"] == 42
                            for c in report["candidates"])
    return report


def minimal24_certificate(m: Minimal24) -> dict:
    from .graph import girth

    g, p = m.graph, m.partition
    return {
        "verify": verify_sizeable(g, p).to_json(),
        "girth": girth(g),
        "degree_pair_bounds": degree_pair_bounds(g, p),
        "sides": [len(p.A), len(p.B)],
        "edges": g.m,
    }
