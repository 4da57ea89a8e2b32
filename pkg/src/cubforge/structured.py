"""Exhaustive search for sizeable graphs whose defining subgraphs are all paths or all cycles.

These are long-running at the interesting sizes and not needed elsewhere in the
package. The search fixes the first defining subgraph, numbers B1 and A1 by first
appearance along the second and third ones, and prunes on 4-cycles as edges are
added.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from itertools import product

from .graph import LabeledGraph
from .sizeable import SizeablePartition, verify_sizeable

KINDS = ("path", "cycle")


@dataclass
class StructuredResult:
    kind: str
    sizes: tuple[int, int, int, int]
    found: list[tuple[LabeledGraph, SizeablePartition]] = field(default_factory=list)
    nodes: int = 0
    complete: bool = True
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "sizes": list(self.sizes), "found": len(self.found),
               "nodes": self.nodes, "complete": self.complete}
        if self.reason:
            out["reason"] = self.reason
        if self.found:
            g, p = self.found[0]
            out["example"] = {"edges": [list(e) for e in g.edges], "partition": p.to_json()}
        return out


def feasible_sizes(kind: str, a0: int, a1: int, b0: int, b1: int) -> str | None:
    """None if every defining subgraph can be a path (or cycle) with these part sizes."""
    for x, y in ((a0, b0), (a0, b1), (a1, b0), (a1, b1)):
        if min(x, y) < 1:
            return "empty part"
        if kind == "path" and abs(x - y) > 1:
            return "a bipartite path needs sides differing by at most one"
        if kind == "cycle" and (x != y or x < 2):
            return "a bipartite cycle needs equal sides of size at least two"
    return None


def size_tuples(kind: str, total: int) -> list[tuple[int, int, int, int]]:
    """Part sizes up to swapping A0/A1, B0/B1 and A/B."""
    out = set()
    for a0, a1, b0 in product(range(1, total), repeat=3):
        b1 = total - a0 - a1 - b0
        if b1 < 1 or feasible_sizes(kind, a0, a1, b0, b1):
            continue
        A, B = tuple(sorted((a0, a1))), tuple(sorted((b0, b1)))
        A, B = min(A, B), max(A, B)
        out.add(A + B)
    return sorted(out)


class _Search:
    def __init__(self, kind, sizes, limit, deadline, progress):
        self.kind = kind
        a0, a1, b0, b1 = sizes
        self.A = [list(range(a0)), list(range(a0, a0 + a1))]
        off = a0 + a1
        self.B = [list(range(off, off + b0)), list(range(off + b0, off + b0 + b1))]
        self.n = off + b0 + b1
        self.nbr = [[] for _ in range(self.n)]  # B vertex -> A neighbours
        self.pairs: set[tuple[int, int]] = set()
        self.edges: list[tuple[int, int]] = []
        self.limit = limit
        self.deadline = deadline
        self.progress = progress
        self.found = []
        self.nodes = 0
        self.timed_out = False

    # edges always stored as (a, b)
    def add(self, a, b) -> bool:
        marked = []
        for x in self.nbr[b]:
            key = (min(a, x), max(a, x))
            if key in self.pairs:
                for k in marked:
                    self.pairs.discard(k)
                return False
            marked.append(key)
            self.pairs.add(key)
        self.nbr[b].append(a)
        self.edges.append((a, b))
        return True

    def remove(self, a, b):
        self.edges.pop()
        self.nbr[b].pop()
        for x in self.nbr[b]:
            self.pairs.discard((min(a, x), max(a, x)))

    def link(self, u, v) -> bool:
        a, b = (u, v) if u < self.B[0][0] else (v, u)
        return self.add(a, b)

    def unlink(self, u, v):
        a, b = (u, v) if u < self.B[0][0] else (v, u)
        self.remove(a, b)

    def done(self) -> bool:
        return self.timed_out or (self.limit is not None and len(self.found) >= self.limit)

    def tick(self):
        self.nodes += 1
        if self.nodes % 200_000 == 0:
            if self.progress:
                print(f"[structured] {self.nodes} nodes, {len(self.found)} found", file=sys.stderr)
            if self.deadline is not None and time.monotonic() > self.deadline:
                self.timed_out = True

    def run(self):
        X, Y = self.A[0], self.B[0]
        # canonical first subgraph: alternate from the bigger side
        first, second = (X, Y) if len(X) >= len(Y) else (Y, X)
        order = [v for pair in zip(first, second + [None]) for v in pair if v is not None]
        ok = True
        for u, v in zip(order, order[1:]):
            ok = ok and self.link(u, v)
        if self.kind == "cycle":
            ok = ok and self.link(order[-1], order[0])
        if ok:
            self.stage(1)

    # stages: 1 = Γ(A0,B1), 2 = Γ(A1,B0), 3 = Γ(A1,B1)
    def stage(self, k):
        if self.done():
            return
        if k == 4:
            self.record()
            return
        s, t = {1: (0, 1), 2: (1, 0), 3: (1, 1)}[k]
        fresh = {1: "B", 2: "A", 3: None}[k]
        As, Bt = self.A[s], self.B[t]
        starts = []
        if self.kind == "cycle":
            starts = [As[0]] if fresh != "A" else [Bt[0]]
        else:
            if len(As) >= len(Bt):
                starts += [a for a in As] if fresh != "A" else [As[0]]
            if len(Bt) >= len(As):
                starts += [b for b in Bt] if fresh != "B" else [Bt[0]]
        for v in starts:
            self.walk(k, As, Bt, fresh, [v], {v})
            if self.done():
                return

    def walk(self, k, As, Bt, fresh, path, used):
        self.tick()
        if self.done():
            return
        total = len(As) + len(Bt)
        last = path[-1]
        if len(path) == total:
            if self.kind == "cycle":
                if not self.link(last, path[0]):
                    return
                self.stage(k + 1)
                self.unlink(last, path[0])
            else:
                self.stage(k + 1)
            return
        other = Bt if last in As else As
        is_fresh = (fresh == "B" and other is Bt) or (fresh == "A" and other is As)
        cands = [v for v in other if v not in used]
        if is_fresh:
            cands = cands[:1]
        for v in cands:
            if not self.link(last, v):
                continue
            path.append(v)
            used.add(v)
            self.walk(k, As, Bt, fresh, path, used)
            used.discard(v)
            path.pop()
            self.unlink(last, v)
            if self.done():
                return

    def record(self):
        g = LabeledGraph(self.n, tuple(sorted(self.edges)))
        p = SizeablePartition(self.A[0], self.A[1], self.B[0], self.B[1])
        if not verify_sizeable(g, p).verdict:
            raise AssertionError("structured search produced a graph that is not sizeable")
        self.found.append((g, p))


def structured_search(kind: str, sizes, limit: int | None = 1, timeout: float | None = None,
                      progress: bool = False) -> StructuredResult:
    """Sizeable graphs with part sizes ``(|A0|, |A1|, |B0|, |B1|)`` whose four defining
    subgraphs are all Hamiltonian paths (``kind="path"``) or cycles."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    sizes = tuple(int(x) for x in sizes)
    res = StructuredResult(kind, sizes)
    why = feasible_sizes(kind, *sizes)
    if why:
        res.reason = why
        return res
    deadline = None if timeout is None else time.monotonic() + timeout
    s = _Search(kind, sizes, limit, deadline, progress)
    s.run()
    res.found = s.found
    res.nodes = s.nodes
    res.complete = not s.timed_out
    if s.timed_out:
        res.reason = "timed out"
    return res


def structured_minimum_scan(kind: str, total: int, timeout: float | None = None,
                            progress: bool = False) -> dict:
    """Search every admissible size tuple on ``total`` vertices for one example."""
    rows = []
    for sizes in size_tuples(kind, total):
        r = structured_search(kind, sizes, limit=1, timeout=timeout, progress=progress)
        rows.append(r.to_json())
        if r.found:
            break
    exists = any(r["found"] for r in rows)
    complete = all(r["complete"] for r in rows)
    return {"kind": kind, "vertices": total, "exists": exists,
            "conclusive": exists or complete, "size_tuples": rows}
