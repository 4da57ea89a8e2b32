"""Reduced integral homology of simplicial complexes of dimension <= 2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cubes import LinkComplex


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology in degrees 0, 1, 2: free ranks and torsion coefficients."""

    ranks: tuple[int, int, int]
    torsion: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] = ((), (), ())
    empty: bool = False  # the empty complex has reduced H_{-1} = Z

    def vanishes(self, degrees=(0, 1, 2)) -> bool:
        if self.empty:
            return False
        return all(self.ranks[d] == 0 and not self.torsion[d] for d in degrees)

    @property
    def acyclic(self) -> bool:
        return self.vanishes()

    def to_json(self) -> dict:
        return {"ranks": list(self.ranks), "torsion": [list(t) for t in self.torsion],
                "empty": self.empty}

    def short(self) -> str:
        if self.empty:
            return "empty"
        parts = []
        for d in range(3):
            r = self.ranks[d]
            s = "Z" if r == 1 else f"Z^{r}" if r else ""
            tor = "+".join(f"Z/{t}" for t in self.torsion[d])
            parts.append("+".join(x for x in (s, tor) if x) or "0")
        return "(" + ", ".join(parts) + ")"


def boundary_maps(link: LinkComplex) -> tuple[dict, dict]:
    """Sparse boundaries as ``{(row, col): coeff}``: d1 is vertices x edges, d2 edges x triangles."""
    d1 = {}
    for j, (a, b) in enumerate(link.edges):
        d1[(a, j)] = -1
        d1[(b, j)] = 1
    eidx = {e: j for j, e in enumerate(link.edges)}
    d2 = {}
    for k, (a, b, c) in enumerate(link.triangles):
        d2[(eidx[(b, c)], k)] = 1
        d2[(eidx[(a, c)], k)] = -1
        d2[(eidx[(a, b)], k)] = 1
    return d1, d2


def compose_is_zero(link: LinkComplex) -> bool:
    d1, d2 = boundary_maps(link)
    rows1 = {}
    for (r, c), v in d1.items():
        rows1.setdefault(c, []).append((r, v))
    acc = {}
    for (e, k), v in d2.items():
        for r, w in rows1.get(e, ()):
            acc[(r, k)] = acc.get((r, k), 0) + v * w
    return all(v == 0 for v in acc.values())


def invariant_factors(entries: dict, nrows: int, ncols: int) -> list[int]:
    """Non-zero Smith invariant factors (each divides the next) of a sparse integer matrix."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    units = 0
    # unit pivots first: clearing a unit's column with row operations leaves its
    # row removable by column operations that touch nothing else
    progress = True
    while progress:
        progress = False
        for r in list(rows):
            row = rows.get(r)
            if not row:
                continue
            pc = next((c for c, v in row.items() if v in (1, -1)), None)
            if pc is None:
                continue
            pv = row[pc]
            for r2 in list(cols[pc]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                f = row2[pc] * pv
                for c, v in row.items():
                    nv = row2.get(c, 0) - f * v
                    if nv:
                        row2[c] = nv
                        cols.setdefault(c, set()).add(r2)
                    elif c in row2:
                        del row2[c]
                        cols[c].discard(r2)
            for c in row:
                cols[c].discard(r)
            del rows[r]
            cols.pop(pc, None)
            units += 1
            progress = True
    rest_rows = sorted(r for r, row in rows.items() if row)
    rest_cols = sorted({c for r in rest_rows for c in rows[r]})
    dense = [[rows[r].get(c, 0) for c in rest_cols] for r in rest_rows]
    return [1] * units + _dense_diagonal(dense)


def _dense_diagonal(A: list[list[int]]) -> list[int]:
    diag = []
    A = [row[:] for row in A]
    while A and A[0]:
        nz = [(abs(v), i, j) for i, row in enumerate(A) for j, v in enumerate(row) if v]
        if not nz:
            break
        _, i, j = min(nz)
        A[0], A[i] = A[i], A[0]
        for row in A:
            row[0], row[j] = row[j], row[0]
        while True:
            p = A[0][0]
            changed = False
            for i in range(1, len(A)):
                q = A[i][0] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[0])]
                if A[i][0]:
                    changed = True
            for j in range(1, len(A[0])):
                q = A[0][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[0]
                if A[0][j]:
                    changed = True
            if changed:
                nz = [(abs(A[i][0]), i, 0) for i in range(len(A)) if A[i][0]] + \
                     [(abs(A[0][j]), 0, j) for j in range(len(A[0])) if A[0][j]]
                _, i, j = min(nz)
                if i:
                    A[0], A[i] = A[i], A[0]
                if j:
                    for row in A:
                        row[0], row[j] = row[j], row[0]
                continue
            bad = next(((i, j) for i in range(1, len(A)) for j in range(1, len(A[0]))
                        if A[i][j] % p), None)
            if bad is None:
                break
            A[0] = [x + y for x, y in zip(A[0], A[bad[0]])]
        diag.append(abs(A[0][0]))
        A = [row[1:] for row in A[1:]]
    # enforce the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return [d for d in diag if d]


@lru_cache(maxsize=8192)
def _homology_of(n: int, edges: tuple, triangles: tuple) -> HomologyProfile:
    if n == 0:
        return HomologyProfile((0, 0, 0), ((), (), ()), empty=True)
    link = LinkComplex(tuple(range(n)), edges, triangles)
    d1, d2 = boundary_maps(link)
    f1 = invariant_factors(d1, n, len(edges))
    f2 = invariant_factors(d2, len(edges), len(triangles))
    r1, r2 = len(f1), len(f2)
    ranks = (n - r1 - 1, len(edges) - r1 - r2, len(triangles) - r2)
    tors = (tuple(d for d in f1 if d > 1), tuple(d for d in f2 if d > 1), ())
    return HomologyProfile(ranks, tors)


def reduced_homology(link: LinkComplex) -> HomologyProfile:
    """Exact reduced homology from Smith normal forms of the boundary maps.

    Results are cached on the index structure of the complex, which fully
    determines the homology.
    """
    return _homology_of(link.n, tuple(link.edges), tuple(link.triangles))


def _rank_q(entries: dict, nrows: int, ncols: int) -> int:
    M = [[Fraction(entries.get((r, c), 0)) for c in range(ncols)] for r in range(nrows)]
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(nrows):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def rational_betti(link: LinkComplex) -> tuple[int, int, int]:
    """Reduced Betti numbers over Q by plain Gaussian elimination (independent check)."""
    if link.n == 0:
        return (0, 0, 0)
    d1, d2 = boundary_maps(link)
    r1 = _rank_q(d1, link.n, len(link.edges))
    r2 = _rank_q(d2, len(link.edges), len(link.triangles))
    return (link.n - r1 - 1, len(link.edges) - r1 - r2, len(link.triangles) - r2)


def discrete_join(sizes) -> LinkComplex:
    from .cubes import discrete, join

    parts = [discrete((i, k) for k in range(q)) for i, q in enumerate(sizes)]
    return join(*parts)
