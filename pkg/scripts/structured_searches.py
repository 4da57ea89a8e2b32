"""Optional long searches for sizeable graphs whose defining subgraphs are all cycles or all paths.

Cycle type: nothing on 32 vertices, an example on 36 (seconds each).
Path type: each extra vertex costs roughly a factor of eight, so the default
range stops well short of 31; pass --max-vertices to go further.
"""

from __future__ import annotations

import argparse
import json
import time

from cubforge.structured import structured_minimum_scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", choices=("path", "cycle"), default="cycle")
    ap.add_argument("--min-vertices", type=int, default=None)
    ap.add_argument("--max-vertices", type=int, default=None)
    ap.add_argument("--timeout", type=float, default=None, help="seconds per size tuple")
    ap.add_argument("--out", default=None)
    ap.add_argument("--progress", action="store_true")
    a = ap.parse_args()
    lo = a.min_vertices or (32 if a.kind == "cycle" else 24)
    hi = a.max_vertices or (36 if a.kind == "cycle" else 27)
    rows = []
    for n in range(lo, hi + 1):
        t = time.perf_counter()
        r = structured_minimum_scan(a.kind, n, timeout=a.timeout, progress=a.progress)
        r["seconds"] = round(time.perf_counter() - t, 1)
        rows.append(r)
        nodes = sum(x["nodes"] for x in r["size_tuples"])
        print(f"{a.kind} {n}: exists={r['exists']} conclusive={r['conclusive']} nodes={nodes} "
              f"seconds={r['seconds']}", flush=True)
        if r["exists"]:
            break
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
