"""Delete one point and one line from the PG(2,3) incidence graph and count sizeable partitions.

Incident pairs all give 108 partitions; non-incident pairs give none.
"""

from __future__ import annotations

import argparse
import json
from collections import Counter

from cubforge.search import default_workers, search_bipartitions
from cubforge.sizeable import pg_incidence


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--out", default=None)
    a = ap.parse_args()
    workers = a.threads or default_workers()
    pg = pg_incidence(3)
    N = 13
    rows = []
    tally = Counter()
    for point in range(N):
        for line in range(N, 2 * N):
            incident = line in pg.simple_adjacency[point]
            sub, _ = pg.delete_vertices([point, line])
            r = search_bipartitions(sub, workers=workers)
            rows.append({"point": point, "line": line - N, "incident": incident,
                         "partitions": len(r.partitions), "complete": r.complete})
            tally[(incident, len(r.partitions))] += 1
    for (incident, k), n in sorted(tally.items()):
        print(f"{'incident' if incident else 'non-incident'} deletions with {k} partitions: {n}")
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
