"""Writes every connected simple graph on 1..8 nodes, up to isomorphism, as graph6."""
import itertools
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def main(out_path):
    by_size = {n: [] for n in EXPECTED}
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= 7 and nx.is_connected(g):
            by_size[n].append(g)

    buckets = {}
    for g in by_size[7]:
        for r in range(1, 8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_node(7)
                h.add_edges_from((7, v) for v in nbrs)
                key = (tuple(sorted(d for _, d in h.degree())),
                       nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, o) for o in bucket):
                    bucket.append(h)
    by_size[8] = [g for b in buckets.values() for g in b]

    for n, want in EXPECTED.items():
        if len(by_size[n]) != want:
            sys.exit(f"{n} nodes: got {len(by_size[n])}, want {want}")
    with open(out_path, "w") as f:
        for n in sorted(by_size):
            for g in by_size[n]:
                f.write(nx.to_graph6_bytes(g, header=False).decode())


if __name__ == "__main__":
    main(sys.argv[1])
