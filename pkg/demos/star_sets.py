"""Compatibility graphs on the singular-weight products and their maximal cliques.

Run with ``python3 demos/star_sets.py`` (a few seconds).
"""

import time

from reflex.combin import (
    automorphism_group,
    build_graph,
    clique_stats,
    contract,
    exceptional_classes,
    maximal_cliques,
    srg_params,
)
from reflex.dataset import load_dataset

for name in ("appendix_a", "appendix_b"):
    ds = load_dataset(name)
    cands = ds.tagged(ds.graph_tag)
    t0 = time.perf_counter()
    g = build_graph(cands, jobs=4)
    print(f"\n{ds.lattice_name}: {g.n} products, degree {g.regular_degree()}, "
          f"graph built in {time.perf_counter() - t0:.2f} s")

    cliques = maximal_cliques(g)
    sizes = sorted({len(c) for c in cliques})
    print(f"  {len(cliques)} maximal cliques, sizes {sizes}")
    print("  first few:", [[cands[v].label for v in c] for c in cliques[:3]])

    stats = clique_stats(cliques, g.n)
    print("  cliques per vertex:", stats.vertex_histogram)
    print("  cliques per pair  :", stats.pair_histogram)

    print("  strongly regular  :", srg_params(g))
    classes = exceptional_classes(stats, g.n)
    if any(len(c) > 1 for c in classes):
        q = contract(g, classes)
        print(f"  {len(classes)} classes of size {len(classes[0])}; contracted graph:", srg_params(q))

    t0 = time.perf_counter()
    aut = automorphism_group(g)
    print(f"  |Aut| = {aut.order} ({aut.nodes} search nodes, {time.perf_counter() - t0:.2f} s)")
