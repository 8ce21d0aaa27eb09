"""Run the separation analysis over every small multigraph and summarise what turns up.

    python3 scripts/enumerate_corpus.py --max-vertices 5 --max-edges 6 --random 500
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field

from sepcanon.corpus import CorpusConfig, exhaustive_multigraphs, random_genera, random_multigraphs, to_curve
from sepcanon.curve_graph import Stability, arithmetic_genus, classify_stability
from sepcanon.separators import separation_tree, structure, two_separation
from sepcanon.sepcanonical import genus_accounting


@dataclass
class Tally:
    graphs: int = 0
    stable: int = 0
    semicompact: int = 0
    with_seps: int = 0
    with_biseps: int = 0
    proper_polyseparators: dict = field(default_factory=dict)  # degree -> count
    multi_piece_components: int = 0
    accounting_failures: int = 0
    examples_multi_piece: list = field(default_factory=list)


def analyse(g, tally: Tally) -> None:
    tally.graphs += 1
    if classify_stability(g) is Stability.STABLE and arithmetic_genus(g) >= 2:
        tally.stable += 1
    s = structure(g)
    tally.semicompact += s.is_semicompact()
    tally.with_seps += bool(s.seps)
    tally.with_biseps += bool(s.biseps)
    for p in s.polyseparators:
        if p.is_proper:
            tally.proper_polyseparators[p.degree] = tally.proper_polyseparators.get(p.degree, 0) + 1
    comps = two_separation(g)
    separation_tree(g)
    for c in comps:
        if c.pieces > 1:
            tally.multi_piece_components += 1
            if len(tally.examples_multi_piece) < 3:
                tally.examples_multi_piece.append([list(e.ends) for e in g.edges])
    blown = {e for st in s.adjacent_stars for e in st.edges}
    if not genus_accounting(g, blown).holds:
        tally.accounting_failures += 1


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--random", type=int, default=500)
    p.add_argument("--seed", type=int, default=20240611)
    p.add_argument("--json", help="write the tally to this file")
    args = p.parse_args(argv)
    cfg = CorpusConfig(args.max_vertices, args.max_edges, True, args.random, args.seed)

    rng = random.Random(cfg.seed + 1)
    tallies = {"exhaustive": Tally(), "random": Tally()}
    start = time.perf_counter()
    for n, edges in exhaustive_multigraphs(cfg):
        analyse(to_curve(n, edges, random_genera(rng, n)), tallies["exhaustive"])
    for n, edges in random_multigraphs(cfg):
        analyse(to_curve(n, edges, random_genera(rng, n)), tallies["random"])
    elapsed = time.perf_counter() - start

    for name, t in tallies.items():
        print(f"{name}: {t.graphs} graphs, {t.stable} stable of genus >= 2, {t.semicompact} semicompact")
        print(f"  with seps {t.with_seps}, with biseps {t.with_biseps}")
        print(f"  proper polyseparators by degree: {dict(sorted(t.proper_polyseparators.items()))}")
        print(f"  2-components glued from several pieces: {t.multi_piece_components}")
        print(f"  genus accounting failures: {t.accounting_failures}")
    print(f"elapsed {elapsed:.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({k: asdict(v) for k, v in tallies.items()}, fh, indent=2)
    return 0 if all(t.accounting_failures == 0 for t in tallies.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
