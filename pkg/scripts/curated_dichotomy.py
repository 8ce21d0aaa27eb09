"""Classify every curated curve and print its per-component sepcanonical dimensions.

    python3 scripts/curated_dichotomy.py [--corpus tests/corpus]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from sepcanon.hyperelliptic import ComponentVerdict, ModuliOracle, load_middle_azimuths
from sepcanon.serialize import curve_from_json, read_json
from sepcanon.sepcanonical import full_report

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "corpus"


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--corpus", type=Path, default=DEFAULT)
    args = p.parse_args(argv)

    mismatches = 0
    for path in sorted(args.corpus.glob("*.json")):
        case = read_json(path)
        g = curve_from_json(case["curve"])
        rep = full_report(g, ModuliOracle.from_json(case.get("oracle", {})), load_middle_azimuths(case.get("azimuths", {})))
        got = rep.verdict.overall.value
        ok = got == case["expected"]
        mismatches += not ok
        print(f"{path.stem:40s} {got:17s} {'ok' if ok else 'MISMATCH expected ' + case['expected']}")
        for c in rep.components:
            identity = ""
            if c.verdict is ComponentVerdict.TWO_TO_ONE:
                identity = f"  deg {c.bundle_degree} = 2*({c.system_dim}-1)"
            print(f"    {c.component:12s} g={c.genus:<3d} twist={c.twist.degree:<3d} dim={c.system_dim:<3d}{identity}")
        for w in rep.verdict.witnesses:
            print(f"    witness {w.kind} {w.id}: {w.reason}")
    print(f"{mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
