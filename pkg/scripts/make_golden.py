"""Freeze reference optima from the brute-force search into testdata/golden/.

Run once; the test suite reads the JSON files instead of re-running the
slow search.
"""
import json
import math
import sys
import time
from pathlib import Path

from bicover.geom import validate_polygon
from bicover.oracle import OracleConfig, polygon_hash, random_convex_polygon, rstar_bruteforce

OUT = Path(__file__).resolve().parents[1] / "testdata" / "golden"
CFG = OracleConfig(x_samples=1024, refine_rounds=3, seed=0)

NAMED = {
    "square": ([(0, 0), (1, 0), (1, 1), (0, 1)], True),
    "rect_1x4": ([(0, 0), (4, 0), (4, 1), (0, 1)], True),
    "triangle": ([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)], False),
}


def record(P, n, seed, name=None):
    t = time.time()
    rstar = rstar_bruteforce(P, CFG)
    rec = {"polygon_hash": polygon_hash(P), "n": n, "seed": seed, "rstar": rstar,
           "cfg": CFG.to_dict()}
    if name:
        rec["name"] = name
        rec["vertices"] = [list(v) for v in P.vertices]
    print(f"{name or ''} n={n} seed={seed} rstar={rstar:.12f} ({time.time() - t:.1f}s)", flush=True)
    return rec


def main(which):
    OUT.mkdir(parents=True, exist_ok=True)
    if which in ("named", "all"):
        recs = []
        for name, (pts, allow) in NAMED.items():
            P = validate_polygon(pts, allow_cocircular=allow)
            recs.append(record(P, P.n, None, name))
        (OUT / "named.json").write_text(json.dumps(recs, indent=1) + "\n")
    if which in ("acceptance", "all"):
        recs = []
        for n in (4, 8, 16, 32, 64):
            for seed in range(1, 21):
                recs.append(record(random_convex_polygon(n, seed), n, seed))
                (OUT / "acceptance.json").write_text(json.dumps(recs, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "all")
