"""Command-line interface.

Exit codes: 0 yes / success, 3 a clean "no", 1 usage error, 2 invalid
input, 4 a witness that failed verification.
"""
from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from xml.sax.saxutils import quoteattr

import numpy as np

from . import __version__
from .decision import decide, one_disk_check
from .geom import ConvexPolygon, Disk, GeometryError, Point, realize, to_lifted, validate_polygon
from .oracle import OracleConfig, decide_bruteforce, random_convex_polygon, rstar_bruteforce
from .optimizer import solve, verify_cover

EXIT_YES, EXIT_USAGE, EXIT_INPUT, EXIT_NO, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- serialization ------------------------------------------------------------

def dumps(obj, indent=None):
    """JSON with every float written to 17 significant digits."""
    def conv(o):
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            if not math.isfinite(o):
                raise ValueError("non-finite number in output")
            txt = format(o, ".17g")
            if not any(c in txt for c in ".en"):
                txt += ".0"
            return _Raw(txt)
        if isinstance(o, dict):
            return {k: conv(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [conv(v) for v in o]
        if isinstance(o, np.floating):
            return conv(float(o))
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return _encode(conv(obj), indent, 0)


class _Raw(str):
    pass


def _encode(o, indent, level):
    if isinstance(o, _Raw):
        return str(o)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{json.dumps(k)}: {_encode(v, indent, level + 1)}" for k, v in o.items()]
        return _wrap("{", "}", items, indent, level)
    if isinstance(o, list):
        if not o:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in o]
        return _wrap("[", "]", items, indent, level)
    return json.dumps(o)


def _wrap(op, cl, items, indent, level):
    if indent is None:
        return op + ", ".join(items) + cl
    pad = " " * (indent * (level + 1))
    return op + "\n" + ",\n".join(pad + i for i in items) + "\n" + " " * (indent * level) + cl


def disk_json(d: Disk):
    return {"cx": float(d.center[0]), "cy": float(d.center[1]), "r": float(d.radius)}


def polygon_json(P: ConvexPolygon):
    return {"vertices": [[float(x), float(y)] for x, y in P.vertices]}


# -- input --------------------------------------------------------------------

def _perturb(pts, seed):
    arr = np.asarray(pts, dtype=float)
    diam = float(np.max(np.hypot(*(arr[:, None, :] - arr[None, :, :]).transpose(2, 0, 1))))
    rng = np.random.default_rng(seed)
    arr = arr + rng.uniform(-1.0, 1.0, arr.shape) * 1e-7 * diam
    return [(float(x), float(y)) for x, y in arr]


def load_polygon(path, allow_cocircular=False, perturb=False, seed=0) -> ConvexPolygon:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read polygon file {path}: {exc}") from None
    vs = doc.get("vertices") if isinstance(doc, dict) else None
    if not isinstance(vs, list) or len(vs) < 3:
        raise InputError("polygon file needs a \"vertices\" list with at least 3 points")
    pts = []
    for v in vs:
        if (not isinstance(v, (list, tuple)) or len(v) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)
                or not all(math.isfinite(c) for c in v)):
            raise InputError(f"bad vertex {v!r}: expected a pair of finite numbers")
        pts.append((float(v[0]), float(v[1])))
    if perturb:
        pts = _perturb(pts, seed)
    try:
        return validate_polygon(pts, allow_cocircular=allow_cocircular)
    except GeometryError as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


# -- svg ----------------------------------------------------------------------

def render_svg(P, disks, split_points):
    """Polygon, both disks and the split points; viewBox fits with a 5% margin."""
    xs = [v[0] for v in P.vertices] + [d.center[0] + s * d.radius for d in disks for s in (-1, 1)]
    ys = [v[1] for v in P.vertices] + [d.center[1] + s * d.radius for d in disks for s in (-1, 1)]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    mx, my = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
    w, h = x1 - x0, y1 - y0
    sw = 0.004 * max(w, h)
    # flip y so the picture is not mirrored
    tf = f"matrix(1 0 0 -1 0 {y0 + y1!r})"
    pts = " ".join(f"{x!r},{y!r}" for x, y in P.vertices)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0!r} {y0!r} {w!r} {h!r}">',
        f'<g transform={quoteattr(tf)}>',
        f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="{sw!r}"/>',
    ]
    for d, c in zip(disks, ("#1f77b4", "#ff7f0e")):
        out.append(f'<circle cx="{d.center[0]!r}" cy="{d.center[1]!r}" r="{d.radius!r}" '
                   f'fill="{c}" fill-opacity="0.25" stroke="{c}" stroke-width="{sw!r}"/>')
    k = 3 * sw
    for x, y in split_points:
        out.append(f'<path d="M {x - k!r} {y - k!r} L {x + k!r} {y + k!r} M {x - k!r} {y + k!r} '
                   f'L {x + k!r} {y - k!r}" stroke="crimson" stroke-width="{sw!r}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out)


# -- commands -----------------------------------------------------------------

def _poly_args(p):
    p.add_argument("--input", required=True, help="polygon JSON file")
    p.add_argument("--allow-cocircular", action="store_true",
                   help="accept inputs with four cocircular vertices (e.g. rectangles)")
    p.add_argument("--perturb", action="store_true",
                   help="jitter vertices by 1e-7 of the diameter before validation")
    p.add_argument("--seed", type=int, default=0, help="seed for --perturb")


def _load(args):
    return load_polygon(args.input, args.allow_cocircular, args.perturb, args.seed)


def cmd_decide(args):
    if not (math.isfinite(args.r) and args.r > 0):
        raise UsageError("--r must be a positive number")
    P = _load(args)
    if args.oracle:
        ans = decide_bruteforce(P, args.r)
        doc = {"answer": "yes" if ans else "no", "witness": None, "method": "oracle"}
    else:
        res = decide(P, args.r)
        ans = res.answer
        wit = None
        if ans:
            w = res.witness
            if not verify_cover(P, w.D1, w.D2):
                print("internal error: witness failed verification", file=sys.stderr)
                return EXIT_VERIFY
            wit = {"x": to_lifted(P, w.x), "split": to_lifted(P, w.split2),
                   "disks": [disk_json(w.D1), disk_json(w.D2)]}
        doc = {"answer": res.label, "witness": wit, "method": "sweep"}
    doc["r"] = float(args.r)
    _write(None, dumps(doc, indent=2))
    return EXIT_YES if ans else EXIT_NO


def cmd_solve(args):
    if not (0 < args.tol <= 0.1):
        raise UsageError("--tol must lie in (0, 0.1]")
    t0 = time.perf_counter()
    P = _load(args)
    t1 = time.perf_counter()
    res = solve(P, args.tol)
    t2 = time.perf_counter()
    ok = verify_cover(P, *res.disks)
    t3 = time.perf_counter()
    if not ok:
        print("internal error: witness failed verification", file=sys.stderr)
        return EXIT_VERIFY
    doc = {
        "radius": res.r_high,
        "disks": [disk_json(d) for d in res.disks],
        "splits": [to_lifted(P, b) for b in res.splits],
        "bracket": [res.r_low, res.r_high],
        "meta": {
            "version": __version__,
            "seed": args.seed,
            "tol": args.tol,
            "iterations": res.iterations,
            # wall-clock times would make repeated runs differ, so opt in
            "timings_ms": ({"load": 1e3 * (t1 - t0), "solve": 1e3 * (t2 - t1),
                            "verify": 1e3 * (t3 - t2)} if args.timings else None),
        },
    }
    _write(args.out, dumps(doc, indent=2))
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(P, res.disks, [realize(P, b) for b in res.splits]) + "\n")
    return EXIT_YES


def cmd_gen(args):
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    P = random_convex_polygon(args.n, args.seed)
    _write(args.out, dumps(polygon_json(P), indent=1))
    return EXIT_YES


def bench_radius(P, mode="near-opt"):
    """Radius used for timing: 5% above an estimate of the optimum."""
    if mode != "near-opt":
        raise UsageError(f"unknown --r-mode {mode!r}")
    if P.n <= 64:
        est = rstar_bruteforce(P, OracleConfig(x_samples=64, refine_rounds=1))
    else:
        # a handful of split searches is an upper estimate of the optimum
        est = rstar_bruteforce(P, OracleConfig(x_samples=8, refine_rounds=0))
    return 1.05 * est


def bench_instance(n, seed, mode="near-opt"):
    """First polygon from ``seed`` on whose bench radius needs two disks.

    Near-circular instances have an optimum close to the one-disk radius,
    and 5% above it the decision would be the trivial one-disk answer.
    """
    for k in range(1000):
        P = random_convex_polygon(n, seed + k)
        r = bench_radius(P, mode)
        if one_disk_check(P, r) is None:
            return P, r, seed + k
    raise RuntimeError(f"no two-disk instance found for n={n}")


def run_bench(sizes, trials, mode="near-opt", seed=0, log=None):
    rows = []
    for n in sizes:
        P, r, used = bench_instance(n, seed, mode)
        for k in range(trials):
            t = time.perf_counter()
            res = decide(P, r)
            ms = 1e3 * (time.perf_counter() - t)
            pieces = max(res.stats.get("pieces_f", 0), res.stats.get("pieces_g", 0))
            rows.append({"n": n, "trial": k, "decide_ms": ms, "pieces": pieces, "seed": used,
                         "answer": res.answer, "stats": res.stats})
            if log:
                log(f"n={n} trial={k} {ms:.1f} ms pieces={pieces}")
    return rows


def doubling_ratios(rows):
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r["decide_ms"])
    ns = sorted(by_n)
    med = {n: statistics.median(by_n[n]) for n in ns}
    return [(a, b, (med[b] / med[a]) ** (1.0 / math.log2(b / a))) for a, b in zip(ns, ns[1:])]


def _int_list(text):
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text!r}")
    if not out or any(v < 3 for v in out):
        raise argparse.ArgumentTypeError("sizes must be integers >= 3")
    return out


def cmd_bench(args):
    sizes = args.sizes
    if sizes != sorted(sizes):
        raise UsageError("--sizes must be ascending")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    rows = run_bench(sizes, args.trials, args.r_mode, args.seed,
                     log=(lambda m: print(m, file=sys.stderr)) if args.verbose else None)
    print("n,trial,decide_ms,pieces")
    for r in rows:
        print(f"{r['n']},{r['trial']},{r['decide_ms']:.3f},{r['pieces']}")
    ratios = doubling_ratios(rows)
    print("# median doubling ratios: " + " ".join(f"{a}->{b}:{q:.3f}" for a, b, q in ratios))
    if args.plot:
        from .plotting import plot_bench
        plot_bench(rows, args.plot)
    return EXIT_YES


def cmd_verify(args):
    P = _load(args)
    try:
        with open(args.result) as fh:
            doc = json.load(fh)
        d1, d2 = (Disk(Point(d["cx"], d["cy"]), d["r"]) for d in doc["disks"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read result file {args.result}: {exc}") from None
    ok = verify_cover(P, d1, d2)
    _write(None, dumps({"covered": ok}))
    return EXIT_YES if ok else EXIT_NO


def cmd_plot(args):
    P = _load(args)
    from .plotting import plot_cover
    if args.result:
        with open(args.result) as fh:
            doc = json.load(fh)
        disks = [Disk(Point(d["cx"], d["cy"]), d["r"]) for d in doc["disks"]]
        splits = [P.point_at(s) for s in doc.get("splits", [])]
        title = f"r = {doc['radius']:.9g}"
    else:
        res = solve(P, args.tol)
        disks, splits = list(res.disks), [realize(P, b) for b in res.splits]
        title = f"r = {res.r_high:.9g}"
    plot_cover(P, disks, splits, args.out, title=title)
    return EXIT_YES


def build_parser():
    p = _Parser(prog="bicover", description="Cover a convex polygon with two equal disks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    d = sub.add_parser("decide", help="do two disks of radius r cover the polygon?")
    _poly_args(d)
    d.add_argument("--r", type=float, required=True)
    d.add_argument("--oracle", action="store_true", help="use the slow sampled decision")
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("solve", help="minimum radius with witness disks")
    _poly_args(s)
    s.add_argument("--tol", type=float, default=1e-9, help="relative bracket width")
    s.add_argument("--out", default=None, help="result JSON (default stdout)")
    s.add_argument("--svg", default=None, help="also write an SVG figure")
    s.add_argument("--timings", action="store_true", help="record phase timings in meta")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="random convex polygon")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="decide timings as CSV")
    b.add_argument("--sizes", type=_int_list,
                   default=[1024 * 2 ** k for k in range(7)], help="comma separated, ascending")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--r-mode", default="near-opt", choices=["near-opt"])
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--plot", default=None, help="also write a PNG of time against n")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a result file against a polygon")
    _poly_args(v)
    v.add_argument("--result", required=True)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="render the cover to a PNG")
    _poly_args(pl)
    pl.add_argument("--result", default=None, help="result JSON from solve (else solve now)")
    pl.add_argument("--tol", type=float, default=1e-9)
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"bicover: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"bicover: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
