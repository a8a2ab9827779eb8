"""Compare the compiled and pure-Python search kernels on fixed instances.

    python3 benchmarks/bench_search.py [--repeat 3] [--json]

Both kernels walk the same tree, so node counts must agree; the script
checks that and reports nodes per second for each.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from pcsp_adjoint import build, functors
from pcsp_adjoint.graph import clique, cycle, power
from pcsp_adjoint.search import available_kernels, count_homomorphisms, find_homomorphism, use_kernel


def instances():
    K4 = clique(4)
    yield "delta(delta(K4)) -> K3", functors.arc_digraph(functors.arc_digraph(K4)), clique(3), "find"
    yield "petersen -> K3", build("petersen"), clique(3), "find"
    yield "K4 -> K_7/2", K4, build("circular:7/2"), "find"
    yield "kneser(6,2) -> K3", build("kneser:6,2"), clique(3), "find"
    yield "omega3(K_7/2) -> K3", functors.omega(build("circular:7/2"), 3), clique(3), "find"
    yield "count C5^2 -> K3", power(cycle(5), 2), clique(3), "count"
    yield "count C7^2 -> K_5/2", power(cycle(7), 2), build("circular:5/2"), "count"


def run_once(G, H, mode):
    start = time.perf_counter()
    if mode == "find":
        res = find_homomorphism(G, H)
        out = (res.status, res.nodes)
    else:
        out = ("count", count_homomorphisms(G, H))
    return out, time.perf_counter() - start


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    kernels = available_kernels()
    if "compiled" not in kernels:
        print("compiled kernel not built; only the python kernel is timed", file=sys.stderr)
    rows = []
    for name, G, H, mode in instances():
        row = {"instance": name}
        outcomes = {}
        for k in kernels:
            with use_kernel(k):
                best = float("inf")
                for _ in range(args.repeat):
                    out, dt = run_once(G, H, mode)
                    best = min(best, dt)
            outcomes[k] = out
            row[k] = best
        row["outcome"] = list(outcomes["python"])
        if len(set(outcomes.values())) != 1:
            print(f"kernels disagree on {name}: {outcomes}", file=sys.stderr)
            return 1
        if "compiled" in row:
            row["speedup"] = row["python"] / row["compiled"] if row["compiled"] else float("inf")
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'instance':28} {'outcome':>18} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for r in rows:
        comp = f"{r['compiled']:.4f}" if "compiled" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['instance']:28} {str(r['outcome']):>18} {r['python']:10.4f} {comp:>11} {sp:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
