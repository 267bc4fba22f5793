#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Builds a bibliography corpus, extracts the packed posting-list inputs the
query engine feeds to the kernels, and times both backends on identical
inputs: smallest-LCA candidate scans, simultaneous twig joins, and seeks.

Usage:
    python benchmarks/bench_kernels.py [--nodes 100000] [--repeat 20]
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from array import array
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tsix._kernels import pyref  # noqa: E402
from tsix.bundle import bundle_from_xml  # noqa: E402
from tsix.synth import scalability_corpus  # noqa: E402
from tsix.xpathexec import translate  # noqa: E402

try:
    from tsix._kernels import _native
except ImportError:
    _native = None


def timeit(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    if _native is None:
        print("native kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1

    print(f"building {args.nodes}-node corpus ...")
    bundle = bundle_from_xml(scalability_corpus(args.nodes))
    config = bundle.config

    # the long filler lists are the stress case
    terms = sorted(bundle.instance_index.lists, key=lambda t: -len(bundle.instance_index.lists[t]))
    t1, t2 = terms[0], terms[1]
    l1 = bundle.instance_index.posting_list(t1)
    l2 = bundle.instance_index.posting_list(t2)
    print(f"posting lists: {t1!r} x{len(l1)}, {t2!r} x{len(l2)}")

    _, o_off, o_flat = l1.node_path_pack()
    others = [l2.node_path_pack()]

    rows = []

    def bench(name, pure_fn, native_fn):
        t_pure = timeit(pure_fn, args.repeat)
        t_native = timeit(native_fn, args.repeat)
        rows.append((name, t_pure, t_native))

    bench("slca_candidates",
          lambda: pyref.slca_candidates(o_off, o_flat, others),
          lambda: _native.slca_candidates(o_off, o_flat, others))

    snodes = [p.snode_id for p in bundle.schema_index.posting_list(config.normalize(t1)).postings]
    queries = translate(snodes[:8], [t1, t2], bundle.guide)
    q_depths = array("q", (q.branch_depth for q in queries))
    q_lpids = array("q", (q.label_path_id for q in queries))
    lp_off, lp_flat = l1.label_path_pack()
    _, np_off, np_flat = l1.node_path_pack()

    bench("evaluate_join",
          lambda: pyref.evaluate_join(np_off, np_flat, lp_off, lp_flat, q_depths, q_lpids, others),
          lambda: _native.evaluate_join(np_off, np_flat, lp_off, lp_flat, q_depths, q_lpids, others))

    keys = l2.keys
    probes = list(range(0, args.nodes, 37))

    bench("lower_bound x%d" % len(probes),
          lambda: [pyref.lower_bound(keys, k) for k in probes],
          lambda: [_native.lower_bound(keys, k) for k in probes])

    # identical results is part of the contract
    assert pyref.slca_candidates(o_off, o_flat, others) == \
        _native.slca_candidates(o_off, o_flat, others)

    print(f"\n{'kernel':<24}{'pure (ms)':>12}{'native (ms)':>14}{'speedup':>10}")
    for name, t_pure, t_native in rows:
        print(f"{name:<24}{t_pure * 1e3:>12.3f}{t_native * 1e3:>14.3f}"
              f"{t_pure / t_native:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
