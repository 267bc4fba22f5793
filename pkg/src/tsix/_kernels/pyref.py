"""Pure-Python reference implementation of the hot kernels.

The three kernels below dominate query runtime: posting-list seek, the
smallest-LCA candidate scan, and the simultaneous twig join.  A compiled
twin lives in ``_native.pyx`` with identical semantics; either backend must
produce bit-identical results.

Path data is passed in packed form: a flat int64 array of concatenated
root-to-node id paths plus an offsets array (``off[i]:off[i+1]`` slices
posting ``i``'s path).  Keys are the posting ids, ascending.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left


def lower_bound(keys, k: int) -> int:
    """Index of the first key >= k (== len(keys) when past the end)."""
    return bisect_left(keys, k)


def slca_candidates(outer_off, outer_flat, other_lists) -> list[tuple[int, ...]]:
    """One candidate per outer posting: the deepest common ancestor of the
    posting that still has a witness in every other list.

    For each list the two postings nearest in preorder to the current
    candidate's id (largest <= id, smallest >= id) bound the deepest
    achievable common prefix, so only those two are probed.
    """
    out: list[tuple[int, ...]] = []
    for a in range(len(outer_off) - 1):
        cand = list(outer_flat[outer_off[a]:outer_off[a + 1]])
        for keys, off, flat in other_lists:
            cid = cand[-1]
            i = bisect_left(keys, cid)
            best = 0
            for j in (i, i - 1):
                if 0 <= j < len(keys):
                    s, e = off[j], off[j + 1]
                    n = min(len(cand), e - s)
                    l = 0
                    while l < n and cand[l] == flat[s + l]:
                        l += 1
                    if l > best:
                        best = l
            del cand[best:]
        out.append(tuple(cand))
    return out


def evaluate_join(outer_np_off, outer_np_flat, outer_lp_off, outer_lp_flat,
                  query_depths, query_lpids, other_lists) -> list[tuple[int, int]]:
    """Single scan of the outer list with an index nested-loop join.

    Each outer posting selects at most one query: the one whose branch label
    path is a prefix of the posting's label path (tested as
    ``numeric_label_path[d] == label_path_id``).  The candidate result is the
    node at the branch depth of the posting's node path; it is accepted iff
    every other keyword list holds a posting whose node path passes through
    that node, which the seek-then-test probe decides (the smallest id >= k
    either passes through k or no posting does).
    """
    results: list[tuple[int, int]] = []
    nq = len(query_depths)
    for a in range(len(outer_np_off) - 1):
        ls, le = outer_lp_off[a], outer_lp_off[a + 1]
        qi = -1
        for j in range(nq):
            d = query_depths[j]
            if le - ls > d and outer_lp_flat[ls + d] == query_lpids[j]:
                qi = j
                break
        if qi < 0:
            continue
        d = query_depths[qi]
        k = outer_np_flat[outer_np_off[a] + d]
        ok = True
        for keys, np_off, np_flat in other_lists:
            i = bisect_left(keys, k)
            if i >= len(keys):
                ok = False
                break
            s, e = np_off[i], np_off[i + 1]
            if e - s <= d or np_flat[s + d] != k:
                ok = False
                break
        if ok:
            results.append((qi, k))
    return results


def pack_paths(paths) -> tuple[array, array]:
    """CSR-pack an iterable of id paths into (offsets, flat) int64 arrays."""
    off = array("q", [0])
    flat = array("q")
    for p in paths:
        flat.extend(p)
        off.append(len(flat))
    return off, flat
