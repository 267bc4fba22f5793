"""Smallest-LCA computation over sorted posting lists, plus its oracle.

On tree data a common ancestor of a set of nodes is a common prefix of
their root paths, so the LCA of one witness per keyword is the longest
common prefix of the witnesses' paths.  ``get_slca`` runs an indexed-lookup
scan of the shortest list and prunes non-minimal LCAs; ``brute_force_slca``
evaluates the definition literally over the full cross product and is the
reference the fast path is tested against.  Both work unchanged at the
schema level (numeric label paths) and the instance level (node paths).
"""

from __future__ import annotations

from functools import reduce

from . import _kernels
from .errors import ContractError, SizeGuardExceeded

Path = tuple[int, ...]


def lca(paths: list[Path]) -> Path:
    """Longest common prefix of root paths (deepest common ancestor)."""
    if not paths:
        raise ContractError("lca of an empty path set")
    return reduce(_common_prefix, paths)


def _common_prefix(a: Path, b: Path) -> Path:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return a[:i]


def _prune_to_smallest(candidates: set[Path]) -> list[Path]:
    """Drop every path that is a proper prefix of another (ancestors), leaving
    an antichain.  Lexicographic order puts a path's extensions immediately
    after it, so one adjacent comparison per path suffices."""
    ordered = sorted(candidates)
    keep = []
    for i, p in enumerate(ordered):
        nxt = ordered[i + 1] if i + 1 < len(ordered) else None
        if nxt is not None and len(nxt) > len(p) and nxt[: len(p)] == p:
            continue
        keep.append(p)
    keep.sort(key=lambda p: p[-1])
    return keep


def get_slca(lists) -> list[Path]:
    """Smallest LCAs for one posting list per keyword.

    ``lists`` is a sequence of objects exposing ``slca_pack()`` (posting-list
    types from :mod:`tsix.index`, or the ad-hoc lists built by callers).  The
    shortest list drives the scan; any empty list means some keyword has no
    witness, so the result is empty.  Output paths ascend by their last id.
    """
    if not lists:
        raise ContractError("get_slca needs at least one posting list")
    if any(len(l) == 0 for l in lists):
        return []
    ordered = sorted(lists, key=len)
    outer = ordered[0]
    _, o_off, o_flat = outer.slca_pack()
    others = [l.slca_pack() for l in ordered[1:]]
    candidates = _kernels.slca_candidates(o_off, o_flat, others)
    return _prune_to_smallest(set(candidates))


class PackedPathList:
    """Adapter turning a plain list of root paths into a get_slca input.

    Paths must ascend by their last id (the node id).
    """

    def __init__(self, paths: list[Path]):
        self.paths = sorted(paths, key=lambda p: p[-1])
        self._pack = None

    def __len__(self) -> int:
        return len(self.paths)

    def slca_pack(self):
        if self._pack is None:
            from array import array

            keys = array("q", (p[-1] for p in self.paths))
            off, flat = _kernels.pack_paths(self.paths)
            self._pack = (keys, off, flat)
        return self._pack


def brute_force_slca(path_sets: list[list[Path]], guard: int = 10**6) -> list[Path]:
    """Definition-level oracle: enumerate every witness combination, collect
    the LCAs, then keep those whose subtree contains no other LCA."""
    if not path_sets:
        raise ContractError("brute_force_slca needs at least one path set")
    if any(not s for s in path_sets):
        return []
    size = 1
    for s in path_sets:
        size *= len(s)
        if size > guard:
            raise SizeGuardExceeded(f"cross product exceeds {guard}")
    lca_set: set[Path] = set()
    _enumerate(path_sets, 0, None, lca_set)
    return _prune_to_smallest(lca_set)


def _enumerate(path_sets, depth, prefix, out):
    if depth == len(path_sets):
        out.add(prefix)
        return
    for p in path_sets[depth]:
        nxt = p if prefix is None else _common_prefix(prefix, p)
        _enumerate(path_sets, depth + 1, nxt, out)
