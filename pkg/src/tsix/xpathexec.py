"""Twig-query generation and simultaneous evaluation.

Each selected schema node becomes one branching twig: the slash-joined label
path down to the node plus one containment predicate per query keyword.  All
twigs of a query share the keyword set, so a single scan of one keyword's
posting list joined against the others evaluates every twig at once.  Query
strings are emitted for display and interoperability only; evaluation always
runs on the structured form.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass

from . import _kernels
from .dataguide import DataGuidePlus
from .errors import ContractError
from .index import InstanceIndex, InstancePosting, InstancePostingList
from .xmlstore import InstanceTree


@dataclass(frozen=True)
class XPathQuery:
    query_string: str
    branch_depth: int  # depth of the branching node; root has depth 0
    label_path_id: int  # = snode id of the branching node
    keywords: tuple[str, ...]  # original query keywords, in query order
    source_snode: int


def make_query_string(label_path: tuple[str, ...], keywords: tuple[str, ...],
                      normalize) -> str:
    """Slash-joined path plus contains() predicates; a keyword equal to the
    last label is already satisfied by the path itself and gets no predicate."""
    last = normalize(label_path[-1])
    predicates = "".join(
        f'[contains(., "{w}")]' for w in keywords if normalize(w) != last
    )
    return "/" + "/".join(label_path) + predicates


def translate(schema_slcas, keywords, guide: DataGuidePlus) -> list[XPathQuery]:
    """One branching twig per schema node, ascending by snode id."""
    if not keywords:
        raise ContractError("translate needs at least one keyword")
    kws = tuple(keywords)
    normalize = guide.config.normalize
    queries = []
    for snode in sorted(schema_slcas):
        lp = guide.lookup_label_path(snode)
        queries.append(
            XPathQuery(
                query_string=make_query_string(lp, kws, normalize),
                branch_depth=guide.depth(snode),
                label_path_id=snode,
                keywords=kws,
                source_snode=snode,
            )
        )
    return queries


def find_matching_posting(plist: InstancePostingList, k: int, depth: int) -> InstancePosting | None:
    """Witness for "node k contains this keyword": seek the smallest id >= k
    and test whether its node path passes through k at the branch depth.  If
    that posting misses, no posting in the list can hit."""
    i = _kernels.lower_bound(plist.keys, k)
    if i >= len(plist.postings):
        return None
    posting = plist.postings[i]
    if len(posting.node_path) > depth and posting.node_path[depth] == k:
        return posting
    return None


def evaluate_queries(queries: list[XPathQuery], index: InstanceIndex,
                     config=None) -> dict[XPathQuery, tuple[int, ...]]:
    """Evaluate all twigs in one scan of the shortest keyword list.

    Results are per-query sorted id sets; a node is reported once no matter
    how many outer postings select it.
    """
    results: dict[XPathQuery, set[int]] = {q: set() for q in queries}
    if not queries:
        return {}
    kws = queries[0].keywords
    for q in queries:
        if q.keywords != kws:
            raise ContractError("all queries must share one keyword set")
    normalize = config.normalize if config is not None else str.lower
    terms = []
    seen = set()
    for w in kws:
        t = normalize(w)
        if t not in seen:
            seen.add(t)
            terms.append(t)
    lists = [index.posting_list(t) for t in terms]
    if any(l is None or len(l) == 0 for l in lists):
        return {q: () for q in queries}
    lists.sort(key=len)
    outer, rest = lists[0], lists[1:]

    from array import array

    q_depths = array("q", (q.branch_depth for q in queries))
    q_lpids = array("q", (q.label_path_id for q in queries))
    _, np_off, np_flat = outer.node_path_pack()
    lp_off, lp_flat = outer.label_path_pack()
    others = [l.node_path_pack() for l in rest]
    for qi, k in _kernels.evaluate_join(np_off, np_flat, lp_off, lp_flat,
                                        q_depths, q_lpids, others):
        results[queries[qi]].add(k)
    return {q: tuple(sorted(ids)) for q, ids in results.items()}


def evaluate_twig_reference(tree: InstanceTree, label_path: tuple[str, ...],
                            keywords) -> tuple[int, ...]:
    """Independent twig evaluator used as the oracle and for ground truth:
    walk the tree for nodes at the exact label path, then check that every
    keyword occurs inside the node's subtree.  No index joins involved."""
    out = []
    occ = {w: tree.occurrences(w) for w in keywords}
    for node in tree.nodes:
        if tree.label_path(node.inode_id) != tuple(label_path):
            continue
        hit = True
        for w in keywords:
            ids = occ[w]
            i = bisect_left(ids, node.inode_id)
            if i >= len(ids) or ids[i] > node.subtree_end:
                hit = False
                break
        if hit:
            out.append(node.inode_id)
    return tuple(out)


_SEGMENT = re.compile(r"^(?P<path>(?:/[^/\[\]]+)+)(?P<preds>(?:\[[^\]]*\])*)$")
_PREDICATE = re.compile(r"\[\s*(?:contains\(\s*\.\s*,\s*\"([^\"]*)\"\s*\)|\"([^\"]*)\")\s*\]")


def parse_twig_xpath(expr: str) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Parse the restricted XPath form this engine emits (child axis plus
    contains predicates, optionally a union of several such paths) into
    (label_path, keywords) pairs.  The short form ["w"] is accepted as a
    synonym for [contains(., "w")]."""
    branches = re.split(r"\s+union\s+|\s+\|\s+", expr.strip())
    parsed = []
    for branch in branches:
        m = _SEGMENT.match(branch.strip())
        if not m:
            raise ContractError(f"unsupported XPath form: {branch!r}")
        labels = tuple(m.group("path").strip("/").split("/"))
        keywords = tuple(a or b for a, b in _PREDICATE.findall(m.group("preds")))
        parsed.append((labels, keywords))
    return parsed


def evaluate_xpath_reference(tree: InstanceTree, expr: str) -> tuple[int, ...]:
    """Union-of-twigs reference evaluation of an XPath string (ground truth)."""
    ids: set[int] = set()
    for labels, kws in parse_twig_xpath(expr):
        # a keyword that re-states the last label is implied by the path
        ids.update(evaluate_twig_reference(tree, labels, kws))
    return tuple(sorted(ids))
