"""Result structures and structural-anomaly resolution.

A query result's structure is its incoming label path (root to result node)
plus the query keywords.  A result whose structure is a proper prefix of
another result's structure is spurious; keeping only results whose structure
is a *smallest* structure makes the answer set structurally consistent.

Two resolvers produce the same grouped answers:

* ``resolve_naive`` works at the instance level: compute every smallest-LCA
  result, keep those with smallest structures.
* ``resolve_schema_level`` computes smallest-LCA nodes over the structural
  summary instead, evaluates one twig per schema node, and repairs the two
  ways the summary can mislead: a schema node with no witnesses is walked up
  parent by parent until witnesses appear (otherwise real answers would be
  dismissed), and a walked-up structure that comes to contain another live
  structure is dropped (otherwise phantom structures would re-introduce
  anomalies, or one structure would be produced twice).

Relevance feedback reuses the same loop: a group the user asks to broaden is
generalized one level even though it has witnesses, and is exempt from the
drop rule (the user explicitly sanctioned the broader structure; any
resulting containment is surfaced as a flag instead).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .bundle import IndexBundle
from .dataguide import DataGuidePlus
from .errors import ContractError, NodeNotFoundError, NoFurtherGeneralization, OutOfRangeError
from .slca import PackedPathList, get_slca
from .xmlstore import InstanceTree
from .xpathexec import evaluate_queries, translate


@dataclass(frozen=True)
class ResultStructure:
    incoming_label_path: tuple[str, ...]
    keywords: frozenset[str]

    @property
    def result_node_marker(self) -> int:
        return len(self.incoming_label_path) - 1

    def display(self) -> str:
        return ".".join(self.incoming_label_path)


def structurally_contains(a: ResultStructure, b: ResultStructure) -> bool:
    """a ≺ b: a's incoming label path is a proper prefix of b's."""
    if a.keywords != b.keywords:
        raise ContractError("structures of different queries are not comparable")
    pa, pb = a.incoming_label_path, b.incoming_label_path
    return len(pa) < len(pb) and pb[: len(pa)] == pa


def structurally_equivalent(a: ResultStructure, b: ResultStructure) -> bool:
    if a.keywords != b.keywords:
        raise ContractError("structures of different queries are not comparable")
    return a.incoming_label_path == b.incoming_label_path


def smallest_result_structures(structures) -> set[ResultStructure]:
    """Structures not properly contained in any other, deduplicated."""
    unique = set(structures)
    return {
        a for a in unique
        if not any(structurally_contains(a, b) for b in unique if b is not a)
    }


@dataclass(frozen=True)
class ResultGroup:
    structure: ResultStructure
    result_ids: tuple[int, ...]
    snode_id: int | None = None  # schema-level group identity; None for the naive path


@dataclass(frozen=True)
class QueryResultSet:
    groups: tuple[ResultGroup, ...]
    # (general snode, specific snode) pairs present in the output; can only be
    # non-empty after feedback deliberately broadened a group
    containment_flags: tuple[tuple[int, int], ...] = ()

    def all_ids(self) -> tuple[int, ...]:
        return tuple(sorted(set(itertools.chain.from_iterable(g.result_ids for g in self.groups))))

    def by_path(self) -> dict[tuple[str, ...], tuple[int, ...]]:
        return {g.structure.incoming_label_path: g.result_ids for g in self.groups}


def _normalized_keywords(keywords, config) -> tuple[list[str], list[str]]:
    """(raw, normalized) with duplicates (by normalized form) removed."""
    raw, terms, seen = [], [], set()
    for w in keywords:
        t = config.normalize(w)
        if t not in seen:
            seen.add(t)
            raw.append(w)
            terms.append(t)
    if not terms:
        raise ContractError("a query needs at least one keyword")
    return raw, terms


def instance_slca_ids(tree: InstanceTree, keywords) -> list[int]:
    """Plain smallest-LCA baseline over the instance tree."""
    _, terms = _normalized_keywords(keywords, tree.config)
    path_lists = []
    for t in terms:
        ids = tree.keyword_occurrences.get(t, ())
        path_lists.append(PackedPathList([tree.node_path(i) for i in ids]))
    return [p[-1] for p in get_slca(path_lists)]


def resolve_naive(tree: InstanceTree, keywords) -> QueryResultSet:
    """Instance-level resolution: all smallest LCAs, then keep only those
    whose result structure is a smallest result structure, grouped by
    structure."""
    raw, terms = _normalized_keywords(keywords, tree.config)
    kwset = frozenset(terms)
    slcas = instance_slca_ids(tree, raw)
    structures = {qr: ResultStructure(tree.label_path(qr), kwset) for qr in slcas}
    smallest = smallest_result_structures(structures.values())
    grouped: dict[tuple[str, ...], list[int]] = {}
    for qr, rs in structures.items():
        if rs in smallest:
            grouped.setdefault(rs.incoming_label_path, []).append(qr)
    groups = tuple(
        ResultGroup(ResultStructure(path, kwset), tuple(sorted(ids)))
        for path, ids in sorted(grouped.items(), key=lambda kv: min(kv[1]))
    )
    return QueryResultSet(groups)


def kth_ancestor(guide: DataGuidePlus, snode_id: int, k: int) -> int:
    """The unique ancestor with depth(snode) - k."""
    if k < 1 or k > guide.depth(snode_id):
        raise OutOfRangeError(f"no {k}th-ancestor of snode {snode_id} (depth {guide.depth(snode_id)})")
    cur = snode_id
    for _ in range(k):
        cur = guide.parent(cur)
    return cur


def _is_proper_prefix(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def resolve_schema_level(bundle: IndexBundle, keywords,
                         feedback: set[int] | frozenset[int] | None = None,
                         order: str = "ascending") -> QueryResultSet:
    """Schema-level resolution with iterative ancestor generalization.

    Without feedback this returns exactly ``resolve_naive``'s groups.  With
    ``feedback`` (snode ids the user asked to broaden), a structure reaching a
    forced snode is generalized once more even though it has witnesses, and
    such user-driven structures are never dropped by the containment rule.
    ``order`` picks which live structure is handled first; the final group set
    does not depend on it.
    """
    guide, config = bundle.guide, bundle.config
    raw, terms = _normalized_keywords(keywords, config)
    kwset = frozenset(terms)
    forced = frozenset(feedback or ())

    schema_lists = [bundle.schema_index.posting_list(t) for t in terms]
    if any(l is None or len(l) == 0 for l in schema_lists):
        return QueryResultSet(())
    slca_paths = get_slca(schema_lists)
    if not slca_paths:
        return QueryResultSet(())

    initial = [p[-1] for p in slca_paths]
    queries = translate(initial, raw, guide)
    qr: dict[int, tuple[int, ...]] = {
        q.source_snode: ids for q, ids in evaluate_queries(queries, bundle.instance_index, config).items()
    }

    def evaluate_single(snode: int) -> tuple[int, ...]:
        (query,) = translate([snode], raw, guide)
        return evaluate_queries([query], bundle.instance_index, config)[query]

    pick = min if order == "ascending" else max
    unmarked: dict[int, bool] = {s: False for s in initial}  # snode -> user-sanctioned
    marked: dict[int, tuple[int, ...]] = {}
    exempt: set[int] = set()

    while unmarked:
        s = pick(unmarked)
        sanctioned = unmarked.pop(s)
        ids = qr[s] if s in qr else qr.setdefault(s, evaluate_single(s))
        if ids and s not in forced:
            marked[s] = ids
            if sanctioned:
                exempt.add(s)
            continue
        if guide.depth(s) == 0:
            # nothing above the root; keep whatever the root holds
            if ids:
                marked[s] = ids
                if sanctioned:
                    exempt.add(s)
            continue
        parent = guide.parent(s)
        sanctioned = sanctioned or s in forced
        if parent in unmarked or parent in marked:
            # the same structure is already live: collapse the duplicate
            if sanctioned and parent in unmarked:
                unmarked[parent] = True
            elif sanctioned and parent in marked:
                exempt.add(parent)
            continue
        parent_path = guide.numeric_label_path(parent)
        live = itertools.chain(unmarked, marked)
        incurs_anomaly = any(
            _is_proper_prefix(parent_path, guide.numeric_label_path(other)) for other in live
        )
        if incurs_anomaly and not sanctioned:
            continue  # phantom structure (or duplicate generalization): drop
        unmarked[parent] = sanctioned

    flags = tuple(
        (a, b)
        for a in sorted(marked)
        for b in sorted(marked)
        if _is_proper_prefix(guide.numeric_label_path(a), guide.numeric_label_path(b))
    )
    groups = tuple(
        ResultGroup(ResultStructure(guide.lookup_label_path(s), kwset), marked[s], snode_id=s)
        for s in sorted(marked)
    )
    return QueryResultSet(groups, containment_flags=flags)


@dataclass
class GeneralizationState:
    """Per-session resolution state for the feedback loop."""

    bundle: IndexBundle
    keywords: tuple[str, ...]
    forced: set[int] = field(default_factory=set)
    results_so_far: QueryResultSet = QueryResultSet(())
    created: float = field(default_factory=time.time)

    @property
    def marked(self) -> set[int]:
        return {g.snode_id for g in self.results_so_far.groups if g.snode_id is not None}

    @property
    def unmarked(self) -> set[int]:
        return set()  # resolution always runs to completion


def start_search(bundle: IndexBundle, keywords) -> GeneralizationState:
    state = GeneralizationState(bundle=bundle, keywords=tuple(keywords))
    state.results_so_far = resolve_schema_level(bundle, state.keywords)
    return state


def apply_feedback(state: GeneralizationState, group: int) -> QueryResultSet:
    """Broaden one answered group by one structure level and re-resolve."""
    if group not in state.marked:
        raise NodeNotFoundError(f"group {group} is not part of the current answer")
    if state.bundle.guide.depth(group) == 0:
        raise NoFurtherGeneralization(f"group {group} is already the root structure")
    state.forced.add(group)
    state.results_so_far = resolve_schema_level(state.bundle, state.keywords, feedback=state.forced)
    return state.results_so_far
