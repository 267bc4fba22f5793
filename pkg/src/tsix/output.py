"""Result rendering: the four return strategies and entity inference.

Subtree returns the whole subtree rooted at a result; Path returns only the
paths from the result root down to the query keywords.  The entity variants
first lift each result to its lowest entity ancestor-or-self, where a label
is an entity when some single parent instance holds two or more children
with that label (a one-to-many relationship).  Rendering never changes the
group partition; it only decides what is shown and counted per result.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum

from .dataguide import DataGuidePlus
from .xmlstore import InstanceTree


class ReturnStrategy(str, Enum):
    SUBTREE = "subtree"
    PATH = "path"
    SUBTREE_ENTITY = "subtree-entity"
    PATH_ENTITY = "path-entity"

    @property
    def uses_entities(self) -> bool:
        return self in (ReturnStrategy.SUBTREE_ENTITY, ReturnStrategy.PATH_ENTITY)

    @property
    def is_path(self) -> bool:
        return self in (ReturnStrategy.PATH, ReturnStrategy.PATH_ENTITY)


@dataclass(frozen=True)
class RenderedResult:
    anchor: int
    strategy: ReturnStrategy
    node_ids: tuple[int, ...]
    node_count: int
    fragment: str | None = None  # subtree strategies
    paths: tuple[tuple[int, ...], ...] = ()  # path strategies

    def as_json(self, tree: InstanceTree) -> dict:
        data: dict = {
            "anchor": self.anchor,
            "anchor_label": tree.nodes[self.anchor].label,
            "strategy": self.strategy.value,
            "node_count": self.node_count,
        }
        if self.fragment is not None:
            data["fragment"] = self.fragment
        if self.paths:
            data["paths"] = [
                {"ids": list(p), "labels": [tree.nodes[i].label for i in p]} for p in self.paths
            ]
        return data


def infer_entities(guide: DataGuidePlus, tree: InstanceTree) -> set[int]:
    """Schema nodes whose instances occur two-or-more under one parent."""
    entities: set[int] = set()
    snode_of = guide.snode_of_inode
    for node in tree.nodes:
        seen: dict[int, int] = {}
        for child in node.children:
            s = snode_of[child]
            seen[s] = seen.get(s, 0) + 1
            if seen[s] == 2:
                entities.add(s)
    return entities


def lowest_entity_ancestor(tree: InstanceTree, guide: DataGuidePlus, inode_id: int,
                           entities: set[int]) -> int:
    """Nearest ancestor-or-self on an entity label path; the node itself when
    no entity lies on its root path (keeps the result rather than dropping it)."""
    path = tree.node_path(inode_id)
    snode_of = guide.snode_of_inode
    for nid in reversed(path):
        if snode_of[nid] in entities:
            return nid
    return inode_id


def keyword_paths(tree: InstanceTree, anchor: int, keywords) -> list[tuple[int, ...]]:
    """Root-of-result-to-keyword paths: one per keyword occurrence inside the
    anchor's subtree, each running from the anchor to the occurrence node."""
    node = tree.node(anchor)
    paths = []
    for w in keywords:
        occ = tree.occurrences(w)
        i = bisect_left(occ, node.inode_id)
        while i < len(occ) and occ[i] <= node.subtree_end:
            target_path = tree.node_path(occ[i])
            paths.append(target_path[target_path.index(anchor):])
            i += 1
    return sorted(set(paths))


def strategy_node_ids(tree: InstanceTree, anchor: int, strategy: ReturnStrategy,
                      keywords) -> tuple[int, ...]:
    """The retrieved-node set one result contributes under a strategy (this is
    what precision/recall accounting counts)."""
    if strategy.is_path:
        ids: set[int] = set()
        for p in keyword_paths(tree, anchor, keywords):
            ids.update(p)
        ids.add(anchor)
        return tuple(sorted(ids))
    return tuple(tree.subtree_ids(anchor))


def render(tree: InstanceTree, guide: DataGuidePlus, result_ids, strategy: ReturnStrategy,
           keywords, entities: set[int] | None = None) -> list[RenderedResult]:
    """Render a group's result ids; entity-lifted duplicates are merged."""
    if strategy.uses_entities:
        if entities is None:
            entities = infer_entities(guide, tree)
        anchors = []
        for rid in result_ids:
            a = lowest_entity_ancestor(tree, guide, rid, entities)
            if a not in anchors:
                anchors.append(a)
    else:
        anchors = list(result_ids)

    rendered = []
    for a in anchors:
        ids = strategy_node_ids(tree, a, strategy, keywords)
        if strategy.is_path:
            rendered.append(RenderedResult(anchor=a, strategy=strategy, node_ids=ids,
                                           node_count=len(ids),
                                           paths=tuple(keyword_paths(tree, a, keywords))))
        else:
            rendered.append(RenderedResult(anchor=a, strategy=strategy, node_ids=ids,
                                           node_count=len(ids),
                                           fragment=tree.serialize_subtree(a)))
    return rendered
