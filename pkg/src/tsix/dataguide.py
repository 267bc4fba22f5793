"""Keyword-augmented structural summary (one schema node per unique label path).

The summary is a labeled tree: each distinct root-to-node label path of the
instance tree appears exactly once.  Schema nodes carry the keywords found in
value nodes (and labels) under that label path, so keyword queries can be
answered at the schema level first.  Schema ids are preorder numbers over the
summary, with children ordered by first appearance in the document; the same
document therefore always yields the same numbering, and the id of a schema
node doubles as the id of its label path in the label-path table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NodeNotFoundError
from .xmlstore import InstanceTree, ParseConfig


@dataclass
class SchemaNode:
    snode_id: int
    label: str
    parent: int | None
    children: list[int] = field(default_factory=list)
    keywords: set[str] = field(default_factory=set)
    depth: int = 0


class DataGuidePlus:
    """Immutable after build; concurrent readers are safe."""

    def __init__(self, nodes: list[SchemaNode], snode_of_inode: list[int]):
        self.nodes = nodes
        self.root = 0
        self.snode_of_inode = snode_of_inode
        self._paths: list[tuple[str, ...]] = []
        # per-snode root paths, indexable without bounds checks by bulk builders
        self.numeric_paths: list[tuple[int, ...]] = []
        for node in nodes:
            if node.parent is None:
                self._paths.append((node.label,))
                self.numeric_paths.append((node.snode_id,))
            else:
                self._paths.append(self._paths[node.parent] + (node.label,))
                self.numeric_paths.append(self.numeric_paths[node.parent] + (node.snode_id,))
        self._path_to_id = {p: i for i, p in enumerate(self._paths)}
        self.keyword_to_snodes: dict[str, tuple[int, ...]] = {}
        self.config = ParseConfig()  # replaced with the source tree's config on build

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, snode_id: int) -> SchemaNode:
        if not 0 <= snode_id < len(self.nodes):
            raise NodeNotFoundError(f"no schema node with id {snode_id}")
        return self.nodes[snode_id]

    def lookup_label_path(self, snode_id: int) -> tuple[str, ...]:
        self.node(snode_id)
        return self._paths[snode_id]

    def lookup_label_path_id(self, label_path: tuple[str, ...] | list[str] | str) -> int:
        if isinstance(label_path, str):
            label_path = tuple(label_path.split("."))
        key = tuple(label_path)
        if key not in self._path_to_id:
            raise NodeNotFoundError(f"label path {'.'.join(key)!r} not in the summary")
        return self._path_to_id[key]

    def parent(self, snode_id: int) -> int | None:
        return self.node(snode_id).parent

    def depth(self, snode_id: int) -> int:
        return self.node(snode_id).depth

    def numeric_label_path(self, snode_id: int) -> tuple[int, ...]:
        self.node(snode_id)
        return self.numeric_paths[snode_id]

    def label_path_table(self) -> list[tuple[int, tuple[str, ...]]]:
        """All ⟨label_path_id, label_path⟩ rows, ascending by id."""
        return list(enumerate(self._paths))

    def snodes_for_keyword(self, keyword: str) -> tuple[int, ...]:
        return self.keyword_to_snodes.get(keyword, ())

    def snode_for_inode(self, inode_id: int) -> int:
        return self.snode_of_inode[inode_id]


class _Trie:
    __slots__ = ("label", "children", "order")

    def __init__(self, label: str):
        self.label = label
        self.children: dict[str, _Trie] = {}
        self.order: list[_Trie] = []  # first-appearance order


def build_dataguide(tree: InstanceTree) -> DataGuidePlus:
    """One pass over the instance collapses duplicate label paths; a second
    preorder pass over the collapsed trie assigns the final ids."""
    root = _Trie(tree.nodes[0].label)
    trie_of_inode: list[_Trie] = [root]
    for node in tree.nodes[1:]:
        parent_trie = trie_of_inode[node.parent]
        child = parent_trie.children.get(node.label)
        if child is None:
            child = _Trie(node.label)
            parent_trie.children[node.label] = child
            parent_trie.order.append(child)
        trie_of_inode.append(child)

    nodes: list[SchemaNode] = []
    id_of_trie: dict[int, int] = {}

    def assign(trie: _Trie, parent: int | None, depth: int) -> None:
        snode = SchemaNode(snode_id=len(nodes), label=trie.label, parent=parent, depth=depth)
        nodes.append(snode)
        id_of_trie[id(trie)] = snode.snode_id
        if parent is not None:
            nodes[parent].children.append(snode.snode_id)
        for child in trie.order:
            assign(child, snode.snode_id, depth + 1)

    assign(root, None, 0)
    snode_of_inode = [id_of_trie[id(t)] for t in trie_of_inode]
    guide = DataGuidePlus(nodes, snode_of_inode)
    guide.config = tree.config

    keyword_to_snodes: dict[str, tuple[int, ...]] = {}
    for keyword, inode_ids in tree.keyword_occurrences.items():
        snodes = sorted({snode_of_inode[i] for i in inode_ids})
        keyword_to_snodes[keyword] = tuple(snodes)
        for s in snodes:
            nodes[s].keywords.add(keyword)
    guide.keyword_to_snodes = keyword_to_snodes
    return guide
