"""Inverted indexes over the schema and the instance tree.

The schema index maps each keyword (or label) to the schema nodes whose
label paths contain it: postings ⟨snode_id, numeric_label_path⟩.  The
instance index maps keywords to instance nodes: postings
⟨inode_id, node_path, numeric_label_path⟩.  Posting lists are ascending by
id and carry a sorted key directory (the subindex) answering
smallest-id->=-k seeks in logarithmic time.
"""

from __future__ import annotations

from array import array
from typing import NamedTuple

from . import _kernels
from .dataguide import DataGuidePlus
from .xmlstore import InstanceTree


class SchemaPosting(NamedTuple):
    snode_id: int
    numeric_label_path: tuple[int, ...]


class InstancePosting(NamedTuple):
    inode_id: int
    node_path: tuple[int, ...]
    numeric_label_path: tuple[int, ...]


class SchemaPostingList:
    def __init__(self, term: str, postings: list[SchemaPosting]):
        self.term = term
        self.postings = tuple(postings)
        self.keys = array("q", (p.snode_id for p in self.postings))
        self._slca_pack: tuple[array, array] | None = None

    def __len__(self) -> int:
        return len(self.postings)

    def slca_pack(self) -> tuple[array, array, array]:
        if self._slca_pack is None:
            self._slca_pack = _kernels.pack_paths(p.numeric_label_path for p in self.postings)
        off, flat = self._slca_pack
        return self.keys, off, flat


class InstancePostingList:
    def __init__(self, term: str, postings: list[InstancePosting]):
        self.term = term
        self.postings = tuple(postings)
        self.keys = array("q", (p.inode_id for p in self.postings))
        self._np_pack: tuple[array, array] | None = None
        self._lp_pack: tuple[array, array] | None = None

    def __len__(self) -> int:
        return len(self.postings)

    def node_path_pack(self) -> tuple[array, array, array]:
        if self._np_pack is None:
            self._np_pack = _kernels.pack_paths(p.node_path for p in self.postings)
        off, flat = self._np_pack
        return self.keys, off, flat

    def label_path_pack(self) -> tuple[array, array]:
        if self._lp_pack is None:
            self._lp_pack = _kernels.pack_paths(p.numeric_label_path for p in self.postings)
        return self._lp_pack

    # kept for API symmetry: the SLCA engine consumes node paths at this level
    slca_pack = node_path_pack


def seek_ge(plist: InstancePostingList | SchemaPostingList, k: int):
    """Posting with the smallest id >= k, or None when every id is smaller."""
    i = _kernels.lower_bound(plist.keys, k)
    return plist.postings[i] if i < len(plist.postings) else None


class SchemaIndex:
    def __init__(self, lists: dict[str, SchemaPostingList]):
        self.lists = lists

    def posting_list(self, term: str) -> SchemaPostingList | None:
        return self.lists.get(term)

    def terms(self) -> list[str]:
        return sorted(self.lists)


class InstanceIndex:
    def __init__(self, lists: dict[str, InstancePostingList]):
        self.lists = lists

    def posting_list(self, term: str) -> InstancePostingList | None:
        return self.lists.get(term)

    def terms(self) -> list[str]:
        return sorted(self.lists)


def build_schema_index(guide: DataGuidePlus) -> SchemaIndex:
    lists = {}
    numeric = guide.numeric_paths
    for term in sorted(guide.keyword_to_snodes):
        snodes = guide.keyword_to_snodes[term]
        postings = [SchemaPosting(s, numeric[s]) for s in snodes]
        lists[term] = SchemaPostingList(term, postings)
    return SchemaIndex(lists)


def build_instance_index(tree: InstanceTree, guide: DataGuidePlus) -> InstanceIndex:
    # occurrence sets are deduplicated, so ids are strictly ascending
    lists = {}
    numeric = guide.numeric_paths
    snode_of = guide.snode_of_inode
    node_paths = tree.all_node_paths()
    for term in sorted(tree.keyword_occurrences):
        ids = tree.keyword_occurrences[term]
        postings = [InstancePosting(i, node_paths[i], numeric[snode_of[i]]) for i in ids]
        lists[term] = InstancePostingList(term, postings)
    return InstanceIndex(lists)
