"""Versioned on-disk bundle: tree + structural summary + both indexes.

Layout (all integers little-endian):

    magic   4 bytes  b"TSIX"
    version u16      current = 1
    flags   u16      reserved, 0
    length  u64      payload byte count
    sha256  32 bytes checksum of the payload
    payload          sections in fixed order (see _write_payload)

Records inside the payload are length-prefixed: strings are u32 byte count +
UTF-8, id paths are u32 count + u32 ids.  Writing is fully deterministic, so
rebuilding the same document yields a byte-identical file.  Derived data
(keyword occurrence sets, schema keyword sets, the inode→snode map) is
reconstructed on load from the stored sections.
"""

from __future__ import annotations

import gc
import hashlib
import io
import struct
from contextlib import contextmanager
from dataclasses import dataclass

from .dataguide import DataGuidePlus, SchemaNode, build_dataguide
from .errors import BundleChecksumError, BundleTruncatedError, BundleVersionError
from .index import (
    InstanceIndex,
    InstancePosting,
    InstancePostingList,
    SchemaIndex,
    SchemaPosting,
    SchemaPostingList,
    build_instance_index,
    build_schema_index,
)
from .xmlstore import ATTRIBUTE, ELEMENT, InstanceNode, InstanceTree, ParseConfig, parse_document

MAGIC = b"TSIX"
VERSION = 1
_NONE = 0xFFFFFFFF


@dataclass
class IndexBundle:
    tree: InstanceTree
    guide: DataGuidePlus
    schema_index: SchemaIndex
    instance_index: InstanceIndex

    @property
    def config(self) -> ParseConfig:
        return self.tree.config

    def stats(self) -> dict[str, int]:
        return {
            "instance_nodes": len(self.tree),
            "schema_nodes": len(self.guide),
            "distinct_keywords": len(self.instance_index.lists),
        }


@contextmanager
def _gc_paused():
    # the bulk build allocates many small, cycle-free objects; keeping the
    # cycle collector out of it keeps build time linear in document size
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def build_bundle(tree: InstanceTree) -> IndexBundle:
    with _gc_paused():
        guide = build_dataguide(tree)
        return IndexBundle(tree, guide, build_schema_index(guide),
                           build_instance_index(tree, guide))


def bundle_from_xml(xml_text: str, config: ParseConfig | None = None) -> IndexBundle:
    with _gc_paused():
        tree = parse_document(xml_text, config)
    return build_bundle(tree)


# -- encoding helpers --------------------------------------------------------

def _w_u8(out, v):
    out.write(struct.pack("<B", v))


def _w_u32(out, v):
    out.write(struct.pack("<I", v))


def _w_str(out, s: str):
    b = s.encode("utf-8")
    _w_u32(out, len(b))
    out.write(b)


def _w_path(out, path):
    _w_u32(out, len(path))
    out.write(struct.pack(f"<{len(path)}I", *path))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise BundleTruncatedError("payload ends inside a record")
        b = self.data[self.pos:self.pos + n]
        self.pos += n
        return b

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def str_(self) -> str:
        return self.take(self.u32()).decode("utf-8")

    def path(self) -> tuple[int, ...]:
        n = self.u32()
        return struct.unpack(f"<{n}I", self.take(4 * n))


# -- payload -----------------------------------------------------------------

def _write_payload(bundle: IndexBundle) -> bytes:
    out = io.BytesIO()
    cfg = bundle.config
    _w_u8(out, 1 if cfg.case_sensitive else 0)
    _w_str(out, cfg.token_pattern)

    tree = bundle.tree
    _w_u32(out, len(tree))
    for node in tree.nodes:
        _w_str(out, node.label)
        _w_u8(out, 0 if node.kind == ELEMENT else 1)
        _w_u32(out, _NONE if node.parent is None else node.parent)
        _w_u32(out, node.subtree_end)
        _w_u32(out, len(node.content))
        for item in node.content:
            if isinstance(item, str):
                _w_u8(out, 1)
                _w_str(out, item)
            else:
                _w_u8(out, 0)
                _w_u32(out, item)

    guide = bundle.guide
    _w_u32(out, len(guide))
    for snode in guide.nodes:
        _w_str(out, snode.label)
        _w_u32(out, _NONE if snode.parent is None else snode.parent)

    _w_u32(out, len(bundle.schema_index.lists))
    for term in bundle.schema_index.terms():
        plist = bundle.schema_index.lists[term]
        _w_str(out, term)
        _w_u32(out, len(plist))
        for p in plist.postings:
            _w_u32(out, p.snode_id)
            _w_path(out, p.numeric_label_path)

    _w_u32(out, len(bundle.instance_index.lists))
    for term in bundle.instance_index.terms():
        plist = bundle.instance_index.lists[term]
        _w_str(out, term)
        _w_u32(out, len(plist))
        for p in plist.postings:
            _w_u32(out, p.inode_id)
            _w_path(out, p.node_path)
            _w_path(out, p.numeric_label_path)
    return out.getvalue()


def _read_payload(data: bytes) -> IndexBundle:
    r = _Reader(data)
    config = ParseConfig(case_sensitive=bool(r.u8()), token_pattern=r.str_())

    n_nodes = r.u32()
    nodes: list[InstanceNode] = []
    for i in range(n_nodes):
        label = r.str_()
        kind = ELEMENT if r.u8() == 0 else ATTRIBUTE
        parent = r.u32()
        parent = None if parent == _NONE else parent
        subtree_end = r.u32()
        node = InstanceNode(inode_id=i, label=label, kind=kind, parent=parent,
                            subtree_end=subtree_end)
        for _ in range(r.u32()):
            if r.u8() == 1:
                node.content.append(r.str_())
            else:
                node.content.append(r.u32())
        nodes.append(node)

    n_snodes = r.u32()
    snodes: list[SchemaNode] = []
    for i in range(n_snodes):
        label = r.str_()
        parent = r.u32()
        parent = None if parent == _NONE else parent
        depth = 0 if parent is None else snodes[parent].depth + 1
        snode = SchemaNode(snode_id=i, label=label, parent=parent, depth=depth)
        if parent is not None:
            snodes[parent].children.append(i)
        snodes.append(snode)

    schema_lists = {}
    for _ in range(r.u32()):
        term = r.str_()
        postings = [SchemaPosting(r.u32(), r.path()) for _ in range(r.u32())]
        schema_lists[term] = SchemaPostingList(term, postings)

    instance_lists = {}
    for _ in range(r.u32()):
        term = r.str_()
        postings = [InstancePosting(r.u32(), r.path(), r.path()) for _ in range(r.u32())]
        instance_lists[term] = InstancePostingList(term, postings)
    if r.pos != len(data):
        raise BundleTruncatedError("trailing bytes after the last section")

    occurrences = {t: tuple(p.inode_id for p in pl.postings) for t, pl in sorted(instance_lists.items())}
    tree = InstanceTree(nodes, occurrences, config)

    snode_of_inode = _rebuild_snode_map(nodes, snodes)
    guide = DataGuidePlus(snodes, snode_of_inode)
    guide.config = config
    guide.keyword_to_snodes = {t: tuple(p.snode_id for p in pl.postings)
                               for t, pl in sorted(schema_lists.items())}
    for term, pl in schema_lists.items():
        for p in pl.postings:
            snodes[p.snode_id].keywords.add(term)

    return IndexBundle(tree, guide, SchemaIndex(schema_lists), InstanceIndex(instance_lists))


def _rebuild_snode_map(nodes: list[InstanceNode], snodes: list[SchemaNode]) -> list[int]:
    by_label = [{snodes[c].label: c for c in s.children} for s in snodes]
    snode_of = [0] * len(nodes)
    for node in nodes[1:]:
        snode_of[node.inode_id] = by_label[snode_of[node.parent]][node.label]
    return snode_of


# -- file I/O ----------------------------------------------------------------

def save_bundle(bundle: IndexBundle, path: str) -> None:
    payload = _write_payload(bundle)
    digest = hashlib.sha256(payload).digest()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<HHQ", VERSION, 0, len(payload)))
        f.write(digest)
        f.write(payload)


def load_bundle(path: str) -> IndexBundle:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < 48 or data[:4] != MAGIC:
        raise BundleTruncatedError("not a bundle file (bad magic or short header)")
    version, _flags, length = struct.unpack("<HHQ", data[4:16])
    if version != VERSION:
        raise BundleVersionError(f"bundle version {version}, reader supports {VERSION}")
    digest = data[16:48]
    payload = data[48:]
    if len(payload) != length:
        raise BundleTruncatedError(f"payload is {len(payload)} bytes, header declares {length}")
    if hashlib.sha256(payload).digest() != digest:
        raise BundleChecksumError("payload checksum mismatch")
    return _read_payload(payload)
