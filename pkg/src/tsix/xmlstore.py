"""Preorder-numbered labeled tree over XML documents.

Every element and attribute receives a dense preorder id (0..N-1).  Text
content is kept as id-less value nodes attached to their owning element or
attribute; any operation that would touch a value node is expressed through
the parent id instead.  Keyword occurrences are collected at parse time:
tokens of value text register on the owning node's id, and each node's label
registers as a keyword of the node itself, so queries may match either
values or labels.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass, field
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

from .errors import DocumentParseError, NodeNotFoundError

ELEMENT = "element"
ATTRIBUTE = "attribute"


@dataclass(frozen=True)
class ParseConfig:
    """Tokenization knobs.

    The source material never pins down tokenization or case rules, so both
    are configuration: by default value text splits on any run of
    non-word characters and matching is case-insensitive.
    """

    case_sensitive: bool = False
    token_pattern: str = r"[0-9A-Za-z_]+"

    def normalize(self, term: str) -> str:
        return term if self.case_sensitive else term.lower()

    def tokenize(self, text: str) -> list[str]:
        if not self.case_sensitive:
            text = text.lower()
        return re.findall(self.token_pattern, text)


@dataclass(slots=True)
class InstanceNode:
    """A numbered element or attribute.

    Value nodes carry no ids of their own: each text fragment sits in its
    parent's ``content`` as a plain string, and operations that would touch a
    value node use the parent id instead.
    """

    inode_id: int
    label: str
    kind: str  # ELEMENT or ATTRIBUTE
    parent: int | None
    # Document-ordered content: child ids interleaved with value fragments.
    content: list[int | str] = field(default_factory=list)
    subtree_end: int = -1  # inclusive last preorder id of the subtree

    @property
    def children(self) -> list[int]:
        """Ids of non-value children, in document order."""
        return [c for c in self.content if isinstance(c, int)]


class InstanceTree:
    """Immutable-after-parse tree; safe to share across reader threads."""

    def __init__(self, nodes: list[InstanceNode], keyword_occurrences: dict[str, tuple[int, ...]],
                 config: ParseConfig):
        self.nodes = nodes
        self.root = 0
        self.keyword_occurrences = keyword_occurrences
        self.config = config

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, inode_id: int) -> InstanceNode:
        if not 0 <= inode_id < len(self.nodes):
            raise NodeNotFoundError(f"no instance node with id {inode_id}")
        return self.nodes[inode_id]

    def node_path(self, inode_id: int) -> tuple[int, ...]:
        """Root-to-node id sequence; strictly ascending by the preorder law."""
        path = []
        cur: int | None = self.node(inode_id).inode_id
        while cur is not None:
            path.append(cur)
            cur = self.nodes[cur].parent
        path.reverse()
        return tuple(path)

    def all_node_paths(self) -> list[tuple[int, ...]]:
        """Every node's root path in one sequential pass; bulk consumers
        (index builds) share these tuples instead of re-walking parents."""
        paths: list[tuple[int, ...]] = [()] * len(self.nodes)
        paths[0] = (0,)
        for node in self.nodes[1:]:
            paths[node.inode_id] = paths[node.parent] + (node.inode_id,)
        return paths

    def label_path(self, inode_id: int) -> tuple[str, ...]:
        return tuple(self.nodes[i].label for i in self.node_path(inode_id))

    def subtree_ids(self, inode_id: int) -> range:
        """Descendants-or-self as the contiguous preorder range."""
        node = self.node(inode_id)
        return range(node.inode_id, node.subtree_end + 1)

    def value_texts(self, inode_id: int) -> list[str]:
        return [c for c in self.node(inode_id).content if isinstance(c, str)]

    def occurrences(self, keyword: str) -> tuple[int, ...]:
        return self.keyword_occurrences.get(self.config.normalize(keyword), ())

    def contains_keyword(self, inode_id: int, keyword: str) -> bool:
        """True iff the keyword occurs in the subtree rooted at ``inode_id``."""
        occ = self.occurrences(keyword)
        node = self.node(inode_id)
        i = bisect_left(occ, node.inode_id)
        return i < len(occ) and occ[i] <= node.subtree_end

    def serialize_subtree(self, inode_id: int) -> str:
        """XML fragment for the subtree; reparsing the root fragment reassigns
        identical preorder ids (attribute and content order are preserved)."""
        node = self.node(inode_id)
        out: list[str] = []
        self._write(node, out)
        return "".join(out)

    def _write(self, node: InstanceNode, out: list[str]) -> None:
        attrs = [self.nodes[c] for c in node.children if self.nodes[c].kind == ATTRIBUTE]
        parts = []
        for a in attrs:
            texts = self.value_texts(a.inode_id)
            parts.append(f" {a.label}={quoteattr(' '.join(texts))}")
        body: list[str] = []
        for item in node.content:
            if isinstance(item, str):
                body.append(escape(item))
            elif self.nodes[item].kind == ELEMENT:
                self._write(self.nodes[item], body)
        if body:
            out.append(f"<{node.label}{''.join(parts)}>")
            out.extend(body)
            out.append(f"</{node.label}>")
        else:
            out.append(f"<{node.label}{''.join(parts)}/>")


def parse_document(xml_text: str, config: ParseConfig | None = None) -> InstanceTree:
    """Parse well-formed XML into a preorder-numbered InstanceTree.

    Streams the document through expat once, numbering nodes as their start
    tags arrive (document order is preorder by definition), so no
    intermediate DOM is built and depth is unbounded.
    """
    config = config or ParseConfig()
    if not xml_text.strip():
        raise DocumentParseError("empty document", byte_offset=0, line=1, column=0)

    nodes: list[InstanceNode] = []
    # term -> id list, appended in discovery order and deduplicated/sorted at
    # the freeze below (lists keep the transient footprint small)
    occurrences: dict[str, list[int]] = {}
    setdefault = occurrences.setdefault
    norm_label: dict[str, str] = {}  # labels repeat heavily; normalize each once
    find_tokens = re.compile(config.token_pattern).findall
    fold_case = not config.case_sensitive
    stack: list[InstanceNode] = []
    text_parts: list[str] = []

    def add_node(label: str, kind: str, parent: int | None) -> InstanceNode:
        node = InstanceNode(inode_id=len(nodes), label=label, kind=kind, parent=parent)
        nodes.append(node)
        normalized = norm_label.get(label)
        if normalized is None:
            normalized = norm_label[label] = config.normalize(label)
        setdefault(normalized, []).append(node.inode_id)
        return node

    def register_tokens(text: str, inode_id: int) -> None:
        for token in set(find_tokens(text.lower() if fold_case else text)):
            setdefault(token, []).append(inode_id)

    def flush_text() -> None:
        if not text_parts:
            return
        fragment = "".join(text_parts).strip()
        text_parts.clear()
        if not fragment or not stack:
            return
        owner = stack[-1]
        owner.content.append(fragment)
        register_tokens(fragment, owner.inode_id)

    def start_element(name: str, attrs: list[str]) -> None:
        flush_text()
        parent = stack[-1] if stack else None
        node = add_node(name, ELEMENT, parent.inode_id if parent else None)
        if parent is not None:
            parent.content.append(node.inode_id)
        stack.append(node)
        for i in range(0, len(attrs), 2):
            attr = add_node(attrs[i], ATTRIBUTE, node.inode_id)
            node.content.append(attr.inode_id)
            value = attrs[i + 1].strip()
            if value:
                attr.content.append(value)
                register_tokens(value, attr.inode_id)
            attr.subtree_end = attr.inode_id

    def end_element(name: str) -> None:
        flush_text()
        node = stack.pop()
        node.subtree_end = len(nodes) - 1

    parser = expat.ParserCreate()
    parser.ordered_attributes = True
    parser.buffer_text = True
    parser.StartElementHandler = start_element
    parser.EndElementHandler = end_element
    parser.CharacterDataHandler = text_parts.append
    try:
        parser.Parse(xml_text, True)
    except expat.ExpatError as exc:
        raise DocumentParseError(
            f"malformed XML: {expat.errors.messages[exc.code]}",
            byte_offset=parser.ErrorByteIndex, line=exc.lineno, column=exc.offset,
        ) from None
    if not nodes:
        raise DocumentParseError("empty document", byte_offset=0, line=1, column=0)

    frozen = {kw: tuple(sorted(set(ids))) for kw, ids in sorted(occurrences.items())}
    return InstanceTree(nodes, frozen, config)


def parse_file(path: str, config: ParseConfig | None = None) -> InstanceTree:
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read(), config)
