from __future__ import annotations

import random

from tsix.bundle import build_bundle
from tsix.consistency import resolve_schema_level
from tsix.output import (
    ReturnStrategy,
    infer_entities,
    keyword_paths,
    lowest_entity_ancestor,
    render,
    strategy_node_ids,
)
from tsix.synth import random_document, random_keywords
from tsix.xmlstore import parse_document


def test_infer_entities_fig1a(fig1a):
    entities = fig1a.guide.lookup_label_path_id
    got = infer_entities(fig1a.guide, fig1a.tree)
    assert entities("bib.conf.paper") in got  # conf(1) has two papers
    assert entities("bib.conf") in got  # bib holds several confs
    assert entities("bib.conf.paper.author") in got  # paper(61) has two authors


def test_infer_entities_single_child_everywhere():
    bundle = build_bundle(parse_document("<a><b><c>x</c></b></a>"))
    assert infer_entities(bundle.guide, bundle.tree) == set()


def test_infer_entities_fig1b_author_not_entity(fig1b):
    # every authors element in the fixture holds exactly one author
    got = infer_entities(fig1b.guide, fig1b.tree)
    author = fig1b.guide.lookup_label_path_id("bib.journal.article.authors.author")
    assert author not in got
    assert fig1b.guide.lookup_label_path_id("bib.conf.paper") in got


def test_lowest_entity_ancestor(fig1b):
    guide, tree = fig1b.guide, fig1b.tree
    entities = infer_entities(guide, tree)
    # the journal holds two articles, so ln(106) lifts to article(101)
    assert guide.lookup_label_path_id("bib.journal.article") in entities
    assert lowest_entity_ancestor(tree, guide, 106, entities) == 101
    # a node that is an entity itself stays put
    assert lowest_entity_ancestor(tree, guide, 6, entities) == 6
    # no entity at or above the root: falls back to the node itself
    assert lowest_entity_ancestor(tree, guide, 0, entities) == 0


def test_render_subtree_fig1a(fig1a):
    (r,) = render(fig1a.tree, fig1a.guide, [6], ReturnStrategy.SUBTREE, ["XML", "Levy"])
    assert r.anchor == 6
    assert r.node_count == len(fig1a.tree.subtree_ids(6)) == 5
    assert r.fragment.startswith("<paper>")
    assert "Levy" in r.fragment


def test_render_path_root_contains_all_keywords():
    bundle = build_bundle(parse_document("<doc>alpha beta</doc>"))
    (r,) = render(bundle.tree, bundle.guide, [0], ReturnStrategy.PATH, ["alpha", "beta"])
    assert r.paths == ((0,),)
    assert r.node_count == 1


def test_path_count_never_exceeds_subtree_count(fig1b):
    rng = random.Random(4242)
    for _ in range(50):
        tree = parse_document(random_document(rng, max_nodes=40))
        bundle = build_bundle(tree)
        kws = random_keywords(rng, tree, allow_absent=False)
        for nid in range(0, len(tree), 7):
            p = strategy_node_ids(tree, nid, ReturnStrategy.PATH, kws)
            s = strategy_node_ids(tree, nid, ReturnStrategy.SUBTREE, kws)
            assert len(p) <= len(s)
            assert set(p) <= set(s)


def test_entity_lift_anchors_are_ancestors_or_self(fig1a):
    tree, guide = fig1a.tree, fig1a.guide
    entities = infer_entities(guide, tree)
    for nid in range(len(tree)):
        a = lowest_entity_ancestor(tree, guide, nid, entities)
        assert a in tree.node_path(nid)


def test_subtree_entity_merges_lifted_duplicates(fig1a):
    # fn(64) and ln(65) both lift to their author, one rendered result remains
    tree, guide = fig1a.tree, fig1a.guide
    rendered = render(tree, guide, [64, 65], ReturnStrategy.SUBTREE_ENTITY, ["Alon", "Levy"])
    assert [r.anchor for r in rendered] == [63]


def test_rendering_does_not_change_groups(fig1b):
    res = resolve_schema_level(fig1b, ["XML", "Levy"])
    for strategy in ReturnStrategy:
        for g in res.groups:
            rendered = render(fig1b.tree, fig1b.guide, g.result_ids, strategy, ["XML", "Levy"])
            assert rendered  # presentation only; grouping untouched
    assert res.by_path() == resolve_schema_level(fig1b, ["XML", "Levy"]).by_path()


def test_keyword_paths_run_from_anchor_to_occurrence(fig1a):
    paths = keyword_paths(fig1a.tree, 6, ["XML", "Levy"])
    assert (6, 7) in paths  # title holds XML
    assert (6, 8, 10) in paths  # author/ln holds Levy
    assert all(p[0] == 6 for p in paths)
