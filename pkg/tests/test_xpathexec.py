from __future__ import annotations

import random

import pytest

from tsix.bundle import build_bundle
from tsix.consistency import resolve_naive
from tsix.errors import ContractError, NodeNotFoundError
from tsix.synth import random_document, random_keywords
from tsix.xmlstore import parse_document
from tsix.xpathexec import (
    evaluate_queries,
    evaluate_twig_reference,
    evaluate_xpath_reference,
    find_matching_posting,
    parse_twig_xpath,
    translate,
)


def test_translate_printed_strings(fig1b):
    q1, q2 = translate([6, 12], ["XML", "Levy"], fig1b.guide)
    assert q1.query_string == '/bib/conf/paper[contains(., "XML")][contains(., "Levy")]'
    assert q2.query_string == '/bib/journal/article[contains(., "XML")][contains(., "Levy")]'
    assert (q1.branch_depth, q1.label_path_id) == (2, 6)
    assert (q2.branch_depth, q2.label_path_id) == (2, 12)


def test_translate_omits_predicate_for_last_label():
    bundle = build_bundle(parse_document(
        "<site><person><homepage>http x</homepage><name>Ann</name></person></site>"))
    name_snode = bundle.guide.lookup_label_path_id("site.person.name")
    (q,) = translate([name_snode], ["homepage", "name"], bundle.guide)
    assert q.query_string == '/site/person/name[contains(., "homepage")]'


def test_translate_unknown_snode(fig1b):
    with pytest.raises(NodeNotFoundError):
        translate([999], ["XML"], fig1b.guide)


def test_joint_evaluation_printed_example(fig1b):
    queries = translate([6, 12], ["XML", "Levy"], fig1b.guide)
    res = evaluate_queries(queries, fig1b.instance_index, fig1b.config)
    by_snode = {q.source_snode: ids for q, ids in res.items()}
    assert by_snode == {6: (6,), 12: (101,)}


def test_query_with_no_matching_prefix_is_empty(fig1b):
    # bib.conf.chair never holds XML, so its twig yields nothing
    chair = fig1b.guide.lookup_label_path_id("bib.conf.chair")
    (q,) = translate([chair], ["XML", "Levy"], fig1b.guide)
    res = evaluate_queries([q], fig1b.instance_index, fig1b.config)
    assert res[q] == ()


def test_missing_keyword_list_empties_all(fig1b):
    queries = translate([6], ["XML", "zzznone"], fig1b.guide)
    res = evaluate_queries(queries, fig1b.instance_index, fig1b.config)
    assert all(ids == () for ids in res.values())


def test_mixed_keyword_sets_rejected(fig1b):
    (q1,) = translate([6], ["XML"], fig1b.guide)
    (q2,) = translate([12], ["Levy"], fig1b.guide)
    with pytest.raises(ContractError):
        evaluate_queries([q1, q2], fig1b.instance_index, fig1b.config)


def test_find_matching_posting_printed_example(fig1b):
    xml_list = fig1b.instance_index.posting_list("xml")
    posting = find_matching_posting(xml_list, 6, 2)
    assert (posting.inode_id, posting.node_path, posting.numeric_label_path) == \
        (7, (0, 1, 6, 7), (0, 1, 6, 7))


def test_find_matching_posting_past_end(fig1b):
    xml_list = fig1b.instance_index.posting_list("xml")
    assert find_matching_posting(xml_list, 10_000, 2) is None


def test_find_matching_posting_vs_linear_oracle():
    rng = random.Random(808)
    for _ in range(300):
        bundle = build_bundle(parse_document(random_document(rng, max_nodes=40)))
        kw = rng.choice(sorted(bundle.tree.keyword_occurrences))
        plist = bundle.instance_index.posting_list(kw)
        k = rng.randrange(0, len(bundle.tree))
        d = rng.randrange(0, 5)
        hit = find_matching_posting(plist, k, d)
        linear = [p for p in plist.postings if len(p.node_path) > d and p.node_path[d] == k]
        if linear:
            assert hit is not None and hit.node_path[d] == k
        else:
            assert hit is None


def test_single_query_single_keyword_matches_reference():
    rng = random.Random(809)
    for _ in range(100):
        bundle = build_bundle(parse_document(random_document(rng, max_nodes=50)))
        kw = rng.choice(sorted(bundle.tree.keyword_occurrences))
        snodes = bundle.guide.snodes_for_keyword(kw)
        snode = rng.choice(snodes)
        (q,) = translate([snode], [kw], bundle.guide)
        res = evaluate_queries([q], bundle.instance_index, bundle.config)
        ref = evaluate_twig_reference(bundle.tree, bundle.guide.lookup_label_path(snode), [kw])
        assert res[q] == ref


def test_outer_list_choice_invariance(fig1b, monkeypatch):
    # force different outer lists by reordering before the sort tie-break:
    # evaluating with keywords swapped must not change the answer
    queries_a = translate([6, 12], ["XML", "Levy"], fig1b.guide)
    queries_b = translate([6, 12], ["Levy", "XML"], fig1b.guide)
    res_a = {q.source_snode: ids for q, ids in
             evaluate_queries(queries_a, fig1b.instance_index, fig1b.config).items()}
    res_b = {q.source_snode: ids for q, ids in
             evaluate_queries(queries_b, fig1b.instance_index, fig1b.config).items()}
    assert res_a == res_b


def test_candidate_uniqueness():
    # at most one query's branch path prefixes any posting's label path
    rng = random.Random(810)
    for _ in range(100):
        bundle = build_bundle(parse_document(random_document(rng, max_nodes=50)))
        kws = random_keywords(rng, bundle.tree, allow_absent=False)
        naive = resolve_naive(bundle.tree, kws)
        snodes = []
        for g in naive.groups:
            try:
                snodes.append(bundle.guide.lookup_label_path_id(g.structure.incoming_label_path))
            except NodeNotFoundError:
                pass
        if not snodes:
            continue
        queries = translate(snodes, kws, bundle.guide)
        term = bundle.config.normalize(kws[0])
        plist = bundle.instance_index.posting_list(term)
        for posting in plist.postings:
            matches = [q for q in queries
                       if len(posting.numeric_label_path) > q.branch_depth
                       and posting.numeric_label_path[q.branch_depth] == q.label_path_id]
            assert len(matches) <= 1


def test_joint_evaluation_equals_reference_on_random_documents():
    rng = random.Random(811)
    for _ in range(300):
        bundle = build_bundle(parse_document(random_document(rng, max_nodes=60)))
        kws = random_keywords(rng, bundle.tree, allow_absent=False)
        naive = resolve_naive(bundle.tree, kws)
        paths = list(naive.by_path())
        snodes = [bundle.guide.lookup_label_path_id(p) for p in paths]
        queries = translate(snodes, kws, bundle.guide)
        res = evaluate_queries(queries, bundle.instance_index, bundle.config)
        for q in queries:
            ref = evaluate_twig_reference(
                bundle.tree, bundle.guide.lookup_label_path(q.source_snode), kws)
            assert res[q] == ref


def test_parse_twig_xpath():
    parsed = parse_twig_xpath('/bib/conf/paper[contains(., "XML")][contains(., "Levy")]')
    assert parsed == [(("bib", "conf", "paper"), ("XML", "Levy"))]
    parsed = parse_twig_xpath('/a/b["w1"] union /a/c[contains(., "w2")]')
    assert parsed == [(("a", "b"), ("w1",)), (("a", "c"), ("w2",))]
    with pytest.raises(ContractError):
        parse_twig_xpath("//anything[goes]")


def test_xpath_reference_union(fig1b):
    expr = ('/bib/conf/paper[contains(., "XML")][contains(., "Levy")] union '
            '/bib/journal/article[contains(., "XML")][contains(., "Levy")]')
    assert evaluate_xpath_reference(fig1b.tree, expr) == (6, 101)
