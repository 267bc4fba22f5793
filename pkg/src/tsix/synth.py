"""Synthetic corpora: random trees for oracle testing, a miniature
bibliography corpus with planted queries, and size-parameterized corpora for
scalability runs.  Everything is seeded and deterministic."""

from __future__ import annotations

import random
from xml.sax.saxutils import escape


def random_document(rng: random.Random, max_nodes: int = 60, n_labels: int = 8,
                    n_values: int = 12) -> str:
    """Random labeled tree with repeated label paths and scattered values.

    Shallow fanout-heavy shapes make structural anomalies (the same keyword
    pair meeting at different depths) likely, which is what the equivalence
    tests need to exercise.
    """
    labels = [f"l{i}" for i in range(n_labels)]
    vocab = [f"w{i}" for i in range(n_values)]
    n_nodes = rng.randint(2, max_nodes)
    parents = [0] * n_nodes  # parents[i] < i keeps preorder valid
    for i in range(1, n_nodes):
        parents[i] = rng.randint(max(0, i - 8), i - 1)
    children: list[list[int]] = [[] for _ in range(n_nodes)]
    for i in range(1, n_nodes):
        children[parents[i]].append(i)
    node_labels = [rng.choice(labels) for _ in range(n_nodes)]
    node_values: list[list[str]] = [[] for _ in range(n_nodes)]
    for i in range(n_nodes):
        for _ in range(rng.choice((0, 0, 1, 1, 2))):
            node_values[i].append(rng.choice(vocab))

    out: list[str] = []

    def emit(i: int) -> None:
        out.append(f"<{node_labels[i]}>")
        for v in node_values[i]:
            out.append(escape(v) + " ")
        for c in children[i]:
            emit(c)
        out.append(f"</{node_labels[i]}>")

    emit(0)
    return "".join(out)


def random_keywords(rng: random.Random, tree, max_keywords: int = 3,
                    allow_absent: bool = True) -> list[str]:
    """1..max_keywords keywords, drawn mostly from the document's own
    keyword population (labels and value tokens alike)."""
    population = sorted(tree.keyword_occurrences)
    m = rng.randint(1, max_keywords)
    kws = [rng.choice(population) for _ in range(m)]
    if allow_absent and rng.random() < 0.1:
        kws[rng.randrange(len(kws))] = "zzz_absent"
    return kws


# -- miniature bibliography corpus -------------------------------------------

def _paper(title: str, authors: list[str]) -> str:
    parts = [f"<title>{escape(title)}</title>"]
    parts += [f"<author>{escape(a)}</author>" for a in authors]
    return "<paper>" + "".join(parts) + "</paper>"


def _article(title: str, authors: list[str]) -> str:
    parts = [f"<title>{escape(title)}</title>"]
    parts += [f"<author>{escape(a)}</author>" for a in authors]
    return "<article>" + "".join(parts) + "</article>"


def mini_bibliography(seed: int = 42, n_queries: int = 20, n_spurious: int = 17,
                      union_lo: int = 11, union_hi: int = 15,
                      target_nodes: int = 5000) -> tuple[str, list[dict]]:
    """A ~``target_nodes``-node corpus plus authored query specs.

    Query i searches {topic_i, person_i}.  Every query has planted papers
    matching both keywords under conf/paper (and, for the union range, also
    under journal/article).  For the first ``n_spurious`` queries a conference
    additionally carries topic_i in one paper and person_i as its chair, so a
    plain smallest-LCA search also returns that whole conference while the
    reference structured query does not.
    """
    rng = random.Random(seed)
    filler_words = [f"word{i}" for i in range(40)]
    filler_people = [f"writer{i}" for i in range(30)]

    def filler_title(n=3):
        return " ".join(rng.choice(filler_words) for _ in range(n))

    confs: list[str] = []
    journals: list[str] = []
    specs: list[dict] = []
    for i in range(1, n_queries + 1):
        topic, person = f"topic{i}", f"person{i}"
        papers = [
            _paper(f"{topic} in practice", [person, rng.choice(filler_people)]),
            _paper(f"notes on {topic}", [person]),
        ]
        papers += [_paper(filler_title(), [rng.choice(filler_people)]) for _ in range(3)]
        rng.shuffle(papers)
        confs.append(
            "<conf>"
            f"<name>venue{i}</name><year>{1990 + i}</year>"
            f"<chair>{rng.choice(filler_people)}</chair>"
            + "".join(papers) + "</conf>"
        )
        xpath = (f'/dblp/conf/paper[contains(., "{topic}")][contains(., "{person}")]')
        if union_lo <= i <= union_hi:
            journals.append(
                "<journal>"
                f"<name>journal{i}</name>"
                + _article(f"a survey of {topic}", [person])
                + _article(filler_title(), [rng.choice(filler_people)])
                + "</journal>"
            )
            xpath += f' union /dblp/journal/article[contains(., "{topic}")][contains(., "{person}")]'
        if i <= n_spurious:
            # the spurious venue: chaired by person_i, with an unrelated paper
            # mentioning topic_i (keywords meet only at the conf level)
            confs.append(
                "<conf>"
                f"<name>spurious{i}</name><year>{2000 + i}</year>"
                f"<chair>{person}</chair>"
                + _paper(f"related {topic} directions", [rng.choice(filler_people)])
                + "".join(_paper(filler_title(), [rng.choice(filler_people)]) for _ in range(4))
                + "</conf>"
            )
        specs.append({
            "id": f"q{i:02d}",
            "keywords": [topic, person],
            "reference_xpath": xpath,
            "feedback_rounds": 0,
        })

    body = "".join(confs) + "".join(journals)
    # pad with keyword-free venues up to roughly the requested size
    # (every element contributes one open and one close tag)
    approx = body.count("<") // 2
    while approx < target_nodes:
        fill = "".join(_paper(filler_title(), [rng.choice(filler_people)]) for _ in range(6))
        chunk = (f"<conf><name>filler</name><year>{rng.randint(1980, 2009)}</year>"
                 f"<chair>{rng.choice(filler_people)}</chair>{fill}</conf>")
        body += chunk
        approx += chunk.count("<") // 2
    return "<dblp>" + body + "</dblp>", specs


def scalability_corpus(n_nodes: int, seed: int = 7) -> str:
    """Bibliography-shaped corpus of approximately ``n_nodes`` nodes."""
    xml, _ = mini_bibliography(seed=seed, target_nodes=n_nodes)
    return xml
