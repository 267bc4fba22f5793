"""Precision/recall measurement and the baseline comparison harness.

Quality is measured over retrieved NODES: precision = |R ∩ A| / |A| and
recall = |R ∩ A| / |R|, where R is the union of subtrees rooted at the
reference structured query's results (the desired answers) and A is the node
set the chosen return strategy retrieves.  Suites embed the reference XPath
next to the keywords so ground truth is regenerable from the corpus itself.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field

from .bundle import IndexBundle
from .consistency import apply_feedback, instance_slca_ids, start_search
from .errors import ContractError, NoFurtherGeneralization
from .output import ReturnStrategy, infer_entities, lowest_entity_ancestor, strategy_node_ids
from .xpathexec import evaluate_xpath_reference

METHOD_SC = "sc"
METHOD_SLCA = "slca"


@dataclass(frozen=True)
class QuerySpec:
    id: str
    keywords: tuple[str, ...]
    relevant: frozenset[int] | None = None  # explicit ground-truth roots
    reference_xpath: str | None = None  # or regenerate them from this
    feedback_rounds: int = 0


@dataclass
class Metrics:
    precision: float
    recall: float
    retrieved_count: int
    relevant_count: int
    elapsed_ms: float = 0.0
    degenerate: bool = False


def precision_recall(retrieved: set[int], relevant: set[int]) -> Metrics:
    """Node-set precision and recall; the doubly-empty case is reported as
    perfect but flagged degenerate (nothing was asked for, nothing returned)."""
    if not retrieved and not relevant:
        return Metrics(1.0, 1.0, 0, 0, degenerate=True)
    hits = len(retrieved & relevant)
    precision = hits / len(retrieved) if retrieved else 1.0
    recall = hits / len(relevant) if relevant else 0.0
    degenerate = not retrieved or not relevant
    return Metrics(precision, recall, len(retrieved), len(relevant), degenerate=degenerate)


def load_suite(path: str) -> list[QuerySpec]:
    with open(path, encoding="utf-8") as f:
        rows = json.load(f)
    specs = []
    for row in rows:
        specs.append(QuerySpec(
            id=row["id"],
            keywords=tuple(row["keywords"]),
            relevant=frozenset(row["relevant"]) if "relevant" in row else None,
            reference_xpath=row.get("reference_xpath"),
            feedback_rounds=int(row.get("feedback_rounds", 0)),
        ))
    return specs


def ground_truth_roots(bundle: IndexBundle, spec: QuerySpec) -> frozenset[int]:
    if spec.relevant is not None:
        return spec.relevant
    if spec.reference_xpath:
        return frozenset(evaluate_xpath_reference(bundle.tree, spec.reference_xpath))
    raise ContractError(f"spec {spec.id} has neither explicit relevant ids nor a reference XPath")


def _retrieve_sc(bundle: IndexBundle, spec: QuerySpec) -> list[int]:
    state = start_search(bundle, spec.keywords)
    for _ in range(spec.feedback_rounds):
        for group in sorted(state.marked):
            try:
                apply_feedback(state, group)
            except NoFurtherGeneralization:
                pass
    return list(state.results_so_far.all_ids())


def _retrieve_slca(bundle: IndexBundle, spec: QuerySpec) -> list[int]:
    return instance_slca_ids(bundle.tree, spec.keywords)


_RETRIEVERS = {METHOD_SC: _retrieve_sc, METHOD_SLCA: _retrieve_slca}


@dataclass
class SuiteReport:
    rows: list[dict] = field(default_factory=list)

    def row(self, query_id: str, method: str, strategy: ReturnStrategy) -> dict | None:
        for r in self.rows:
            if (r["query"], r["method"], r["strategy"]) == (query_id, method, strategy.value):
                return r
        return None

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows}, indent=2)

    def write_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())

    def write_csv(self, path: str) -> None:
        fields = ["query", "method", "strategy", "precision", "recall",
                  "retrieved", "relevant", "ms"]
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.DictWriter(f, fieldnames=fields, extrasaction="ignore")
            w.writeheader()
            for r in self.rows:
                w.writerow({**r, "retrieved": r["retrieved_count"],
                            "relevant": r["relevant_count"], "ms": r["elapsed_ms"]})


def run_suite(bundle: IndexBundle, specs: list[QuerySpec],
              methods=(METHOD_SC, METHOD_SLCA),
              strategies=(ReturnStrategy.SUBTREE,)) -> SuiteReport:
    """Per-query, per-method, per-strategy metrics.

    Timing covers retrieval plus anchor lifting and descendant counting; it
    excludes any payload materialization.  Metrics themselves are
    deterministic for a fixed bundle.
    """
    for m in methods:
        if m not in _RETRIEVERS:
            raise ContractError(f"unknown method {m!r}")
    tree, guide = bundle.tree, bundle.guide
    entities = infer_entities(guide, tree)
    report = SuiteReport()
    for spec in specs:
        relevant_roots = ground_truth_roots(bundle, spec)
        relevant: set[int] = set()
        for r in relevant_roots:
            relevant.update(tree.subtree_ids(r))
        for method in methods:
            for strategy in strategies:
                t0 = time.perf_counter()
                roots = _RETRIEVERS[method](bundle, spec)
                if strategy.uses_entities:
                    anchors = sorted({lowest_entity_ancestor(tree, guide, r, entities) for r in roots})
                else:
                    anchors = roots
                retrieved: set[int] = set()
                for a in anchors:
                    retrieved.update(strategy_node_ids(tree, a, strategy, spec.keywords))
                elapsed_ms = (time.perf_counter() - t0) * 1000.0
                metrics = precision_recall(retrieved, relevant)
                metrics.elapsed_ms = elapsed_ms
                report.rows.append({
                    "query": spec.id,
                    "method": method,
                    "strategy": strategy.value,
                    "keywords": list(spec.keywords),
                    "precision": metrics.precision,
                    "recall": metrics.recall,
                    "retrieved_count": metrics.retrieved_count,
                    "relevant_count": metrics.relevant_count,
                    "result_roots": sorted(roots),
                    "elapsed_ms": round(metrics.elapsed_ms, 3),
                    "degenerate": metrics.degenerate,
                })
    return report
