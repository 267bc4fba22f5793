"""HTTP service: search, grouped results, and session-scoped feedback.

Sessions live in memory behind an LRU cap with idle expiry; each holds the
generalization state of one feedback loop.  The transport adds nothing
semantic: a /feedback call returns exactly what library-level apply_feedback
produces for the same state.
"""

from __future__ import annotations

import threading
import time
import uuid
from collections import OrderedDict

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .bundle import IndexBundle
from .consistency import GeneralizationState, QueryResultSet, apply_feedback, start_search
from .errors import NodeNotFoundError, NoFurtherGeneralization, TsixError
from .output import ReturnStrategy, infer_entities, render
from .xpathexec import make_query_string

DEFAULT_TTL_SECONDS = 1800.0
DEFAULT_SESSION_CAP = 256


class QueryBody(BaseModel):
    keywords: list[str] | str = Field(..., description="keyword list or whitespace-separated string")
    strategy: str = ReturnStrategy.SUBTREE.value


class FeedbackBody(BaseModel):
    session_id: str
    group_id: int
    strategy: str = ReturnStrategy.SUBTREE.value


class _Session:
    def __init__(self, state: GeneralizationState):
        self.state = state
        self.lock = threading.Lock()
        self.last_access = time.time()


class SessionStore:
    def __init__(self, ttl: float = DEFAULT_TTL_SECONDS, cap: int = DEFAULT_SESSION_CAP):
        self.ttl = ttl
        self.cap = cap
        self._sessions: OrderedDict[str, _Session] = OrderedDict()
        self._lock = threading.Lock()

    def create(self, state: GeneralizationState) -> str:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._sessions[session_id] = _Session(state)
            while len(self._sessions) > self.cap:
                self._sessions.popitem(last=False)
        return session_id

    def get(self, session_id: str) -> _Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None or time.time() - session.last_access > self.ttl:
                self._sessions.pop(session_id, None)
                raise HTTPException(status_code=410, detail="session expired or unknown")
            session.last_access = time.time()
            self._sessions.move_to_end(session_id)
            return session


def _keywords_of(body: QueryBody) -> list[str]:
    kws = body.keywords.split() if isinstance(body.keywords, str) else list(body.keywords)
    if not kws:
        raise HTTPException(status_code=400, detail="no keywords given")
    return kws


def _strategy_of(value: str) -> ReturnStrategy:
    try:
        return ReturnStrategy(value)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"unknown strategy {value!r}")


def create_app(bundle: IndexBundle, ttl: float = DEFAULT_TTL_SECONDS,
               cap: int = DEFAULT_SESSION_CAP, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tsix query service")
    store = SessionStore(ttl=ttl, cap=cap)
    tree, guide = bundle.tree, bundle.guide
    entities = infer_entities(guide, tree)

    def group_payload(result: QueryResultSet, keywords, strategy: ReturnStrategy) -> list[dict]:
        groups = []
        for g in result.groups:
            rendered = render(tree, guide, g.result_ids, strategy, keywords, entities)
            groups.append({
                "group_id": g.snode_id,
                "structure": {
                    "label_path": ".".join(g.structure.incoming_label_path),
                    "xpath": make_query_string(g.structure.incoming_label_path,
                                               tuple(keywords), bundle.config.normalize),
                },
                "generalize_enabled": guide.depth(g.snode_id) > 0,
                "results": [
                    {"id": r.anchor, **r.as_json(tree)} for r in rendered
                ],
            })
        return groups

    def session_payload(session_id: str, state: GeneralizationState,
                        strategy: ReturnStrategy) -> dict:
        return {
            "session_id": session_id,
            "keywords": list(state.keywords),
            "strategy": strategy.value,
            "groups": group_payload(state.results_so_far, state.keywords, strategy),
            "containment_flags": [list(f) for f in state.results_so_far.containment_flags],
        }

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", **bundle.stats()}

    @app.post("/query")
    def query(body: QueryBody) -> dict:
        keywords = _keywords_of(body)
        strategy = _strategy_of(body.strategy)
        try:
            state = start_search(bundle, keywords)
        except TsixError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session_id = store.create(state)
        return session_payload(session_id, state, strategy)

    @app.post("/feedback")
    def feedback(body: FeedbackBody) -> dict:
        strategy = _strategy_of(body.strategy)
        session = store.get(body.session_id)
        with session.lock:
            try:
                apply_feedback(session.state, body.group_id)
            except NodeNotFoundError:
                raise HTTPException(status_code=404, detail=f"unknown group {body.group_id}")
            except NoFurtherGeneralization as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            return session_payload(body.session_id, session.state, strategy)

    @app.get("/node/{inode_id}")
    def node(inode_id: int, strategy: str = Query(ReturnStrategy.SUBTREE.value),
             session_id: str | None = None, keywords: str | None = None) -> dict:
        strat = _strategy_of(strategy)
        kws: list[str] = []
        if session_id:
            kws = list(store.get(session_id).state.keywords)
        elif keywords:
            kws = keywords.split()
        if strat.is_path and not kws:
            raise HTTPException(status_code=400,
                                detail="path strategies need session_id or keywords")
        try:
            (rendered,) = render(tree, guide, [inode_id], strat, kws, entities)
        except NodeNotFoundError:
            raise HTTPException(status_code=404, detail=f"unknown node {inode_id}")
        return {"id": inode_id, **rendered.as_json(tree)}

    @app.get("/schema")
    def schema() -> dict:
        def outline(snode_id: int) -> dict:
            s = guide.nodes[snode_id]
            return {
                "snode_id": s.snode_id,
                "label": s.label,
                "depth": s.depth,
                "children": [outline(c) for c in s.children],
            }

        return {"root": outline(guide.root), "schema_nodes": len(guide)}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
