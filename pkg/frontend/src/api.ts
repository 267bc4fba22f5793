// Thin client for the query service. All calls go through a single promise
// chain so at most one request per session is in flight; extra clicks queue.

import type { QueryResponse, RenderedResult, SchemaResponse, Strategy } from "./types.js";

type FetchLike = typeof globalThis.fetch;

export class ApiClient {
  private queue: Promise<unknown> = Promise.resolve();

  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.queue.then(job, job);
    this.queue = next.catch(() => undefined);
    return next;
  }

  /** Resolves when every queued request has settled. */
  whenIdle(): Promise<void> {
    return this.queue.then(() => undefined);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) {
      const text = await res.text();
      throw new Error(`${path} failed: ${res.status} ${text}`);
    }
    return res.json() as Promise<T>;
  }

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!res.ok) {
      throw new Error(`${path} failed: ${res.status}`);
    }
    return res.json() as Promise<T>;
  }

  query(keywords: string, strategy: Strategy): Promise<QueryResponse> {
    return this.enqueue(() => this.post<QueryResponse>("/query", { keywords, strategy }));
  }

  feedback(sessionId: string, groupId: number, strategy: Strategy): Promise<QueryResponse> {
    return this.enqueue(() =>
      this.post<QueryResponse>("/feedback", {
        session_id: sessionId,
        group_id: groupId,
        strategy,
      }),
    );
  }

  node(id: number, strategy: Strategy, sessionId: string): Promise<RenderedResult> {
    return this.enqueue(() =>
      this.get<RenderedResult>(
        `/node/${id}?strategy=${encodeURIComponent(strategy)}&session_id=${encodeURIComponent(sessionId)}`,
      ),
    );
  }

  schema(): Promise<SchemaResponse> {
    return this.enqueue(() => this.get<SchemaResponse>("/schema"));
  }
}
