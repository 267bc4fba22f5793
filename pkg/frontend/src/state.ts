// View state is a pure function of the last service response plus the
// selected strategy. Groups are mirrored from the payload verbatim; the
// client never re-derives grouping or generalizability on its own.

import type { Group, QueryResponse, RenderedResult, Strategy } from "./types.js";

export interface GroupView {
  groupId: number;
  labelPath: string;
  xpath: string;
  generalizeEnabled: boolean;
  results: RenderedResult[];
}

export interface ViewModel {
  sessionId: string | null;
  keywords: string[];
  strategy: Strategy;
  groups: GroupView[];
  containmentFlags: number[][];
  empty: boolean;
}

export const initialView = (strategy: Strategy): ViewModel => ({
  sessionId: null,
  keywords: [],
  strategy,
  groups: [],
  containmentFlags: [],
  empty: false,
});

export function viewFromResponse(response: QueryResponse, strategy: Strategy): ViewModel {
  return {
    sessionId: response.session_id,
    keywords: response.keywords,
    strategy,
    groups: response.groups.map(groupView),
    containmentFlags: response.containment_flags,
    empty: response.groups.length === 0,
  };
}

function groupView(group: Group): GroupView {
  return {
    groupId: group.group_id,
    labelPath: group.structure.label_path,
    xpath: group.structure.xpath,
    generalizeEnabled: group.generalize_enabled,
    results: group.results,
  };
}

/** Swap in re-rendered payloads after a strategy toggle; grouping is untouched. */
export function withRenderedResults(
  view: ViewModel,
  strategy: Strategy,
  rendered: Map<number, RenderedResult>,
): ViewModel {
  return {
    ...view,
    strategy,
    groups: view.groups.map((g) => ({
      ...g,
      results: g.results.map((r) => rendered.get(r.id) ?? r),
    })),
  };
}
