// DOM rendering of the view model. No state lives in the DOM beyond what
// the view model says.

import type { ViewModel } from "./state.js";
import type { RenderedResult, SchemaNode } from "./types.js";

export function renderGroups(container: HTMLElement, view: ViewModel): void {
  container.textContent = "";
  if (view.sessionId === null) {
    return;
  }
  if (view.empty) {
    const p = document.createElement("p");
    p.className = "empty-state";
    p.textContent = "No results. Try different keywords.";
    container.appendChild(p);
    return;
  }
  for (const group of view.groups) {
    const card = document.createElement("section");
    card.className = "group";
    card.dataset.groupId = String(group.groupId);

    const head = document.createElement("header");
    const title = document.createElement("h3");
    title.className = "group-path";
    title.textContent = group.labelPath;
    const xpath = document.createElement("code");
    xpath.className = "group-xpath";
    xpath.textContent = group.xpath;
    const button = document.createElement("button");
    button.className = "generalize";
    button.textContent = "Generalize";
    button.disabled = !group.generalizeEnabled;
    button.dataset.groupId = String(group.groupId);
    head.append(title, button);
    card.append(head, xpath);

    const list = document.createElement("ul");
    list.className = "results";
    for (const result of group.results) {
      list.appendChild(renderResult(result));
    }
    card.appendChild(list);
    container.appendChild(card);
  }
  if (view.containmentFlags.length > 0) {
    const note = document.createElement("p");
    note.className = "containment-note";
    note.textContent =
      "Note: after feedback, a broadened group now contains another group's structure.";
    container.appendChild(note);
  }
}

function renderResult(result: RenderedResult): HTMLLIElement {
  const li = document.createElement("li");
  li.className = "result";
  li.dataset.resultId = String(result.id);
  const label = document.createElement("span");
  label.className = "result-label";
  label.textContent = `${result.anchor_label}(${result.anchor})`;
  const count = document.createElement("span");
  count.className = "result-count";
  count.textContent = `${result.node_count} node(s)`;
  li.append(label, count);
  if (result.fragment !== undefined) {
    const pre = document.createElement("pre");
    pre.className = "fragment";
    pre.textContent = result.fragment;
    li.appendChild(pre);
  }
  if (result.paths !== undefined) {
    const ul = document.createElement("ul");
    ul.className = "paths";
    for (const p of result.paths) {
      const item = document.createElement("li");
      item.textContent = p.labels.join(" / ");
      ul.appendChild(item);
    }
    li.appendChild(ul);
  }
  return li;
}

export function renderSchema(container: HTMLElement, root: SchemaNode): void {
  container.textContent = "";
  container.appendChild(schemaEntry(root));
}

function schemaEntry(node: SchemaNode): HTMLElement {
  if (node.children.length === 0) {
    const leaf = document.createElement("div");
    leaf.className = "schema-leaf";
    leaf.textContent = `${node.label} (${node.snode_id})`;
    return leaf;
  }
  const details = document.createElement("details");
  details.open = node.depth < 2;
  const summary = document.createElement("summary");
  summary.textContent = `${node.label} (${node.snode_id})`;
  details.appendChild(summary);
  for (const child of node.children) {
    details.appendChild(schemaEntry(child));
  }
  return details;
}
