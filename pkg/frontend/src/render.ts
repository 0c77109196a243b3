/**
 * DOM rendering: plain-element views over the pure layout/state modules.
 * Every render replaces the container's children from scratch; state lives
 * in the flow modules, never in the DOM.
 */

import type { ProfileEditorState, RowError } from "./profileEditor.js";
import type { Segment, TimelineLayout } from "./timeline.js";
import type { TreeNodeJson } from "./types.js";

export interface TimelineHandlers {
  onSelect(annotationId: string): void;
}

const TRACK_HEIGHT = 28;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function segmentNode(segment: Segment, handlers: TimelineHandlers): HTMLElement {
  const node = el("div", "segment", segment.label || " ");
  node.dataset.annotation = segment.annotationId;
  node.classList.toggle("selected", segment.selected);
  node.classList.toggle("ontological", segment.ontological);
  node.style.position = "absolute";
  node.style.left = `${segment.x}px`;
  node.style.width = `${segment.width}px`;
  node.style.height = `${TRACK_HEIGHT - 4}px`;
  node.title = `${segment.annotationId} [${segment.beginMs}..${segment.endMs}]`;
  node.addEventListener("click", () => handlers.onSelect(segment.annotationId));
  return node;
}

export function renderTimeline(
  container: HTMLElement,
  layout: TimelineLayout,
  handlers: TimelineHandlers,
): void {
  container.replaceChildren();
  const axis = el("div", "axis");
  axis.style.position = "relative";
  axis.style.height = "18px";
  for (const tick of layout.ticks) {
    const label = el("span", "tick", `${tick.ms}`);
    label.style.position = "absolute";
    label.style.left = `${tick.x}px`;
    axis.append(label);
  }
  container.append(axis);

  for (const row of layout.rows) {
    const rowNode = el("div", "tier-row");
    rowNode.dataset.tier = row.tier.id;
    rowNode.style.display = "flex";
    const header = el(
      "div",
      "tier-header",
      `${" ".repeat(row.depth * 2)}${row.tier.id}`,
    );
    header.title = `${row.stereotype}${row.ontological ? " (ontological)" : ""}`;
    header.style.width = "180px";
    const track = el("div", "tier-track");
    track.style.position = "relative";
    track.style.flex = "1";
    track.style.height = `${TRACK_HEIGHT}px`;
    const unaligned = row.segments.filter((s) => s.unaligned);
    for (const segment of row.segments) {
      if (!segment.unaligned && segment.x !== undefined) {
        track.append(segmentNode(segment, handlers));
      }
    }
    rowNode.append(header, track);
    if (unaligned.length > 0) {
      rowNode.append(
        el("span", "unaligned-flag", `${unaligned.length} unaligned`),
      );
    }
    container.append(rowNode);
  }
}

export interface ProfileEditorHandlers {
  onTab(view: "index" | "tree"): void;
  onToggleTerm(iri: string): void;
  onAddSelected(): void;
  onCreateUserTerm(name: string): void;
  onRename(row: number, name: string): void;
  onSave(): void;
}

function treeList(
  nodes: TreeNodeJson[],
  state: ProfileEditorState,
  handlers: ProfileEditorHandlers,
): HTMLUListElement {
  const list = el("ul", "ontology-tree");
  for (const node of nodes) {
    const item = el("li");
    const label = el("span", "term", node.iri.split("#").pop() ?? node.iri);
    label.dataset.iri = node.iri;
    label.classList.toggle("selected", state.selected.includes(node.iri));
    label.addEventListener("click", () => handlers.onToggleTerm(node.iri));
    item.append(label);
    if (node.children.length > 0) item.append(treeList(node.children, state, handlers));
    list.append(item);
  }
  return list;
}

export function renderProfileEditor(
  container: HTMLElement,
  state: ProfileEditorState,
  errors: RowError[],
  handlers: ProfileEditorHandlers,
): void {
  container.replaceChildren();
  const tabs = el("div", "tabs");
  for (const view of ["index", "tree"] as const) {
    const tab = el("button", "tab", view === "index" ? "Index" : "Ontology Tree");
    tab.classList.toggle("active", state.activeView === view);
    tab.addEventListener("click", () => handlers.onTab(view));
    tabs.append(tab);
  }
  container.append(tabs);

  if (state.activeView === "index") {
    const list = el("ul", "ontology-index");
    for (const term of state.index) {
      const item = el("li", "term", `${term.label} (${term.kind})`);
      item.dataset.iri = term.iri;
      item.classList.toggle("selected", state.selected.includes(term.iri));
      item.addEventListener("click", () => handlers.onToggleTerm(term.iri));
      list.append(item);
    }
    container.append(list);
  } else {
    container.append(treeList(state.tree, state, handlers));
  }

  const add = el("button", "add-selected", "Add to Ontological Terms");
  add.addEventListener("click", () => handlers.onAddSelected());
  container.append(add);

  const terms = el("ul", "ontological-terms");
  for (const name of state.ontologicalTerms) {
    terms.append(el("li", "ontological-term", name));
  }
  container.append(terms);

  const nameInput = el("input", "user-term-name");
  nameInput.placeholder = "user-defined term name";
  const combine = el("button", "create-user-term", "Name selected terms");
  combine.addEventListener("click", () => handlers.onCreateUserTerm(nameInput.value));
  container.append(nameInput, combine);

  const table = el("table", "user-terms");
  state.rows.forEach((row, i) => {
    const tr = el("tr");
    const nameCell = el("td");
    const input = el("input");
    input.value = row.name;
    input.addEventListener("change", () => handlers.onRename(i, input.value));
    nameCell.append(input);
    tr.append(nameCell, el("td", "targets", row.targets.join(", ")));
    const error = errors.find((e) => e.row === i);
    if (error) tr.append(el("td", "row-error", error.message));
    table.append(tr);
  });
  container.append(table);

  const save = el("button", "save-profile", "Save profile");
  save.disabled = errors.length > 0 || state.rows.length === 0;
  save.addEventListener("click", () => handlers.onSave());
  container.append(save);
}
