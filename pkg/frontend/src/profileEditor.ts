/**
 * Profile editor state machine: pick ontological terms from the index or
 * tree view, collect them in the "Ontological Terms" list, combine/rename
 * them into user-defined terms, and save the profile to the service.
 */

import type { ApiClient } from "./api.js";
import type { TermDescriptorJson, TreeNodeJson } from "./types.js";

export type OntologyViewTab = "index" | "tree";

export interface UserTermRow {
  name: string;
  description: string;
  targets: string[]; // ontological term names, order preserved
}

export interface ProfileEditorState {
  ontologyId: string | null;
  sourceIri: string;
  index: TermDescriptorJson[];
  tree: TreeNodeJson[];
  activeView: OntologyViewTab;
  /** IRIs currently highlighted in the index/tree view. */
  selected: string[];
  /** The "Ontological Terms" working list (bare term names). */
  ontologicalTerms: string[];
  /** The "User Defined Terms" table. */
  rows: UserTermRow[];
  author: string;
  description: string;
  version: string;
}

export function emptyEditorState(): ProfileEditorState {
  return {
    ontologyId: null,
    sourceIri: "",
    index: [],
    tree: [],
    activeView: "index",
    selected: [],
    ontologicalTerms: [],
    rows: [],
    author: "",
    description: "",
    version: "1.0",
  };
}

export async function loadOntology(
  state: ProfileEditorState,
  client: ApiClient,
  ontologyId: string,
  sourceIri: string,
): Promise<ProfileEditorState> {
  const [index, tree] = await Promise.all([
    client.ontologyIndex(ontologyId),
    client.ontologyTree(ontologyId),
  ]);
  return {
    ...state,
    ontologyId,
    sourceIri,
    index,
    tree,
    selected: [],
    ontologicalTerms: [],
  };
}

export function setView(state: ProfileEditorState, view: OntologyViewTab): ProfileEditorState {
  return { ...state, activeView: view };
}

export function toggleTerm(state: ProfileEditorState, iri: string): ProfileEditorState {
  const selected = state.selected.includes(iri)
    ? state.selected.filter((s) => s !== iri)
    : [...state.selected, iri];
  return { ...state, selected };
}

function bareName(iri: string): string {
  const hash = iri.lastIndexOf("#");
  return hash >= 0 ? iri.slice(hash + 1) : iri.split("/").pop() ?? iri;
}

/** Move the current view selection into the "Ontological Terms" list. */
export function addSelectedToTerms(state: ProfileEditorState): ProfileEditorState {
  const additions = state.selected
    .map(bareName)
    .filter((name) => !state.ontologicalTerms.includes(name));
  return {
    ...state,
    selected: [],
    ontologicalTerms: [...state.ontologicalTerms, ...additions],
  };
}

export interface RowError {
  row: number;
  message: string;
}

/** Combine listed ontological terms into one named user term. */
export function createUserTerm(
  state: ProfileEditorState,
  name: string,
  targets: string[],
  description = "",
): ProfileEditorState {
  return {
    ...state,
    rows: [...state.rows, { name, description, targets: [...targets] }],
  };
}

export function renameUserTerm(
  state: ProfileEditorState,
  row: number,
  name: string,
): ProfileEditorState {
  const rows = state.rows.map((r, i) => (i === row ? { ...r, name } : r));
  return { ...state, rows };
}

export function removeUserTerm(state: ProfileEditorState, row: number): ProfileEditorState {
  return { ...state, rows: state.rows.filter((_, i) => i !== row) };
}

/** Inline validation: duplicate names and term-less rows block saving. */
export function validateRows(state: ProfileEditorState): RowError[] {
  const errors: RowError[] = [];
  const seen = new Map<string, number>();
  state.rows.forEach((row, i) => {
    if (!row.name) errors.push({ row: i, message: "user term needs a name" });
    if (row.targets.length === 0) {
      errors.push({ row: i, message: "user term needs at least one ontological term" });
    }
    const first = seen.get(row.name);
    if (first !== undefined) {
      errors.push({ row: i, message: `duplicate user term name '${row.name}'` });
    } else {
      seen.set(row.name, i);
    }
  });
  return errors;
}

export function buildProfilePayload(state: ProfileEditorState): {
  author: string;
  description: string;
  version: string;
  source: string;
  terms: { name: string; description: string; targets: string[] }[];
} {
  return {
    author: state.author,
    description: state.description,
    version: state.version,
    source: state.sourceIri,
    terms: state.rows.map((row) => ({
      name: row.name,
      description: row.description,
      targets: row.targets,
    })),
  };
}

/** Save; resolves to the new profile id. Rejects when validation fails. */
export async function saveProfile(
  state: ProfileEditorState,
  client: ApiClient,
  profileId?: string,
): Promise<string> {
  const errors = validateRows(state);
  if (errors.length > 0) {
    throw new Error(errors.map((e) => `row ${e.row}: ${e.message}`).join("; "));
  }
  const created = await client.createProfile({
    ...(profileId ? { id: profileId } : {}),
    ...buildProfilePayload(state),
  });
  return created.id;
}
