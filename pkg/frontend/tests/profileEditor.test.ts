import { describe, expect, it } from "vitest";

import {
  addSelectedToTerms,
  buildProfilePayload,
  createUserTerm,
  emptyEditorState,
  removeUserTerm,
  renameUserTerm,
  saveProfile,
  setView,
  toggleTerm,
  validateRows,
} from "../src/profileEditor.js";
import { GOLD } from "./fixtures.js";

function stateWithOntology() {
  return {
    ...emptyEditorState(),
    ontologyId: "gold",
    sourceIri: GOLD,
    author: "Artem",
    description: "Potawatomi Language",
    version: "1.0",
    index: [
      { iri: `${GOLD}#Inanimate`, kind: "class" as const, label: "Inanimate", hasRestrictions: false, parents: [] },
      { iri: `${GOLD}#Noun`, kind: "class" as const, label: "Noun", hasRestrictions: false, parents: [] },
    ],
    tree: [
      {
        iri: `${GOLD}#GrammaticalCategory`,
        children: [
          { iri: `${GOLD}#Inanimate`, children: [] },
          { iri: `${GOLD}#Noun`, children: [] },
        ],
      },
    ],
  };
}

describe("selection flow", () => {
  it("collects selected terms from either view into the working list", () => {
    let state = stateWithOntology();
    state = toggleTerm(state, `${GOLD}#Noun`);
    state = setView(state, "tree");
    state = toggleTerm(state, `${GOLD}#Inanimate`);
    state = addSelectedToTerms(state);
    expect(state.ontologicalTerms).toEqual(["Noun", "Inanimate"]);
    expect(state.selected).toEqual([]);
  });

  it("toggling twice deselects", () => {
    let state = stateWithOntology();
    state = toggleTerm(state, `${GOLD}#Noun`);
    state = toggleTerm(state, `${GOLD}#Noun`);
    state = addSelectedToTerms(state);
    expect(state.ontologicalTerms).toEqual([]);
  });

  it("builds the published one-term profile payload", () => {
    let state = stateWithOntology();
    state = toggleTerm(state, `${GOLD}#Noun`);
    state = toggleTerm(state, `${GOLD}#Inanimate`);
    state = addSelectedToTerms(state);
    state = createUserTerm(state, "NI", state.ontologicalTerms);
    expect(buildProfilePayload(state)).toEqual({
      author: "Artem",
      description: "Potawatomi Language",
      version: "1.0",
      source: GOLD,
      terms: [{ name: "NI", description: "", targets: ["Noun", "Inanimate"] }],
    });
  });
});

describe("row validation", () => {
  it("flags duplicate user-term names inline", () => {
    let state = stateWithOntology();
    state = createUserTerm(state, "NI", ["Noun"]);
    state = createUserTerm(state, "NI", ["Inanimate"]);
    const errors = validateRows(state);
    expect(errors).toHaveLength(1);
    expect(errors[0]!.row).toBe(1);
    expect(errors[0]!.message).toContain("duplicate");
    state = renameUserTerm(state, 1, "IN");
    expect(validateRows(state)).toEqual([]);
  });

  it("blocks rows with an empty term list", async () => {
    let state = stateWithOntology();
    state = createUserTerm(state, "NI", []);
    expect(validateRows(state)[0]!.message).toContain("at least one");
    await expect(saveProfile(state, null as never)).rejects.toThrow(/at least one/);
    state = removeUserTerm(state, 0);
    expect(validateRows(state)).toEqual([]);
  });
});
