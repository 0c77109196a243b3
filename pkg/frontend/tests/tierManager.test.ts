import { describe, expect, it } from "vitest";

import { deleteTierPreview, fieldForError, tierRequestFromForm, emptyTierForm } from "../src/tierManager.js";
import { inputModeForTier, isOntologicalTier } from "../src/editFlow.js";
import { demoSnapshot } from "./fixtures.js";

describe("cascade preview", () => {
  it("previews exactly the descendants of Words", () => {
    expect(deleteTierPreview(demoSnapshot(), "Words")).toEqual([
      "Parse",
      "Gloss",
      "Ontology",
    ]);
  });

  it("leaf tiers preview an empty cascade", () => {
    expect(deleteTierPreview(demoSnapshot(), "Ontology")).toEqual([]);
    expect(deleteTierPreview(demoSnapshot(), "Translation")).toEqual([]);
  });
});

describe("create-tier dialog", () => {
  it("maps engine error names onto dialog fields", () => {
    expect(fieldForError("RootMustBeAlignable")).toBe("parent");
    expect(fieldForError("ParentRequired")).toBe("parent");
    expect(fieldForError("DuplicateTier")).toBe("id");
    expect(fieldForError("ProfileAlreadyBound")).toBe("profile");
    expect(fieldForError("UnknownLinguisticType")).toBe("type");
  });

  it("sends a typeSpec only for newly defined types", () => {
    const form = {
      ...emptyTierForm(),
      id: "T",
      typeId: "association",
      stereotype: "Symbolic_Association" as const,
      parent: "Orthographic",
    };
    expect(tierRequestFromForm(form).typeSpec).toBeDefined();
    expect(tierRequestFromForm({ ...form, useExistingType: true }).typeSpec).toBeUndefined();
  });
});

describe("input mode", () => {
  it("ontological tiers offer exactly the profile user terms, others free text", () => {
    const snapshot = demoSnapshot();
    expect(isOntologicalTier(snapshot, "Ontology")).toBe(true);
    const profile = {
      id: "wabo4.prf",
      author: "Artem",
      description: "",
      version: "1.0",
      source: "",
      xml: "",
      terms: [
        { name: "NI", description: "", targets: ["Noun", "Inanimate"] },
        { name: "PV", description: "", targets: ["Preverb"] },
        { name: "PC", description: "", targets: ["Participle"] },
      ],
    };
    expect(inputModeForTier(snapshot, "Ontology", profile)).toEqual({
      mode: "dropdown",
      options: ["NI", "PV", "PC"],
    });
    expect(inputModeForTier(snapshot, "Translation", null)).toEqual({ mode: "text" });
  });
});
