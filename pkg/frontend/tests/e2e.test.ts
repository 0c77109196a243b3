/**
 * End-to-end flows against the real annotation service.
 *
 * beforeAll boots `scripts/run_service.py` (demo corpus preloaded) on a
 * private port; each mutating test clones the pristine demo document via
 * export/import so tests stay independent.
 */

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiFailure, withConflictRetry } from "../src/api.js";
import {
  InputRejected,
  commitNewAnnotation,
  commitOntologicalValue,
  inputModeForTier,
  profileForTier,
} from "../src/editFlow.js";
import {
  addSelectedToTerms,
  createUserTerm,
  emptyEditorState,
  loadOntology,
  saveProfile,
  setView,
  toggleTerm,
} from "../src/profileEditor.js";
import { deleteTierWithPreview, submitTierDialog } from "../src/tierManager.js";
import { computeTimelineLayout, initialViewState } from "../src/timeline.js";
import { GOLD } from "./fixtures.js";

const PORT = 8491;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let client: ApiClient;
let pristineXml: string;
let cloneCounter = 0;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/docs/wabo4`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("annotation service did not come up");
}

async function cloneDemoDoc(): Promise<string> {
  const id = `clone${++cloneCounter}`;
  const response = await fetch(`${BASE}/docs`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ id, rdfxml: pristineXml }),
  });
  expect(response.status).toBe(201);
  return id;
}

beforeAll(async () => {
  service = spawn("python3", ["scripts/run_service.py"], {
    cwd: new URL("../..", import.meta.url).pathname,
    env: { ...process.env, PORT: String(PORT) },
    stdio: "ignore",
  });
  await waitForService();
  client = new ApiClient(BASE);
  pristineXml = await client.exportDocument("wabo4", "file:///C:/wabo4.eaf");
}, 30_000);

afterAll(() => {
  service?.kill();
});

describe("timeline against the live snapshot", () => {
  it("lays out one segment per annotation, per-tier counts matching the API", async () => {
    const snapshot = await client.getDocument("wabo4");
    const layout = computeTimelineLayout(snapshot, initialViewState(snapshot));
    expect(layout.rows.map((r) => r.tier.id)).toEqual([
      "Orthographic",
      "Translation",
      "Words",
      "Parse",
      "Gloss",
      "Ontology",
    ]);
    for (const row of layout.rows) {
      const apiCount = snapshot.annotations.filter((a) => a.tier === row.tier.id).length;
      expect(row.segments.length).toBe(apiCount);
    }
  });
});

describe("profile editor flow", () => {
  it("index selection of Noun+Inanimate named NI saves the published profile", async () => {
    let state = await loadOntology(emptyEditorState(), client, "gold", GOLD);
    state = { ...state, author: "Artem", description: "Potawatomi Language", version: "1.0" };
    const byLabel = (label: string) => state.index.find((t) => t.label === label)!.iri;
    state = toggleTerm(state, byLabel("Noun"));
    state = toggleTerm(state, byLabel("Inanimate"));
    state = addSelectedToTerms(state);
    expect(state.ontologicalTerms).toEqual(["Noun", "Inanimate"]);
    state = createUserTerm(state, "NI", state.ontologicalTerms);
    const pid = await saveProfile(state, client);
    const fetched = await client.getProfile(pid);
    expect(fetched.author).toBe("Artem");
    expect(fetched.description).toBe("Potawatomi Language");
    expect(fetched.version).toBe("1.0");
    expect(fetched.source).toBe(GOLD);
    expect(fetched.terms).toEqual([
      { name: "NI", description: "", targets: ["Noun", "Inanimate"] },
    ]);
    // the serialized form re-parses on the server to the same profile
    const reposted = await fetch(`${BASE}/profiles`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ xml: fetched.xml }),
    });
    expect(reposted.status).toBe(201);
    const second = await client.getProfile(((await reposted.json()) as { id: string }).id);
    expect(second.terms).toEqual(fetched.terms);
    expect(second.author).toBe(fetched.author);
    expect(second.source).toBe(fetched.source);
  });

  it("tree selection produces the same working list", async () => {
    let state = await loadOntology(emptyEditorState(), client, "gold", GOLD);
    state = setView(state, "tree");
    const findInTree = (label: string): string => {
      const walk = (nodes: typeof state.tree): string | null => {
        for (const node of nodes) {
          if (node.iri.endsWith(`#${label}`)) return node.iri;
          const hit = walk(node.children);
          if (hit) return hit;
        }
        return null;
      };
      const iri = walk(state.tree);
      expect(iri).not.toBeNull();
      return iri!;
    };
    state = toggleTerm(state, findInTree("Noun"));
    state = toggleTerm(state, findInTree("Inanimate"));
    state = addSelectedToTerms(state);
    expect(state.ontologicalTerms).toEqual(["Noun", "Inanimate"]);
  });
});

describe("tier manager flow", () => {
  it("previews exactly {Parse, Gloss, Ontology} before deleting Words", async () => {
    const docId = await cloneDemoDoc();
    const snapshot = await client.getDocument(docId);
    let preview: string[] = [];
    const declined = await deleteTierWithPreview(client, snapshot, "Words", (p) => {
      preview = p;
      return false;
    });
    expect(declined).toBeNull();
    expect(preview).toEqual(["Parse", "Gloss", "Ontology"]);
    expect((await client.getDocument(docId)).tiers).toHaveLength(6);

    const deleted = await deleteTierWithPreview(client, snapshot, "Words", () => true);
    expect(new Set(deleted!)).toEqual(new Set(["Words", ...preview]));
    expect((await client.getDocument(docId)).tiers).toHaveLength(2);
  });

  it("surfaces RootMustBeAlignable as a parent field error", async () => {
    const docId = await cloneDemoDoc();
    const result = await submitTierDialog(client, docId, {
      id: "Orphan",
      typeId: "association",
      stereotype: "Symbolic_Association",
      ontological: false,
      parent: null,
      profile: null,
      useExistingType: true,
    });
    expect(result.fieldErrors).toEqual({ parent: "RootMustBeAlignable" });
  });
});

describe("annotation editing flow", () => {
  it("offers exactly the profile's user terms on the ontological tier", async () => {
    const snapshot = await client.getDocument("wabo4");
    const profile = await profileForTier(client, snapshot, "Ontology");
    expect(inputModeForTier(snapshot, "Ontology", profile)).toEqual({
      mode: "dropdown",
      options: ["NI", "PV", "PC"],
    });
    expect(inputModeForTier(snapshot, "Translation", null)).toEqual({ mode: "text" });
  });

  it("rejects free text on the ontological tier before any network call", async () => {
    const snapshot = await client.getDocument("wabo4");
    await expect(
      commitNewAnnotation(
        client,
        snapshot,
        { tier: "Ontology", parent: "a31" },
        { kind: "text", text: "smuggled" },
        () => true,
      ),
    ).rejects.toBeInstanceOf(InputRejected);
  });

  it("commits a picked user term and re-renders from the fresh snapshot", async () => {
    const docId = await cloneDemoDoc();
    let snapshot = await client.getDocument(docId);
    const revision = await commitOntologicalValue(
      client,
      snapshot,
      "a41",
      { userTerm: "PV", ontAnnotationId: "d2" },
      () => true,
    );
    expect(revision).toBeGreaterThan(snapshot.revision);
    snapshot = await client.getDocument(docId);
    const a41 = snapshot.annotations.find((a) => a.id === "a41")!;
    expect(a41.value).toMatchObject({
      kind: "ontological",
      userTerm: "PV",
      instances: [`${GOLD}#Preverb`],
    });
  });

  it("creates a string annotation on a plain tier", async () => {
    const docId = await cloneDemoDoc();
    const snapshot = await client.getDocument(docId);
    const third = await commitNewAnnotation(
      client,
      snapshot,
      { tier: "Words", parent: "a1" },
      { kind: "text", text: "gda" },
      () => true,
    );
    const fresh = await client.getDocument(docId);
    const added = fresh.annotations.find((a) => a.id === third.annotationId)!;
    expect(added.value).toEqual({ kind: "string", text: "gda" });
    expect(added.tier).toBe("Words");
  });

  it("recovers from a stale revision through the reload-and-retry prompt", async () => {
    const docId = await cloneDemoDoc();
    const before = await client.getDocument(docId);
    // another client moves the document forward
    await client.addAnnotation(
      docId,
      {
        kind: "alignable",
        tier: "Orthographic",
        begin: { time: 3000 },
        end: { time: 3500 },
        text: "later",
      },
      before.revision,
    );
    // a mutation pinned to the stale revision conflicts...
    await expect(
      client.deleteAnnotation(docId, "a2", before.revision),
    ).rejects.toMatchObject({ status: 409 });
    // ...and succeeds through the retry flow once the user confirms
    let prompted = false;
    const result = await withConflictRetry(
      client,
      docId,
      (revision) => {
        if (!prompted) {
          // simulate holding a stale revision on the first attempt
          return client.deleteAnnotation(docId, "a2", before.revision);
        }
        return client.deleteAnnotation(docId, "a2", revision);
      },
      () => {
        prompted = true;
        return true;
      },
    );
    expect(prompted).toBe(true);
    expect(result.deleted).toContain("a2");
  });

  it("shows engine error names verbatim on 422", async () => {
    const docId = await cloneDemoDoc();
    const snapshot = await client.getDocument(docId);
    try {
      await client.addAnnotation(
        docId,
        { kind: "referring", tier: "Translation", parent: "a1", text: "again" },
        snapshot.revision,
      );
      expect.unreachable("association duplication must be rejected");
    } catch (failure) {
      expect(failure).toBeInstanceOf(ApiFailure);
      expect((failure as ApiFailure).error).toBe("AssociationAlreadyFilled");
    }
  });
});
