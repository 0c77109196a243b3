/**
 * Page bootstrap: load a document snapshot, render the timeline, wire the
 * tier manager / profile editor panels, and keep a media element's playback
 * cursor in sync with the time axis.
 *
 * Query parameters: ?doc=wabo4&ontology=gold&service=http://127.0.0.1:8470
 */

import { ApiClient } from "./api.js";
import {
  commitNewAnnotation,
  commitOntologicalValue,
  describeFailure,
  inputModeForTier,
  profileForTier,
} from "./editFlow.js";
import {
  addSelectedToTerms,
  createUserTerm,
  emptyEditorState,
  loadOntology,
  renameUserTerm,
  saveProfile,
  setView,
  toggleTerm,
  validateRows,
  type ProfileEditorState,
} from "./profileEditor.js";
import { renderProfileEditor, renderTimeline } from "./render.js";
import { deleteTierWithPreview } from "./tierManager.js";
import {
  computeTimelineLayout,
  initialViewState,
  panZoom,
  selectAnnotation,
  type TimelineViewState,
} from "./timeline.js";
import type { DocumentSnapshot } from "./types.js";

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

async function boot(): Promise<void> {
  const client = new ApiClient(param("service", "http://127.0.0.1:8470"));
  const docId = param("doc", "wabo4");
  const ontologyId = param("ontology", "gold");

  let snapshot: DocumentSnapshot = await client.getDocument(docId);
  let view: TimelineViewState = initialViewState(snapshot);
  let editor: ProfileEditorState = emptyEditorState();
  const status = document.getElementById("status")!;
  const timelineRoot = document.getElementById("timeline")!;
  const editorRoot = document.getElementById("profile-editor")!;
  const media = document.getElementById("media") as HTMLMediaElement | null;

  const confirmConflict = () =>
    window.confirm("Document changed on the server. Reload and retry?");

  async function refresh(): Promise<void> {
    snapshot = await client.getDocument(docId);
    if (view.selected && !snapshot.annotations.some((a) => a.id === view.selected)) {
      view = { ...view, selected: null };
    }
    draw();
  }

  function draw(): void {
    renderTimeline(timelineRoot, computeTimelineLayout(snapshot, view), {
      onSelect: (annotationId) => {
        view = selectAnnotation(view, snapshot, annotationId);
        draw();
        void offerEditor(annotationId);
      },
    });
    drawEditorPanel();
  }

  async function offerEditor(annotationId: string): Promise<void> {
    const annotation = snapshot.annotations.find((a) => a.id === annotationId);
    if (!annotation) return;
    const profile = await profileForTier(client, snapshot, annotation.tier).catch(() => null);
    const input = inputModeForTier(snapshot, annotation.tier, profile);
    const box = document.getElementById("value-editor")!;
    box.replaceChildren();
    if (input.mode === "dropdown") {
      const select = document.createElement("select");
      for (const option of input.options) {
        const opt = document.createElement("option");
        opt.value = option;
        opt.textContent = option;
        select.append(opt);
      }
      const commit = document.createElement("button");
      commit.textContent = "Set term";
      commit.addEventListener("click", async () => {
        try {
          await commitOntologicalValue(
            client,
            snapshot,
            annotationId,
            { userTerm: select.value },
            confirmConflict,
          );
          await refresh();
        } catch (failure) {
          status.textContent = describeFailure(failure);
        }
      });
      box.append(select, commit);
    } else {
      const text = document.createElement("input");
      text.placeholder = "annotation text for a new child";
      const commit = document.createElement("button");
      commit.textContent = "Add child annotation";
      commit.addEventListener("click", async () => {
        const child = snapshot.tiers.find((t) => t.parent === annotation.tier);
        if (!child) {
          status.textContent = "no child tier to annotate";
          return;
        }
        try {
          await commitNewAnnotation(
            client,
            snapshot,
            { tier: child.id, parent: annotationId },
            { kind: "text", text: text.value },
            confirmConflict,
          );
          await refresh();
        } catch (failure) {
          status.textContent = describeFailure(failure);
        }
      });
      box.append(text, commit);
    }
  }

  function drawEditorPanel(): void {
    renderProfileEditor(editorRoot, editor, validateRows(editor), {
      onTab: (tab) => {
        editor = setView(editor, tab);
        drawEditorPanel();
      },
      onToggleTerm: (iri) => {
        editor = toggleTerm(editor, iri);
        drawEditorPanel();
      },
      onAddSelected: () => {
        editor = addSelectedToTerms(editor);
        drawEditorPanel();
      },
      onCreateUserTerm: (name) => {
        editor = createUserTerm(editor, name, editor.ontologicalTerms);
        editor = { ...editor, ontologicalTerms: [] };
        drawEditorPanel();
      },
      onRename: (row, name) => {
        editor = renameUserTerm(editor, row, name);
        drawEditorPanel();
      },
      onSave: () => {
        void saveProfile(editor, client)
          .then((pid) => (status.textContent = `profile saved as ${pid}`))
          .catch((failure) => (status.textContent = describeFailure(failure)));
      },
    });
  }

  document.getElementById("zoom-in")?.addEventListener("click", () => {
    view = panZoom(view, { zoom: view.zoom * 1.5 });
    draw();
  });
  document.getElementById("zoom-out")?.addEventListener("click", () => {
    view = panZoom(view, { zoom: view.zoom / 1.5 });
    draw();
  });
  document.getElementById("load-ontology")?.addEventListener("click", () => {
    void loadOntology(editor, client, ontologyId, "").then((next) => {
      editor = { ...next, author: "Artem", description: "", version: "1.0" };
      drawEditorPanel();
    });
  });
  document.getElementById("delete-tier")?.addEventListener("click", () => {
    const tierId = (document.getElementById("tier-id") as HTMLInputElement).value;
    void deleteTierWithPreview(client, snapshot, tierId, (preview) =>
      window.confirm(`Deleting ${tierId} also deletes: ${preview.join(", ") || "(none)"}`),
    )
      .then((deleted) => {
        if (deleted) status.textContent = `deleted ${deleted.join(", ")}`;
        return refresh();
      })
      .catch((failure) => (status.textContent = describeFailure(failure)));
  });

  if (media && snapshot.media.length > 0 && snapshot.media[0]) {
    media.src = snapshot.media[0].url;
    media.addEventListener("timeupdate", () => {
      const cursor = document.getElementById("cursor");
      if (cursor) {
        const layout = computeTimelineLayout(snapshot, view);
        cursor.style.left = `${(media.currentTime * 1000 - view.windowBegin) * layout.pixelsPerMs}px`;
      }
    });
  }

  draw();
  status.textContent = `loaded ${docId} (revision ${snapshot.revision})`;
}

boot().catch((failure) => {
  const status = document.getElementById("status");
  if (status) status.textContent = String(failure);
});
