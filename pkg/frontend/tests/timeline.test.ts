import { describe, expect, it } from "vitest";

import {
  computeTimelineLayout,
  initialViewState,
  panZoom,
  selectAnnotation,
  tierRowsInHierarchyOrder,
} from "../src/timeline.js";
import { demoSnapshot } from "./fixtures.js";

describe("view state", () => {
  it("starts at the document extent with the window invariant held", () => {
    const view = initialViewState(demoSnapshot());
    expect(view.windowBegin).toBe(0);
    expect(view.windowEnd).toBe(2000);
    expect(view.windowBegin).toBeLessThan(view.windowEnd);
  });

  it("clamps pans and zooms so begin stays before end", () => {
    let view = initialViewState(demoSnapshot());
    view = panZoom(view, { windowBegin: 500, windowEnd: 400 });
    expect(view.windowBegin).toBeLessThan(view.windowEnd);
    view = panZoom(view, { windowBegin: -100 });
    expect(view.windowBegin).toBe(0);
  });

  it("only selects annotations that exist in the snapshot", () => {
    const snapshot = demoSnapshot();
    let view = initialViewState(snapshot);
    view = selectAnnotation(view, snapshot, "a42");
    expect(view.selected).toBe("a42");
    view = selectAnnotation(view, snapshot, "missing");
    expect(view.selected).toBe("a42");
    view = selectAnnotation(view, snapshot, null);
    expect(view.selected).toBeNull();
  });
});

describe("tier rows", () => {
  it("orders rows depth-first in hierarchy order", () => {
    const rows = tierRowsInHierarchyOrder(demoSnapshot());
    expect(rows.map((r) => r.tier.id)).toEqual([
      "Orthographic",
      "Translation",
      "Words",
      "Parse",
      "Gloss",
      "Ontology",
    ]);
    expect(rows.map((r) => r.depth)).toEqual([0, 1, 1, 2, 3, 4]);
  });
});

describe("layout", () => {
  it("emits one segment per annotation per row", () => {
    const snapshot = demoSnapshot();
    const layout = computeTimelineLayout(snapshot, initialViewState(snapshot));
    for (const row of layout.rows) {
      const expected = snapshot.annotations.filter((a) => a.tier === row.tier.id);
      expect(row.segments.length).toBe(expected.length);
    }
  });

  it("subdivides the parent extent into equal ordinal fractions", () => {
    const snapshot = demoSnapshot();
    const layout = computeTimelineLayout(snapshot, initialViewState(snapshot));
    const words = layout.rows.find((r) => r.tier.id === "Words")!;
    const neko = words.segments.find((s) => s.annotationId === "a10")!;
    const wabozo = words.segments.find((s) => s.annotationId === "a11")!;
    expect([neko.beginMs, neko.endMs]).toEqual([0, 1000]);
    expect([wabozo.beginMs, wabozo.endMs]).toEqual([1000, 2000]);
    // deeper levels nest inside the drawn fraction, not the full interval
    const ontology = layout.rows.find((r) => r.tier.id === "Ontology")!;
    const a42 = ontology.segments.find((s) => s.annotationId === "a42")!;
    expect([a42.beginMs, a42.endMs]).toEqual([1000, 2000]);
    expect(a42.ontological).toBe(true);
    expect(a42.label).toBe("PV");
  });

  it("single association children span the whole parent", () => {
    const snapshot = demoSnapshot();
    const layout = computeTimelineLayout(snapshot, initialViewState(snapshot));
    const translation = layout.rows.find((r) => r.tier.id === "Translation")!;
    expect(translation.segments[0]!.beginMs).toBe(0);
    expect(translation.segments[0]!.endMs).toBe(2000);
  });

  it("flags unaligned annotations instead of placing them", () => {
    const snapshot = demoSnapshot();
    snapshot.timeOrder = [
      { id: "ts1", time: null },
      { id: "ts2", time: null },
    ];
    for (const annotation of snapshot.annotations) annotation.interval = null;
    const layout = computeTimelineLayout(snapshot, initialViewState(snapshot));
    for (const row of layout.rows) {
      for (const segment of row.segments) {
        expect(segment.unaligned).toBe(true);
        expect(segment.x).toBeUndefined();
      }
    }
  });

  it("positions segments in window pixels", () => {
    const snapshot = demoSnapshot();
    const layout = computeTimelineLayout(
      snapshot,
      { windowBegin: 0, windowEnd: 2000, zoom: 2, selected: null },
      { basePixelsPerMs: 0.25, trackWidth: 960 },
    );
    const root = layout.rows[0]!.segments[0]!;
    expect(root.x).toBe(0);
    expect(root.width).toBe(2000 * 0.5);
    expect(layout.ticks.length).toBeGreaterThan(5);
  });
});
