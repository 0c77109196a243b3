/**
 * Timeline layout: pure computation from a document snapshot + view state to
 * positioned tier rows and annotation segments.
 *
 * Alignable annotations sit at their server-resolved intervals. Referring
 * annotations on symbolic tiers span their parent annotation's drawn
 * interval, subdivided into equal fractions ordered by ordinal (they carry
 * no time of their own; the fraction is purely a display convention).
 * Annotations whose chain bottoms out in untimed slots are flagged as
 * unaligned and get no geometry.
 */

import type { AnnotationJson, DocumentSnapshot, TierJson } from "./types.js";

export interface TimelineViewState {
  /** Visible window begin, ms. Always < windowEnd. */
  windowBegin: number;
  windowEnd: number;
  zoom: number; // multiplier over basePixelsPerMs
  selected: string | null; // annotation id; must exist in the snapshot
}

export interface TimelineConfig {
  basePixelsPerMs: number;
  trackWidth: number; // px, of the scrollable track viewport
}

export const DEFAULT_CONFIG: TimelineConfig = {
  basePixelsPerMs: 0.25,
  trackWidth: 960,
};

export interface Segment {
  annotationId: string;
  tierId: string;
  label: string;
  kind: "alignable" | "referring";
  ontological: boolean;
  selected: boolean;
  unaligned: boolean;
  /** Drawn extent in ms; absent when unaligned. */
  beginMs?: number;
  endMs?: number;
  /** Window-relative pixel geometry; absent when unaligned or off-window. */
  x?: number;
  width?: number;
}

export interface TierRow {
  tier: TierJson;
  depth: number;
  stereotype: string;
  ontological: boolean;
  segments: Segment[]; // one per annotation on the tier, flagged or placed
}

export interface AxisTick {
  ms: number;
  x: number;
}

export interface TimelineLayout {
  rows: TierRow[];
  ticks: AxisTick[];
  pixelsPerMs: number;
}

export function documentExtentMs(snapshot: DocumentSnapshot): number {
  let extent = 0;
  for (const slot of snapshot.timeOrder) {
    if (slot.time !== null && slot.time > extent) extent = slot.time;
  }
  return extent;
}

export function initialViewState(snapshot: DocumentSnapshot): TimelineViewState {
  const extent = documentExtentMs(snapshot);
  return {
    windowBegin: 0,
    windowEnd: extent > 0 ? extent : 1000,
    zoom: 1,
    selected: null,
  };
}

/** Clamp so the window invariant (begin < end) always holds. */
export function panZoom(
  state: TimelineViewState,
  changes: Partial<Pick<TimelineViewState, "windowBegin" | "windowEnd" | "zoom">>,
): TimelineViewState {
  const next = { ...state, ...changes };
  next.windowBegin = Math.max(0, next.windowBegin);
  if (next.windowEnd <= next.windowBegin) next.windowEnd = next.windowBegin + 1;
  next.zoom = Math.min(64, Math.max(1 / 64, next.zoom));
  return next;
}

export function selectAnnotation(
  state: TimelineViewState,
  snapshot: DocumentSnapshot,
  annotationId: string | null,
): TimelineViewState {
  if (
    annotationId !== null &&
    !snapshot.annotations.some((a) => a.id === annotationId)
  ) {
    return state;
  }
  return { ...state, selected: annotationId };
}

/** Tiers in hierarchy order: depth-first, siblings in snapshot order. */
export function tierRowsInHierarchyOrder(
  snapshot: DocumentSnapshot,
): { tier: TierJson; depth: number }[] {
  const childrenOf = new Map<string | null, TierJson[]>();
  for (const tier of snapshot.tiers) {
    const list = childrenOf.get(tier.parent) ?? [];
    list.push(tier);
    childrenOf.set(tier.parent, list);
  }
  const rows: { tier: TierJson; depth: number }[] = [];
  const walk = (parent: string | null, depth: number) => {
    for (const tier of childrenOf.get(parent) ?? []) {
      rows.push({ tier, depth });
      walk(tier.id, depth + 1);
    }
  };
  walk(null, 0);
  return rows;
}

/**
 * Drawn extent of one annotation: its interval for alignable annotations,
 * the parent's drawn extent subdivided by ordinal for referring ones.
 */
function drawnExtent(
  annotation: AnnotationJson,
  byId: Map<string, AnnotationJson>,
  siblingsOf: Map<string, AnnotationJson[]>,
  memo: Map<string, [number, number] | null>,
): [number, number] | null {
  const cached = memo.get(annotation.id);
  if (cached !== undefined) return cached;
  let extent: [number, number] | null;
  if (annotation.kind === "alignable") {
    extent = annotation.interval;
  } else {
    const parent = byId.get(annotation.ref);
    const parentExtent = parent
      ? drawnExtent(parent, byId, siblingsOf, memo)
      : null;
    if (parentExtent === null) {
      extent = null;
    } else {
      const siblings = (siblingsOf.get(annotation.ref) ?? []).filter(
        (s) => s.tier === annotation.tier,
      );
      siblings.sort(
        (a, b) =>
          (a.kind === "referring" ? a.ordinal : 0) -
          (b.kind === "referring" ? b.ordinal : 0),
      );
      const index = siblings.findIndex((s) => s.id === annotation.id);
      const count = Math.max(1, siblings.length);
      const [begin, end] = parentExtent;
      const width = (end - begin) / count;
      extent = [begin + index * width, begin + (index + 1) * width];
    }
  }
  memo.set(annotation.id, extent);
  return extent;
}

export function computeTimelineLayout(
  snapshot: DocumentSnapshot,
  state: TimelineViewState,
  config: TimelineConfig = DEFAULT_CONFIG,
): TimelineLayout {
  const pixelsPerMs = config.basePixelsPerMs * state.zoom;
  const byId = new Map(snapshot.annotations.map((a) => [a.id, a]));
  const siblingsOf = new Map<string, AnnotationJson[]>();
  for (const annotation of snapshot.annotations) {
    if (annotation.kind === "referring") {
      const list = siblingsOf.get(annotation.ref) ?? [];
      list.push(annotation);
      siblingsOf.set(annotation.ref, list);
    }
  }
  const memo = new Map<string, [number, number] | null>();

  const rows: TierRow[] = tierRowsInHierarchyOrder(snapshot).map(({ tier, depth }) => {
    const ltype = snapshot.linguisticTypes[tier.type];
    const segments: Segment[] = snapshot.annotations
      .filter((a) => a.tier === tier.id)
      .map((annotation) => {
        const extent = drawnExtent(annotation, byId, siblingsOf, memo);
        const segment: Segment = {
          annotationId: annotation.id,
          tierId: tier.id,
          label:
            annotation.value.kind === "string"
              ? annotation.value.text
              : annotation.value.userTerm,
          kind: annotation.kind,
          ontological: ltype?.ontological ?? false,
          selected: state.selected === annotation.id,
          unaligned: extent === null,
        };
        if (extent !== null) {
          const [beginMs, endMs] = extent;
          segment.beginMs = beginMs;
          segment.endMs = endMs;
          if (endMs > state.windowBegin && beginMs < state.windowEnd) {
            segment.x = (beginMs - state.windowBegin) * pixelsPerMs;
            segment.width = Math.max(1, (endMs - beginMs) * pixelsPerMs);
          }
        }
        return segment;
      });
    return {
      tier,
      depth,
      stereotype: ltype?.stereotype ?? "None",
      ontological: ltype?.ontological ?? false,
      segments,
    };
  });

  const ticks: AxisTick[] = [];
  const windowMs = state.windowEnd - state.windowBegin;
  const step = niceTickStep(windowMs);
  for (
    let ms = Math.ceil(state.windowBegin / step) * step;
    ms <= state.windowEnd;
    ms += step
  ) {
    ticks.push({ ms, x: (ms - state.windowBegin) * pixelsPerMs });
  }
  return { rows, ticks, pixelsPerMs };
}

function niceTickStep(windowMs: number): number {
  const raw = windowMs / 10;
  const magnitude = 10 ** Math.floor(Math.log10(Math.max(1, raw)));
  for (const multiple of [1, 2, 5, 10]) {
    if (raw <= multiple * magnitude) return multiple * magnitude;
  }
  return 10 * magnitude;
}
