/**
 * Annotation editing flow: what input a selected segment offers, and how a
 * committed value turns into a service mutation.
 *
 * Ontological tiers present a dropdown over exactly the bound profile's
 * user terms and reject free text client-side; other tiers take free text.
 * Domain violations surface verbatim; revision conflicts go through the
 * reload-and-retry prompt.
 */

import {
  ApiFailure,
  withConflictRetry,
  type ApiClient,
  type NewAnnotation,
  type OntologicalPayload,
} from "./api.js";
import { profileIdForTier, type DocumentSnapshot, type ProfileJson, type TierJson } from "./types.js";

export type InputMode =
  | { mode: "dropdown"; options: string[] } // exactly the profile's user terms
  | { mode: "text" };

export function tierOf(snapshot: DocumentSnapshot, tierId: string): TierJson {
  const tier = snapshot.tiers.find((t) => t.id === tierId);
  if (!tier) throw new Error(`unknown tier ${tierId}`);
  return tier;
}

export function isOntologicalTier(snapshot: DocumentSnapshot, tierId: string): boolean {
  const tier = tierOf(snapshot, tierId);
  return snapshot.linguisticTypes[tier.type]?.ontological ?? false;
}

/** Fetch the profile backing an ontological tier. */
export async function profileForTier(
  client: ApiClient,
  snapshot: DocumentSnapshot,
  tierId: string,
): Promise<ProfileJson | null> {
  const tier = tierOf(snapshot, tierId);
  const profileId = profileIdForTier(tier);
  if (profileId === null) return null;
  return client.getProfile(profileId);
}

export function inputModeForTier(
  snapshot: DocumentSnapshot,
  tierId: string,
  profile: ProfileJson | null,
): InputMode {
  if (isOntologicalTier(snapshot, tierId)) {
    return { mode: "dropdown", options: (profile?.terms ?? []).map((t) => t.name) };
  }
  return { mode: "text" };
}

export type CommitValue =
  | { kind: "text"; text: string }
  | { kind: "userTerm"; payload: OntologicalPayload };

export class InputRejected extends Error {}

/**
 * Create an annotation under a selected parent (symbolic tiers) or over a
 * time range (alignable tiers). Free text on an ontological tier never
 * reaches the network.
 */
export async function commitNewAnnotation(
  client: ApiClient,
  snapshot: DocumentSnapshot,
  target:
    | { tier: string; parent: string }
    | { tier: string; beginMs: number; endMs: number },
  value: CommitValue,
  onConflict: () => boolean | Promise<boolean>,
): Promise<{ revision: number; annotationId: string }> {
  const ontological = isOntologicalTier(snapshot, target.tier);
  if (ontological && value.kind === "text") {
    throw new InputRejected(
      `tier ${target.tier} takes profile user terms, not free text`,
    );
  }
  if (!ontological && value.kind === "userTerm") {
    throw new InputRejected(`tier ${target.tier} takes free text`);
  }
  const body: NewAnnotation =
    "parent" in target
      ? { kind: "referring", tier: target.tier, parent: target.parent }
      : {
          kind: "alignable",
          tier: target.tier,
          begin: { time: target.beginMs },
          end: { time: target.endMs },
        };
  if (value.kind === "text") {
    body.text = value.text;
  } else {
    body.ontological = value.payload;
  }
  const result = await withConflictRetry(
    client,
    snapshot.id,
    (revision) => client.addAnnotation(snapshot.id, body, revision),
    onConflict,
  );
  return { revision: result.revision, annotationId: result.annotation.id };
}

/** Re-point an existing ontological annotation at another user term. */
export async function commitOntologicalValue(
  client: ApiClient,
  snapshot: DocumentSnapshot,
  annotationId: string,
  payload: OntologicalPayload,
  onConflict: () => boolean | Promise<boolean>,
): Promise<number> {
  const annotation = snapshot.annotations.find((a) => a.id === annotationId);
  if (!annotation) throw new Error(`unknown annotation ${annotationId}`);
  if (!isOntologicalTier(snapshot, annotation.tier)) {
    throw new InputRejected(`annotation ${annotationId} is not on an ontological tier`);
  }
  const result = await withConflictRetry(
    client,
    snapshot.id,
    (revision) => client.setOntologicalValue(snapshot.id, annotationId, payload, revision),
    onConflict,
  );
  return result.revision;
}

/** 422 bodies surface their engine error name verbatim. */
export function describeFailure(failure: unknown): string {
  if (failure instanceof ApiFailure) {
    return failure.isDomainViolation ? failure.error : `${failure.status}: ${failure.error}`;
  }
  return String(failure);
}
