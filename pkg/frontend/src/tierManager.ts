/**
 * Tier manager flows: the create-tier dialog (type/stereotype/parent/profile
 * pickers, server error names surfaced as field errors) and cascade-preview
 * deletion. The preview is derived from the current server snapshot; the
 * authoritative cascade comes back from the DELETE response.
 */

import { ApiFailure, type ApiClient, type NewTier } from "./api.js";
import type { DocumentSnapshot, StereotypeName } from "./types.js";

/** Descendants (exclusive) of a tier in the snapshot's hierarchy. */
export function deleteTierPreview(snapshot: DocumentSnapshot, tierId: string): string[] {
  const childrenOf = new Map<string, string[]>();
  for (const tier of snapshot.tiers) {
    if (tier.parent !== null) {
      const list = childrenOf.get(tier.parent) ?? [];
      list.push(tier.id);
      childrenOf.set(tier.parent, list);
    }
  }
  const order: string[] = [];
  const queue = [tierId];
  while (queue.length > 0) {
    const current = queue.shift()!;
    for (const child of childrenOf.get(current) ?? []) {
      order.push(child);
      queue.push(child);
    }
  }
  return order;
}

export interface CreateTierForm {
  id: string;
  typeId: string;
  stereotype: StereotypeName;
  ontological: boolean;
  parent: string | null;
  profile: string | null;
  /** Reuse an already-registered linguistic type instead of defining one. */
  useExistingType: boolean;
}

export function emptyTierForm(): CreateTierForm {
  return {
    id: "",
    typeId: "",
    stereotype: "None",
    ontological: false,
    parent: null,
    profile: null,
    useExistingType: false,
  };
}

export type TierField = "id" | "type" | "parent" | "profile";

/** Map engine error names onto the dialog field that caused them. */
export function fieldForError(error: string): TierField {
  switch (error) {
    case "DuplicateTier":
      return "id";
    case "UnknownLinguisticType":
    case "DuplicateLinguisticType":
    case "ConstraintMismatch":
      return "type";
    case "ProfileRequired":
    case "ProfileForbidden":
    case "ProfileAlreadyBound":
      return "profile";
    default:
      // RootMustBeAlignable, ParentRequired, ParentForbidden,
      // ParentMustBeAlignable, UnknownParent, CycleDetected
      return "parent";
  }
}

export interface TierDialogResult {
  revision?: number;
  fieldErrors: Partial<Record<TierField, string>>;
}

export function tierRequestFromForm(form: CreateTierForm): NewTier {
  return {
    id: form.id,
    type: form.typeId,
    ...(form.useExistingType
      ? {}
      : {
          typeSpec: {
            id: form.typeId,
            stereotype: form.stereotype,
            ontological: form.ontological,
          },
        }),
    parent: form.parent,
    profile: form.profile,
  };
}

export async function submitTierDialog(
  client: ApiClient,
  docId: string,
  form: CreateTierForm,
  revision?: number,
): Promise<TierDialogResult> {
  try {
    const result = await client.addTier(docId, tierRequestFromForm(form), revision);
    return { revision: result.revision, fieldErrors: {} };
  } catch (failure) {
    if (failure instanceof ApiFailure && failure.isDomainViolation) {
      return { fieldErrors: { [fieldForError(failure.error)]: failure.error } };
    }
    throw failure;
  }
}

/**
 * Delete with confirmation: `confirmCascade` receives the preview (derived
 * from the snapshot) and decides; the resolved list is the server's cascade.
 */
export async function deleteTierWithPreview(
  client: ApiClient,
  snapshot: DocumentSnapshot,
  tierId: string,
  confirmCascade: (preview: string[]) => boolean | Promise<boolean>,
): Promise<string[] | null> {
  const preview = deleteTierPreview(snapshot, tierId);
  if (!(await confirmCascade(preview))) return null;
  const result = await client.deleteTier(snapshot.id, tierId, snapshot.revision);
  return result.deleted;
}
