/**
 * Wire types for the annotation service's JSON API.
 *
 * Shapes mirror the server's document snapshot one-to-one; intervals arrive
 * pre-resolved so the client never reimplements alignment inheritance.
 */

export type StereotypeName =
  | "None"
  | "Time_Subdivision"
  | "Symbolic_Subdivision"
  | "Symbolic_Association";

export interface LinguisticTypeJson {
  stereotype: StereotypeName;
  ontological: boolean;
  timeAlignable: boolean;
  graphicRef: boolean;
}

export interface TierJson {
  id: string;
  type: string;
  parent: string | null;
  profile: string | null;
}

export interface TimeSlotJson {
  id: string;
  time: number | null;
}

export interface StringValueJson {
  kind: "string";
  text: string;
}

export interface OntologicalValueJson {
  kind: "ontological";
  userTerm: string;
  instances: string[];
  ontAnnotationId: string;
  description: string;
}

export type ValueJson = StringValueJson | OntologicalValueJson;

export interface AnnotationBase {
  id: string;
  tier: string;
  /** Server-resolved [begin, end] in ms; null when unaligned. */
  interval: [number, number] | null;
  value: ValueJson;
}

export interface AlignableAnnotationJson extends AnnotationBase {
  kind: "alignable";
  begin: string;
  end: string;
}

export interface ReferringAnnotationJson extends AnnotationBase {
  kind: "referring";
  ref: string;
  ordinal: number;
}

export type AnnotationJson = AlignableAnnotationJson | ReferringAnnotationJson;

export interface MediaJson {
  url: string;
  mimeType: string;
  timeOrigin: number | null;
}

export interface DocumentSnapshot {
  id: string;
  revision: number;
  author: string;
  date: string;
  timeUnit: string;
  media: MediaJson[];
  linguisticTypes: Record<string, LinguisticTypeJson>;
  timeOrder: TimeSlotJson[];
  tiers: TierJson[];
  annotations: AnnotationJson[];
}

export interface SearchHitJson {
  tier: string;
  annotation: string;
  begin: number | null;
  end: number | null;
  value: string;
}

export interface TermDescriptorJson {
  iri: string;
  kind: "class" | "individual";
  label: string;
  hasRestrictions: boolean;
  parents: string[];
}

export interface TreeNodeJson {
  iri: string;
  children: TreeNodeJson[];
}

export interface ProfileTermJson {
  name: string;
  description: string;
  targets: string[];
}

export interface ProfileJson {
  id: string;
  author: string;
  description: string;
  version: string;
  source: string;
  terms: ProfileTermJson[];
  xml: string;
}

export interface MutationResult {
  revision: number;
}

export interface DeleteResult extends MutationResult {
  deleted: string[];
}

export interface AnnotationResult extends MutationResult {
  annotation: AnnotationJson;
}

/** The tier's profile reference is an authored path; service ids use basenames. */
export function profileIdForTier(tier: TierJson): string | null {
  if (tier.profile === null) return null;
  const parts = tier.profile.replace(/\\/g, "/").split("/");
  return parts[parts.length - 1] ?? tier.profile;
}
