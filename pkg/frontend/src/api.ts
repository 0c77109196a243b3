/**
 * Typed client for the annotation service, with optimistic-concurrency
 * support: mutations echo the revision the client believes is current, and
 * a 409 can be resolved by reloading the document and retrying once the
 * user confirms.
 */

import type {
  AnnotationResult,
  DeleteResult,
  DocumentSnapshot,
  MutationResult,
  ProfileJson,
  SearchHitJson,
  TermDescriptorJson,
  TreeNodeJson,
} from "./types.js";

export class ApiFailure extends Error {
  constructor(
    public readonly status: number,
    public readonly error: string,
    message: string,
    public readonly revision?: number,
  ) {
    super(message || error);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }

  get isDomainViolation(): boolean {
    return this.status === 422;
  }
}

export interface OntologicalPayload {
  userTerm: string;
  instanceSpec?: Record<string, { name?: string; fills?: { property: string; value: string }[] }>;
  ontAnnotationId?: string;
  description?: string;
}

export type NewAnnotation =
  | {
      kind: "alignable";
      tier: string;
      begin: string | { time: number | null };
      end: string | { time: number | null };
      text?: string;
      ontological?: OntologicalPayload;
      id?: string;
    }
  | {
      kind: "referring";
      tier: string;
      parent: string;
      text?: string;
      ontological?: OntologicalPayload;
      ordinal?: number;
      id?: string;
    };

export interface NewTier {
  id: string;
  type: string;
  typeSpec?: {
    id: string;
    stereotype: string;
    ontological?: boolean;
    timeAlignable?: boolean | null;
    graphicRef?: boolean;
  };
  parent?: string | null;
  profile?: string | null;
}

async function parseFailure(response: Response): Promise<ApiFailure> {
  let body: { error?: string; message?: string; revision?: number } = {};
  try {
    body = await response.json();
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiFailure(
    response.status,
    body.error ?? `HTTP${response.status}`,
    body.message ?? "",
    body.revision,
  );
}

export class ApiClient {
  constructor(public readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseFailure(response);
    return (await response.json()) as T;
  }

  getDocument(docId: string): Promise<DocumentSnapshot> {
    return this.request("GET", `/docs/${encodeURIComponent(docId)}`);
  }

  async exportDocument(docId: string, baseIri?: string): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/docs/${encodeURIComponent(docId)}/export`,
      {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(baseIri ? { baseIri } : {}),
      },
    );
    if (!response.ok) throw await parseFailure(response);
    return response.text();
  }

  addTier(docId: string, tier: NewTier, revision?: number): Promise<MutationResult & { tier: string }> {
    return this.request("POST", `/docs/${encodeURIComponent(docId)}/tiers`, {
      ...tier,
      revision,
    });
  }

  deleteTier(docId: string, tierId: string, revision?: number): Promise<DeleteResult> {
    const query = revision === undefined ? "" : `?revision=${revision}`;
    return this.request(
      "DELETE",
      `/docs/${encodeURIComponent(docId)}/tiers/${encodeURIComponent(tierId)}${query}`,
    );
  }

  addAnnotation(docId: string, annotation: NewAnnotation, revision?: number): Promise<AnnotationResult> {
    return this.request("POST", `/docs/${encodeURIComponent(docId)}/annotations`, {
      ...annotation,
      revision,
    });
  }

  deleteAnnotation(docId: string, annotationId: string, revision?: number): Promise<DeleteResult> {
    const query = revision === undefined ? "" : `?revision=${revision}`;
    return this.request(
      "DELETE",
      `/docs/${encodeURIComponent(docId)}/annotations/${encodeURIComponent(annotationId)}${query}`,
    );
  }

  setOntologicalValue(
    docId: string,
    annotationId: string,
    payload: OntologicalPayload,
    revision?: number,
  ): Promise<AnnotationResult> {
    return this.request(
      "POST",
      `/docs/${encodeURIComponent(docId)}/annotations/${encodeURIComponent(annotationId)}/ontological`,
      { ...payload, revision },
    );
  }

  moveSlot(docId: string, slotId: string, time: number, revision?: number): Promise<MutationResult> {
    return this.request(
      "PATCH",
      `/docs/${encodeURIComponent(docId)}/slots/${encodeURIComponent(slotId)}`,
      { time, revision },
    );
  }

  search(
    docId: string,
    query: { text?: string; term?: string; caseSensitive?: boolean; tier?: string },
  ): Promise<{ revision: number; hits: SearchHitJson[] }> {
    const params = new URLSearchParams();
    if (query.text !== undefined) params.set("text", query.text);
    if (query.term !== undefined) params.set("term", query.term);
    if (query.caseSensitive !== undefined) params.set("caseSensitive", String(query.caseSensitive));
    if (query.tier !== undefined) params.set("tier", query.tier);
    return this.request("GET", `/docs/${encodeURIComponent(docId)}/search?${params}`);
  }

  ontologyIndex(ontologyId: string): Promise<TermDescriptorJson[]> {
    return this.request("GET", `/ontologies/${encodeURIComponent(ontologyId)}/index`);
  }

  ontologyTree(ontologyId: string): Promise<TreeNodeJson[]> {
    return this.request("GET", `/ontologies/${encodeURIComponent(ontologyId)}/tree`);
  }

  createProfile(body: {
    id?: string;
    author: string;
    description: string;
    version: string;
    source: string;
    terms: { name: string; description?: string; targets: string[] }[];
  }): Promise<{ id: string }> {
    return this.request("POST", "/profiles", body);
  }

  getProfile(profileId: string): Promise<ProfileJson> {
    return this.request("GET", `/profiles/${encodeURIComponent(profileId)}`);
  }
}

/**
 * Run a mutation; on a revision conflict, ask `onConflict` (a reload-and-retry
 * prompt in the UI) and rerun once against the fresh revision.
 */
export async function withConflictRetry<T extends MutationResult>(
  client: ApiClient,
  docId: string,
  mutate: (revision: number) => Promise<T>,
  onConflict: () => boolean | Promise<boolean>,
): Promise<T> {
  const snapshot = await client.getDocument(docId);
  try {
    return await mutate(snapshot.revision);
  } catch (failure) {
    if (!(failure instanceof ApiFailure) || !failure.isConflict) throw failure;
    if (!(await onConflict())) throw failure;
    const fresh = await client.getDocument(docId);
    return mutate(fresh.revision);
  }
}
