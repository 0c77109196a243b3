"""HTTP facade for the annotation engine.

In-memory stores for documents, ontologies, and profiles; JSON wire shapes
mirror the domain types one-to-one and every annotation is delivered with
its pre-resolved interval, so clients never reimplement alignment
inheritance. Mutations carry an optional expected revision for optimistic
concurrency (stale revision -> 409) and are serialized per document.

Error mapping: 400 malformed request, 404 unknown id, 409 revision
conflict, 422 domain violation with the engine error name in the body.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .document import (
    AlignableAnnotation,
    AnnotationDocument,
    InstanceSpec,
    LinguisticType,
    MediaDescriptor,
    OntologicalRequest,
    OntologicalValue,
    Stereotype,
    create_document,
)
from .errors import OntotierError
from .ontology import Ontology, TreeNode, list_terms, load_ontology, term_tree
from .profile import Profile, UserTerm, create_profile, parse_profile, serialize_profile
from .rdfxml import parse_document, serialize_document
from .search import search_term, search_text

DEFAULT_PORT = 8470


@dataclass
class DocEntry:
    doc: AnnotationDocument
    revision: int = 1
    lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class Store:
    docs: dict[str, DocEntry] = field(default_factory=dict)
    ontologies: dict[str, Ontology] = field(default_factory=dict)
    profiles: dict[str, Profile] = field(default_factory=dict)
    counter: int = 0

    def fresh_id(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"


class ApiError(Exception):
    def __init__(self, status: int, error: str, message: str = "", **extra: Any):
        self.status = status
        self.body = {"error": error, "message": message or error, **extra}
        super().__init__(message or error)


def _interval(doc: AnnotationDocument, annotation_id: str) -> list[int] | None:
    interval = doc.resolve_alignment(annotation_id)
    return list(interval) if interval is not None else None


def _annotation_json(doc: AnnotationDocument, annotation) -> dict[str, Any]:
    body: dict[str, Any] = {
        "id": annotation.id,
        "tier": annotation.tier,
        "interval": _interval(doc, annotation.id),
    }
    if isinstance(annotation, AlignableAnnotation):
        body["kind"] = "alignable"
        body["begin"] = annotation.begin
        body["end"] = annotation.end
    else:
        body["kind"] = "referring"
        body["ref"] = annotation.ref
        body["ordinal"] = annotation.ordinal
    value = annotation.value
    if isinstance(value, OntologicalValue):
        body["value"] = {
            "kind": "ontological",
            "userTerm": value.user_term,
            "instances": list(value.instances),
            "ontAnnotationId": value.ont_annotation_id,
            "description": value.description,
        }
    else:
        body["value"] = {"kind": "string", "text": value.text}
    return body


def _document_json(entry: DocEntry, doc_id: str) -> dict[str, Any]:
    doc = entry.doc
    return {
        "id": doc_id,
        "revision": entry.revision,
        "author": doc.author,
        "date": doc.date,
        "timeUnit": doc.time_unit,
        "media": [
            {"url": m.media_url, "mimeType": m.mime_type, "timeOrigin": m.time_origin}
            for m in doc.media_descriptors
        ],
        "linguisticTypes": {
            t.id: {
                "stereotype": t.stereotype.value,
                "ontological": t.ontological,
                "timeAlignable": t.time_alignable,
                "graphicRef": t.graphic_ref,
            }
            for t in doc.linguistic_types.values()
        },
        "timeOrder": [{"id": s.id, "time": s.time} for s in doc.time_order],
        "tiers": [
            {
                "id": t.id,
                "type": t.linguistic_type,
                "parent": t.parent,
                "profile": t.profile,
            }
            for t in doc.tiers.values()
        ],
        "annotations": [
            _annotation_json(doc, a) for a in doc.annotations.values()
        ],
    }


def _tree_json(node: TreeNode) -> dict[str, Any]:
    return {"iri": node.iri, "children": [_tree_json(c) for c in node.children]}


def create_app(store: Store | None = None) -> FastAPI:
    app = FastAPI(title="ontotier service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    state = store if store is not None else Store()
    app.state.store = state

    @app.exception_handler(ApiError)
    async def api_error_handler(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body)

    @app.exception_handler(OntotierError)
    async def domain_error_handler(_req: Request, exc: OntotierError):
        return JSONResponse(
            status_code=422, content={"error": exc.code, "message": str(exc)}
        )

    @app.exception_handler(RequestValidationError)
    async def malformed_handler(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"error": "MalformedRequest", "message": str(exc)}
        )

    def entry_of(doc_id: str) -> DocEntry:
        entry = state.docs.get(doc_id)
        if entry is None:
            raise ApiError(404, "UnknownDocument", f"no document {doc_id!r}")
        return entry

    def check_revision(entry: DocEntry, body: dict[str, Any] | None, query_rev: int | None):
        supplied = query_rev
        if supplied is None and body is not None:
            supplied = body.get("revision")
        if supplied is not None and supplied != entry.revision:
            raise ApiError(
                409,
                "RevisionConflict",
                f"expected revision {entry.revision}, got {supplied}",
                revision=entry.revision,
            )

    def tier_profile_context(
        doc: AnnotationDocument, tier_id: str, body: dict[str, Any]
    ) -> tuple[Profile, Ontology]:
        tier = doc.tiers.get(tier_id)
        profile_id = body.get("profile") or (tier.profile if tier else None)
        profile = None
        if profile_id:
            # tier profile references are authored paths; match ids by basename too
            basename = profile_id.replace("\\", "/").rsplit("/", 1)[-1]
            profile = state.profiles.get(profile_id) or state.profiles.get(basename)
        if profile is None:
            raise ApiError(422, "UnknownProfile", f"no loaded profile for {profile_id!r}")
        ontology = None
        ontology_id = body.get("ontology")
        if ontology_id:
            ontology = state.ontologies.get(ontology_id)
        else:
            matches = [
                o for o in state.ontologies.values() if o.source_iri == profile.source
            ]
            if len(matches) == 1:
                ontology = matches[0]
            elif len(state.ontologies) == 1:
                ontology = next(iter(state.ontologies.values()))
        if ontology is None:
            raise ApiError(
                422, "UnknownOntology", f"no loaded ontology for {profile.source!r}"
            )
        return profile, ontology

    def ontological_request(body: dict[str, Any]) -> OntologicalRequest:
        spec = {
            term: InstanceSpec(
                name=entry.get("name"),
                fills=tuple((f["property"], f["value"]) for f in entry.get("fills", ())),
            )
            for term, entry in (body.get("instanceSpec") or {}).items()
        }
        return OntologicalRequest(
            user_term=body["userTerm"],
            instances=spec,
            ont_annotation_id=body.get("ontAnnotationId"),
            description=body.get("description", ""),
        )

    # --- documents -----------------------------------------------------------

    @app.post("/docs", status_code=201)
    async def create_doc(body: dict[str, Any]):
        if "rdfxml" in body:
            doc = parse_document(body["rdfxml"])
        else:
            doc = create_document(
                author=body.get("author", ""),
                date=body.get("date", ""),
                media_descriptors=[
                    MediaDescriptor(
                        m["url"], m.get("mimeType", ""), m.get("timeOrigin")
                    )
                    for m in body.get("media", [])
                ],
            )
        doc_id = body.get("id") or state.fresh_id("doc")
        if doc_id in state.docs:
            raise ApiError(422, "DuplicateDocument", f"document {doc_id!r} exists")
        state.docs[doc_id] = DocEntry(doc)
        return _document_json(state.docs[doc_id], doc_id)

    @app.get("/docs/{doc_id}")
    async def get_doc(doc_id: str):
        return _document_json(entry_of(doc_id), doc_id)

    @app.put("/docs/{doc_id}/export")
    async def export_doc(doc_id: str, body: dict[str, Any] | None = None):
        entry = entry_of(doc_id)
        base_iri = (body or {}).get("baseIri") or f"file:///{doc_id}.eaf"
        data = serialize_document(entry.doc, base_iri)
        return Response(content=data, media_type="application/rdf+xml")

    # --- tiers ----------------------------------------------------------------

    @app.post("/docs/{doc_id}/tiers")
    async def add_tier(doc_id: str, body: dict[str, Any]):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, body, None)
            type_spec = body.get("typeSpec")
            if type_spec is not None:
                entry.doc.add_linguistic_type(
                    LinguisticType(
                        id=type_spec["id"],
                        stereotype=Stereotype(type_spec.get("stereotype", "None")),
                        ontological=type_spec.get("ontological", False),
                        time_alignable=type_spec.get("timeAlignable"),
                        graphic_ref=type_spec.get("graphicRef", False),
                    )
                )
            entry.doc.add_tier(
                body["id"],
                body["type"],
                parent=body.get("parent"),
                profile=body.get("profile"),
            )
            entry.revision += 1
            return {"revision": entry.revision, "tier": body["id"]}

    @app.delete("/docs/{doc_id}/tiers/{tier_id}")
    async def delete_tier(doc_id: str, tier_id: str, revision: int | None = None):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, None, revision)
            deleted = entry.doc.delete_tier(tier_id)
            entry.revision += 1
            return {"revision": entry.revision, "deleted": deleted}

    # --- slots & annotations ------------------------------------------------------

    @app.post("/docs/{doc_id}/slots")
    async def add_slot(doc_id: str, body: dict[str, Any]):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, body, None)
            slot_id = entry.doc.add_time_slot(body.get("time"))
            entry.revision += 1
            return {"revision": entry.revision, "slot": slot_id}

    @app.patch("/docs/{doc_id}/slots/{slot_id}")
    async def move_slot(doc_id: str, slot_id: str, body: dict[str, Any]):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, body, None)
            entry.doc.move_time_slot(slot_id, body["time"])
            entry.revision += 1
            return {"revision": entry.revision, "slot": slot_id}

    @app.post("/docs/{doc_id}/annotations")
    async def add_annotation(doc_id: str, body: dict[str, Any]):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, body, None)
            doc = entry.doc
            kind = body.get("kind")
            if kind == "alignable":
                begin, end = body["begin"], body["end"]
                if isinstance(begin, dict):
                    begin = doc.add_time_slot(begin.get("time"))
                if isinstance(end, dict):
                    end = doc.add_time_slot(end.get("time"))
                value: Any = body.get("text", "")
                profile = ontology = None
                if "ontological" in body:
                    value = ontological_request(body["ontological"])
                    profile, ontology = tier_profile_context(doc, body["tier"], body)
                aid = doc.add_alignable_annotation(
                    body["tier"],
                    begin,
                    end,
                    value,
                    annotation_id=body.get("id"),
                    profile=profile,
                    ontology=ontology,
                )
            elif kind == "referring":
                value = body.get("text", "")
                profile = ontology = None
                if "ontological" in body:
                    value = ontological_request(body["ontological"])
                    profile, ontology = tier_profile_context(doc, body["tier"], body)
                aid = doc.add_referring_annotation(
                    body["tier"],
                    body["parent"],
                    value,
                    ordinal=body.get("ordinal"),
                    annotation_id=body.get("id"),
                    profile=profile,
                    ontology=ontology,
                )
            else:
                raise ApiError(400, "MalformedRequest", f"unknown annotation kind {kind!r}")
            entry.revision += 1
            return {
                "revision": entry.revision,
                "annotation": _annotation_json(doc, doc.annotations[aid]),
            }

    @app.delete("/docs/{doc_id}/annotations/{annotation_id}")
    async def delete_annotation(
        doc_id: str, annotation_id: str, revision: int | None = None
    ):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, None, revision)
            deleted = entry.doc.delete_annotation(annotation_id)
            entry.revision += 1
            return {"revision": entry.revision, "deleted": deleted}

    @app.post("/docs/{doc_id}/annotations/{annotation_id}/ontological")
    async def set_ontological(doc_id: str, annotation_id: str, body: dict[str, Any]):
        entry = entry_of(doc_id)
        with entry.lock:
            check_revision(entry, body, None)
            doc = entry.doc
            annotation = doc.annotations.get(annotation_id)
            if annotation is None:
                raise ApiError(404, "UnknownAnnotation", annotation_id)
            profile, ontology = tier_profile_context(doc, annotation.tier, body)
            request = ontological_request(body)
            doc.set_ontological_value(
                annotation_id,
                request.user_term,
                request.instances,
                profile=profile,
                ontology=ontology,
                ont_annotation_id=request.ont_annotation_id,
                description=request.description,
            )
            entry.revision += 1
            return {
                "revision": entry.revision,
                "annotation": _annotation_json(doc, doc.annotations[annotation_id]),
            }

    # --- search ----------------------------------------------------------------

    @app.get("/docs/{doc_id}/search")
    async def search(
        doc_id: str,
        text: str | None = None,
        term: str | None = None,
        caseSensitive: bool = True,
        tier: str | None = None,
    ):
        entry = entry_of(doc_id)
        if text is None and term is None:
            raise ApiError(400, "MalformedRequest", "need text= or term=")
        if text is not None:
            hits = search_text(
                entry.doc,
                text,
                case_sensitive=caseSensitive,
                tiers=[tier] if tier else None,
            )
        else:
            hits = search_term(entry.doc, term)
        return {
            "revision": entry.revision,
            "hits": [
                {
                    "tier": h.tier_id,
                    "annotation": h.annotation_id,
                    "begin": h.interval[0] if h.interval else None,
                    "end": h.interval[1] if h.interval else None,
                    "value": h.matched_text,
                }
                for h in hits
            ],
        }

    # --- ontologies ---------------------------------------------------------------

    @app.post("/ontologies", status_code=201)
    async def add_ontology(body: dict[str, Any]):
        ontology = load_ontology(body["rdfxml"], source_iri=body.get("sourceIri", ""))
        ontology_id = body.get("id") or state.fresh_id("ont")
        state.ontologies[ontology_id] = ontology
        return {"id": ontology_id, "terms": len(ontology.terms)}

    @app.get("/ontologies/{ontology_id}/index")
    async def ontology_index(ontology_id: str):
        ontology = state.ontologies.get(ontology_id)
        if ontology is None:
            raise ApiError(404, "UnknownOntology", ontology_id)
        return [
            {
                "iri": d.iri,
                "kind": d.kind.value,
                "label": d.label,
                "hasRestrictions": d.has_restrictions,
                "parents": sorted(d.parents),
            }
            for d in list_terms(ontology)
        ]

    @app.get("/ontologies/{ontology_id}/tree")
    async def ontology_tree(ontology_id: str):
        ontology = state.ontologies.get(ontology_id)
        if ontology is None:
            raise ApiError(404, "UnknownOntology", ontology_id)
        return [_tree_json(node) for node in term_tree(ontology)]

    # --- profiles -------------------------------------------------------------------

    @app.post("/profiles", status_code=201)
    async def add_profile(body: dict[str, Any]):
        if "xml" in body:
            profile = parse_profile(body["xml"])
        else:
            profile = create_profile(
                body.get("author", ""),
                body.get("description", ""),
                body.get("version", "1.0"),
                body["source"],
            )
            for term in body.get("terms", []):
                profile.add_mapping(
                    UserTerm(term["name"], term.get("description", "")), term["targets"]
                )
        profile_id = body.get("id") or state.fresh_id("prf")
        if profile_id in state.profiles:
            raise ApiError(422, "DuplicateProfile", profile_id)
        state.profiles[profile_id] = profile
        return {"id": profile_id}

    @app.get("/profiles/{profile_id}")
    async def get_profile(profile_id: str):
        profile = state.profiles.get(profile_id)
        if profile is None:
            raise ApiError(404, "UnknownProfile", profile_id)
        return {
            "id": profile_id,
            "author": profile.author,
            "description": profile.description,
            "version": profile.version,
            "source": profile.source,
            "terms": [
                {
                    "name": entry.term.name,
                    "description": entry.term.description,
                    "targets": list(entry.targets),
                }
                for entry in profile.mappings.values()
            ],
            "xml": serialize_profile(profile).decode("utf-8"),
        }

    @app.post("/profiles/{profile_id}/terms")
    async def add_profile_term(profile_id: str, body: dict[str, Any]):
        profile = state.profiles.get(profile_id)
        if profile is None:
            raise ApiError(404, "UnknownProfile", profile_id)
        profile.add_mapping(
            UserTerm(body["name"], body.get("description", "")), body["targets"]
        )
        return {"id": profile_id, "terms": len(profile.mappings)}

    return app


app = create_app()


def main() -> None:
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=int(os.environ.get("PORT", DEFAULT_PORT)))


if __name__ == "__main__":
    main()
