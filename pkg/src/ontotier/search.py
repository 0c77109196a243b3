"""In-document search over string and ontological annotation values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .document import (
    AnnotationDocument,
    OntologicalValue,
    ReferringAnnotation,
    StringValue,
)
from .ontology import Ontology, TermKind


@dataclass(frozen=True)
class SearchHit:
    annotation_id: str
    tier_id: str
    matched_text: str
    interval: tuple[int, int] | None  # resolved; None when unaligned


def _ordered(doc: AnnotationDocument, hits: list[SearchHit]) -> list[SearchHit]:
    ordinals = {
        a.id: a.ordinal for a in doc.annotations.values() if isinstance(a, ReferringAnnotation)
    }

    def key(hit: SearchHit):
        return (
            hit.tier_id,
            hit.interval is None,
            hit.interval or (0, 0),
            ordinals.get(hit.annotation_id, 0),
            hit.annotation_id,
        )

    return sorted(hits, key=key)


def search_text(
    doc: AnnotationDocument,
    query: str,
    *,
    case_sensitive: bool = True,
    tiers: Collection[str] | None = None,
) -> list[SearchHit]:
    """String annotations whose text contains the query."""
    needle = query if case_sensitive else query.casefold()
    hits = []
    for annotation in doc.annotations.values():
        if tiers is not None and annotation.tier not in tiers:
            continue
        if not isinstance(annotation.value, StringValue):
            continue
        hay = annotation.value.text if case_sensitive else annotation.value.text.casefold()
        if needle in hay:
            hits.append(
                SearchHit(
                    annotation.id,
                    annotation.tier,
                    annotation.value.text,
                    doc.resolve_alignment(annotation.id),
                )
            )
    return _ordered(doc, hits)


def search_term(
    doc: AnnotationDocument,
    term: str,
    *,
    ontology: Ontology | None = None,
    include_subclasses: bool = False,
) -> list[SearchHit]:
    """Ontological annotations referencing an instance IRI or user term.

    With an ontology and include_subclasses, a class IRI query also matches
    the ontology's individuals typed by the class or any descendant class,
    and instances minted in the document for those classes.
    """
    match_iris = {term}
    match_classes: set[str] = set()
    if include_subclasses and ontology is not None and term in ontology.terms:
        match_classes = {term}
        grew = True
        while grew:
            grew = False
            for descriptor in ontology.terms.values():
                if descriptor.iri in match_classes or descriptor.iri in match_iris:
                    continue
                if descriptor.parents & match_classes:
                    if descriptor.kind is TermKind.CLASS:
                        match_classes.add(descriptor.iri)
                    else:
                        match_iris.add(descriptor.iri)
                    grew = True

    def instance_matches(iri: str) -> bool:
        if iri in match_iris:
            return True
        minted = doc.domain_instances.get(iri)
        return minted is not None and minted.class_iri in match_classes

    hits = []
    for annotation in doc.annotations.values():
        value = annotation.value
        if not isinstance(value, OntologicalValue):
            continue
        if value.user_term == term or any(instance_matches(i) for i in value.instances):
            hits.append(
                SearchHit(
                    annotation.id,
                    annotation.tier,
                    value.user_term,
                    doc.resolve_alignment(annotation.id),
                )
            )
    return _ordered(doc, hits)
