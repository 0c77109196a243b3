"""Ontology-driven, tiered, time-aligned multimedia annotation engine."""

from .document import (
    AlignableAnnotation,
    Annotation,
    AnnotationDocument,
    DomainInstance,
    InstanceSpec,
    LinguisticType,
    MediaDescriptor,
    OntologicalRequest,
    OntologicalValue,
    ReferringAnnotation,
    Stereotype,
    StringValue,
    Tier,
    TimeSlot,
    create_document,
)
from .errors import Issue, OntotierError
from .ontology import (
    Ontology,
    TermDescriptor,
    TermKind,
    TreeNode,
    list_terms,
    load_ontology,
    resolve_term,
    term_tree,
)
from .profile import (
    Profile,
    UserTerm,
    create_profile,
    parse_profile,
    serialize_profile,
    validate_profile,
)
from .rdfxml import parse_document, serialize_document
from .search import SearchHit, search_term, search_text

__version__ = "0.1.0"

__all__ = [
    "AlignableAnnotation",
    "Annotation",
    "AnnotationDocument",
    "DomainInstance",
    "InstanceSpec",
    "Issue",
    "LinguisticType",
    "MediaDescriptor",
    "Ontology",
    "OntologicalRequest",
    "OntologicalValue",
    "OntotierError",
    "Profile",
    "ReferringAnnotation",
    "SearchHit",
    "Stereotype",
    "StringValue",
    "TermDescriptor",
    "TermKind",
    "Tier",
    "TimeSlot",
    "TreeNode",
    "UserTerm",
    "create_document",
    "create_profile",
    "list_terms",
    "load_ontology",
    "parse_document",
    "parse_profile",
    "resolve_term",
    "search_term",
    "search_text",
    "serialize_document",
    "serialize_profile",
    "term_tree",
    "validate_profile",
]
