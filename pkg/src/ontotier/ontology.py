"""OWL ontology loading and the two views the profile editor needs.

Reads RDF/XML and extracts exactly what tier annotation requires: class
declarations, subclass edges, named individuals with their types, labels,
and whether a class carries any property restriction. Everything else in
the file is skipped. Imports are not followed; a loaded ontology is one
self-contained file.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum

from .errors import Ambiguous, CyclicHierarchy, MalformedXml, NotFound

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"

_RDF_ABOUT = f"{{{RDF_NS}}}about"
_RDF_ID = f"{{{RDF_NS}}}ID"
_RDF_RESOURCE = f"{{{RDF_NS}}}resource"
_RDF_TYPE = f"{{{RDF_NS}}}type"
_RDF_DESCRIPTION = f"{{{RDF_NS}}}Description"
_RDFS_SUBCLASSOF = f"{{{RDFS_NS}}}subClassOf"
_RDFS_LABEL = f"{{{RDFS_NS}}}label"
_OWL_CLASS = f"{{{OWL_NS}}}Class"
_OWL_RESTRICTION = f"{{{OWL_NS}}}Restriction"
_OWL_NAMED_INDIVIDUAL = f"{{{OWL_NS}}}NamedIndividual"
_OWL_THING = f"{OWL_NS}Thing"
_XML_BASE = "{http://www.w3.org/XML/1998/namespace}base"


class TermKind(Enum):
    CLASS = "class"
    INDIVIDUAL = "individual"


def local_name(iri: str) -> str:
    """Fragment after '#', else the last path segment."""
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    return iri.rstrip("/").rsplit("/", 1)[-1]


@dataclass(frozen=True)
class TermDescriptor:
    iri: str
    kind: TermKind
    label: str
    has_restrictions: bool = False
    # superclass IRIs for classes, type IRIs for individuals; may include
    # external IRIs that do not resolve within the loaded file
    parents: frozenset[str] = frozenset()


@dataclass
class Ontology:
    """Immutable after load; safe to share across readers."""

    source_iri: str
    terms: dict[str, TermDescriptor]
    roots: frozenset[str]
    external: frozenset[str] = frozenset()  # referenced but not defined here

    def __contains__(self, iri: str) -> bool:
        return iri in self.terms


@dataclass
class TreeNode:
    iri: str
    children: list["TreeNode"] = field(default_factory=list)


def _tag_to_iri(tag: str) -> str:
    return tag[1:].replace("}", "", 1) if tag.startswith("{") else tag


class _Loader:
    def __init__(self, root: ET.Element, source_iri: str):
        self.root = root
        self.base = (root.get(_XML_BASE) or source_iri).rstrip("#")
        self.class_parents: dict[str, set[str]] = {}
        self.class_restricted: dict[str, bool] = {}
        self.individual_types: dict[str, set[str]] = {}
        self.labels: dict[str, str] = {}

    def subject(self, el: ET.Element) -> str | None:
        ident = el.get(_RDF_ID)
        if ident is not None:
            return f"{self.base}#{ident}"
        about = el.get(_RDF_ABOUT)
        if about is None:
            return None
        return self.resolve(about)

    def resolve(self, ref: str) -> str:
        if ref.startswith("#"):
            return self.base + ref
        if ref == "":
            return self.base
        return ref

    def record_label(self, iri: str, el: ET.Element) -> None:
        for label in el.findall(_RDFS_LABEL):
            if label.text and label.text.strip():
                self.labels.setdefault(iri, label.text.strip())

    def scan_class(self, el: ET.Element, iri: str) -> None:
        parents = self.class_parents.setdefault(iri, set())
        self.record_label(iri, el)
        for sub in el.findall(_RDFS_SUBCLASSOF):
            res = sub.get(_RDF_RESOURCE)
            if res is not None:
                target = self.resolve(res)
                if target != iri:
                    parents.add(target)
                else:
                    raise CyclicHierarchy([iri, iri])
                continue
            for nested in sub:
                if nested.tag in (_OWL_CLASS, _RDF_DESCRIPTION):
                    target = self.subject(nested)
                    if target == iri:
                        raise CyclicHierarchy([iri, iri])
                    if target is not None:
                        parents.add(target)
        # restriction presence is syntactic: any owl:Restriction nested in
        # this class's own axiom block counts
        if any(True for _ in el.iter(_OWL_RESTRICTION)):
            self.class_restricted[iri] = True

    def scan_individual(self, iri: str, el: ET.Element, implicit_type: str | None) -> None:
        types = self.individual_types.setdefault(iri, set())
        if implicit_type is not None:
            types.add(implicit_type)
        for typ in el.findall(_RDF_TYPE):
            res = typ.get(_RDF_RESOURCE)
            if res is None:
                continue
            target = self.resolve(res)
            if target not in (f"{OWL_NS}NamedIndividual", _OWL_THING):
                types.add(target)
        self.record_label(iri, el)

    def run(self) -> Ontology:
        # pass 1: classes (declared anywhere, including nested references)
        for el in self.root.iter():
            if el.tag == _OWL_CLASS:
                iri = self.subject(el)
                if iri is not None:
                    self.scan_class(el, iri)
            elif el.tag == _RDF_DESCRIPTION:
                types = {
                    self.resolve(t.get(_RDF_RESOURCE, ""))
                    for t in el.findall(_RDF_TYPE)
                }
                if f"{OWL_NS}Class" in types:
                    iri = self.subject(el)
                    if iri is not None:
                        self.scan_class(el, iri)

        # pass 2: individuals (NamedIndividual, typed nodes, plain Descriptions)
        for el in self.root.iter():
            iri = self.subject(el)
            if iri is None or iri in self.class_parents:
                continue
            if el.tag == _OWL_NAMED_INDIVIDUAL:
                self.scan_individual(iri, el, None)
            elif el.tag == _RDF_DESCRIPTION:
                typed = [
                    self.resolve(t.get(_RDF_RESOURCE, ""))
                    for t in el.findall(_RDF_TYPE)
                ]
                if any(t in self.class_parents for t in typed):
                    self.scan_individual(iri, el, None)
            else:
                tag_iri = _tag_to_iri(el.tag)
                if tag_iri in self.class_parents:
                    self.scan_individual(iri, el, tag_iri)

        terms: dict[str, TermDescriptor] = {}
        for iri, parents in self.class_parents.items():
            terms[iri] = TermDescriptor(
                iri=iri,
                kind=TermKind.CLASS,
                label=self.labels.get(iri, local_name(iri)),
                has_restrictions=self.class_restricted.get(iri, False),
                parents=frozenset(parents),
            )
        for iri, types in self.individual_types.items():
            terms[iri] = TermDescriptor(
                iri=iri,
                kind=TermKind.INDIVIDUAL,
                label=self.labels.get(iri, local_name(iri)),
                has_restrictions=False,
                parents=frozenset(types),
            )

        self.check_acyclic(terms)
        external = {
            parent
            for descriptor in terms.values()
            for parent in descriptor.parents
            if parent not in terms
        }
        roots = frozenset(
            iri
            for iri, descriptor in terms.items()
            if not any(parent in terms for parent in descriptor.parents)
        )
        return Ontology(
            source_iri=self.base,
            terms=terms,
            roots=roots,
            external=frozenset(external),
        )

    def check_acyclic(self, terms: dict[str, TermDescriptor]) -> None:
        # iterative three-color DFS over resolvable class edges
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {iri: WHITE for iri, d in terms.items() if d.kind is TermKind.CLASS}
        for start in color:
            if color[start] != WHITE:
                continue
            stack: list[tuple[str, list[str]]] = [(start, [start])]
            while stack:
                node, path = stack[-1]
                if color[node] == WHITE:
                    color[node] = GRAY
                    advanced = False
                    for parent in sorted(terms[node].parents):
                        if parent not in color:
                            continue
                        if color[parent] == GRAY:
                            cycle = path[path.index(parent):] if parent in path else path
                            raise CyclicHierarchy(cycle + [parent])
                        if color[parent] == WHITE:
                            stack.append((parent, path + [parent]))
                            advanced = True
                    if advanced:
                        continue
                color[node] = BLACK
                stack.pop()


def load_ontology(data: bytes | str, source_iri: str = "") -> Ontology:
    """Parse RDF/XML into an Ontology; raises MalformedXml / CyclicHierarchy."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"unparseable RDF/XML: {exc}") from exc
    return _Loader(root, source_iri).run()


def list_terms(ontology: Ontology) -> list[TermDescriptor]:
    """All terms sorted by label (case-insensitive), ties broken by IRI."""
    return sorted(ontology.terms.values(), key=lambda d: (d.label.casefold(), d.iri))


def term_tree(ontology: Ontology) -> list[TreeNode]:
    """Subclass forest; multi-parent terms appear once under each parent."""
    children: dict[str, list[str]] = {iri: [] for iri in ontology.terms}
    for descriptor in ontology.terms.values():
        for parent in descriptor.parents:
            if parent in ontology.terms:
                children[parent].append(descriptor.iri)

    def order(iris: list[str]) -> list[str]:
        return sorted(
            iris, key=lambda i: (ontology.terms[i].label.casefold(), i)
        )

    def build(iri: str) -> TreeNode:
        return TreeNode(iri, [build(child) for child in order(children[iri])])

    return [build(root) for root in order(list(ontology.roots))]


def resolve_term(ontology: Ontology, name: str) -> TermDescriptor:
    """Exact IRI match wins; otherwise a unique local-name match."""
    if name in ontology.terms:
        return ontology.terms[name]
    matches = [d for d in ontology.terms.values() if local_name(d.iri) == name]
    if not matches:
        raise NotFound(f"term {name!r} not in ontology {ontology.source_iri}")
    if len(matches) > 1:
        raise Ambiguous(name, [d.iri for d in matches])
    return matches[0]
