"""Language profiles: user-defined terms mapped onto ontological terms.

A profile is a named, versioned many-to-many mapping from user terms to
terms of one source ontology, stored as a small XML document (root
``PROFILE``, ``USER_DEFINED_TERM`` / ``ONTOLOGY_TERM`` children). Targets
are kept by bare name and resolved against the source ontology only when
the profile is validated.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    Ambiguous,
    DuplicateUserTerm,
    EmptySource,
    EmptyTargets,
    Issue,
    MalformedXml,
    NotFound,
    SchemaViolation,
)
from .ontology import Ontology, resolve_term


@dataclass(frozen=True)
class UserTerm:
    name: str
    description: str = ""


@dataclass
class ProfileEntry:
    term: UserTerm
    targets: tuple[str, ...]  # ontological term names/IRIs, order preserved


@dataclass
class Profile:
    author: str
    description: str
    version: str
    source: str  # IRI of the source ontology
    mappings: dict[str, ProfileEntry] = field(default_factory=dict)

    def add_mapping(self, term: UserTerm | str, targets: Sequence[str]) -> None:
        if isinstance(term, str):
            term = UserTerm(term)
        if not targets:
            raise EmptyTargets(f"user term {term.name!r} maps to no targets")
        if term.name in self.mappings:
            raise DuplicateUserTerm(term.name)
        self.mappings[term.name] = ProfileEntry(term, tuple(targets))

    def rename_user_term(self, old: str, new: str) -> None:
        if old not in self.mappings:
            raise NotFound(f"user term {old!r} not in profile")
        if new in self.mappings:
            raise DuplicateUserTerm(new)
        entry = self.mappings[old]
        renamed = ProfileEntry(UserTerm(new, entry.term.description), entry.targets)
        # rebuild to keep the entry at its original position
        self.mappings = {
            (new if name == old else name): (renamed if name == old else e)
            for name, e in self.mappings.items()
        }

    def lookup(self, name: str) -> tuple[str, ...]:
        if name not in self.mappings:
            raise NotFound(f"user term {name!r} not in profile")
        return self.mappings[name].targets


def create_profile(author: str, description: str, version: str, source: str) -> Profile:
    if not source:
        raise EmptySource("profile needs a source ontology IRI")
    return Profile(author, description, version, source)


def serialize_profile(profile: Profile) -> bytes:
    root = ET.Element("PROFILE")
    root.set("AUTHOR", profile.author)
    root.set("DESCRIPTION", profile.description)
    root.set("VERSION", profile.version)
    root.set("SOURCE", profile.source)
    for entry in profile.mappings.values():
        term_el = ET.SubElement(root, "USER_DEFINED_TERM")
        term_el.set("DESCRIPTION", entry.term.description)
        term_el.set("NAME", entry.term.name)
        for target in entry.targets:
            ET.SubElement(term_el, "ONTOLOGY_TERM").set("NAME", target)
    tree = ET.ElementTree(root)
    ET.indent(tree)
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True)


def parse_profile(data: bytes | str) -> Profile:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"unparseable profile XML: {exc}") from exc
    if root.tag != "PROFILE":
        raise SchemaViolation(f"expected root PROFILE, found {root.tag}")
    missing = [a for a in ("AUTHOR", "DESCRIPTION", "VERSION", "SOURCE") if root.get(a) is None]
    if missing:
        raise SchemaViolation("PROFILE misses attributes: " + ", ".join(missing))
    if not root.get("SOURCE"):
        raise SchemaViolation("SOURCE must be a non-empty ontology IRI")
    profile = Profile(
        author=root.get("AUTHOR", ""),
        description=root.get("DESCRIPTION", ""),
        version=root.get("VERSION", ""),
        source=root.get("SOURCE", ""),
    )
    for child in root:
        if child.tag != "USER_DEFINED_TERM":
            raise SchemaViolation(f"unexpected element {child.tag} under PROFILE")
        name = child.get("NAME")
        if name is None:
            raise SchemaViolation("USER_DEFINED_TERM misses NAME")
        targets = []
        for target_el in child:
            if target_el.tag != "ONTOLOGY_TERM":
                raise SchemaViolation(
                    f"unexpected element {target_el.tag} under USER_DEFINED_TERM"
                )
            target = target_el.get("NAME")
            if target is None:
                raise SchemaViolation("ONTOLOGY_TERM misses NAME")
            targets.append(target)
        if not targets:
            raise SchemaViolation(f"user term {name!r} has zero ONTOLOGY_TERM children")
        try:
            profile.add_mapping(UserTerm(name, child.get("DESCRIPTION", "")), targets)
        except DuplicateUserTerm as exc:
            raise SchemaViolation(f"duplicate USER_DEFINED_TERM NAME {name!r}") from exc
    return profile


def validate_profile(profile: Profile, ontology: Ontology) -> list[Issue]:
    """Report every mapping target that does not resolve in the ontology."""
    issues = []
    for name, entry in profile.mappings.items():
        for target in entry.targets:
            try:
                resolve_term(ontology, target)
            except NotFound:
                issues.append(
                    Issue("ERROR", f"profile:{name}", f"target {target!r} not found in ontology")
                )
            except Ambiguous as exc:
                issues.append(
                    Issue(
                        "ERROR",
                        f"profile:{name}",
                        f"target {target!r} is ambiguous: " + ", ".join(exc.candidates),
                    )
                )
    return issues
