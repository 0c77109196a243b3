"""Domain errors and validation report records shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class OntotierError(Exception):
    """Base class for every domain error raised by this package."""

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)

    @property
    def code(self) -> str:
        """Stable machine-readable error name (used by the CLI and service)."""
        return self.__class__.__name__


@dataclass(frozen=True)
class Issue:
    """One validation finding; a validation report is a list of these."""

    level: str  # "ERROR" | "WARNING"
    locus: str  # e.g. "tier:Words", "annotation:a42", "slot:ts3"
    message: str

    def __str__(self) -> str:
        return f"{self.level} {self.locus} {self.message}"


# --- XML / ontology loading -------------------------------------------------

class MalformedXml(OntotierError):
    """Input is not parseable XML or not the expected document shape."""


class CyclicHierarchy(OntotierError):
    """Subclass relation contains a cycle."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("subclass cycle: " + " -> ".join(self.cycle))


class NotFound(OntotierError):
    """Requested term or name does not exist."""


class Ambiguous(OntotierError):
    """A local name matched more than one IRI."""

    def __init__(self, name: str, candidates: list[str]):
        self.name = name
        self.candidates = sorted(candidates)
        super().__init__(f"{name!r} is ambiguous: " + ", ".join(self.candidates))


# --- profiles ----------------------------------------------------------------

class EmptySource(OntotierError):
    """Profile created without a source ontology IRI."""


class DuplicateUserTerm(OntotierError):
    """User-defined term name already present in the profile."""


class EmptyTargets(OntotierError):
    """A user-defined term must map to at least one ontological term."""


class SchemaViolation(OntotierError):
    """Profile XML misses required attributes/elements of the profile format."""


# --- tier hierarchy ----------------------------------------------------------

class DuplicateTier(OntotierError):
    """Tier id already exists in the document."""


class UnknownLinguisticType(OntotierError):
    """Tier references a linguistic type id that is not registered."""


class DuplicateLinguisticType(OntotierError):
    """A different linguistic type is already registered under this id."""


class RootMustBeAlignable(OntotierError):
    """Symbolic tiers cannot be hierarchy roots."""


class ParentRequired(OntotierError):
    """Time Subdivision tiers subdivide a parent and cannot be roots."""


class ParentForbidden(OntotierError):
    """Stereotype-None tiers are roots and take no parent."""


class ParentMustBeAlignable(OntotierError):
    """Time Subdivision subdivides parent slots, so the parent tier must be
    time-alignable."""


class ProfileRequired(OntotierError):
    """Ontological tiers must be bound to a language profile."""


class ProfileForbidden(OntotierError):
    """Non-ontological tiers cannot carry a profile reference."""


class ProfileAlreadyBound(OntotierError):
    """Each profile is bound to at most one ontological tier."""


class UnknownParent(OntotierError):
    """Referenced parent tier does not exist."""


class CycleDetected(OntotierError):
    """Tier parent edge would create a cycle."""


class UnknownTier(OntotierError):
    """Referenced tier does not exist."""


# --- time slots & annotations --------------------------------------------------

class NegativeTime(OntotierError):
    """Slot times are non-negative counts of the document time unit."""


class UnknownSlot(OntotierError):
    """Referenced time slot does not exist."""


class NotAlignableTier(OntotierError):
    """Alignable annotations require a time-alignable linguistic type."""


class InvertedInterval(OntotierError):
    """Begin slot must precede the end slot in the time order."""


class OutsideParentSlot(OntotierError):
    """Time Subdivision annotations must lie within a parent annotation."""


class OverlapsSibling(OntotierError):
    """Time Subdivision annotations under one parent may not overlap."""


class NotReferringTier(OntotierError):
    """Referring annotations require a symbolic tier."""


class ParentOnWrongTier(OntotierError):
    """Referenced parent annotation must lie on the tier's parent tier."""


class AssociationAlreadyFilled(OntotierError):
    """Symbolic Association allows one child per parent annotation."""


class UnknownParentAnnotation(OntotierError):
    """Referenced parent annotation does not exist."""


class UnknownAnnotation(OntotierError):
    """Referenced annotation does not exist."""


class DuplicateAnnotation(OntotierError):
    """Annotation id already exists in the document."""


# --- ontological values ---------------------------------------------------------

class NotOntologicalTier(OntotierError):
    """Ontological values are only valid on ontological tiers."""


class OntologicalValueRequired(OntotierError):
    """Ontological tiers take profile terms, not free text."""


class UnknownUserTerm(OntotierError):
    """User term is not defined in the tier's profile."""


class MissingInstanceName(OntotierError):
    """Instantiating a class or individual-less term needs an instance name."""


class MissingPropertyFills(OntotierError):
    """Instantiating a restricted class needs property fills."""


# --- slot moves ------------------------------------------------------------------

class WouldInvertInterval(OntotierError):
    """Move would place an annotation's begin after its end."""


class WouldEscapeParent(OntotierError):
    """Move would push a Time Subdivision child outside its parent."""


# --- persistence -------------------------------------------------------------------

class InvalidDocument(OntotierError):
    """Document failed validation and cannot be serialized."""


class DanglingReference(OntotierError):
    """Intra-document resource fragment has no matching rdf:ID."""


class ConstraintMismatch(OntotierError):
    """Stored linguistic type fields violate the type invariants."""
