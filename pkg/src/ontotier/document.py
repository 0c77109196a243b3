"""Tiered annotation documents: tiers, time slots, annotations, cascades.

The engine enforces the tier hierarchy rules (roots are alignable, symbolic
tiers refer to a parent, ontological tiers bind exactly one profile), the
per-stereotype annotation constraints, and cascading deletes. Alignment of
referring annotations is never stored; it is derived by walking reference
chains down to an alignable annotation, so slot moves propagate for free.

All edits are transactional: a failed precondition leaves the document
untouched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Union

from . import errors as err
from .errors import Issue
from .ontology import Ontology, TermKind, resolve_term
from .profile import Profile


class Stereotype(Enum):
    """Tier constraint stereotypes; values match the serialized names."""

    NONE = "None"
    TIME_SUBDIVISION = "Time_Subdivision"
    SYMBOLIC_SUBDIVISION = "Symbolic_Subdivision"
    SYMBOLIC_ASSOCIATION = "Symbolic_Association"


_SYMBOLIC = (Stereotype.SYMBOLIC_SUBDIVISION, Stereotype.SYMBOLIC_ASSOCIATION)


@dataclass(frozen=True)
class LinguisticType:
    id: str
    stereotype: Stereotype = Stereotype.NONE
    ontological: bool = False
    time_alignable: bool | None = None  # None: derived from the stereotype
    graphic_ref: bool = False  # stored and round-tripped, no behavior

    def __post_init__(self):
        if self.time_alignable is None:
            derived = self.stereotype in (Stereotype.NONE, Stereotype.TIME_SUBDIVISION)
            object.__setattr__(self, "time_alignable", derived)
        if self.stereotype is Stereotype.NONE:
            if not self.time_alignable:
                raise err.ConstraintMismatch(
                    f"type {self.id!r}: stereotype None must be time-alignable"
                )
            if self.ontological:
                raise err.ConstraintMismatch(
                    f"type {self.id!r}: ontological types need a referring stereotype"
                )
        if self.stereotype in _SYMBOLIC and self.time_alignable:
            raise err.ConstraintMismatch(
                f"type {self.id!r}: symbolic stereotypes are not time-alignable"
            )


@dataclass(frozen=True)
class MediaDescriptor:
    media_url: str
    mime_type: str
    time_origin: int | None = None


@dataclass
class TimeSlot:
    id: str
    time: int | None = None  # count of the document time unit


@dataclass
class Tier:
    id: str
    linguistic_type: str
    parent: str | None = None
    profile: str | None = None  # opaque profile reference (path as authored)


@dataclass(frozen=True)
class StringValue:
    text: str


@dataclass(frozen=True)
class OntologicalValue:
    ont_annotation_id: str
    user_term: str
    instances: tuple[str, ...]  # one IRI per mapped ontological term
    description: str = ""


AnnotationValue = Union[StringValue, OntologicalValue]


@dataclass
class Annotation:
    id: str
    tier: str
    value: AnnotationValue


@dataclass
class AlignableAnnotation(Annotation):
    begin: str
    end: str


@dataclass
class ReferringAnnotation(Annotation):
    ref: str
    ordinal: int = 0


@dataclass(frozen=True)
class DomainInstance:
    """An ontology-class instance minted while annotating an ontological tier."""

    iri: str
    class_iri: str
    fills: tuple[tuple[str, str], ...] = ()  # (property IRI, literal) pairs


@dataclass(frozen=True)
class InstanceSpec:
    """How to instantiate one mapped ontological term."""

    name: str | None = None
    fills: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class OntologicalRequest:
    """Value request for an annotation on an ontological tier."""

    user_term: str
    instances: Mapping[str, InstanceSpec] = field(default_factory=dict)
    ont_annotation_id: str | None = None
    description: str = ""


@dataclass(frozen=True)
class ForeignProperty:
    """Unknown RDF property preserved opaquely through a parse/serialize cycle."""

    tag: str  # Clark-notation element tag
    text: str | None = None
    resource: str | None = None


_ANN_ID = re.compile(r"^a(\d+)$")
_SLOT_ID = re.compile(r"^ts(\d+)$")


@dataclass
class AnnotationDocument:
    author: str = ""
    date: str = ""
    time_unit: str = "milliseconds"
    media_descriptors: list[MediaDescriptor] = field(default_factory=list)
    linguistic_types: dict[str, LinguisticType] = field(default_factory=dict)
    time_order: list[TimeSlot] = field(default_factory=list)
    tiers: dict[str, Tier] = field(default_factory=dict)
    annotations: dict[str, Annotation] = field(default_factory=dict)
    domain_instances: dict[str, DomainInstance] = field(default_factory=dict)
    extra_properties: dict[str, tuple[ForeignProperty, ...]] = field(default_factory=dict)
    extra_nodes: list[str] = field(default_factory=list)
    _next_ann: int = field(default=1, compare=False, repr=False)
    _next_slot: int = field(default=1, compare=False, repr=False)

    # --- registries ---------------------------------------------------------

    def add_linguistic_type(self, ltype: LinguisticType) -> None:
        existing = self.linguistic_types.get(ltype.id)
        if existing is not None and existing != ltype:
            raise err.DuplicateLinguisticType(ltype.id)
        self.linguistic_types[ltype.id] = ltype

    def _slot(self, slot_id: str) -> TimeSlot:
        for slot in self.time_order:
            if slot.id == slot_id:
                return slot
        raise err.UnknownSlot(slot_id)

    def _slot_positions(self) -> dict[str, int]:
        return {slot.id: i for i, slot in enumerate(self.time_order)}

    def _tier_type(self, tier: Tier) -> LinguisticType:
        return self.linguistic_types[tier.linguistic_type]

    def _fresh_annotation_id(self) -> str:
        while f"a{self._next_ann}" in self.annotations:
            self._next_ann += 1
        return f"a{self._next_ann}"

    def _note_annotation_id(self, annotation_id: str) -> None:
        match = _ANN_ID.match(annotation_id)
        if match:
            self._next_ann = max(self._next_ann, int(match.group(1)) + 1)

    # --- tiers ----------------------------------------------------------------

    def add_tier(
        self,
        tier_id: str,
        type_id: str,
        parent: str | None = None,
        profile: str | None = None,
    ) -> Tier:
        if tier_id in self.tiers:
            raise err.DuplicateTier(tier_id)
        if type_id not in self.linguistic_types:
            raise err.UnknownLinguisticType(type_id)
        ltype = self.linguistic_types[type_id]
        if parent is None:
            if ltype.stereotype in _SYMBOLIC:
                raise err.RootMustBeAlignable(
                    f"tier {tier_id!r}: {ltype.stereotype.value} tiers need a parent"
                )
            if ltype.stereotype is Stereotype.TIME_SUBDIVISION:
                raise err.ParentRequired(
                    f"tier {tier_id!r}: Time Subdivision subdivides a parent tier"
                )
        else:
            if ltype.stereotype is Stereotype.NONE:
                raise err.ParentForbidden(
                    f"tier {tier_id!r}: stereotype-None tiers are hierarchy roots"
                )
            if parent not in self.tiers:
                raise err.UnknownParent(parent)
            if ltype.stereotype is Stereotype.TIME_SUBDIVISION and not self._tier_type(
                self.tiers[parent]
            ).time_alignable:
                raise err.ParentMustBeAlignable(
                    f"tier {tier_id!r}: Time Subdivision subdivides slots, but "
                    f"{parent!r} is not time-alignable"
                )
            seen = {tier_id}
            cursor: str | None = parent
            while cursor is not None:
                if cursor in seen:
                    raise err.CycleDetected(f"tier {tier_id!r} via {cursor!r}")
                seen.add(cursor)
                cursor = self.tiers[cursor].parent
        if ltype.ontological and profile is None:
            raise err.ProfileRequired(f"tier {tier_id!r} uses ontological type {type_id!r}")
        if not ltype.ontological and profile is not None:
            raise err.ProfileForbidden(f"tier {tier_id!r}: type {type_id!r} is not ontological")
        if profile is not None:
            for other in self.tiers.values():
                if other.profile == profile:
                    raise err.ProfileAlreadyBound(
                        f"profile {profile!r} already bound to tier {other.id!r}"
                    )
        tier = Tier(tier_id, type_id, parent, profile)
        self.tiers[tier_id] = tier
        return tier

    def tier_children(self, tier_id: str) -> list[str]:
        return [t.id for t in self.tiers.values() if t.parent == tier_id]

    def tier_descendants(self, tier_id: str) -> list[str]:
        """Tier plus all descendants, BFS order."""
        if tier_id not in self.tiers:
            raise err.UnknownTier(tier_id)
        order = [tier_id]
        queue = [tier_id]
        while queue:
            current = queue.pop(0)
            for child in self.tier_children(current):
                order.append(child)
                queue.append(child)
        return order

    def delete_tier(self, tier_id: str) -> list[str]:
        """Cascade delete; returns the deleted tier ids (BFS order)."""
        doomed = self.tier_descendants(tier_id)
        doomed_set = set(doomed)
        removed_annotations = [
            a for a in self.annotations.values() if a.tier in doomed_set
        ]
        for annotation in removed_annotations:
            del self.annotations[annotation.id]
        for tid in doomed:
            del self.tiers[tid]
        freed = {
            ann.begin for ann in removed_annotations if isinstance(ann, AlignableAnnotation)
        } | {
            ann.end for ann in removed_annotations if isinstance(ann, AlignableAnnotation)
        }
        self._sweep_slots(freed, untimed_only=False)
        self._sweep_instances()
        return doomed

    def _sweep_slots(self, candidates: set[str], untimed_only: bool) -> None:
        still_used = set()
        for ann in self.annotations.values():
            if isinstance(ann, AlignableAnnotation):
                still_used.add(ann.begin)
                still_used.add(ann.end)
        keep = []
        for slot in self.time_order:
            if slot.id in candidates and slot.id not in still_used:
                if not untimed_only or slot.time is None:
                    continue
            keep.append(slot)
        self.time_order = keep

    def _sweep_instances(self) -> None:
        referenced = set()
        for ann in self.annotations.values():
            if isinstance(ann.value, OntologicalValue):
                referenced.update(ann.value.instances)
        self.domain_instances = {
            iri: inst for iri, inst in self.domain_instances.items() if iri in referenced
        }

    # --- time slots -----------------------------------------------------------

    def add_time_slot(self, time: int | None = None, slot_id: str | None = None) -> str:
        if time is not None and time < 0:
            raise err.NegativeTime(f"slot time {time} < 0")
        if slot_id is None:
            while f"ts{self._next_slot}" in {s.id for s in self.time_order}:
                self._next_slot += 1
            slot_id = f"ts{self._next_slot}"
        elif any(s.id == slot_id for s in self.time_order):
            raise ValueError(f"slot id {slot_id!r} already exists")
        match = _SLOT_ID.match(slot_id)
        if match:
            self._next_slot = max(self._next_slot, int(match.group(1)) + 1)
        slot = TimeSlot(slot_id, time)
        if time is None:
            self.time_order.append(slot)
        else:
            # insert directly before the first timed slot that is strictly
            # later; untimed slots keep their inserted positions
            index = len(self.time_order)
            for i, other in enumerate(self.time_order):
                if other.time is not None and other.time > time:
                    index = i
                    break
            self.time_order.insert(index, slot)
        return slot_id

    def move_time_slot(self, slot_id: str, new_time: int) -> None:
        slot = self._slot(slot_id)
        if new_time < 0:
            raise err.NegativeTime(f"slot time {new_time} < 0")
        old_time = slot.time
        old_order = list(self.time_order)
        slot.time = new_time
        timed_positions = [i for i, s in enumerate(self.time_order) if s.time is not None]
        timed_sorted = sorted(
            (self.time_order[i] for i in timed_positions), key=lambda s: s.time
        )
        for position, moved in zip(timed_positions, timed_sorted):
            self.time_order[position] = moved

        def rollback(exc: err.OntotierError):
            slot.time = old_time
            self.time_order = old_order
            raise exc

        positions = self._slot_positions()
        for ann in self.annotations.values():
            if isinstance(ann, AlignableAnnotation):
                if positions[ann.begin] >= positions[ann.end]:
                    rollback(err.WouldInvertInterval(f"annotation {ann.id!r}"))
        for ann in self.annotations.values():
            if not isinstance(ann, AlignableAnnotation):
                continue
            tier = self.tiers[ann.tier]
            if self._tier_type(tier).stereotype is not Stereotype.TIME_SUBDIVISION:
                continue
            parent_id = self._subdivision_parent(ann)
            if parent_id is None:
                rollback(err.WouldEscapeParent(f"annotation {ann.id!r}"))
            for sibling in self.annotations.values():
                if (
                    sibling is not ann
                    and isinstance(sibling, AlignableAnnotation)
                    and sibling.tier == ann.tier
                    and self._subdivision_parent(sibling) == parent_id
                    and not (
                        positions[ann.end] <= positions[sibling.begin]
                        or positions[sibling.end] <= positions[ann.begin]
                    )
                ):
                    rollback(err.OverlapsSibling(f"{ann.id!r} and {sibling.id!r}"))

    # --- annotations -------------------------------------------------------------

    def _subdivision_parent(self, ann: AlignableAnnotation) -> str | None:
        """First parent-tier annotation whose slot span contains `ann`.

        Containment is positional in the time order, so sharing the parent's
        boundary slots counts as inside; parent tiers of Time Subdivision
        tiers are always time-alignable, so candidates always carry slots.
        """
        tier = self.tiers[ann.tier]
        if tier.parent is None:
            return None
        positions = self._slot_positions()
        for candidate in self.annotations.values():
            if candidate.tier != tier.parent or not isinstance(
                candidate, AlignableAnnotation
            ):
                continue
            if (
                positions[candidate.begin] <= positions[ann.begin]
                and positions[ann.end] <= positions[candidate.end]
            ):
                return candidate.id
        return None

    def _build_value(
        self,
        tier: Tier,
        request: OntologicalRequest,
        profile: Profile,
        ontology: Ontology,
        annotation_id: str,
    ) -> tuple[OntologicalValue, list[DomainInstance]]:
        if request.user_term not in profile.mappings:
            raise err.UnknownUserTerm(
                f"{request.user_term!r} not in profile bound to tier {tier.id!r}"
            )
        instances: list[str] = []
        minted: list[DomainInstance] = []
        for target in profile.lookup(request.user_term):
            descriptor = resolve_term(ontology, target)
            if descriptor.kind is TermKind.INDIVIDUAL:
                instances.append(descriptor.iri)
                continue
            spec = request.instances.get(target) or request.instances.get(descriptor.iri)
            if spec is None or spec.name is None:
                raise err.MissingInstanceName(
                    f"term {target!r} needs an instance name"
                )
            if descriptor.has_restrictions and not spec.fills:
                raise err.MissingPropertyFills(
                    f"term {target!r} is a restricted class; property fills required"
                )
            iri = f"{ontology.source_iri}#{spec.name}"
            instances.append(iri)
            minted.append(DomainInstance(iri, descriptor.iri, tuple(spec.fills)))
        value = OntologicalValue(
            ont_annotation_id=request.ont_annotation_id or annotation_id,
            user_term=request.user_term,
            instances=tuple(instances),
            description=request.description,
        )
        return value, minted

    def _admit_value(
        self,
        tier: Tier,
        value: str | OntologicalRequest,
        profile: Profile | None,
        ontology: Ontology | None,
        annotation_id: str,
    ) -> tuple[AnnotationValue, list[DomainInstance]]:
        ontological = self._tier_type(tier).ontological
        if isinstance(value, OntologicalRequest):
            if not ontological:
                raise err.NotOntologicalTier(tier.id)
            if profile is None or ontology is None:
                raise err.UnknownUserTerm(
                    f"tier {tier.id!r}: profile and ontology required for ontological values"
                )
            return self._build_value(tier, value, profile, ontology, annotation_id)
        if ontological:
            raise err.OntologicalValueRequired(tier.id)
        return StringValue(value), []

    def add_alignable_annotation(
        self,
        tier_id: str,
        begin: str,
        end: str,
        value: str | OntologicalRequest = "",
        annotation_id: str | None = None,
        *,
        profile: Profile | None = None,
        ontology: Ontology | None = None,
    ) -> str:
        if tier_id not in self.tiers:
            raise err.UnknownTier(tier_id)
        tier = self.tiers[tier_id]
        ltype = self._tier_type(tier)
        if not ltype.time_alignable:
            raise err.NotAlignableTier(tier_id)
        if annotation_id is not None and annotation_id in self.annotations:
            raise err.DuplicateAnnotation(annotation_id)
        positions = self._slot_positions()
        if begin not in positions:
            raise err.UnknownSlot(begin)
        if end not in positions:
            raise err.UnknownSlot(end)
        if positions[begin] >= positions[end]:
            raise err.InvertedInterval(f"{begin} !< {end}")
        if ltype.stereotype is Stereotype.TIME_SUBDIVISION:
            probe = AlignableAnnotation(
                id="", tier=tier_id, value=StringValue(""), begin=begin, end=end
            )
            parent_id = self._subdivision_parent(probe)
            if parent_id is None:
                raise err.OutsideParentSlot(
                    f"[{begin}, {end}] not inside any {tier.parent!r} annotation"
                )
            for sibling in self.annotations.values():
                if (
                    isinstance(sibling, AlignableAnnotation)
                    and sibling.tier == tier_id
                    and self._subdivision_parent(sibling) == parent_id
                    and not (
                        positions[end] <= positions[sibling.begin]
                        or positions[sibling.end] <= positions[begin]
                    )
                ):
                    raise err.OverlapsSibling(f"overlaps {sibling.id!r}")
        aid = annotation_id or self._fresh_annotation_id()
        admitted, minted = self._admit_value(tier, value, profile, ontology, aid)
        self.annotations[aid] = AlignableAnnotation(
            id=aid, tier=tier_id, value=admitted, begin=begin, end=end
        )
        for instance in minted:
            self.domain_instances[instance.iri] = instance
        self._note_annotation_id(aid)
        return aid

    def add_referring_annotation(
        self,
        tier_id: str,
        parent_annotation: str,
        value: str | OntologicalRequest = "",
        ordinal: int | None = None,
        annotation_id: str | None = None,
        *,
        profile: Profile | None = None,
        ontology: Ontology | None = None,
    ) -> str:
        if tier_id not in self.tiers:
            raise err.UnknownTier(tier_id)
        tier = self.tiers[tier_id]
        ltype = self._tier_type(tier)
        if ltype.stereotype not in _SYMBOLIC:
            raise err.NotReferringTier(tier_id)
        if annotation_id is not None and annotation_id in self.annotations:
            raise err.DuplicateAnnotation(annotation_id)
        if parent_annotation not in self.annotations:
            raise err.UnknownParentAnnotation(parent_annotation)
        parent = self.annotations[parent_annotation]
        if parent.tier != tier.parent:
            raise err.ParentOnWrongTier(
                f"{parent_annotation!r} lies on {parent.tier!r}, not {tier.parent!r}"
            )
        siblings = [
            a
            for a in self.annotations.values()
            if isinstance(a, ReferringAnnotation)
            and a.tier == tier_id
            and a.ref == parent_annotation
        ]
        if ltype.stereotype is Stereotype.SYMBOLIC_ASSOCIATION:
            if siblings:
                raise err.AssociationAlreadyFilled(
                    f"{parent_annotation!r} already has {siblings[0].id!r} on {tier_id!r}"
                )
            ordinal = 0
        elif ordinal is None:
            ordinal = max((s.ordinal for s in siblings), default=-1) + 1
        aid = annotation_id or self._fresh_annotation_id()
        admitted, minted = self._admit_value(tier, value, profile, ontology, aid)
        if ltype.stereotype is Stereotype.SYMBOLIC_SUBDIVISION:
            for sibling in siblings:  # insert semantics: shift trailing siblings
                if sibling.ordinal >= ordinal:
                    sibling.ordinal += 1
        self.annotations[aid] = ReferringAnnotation(
            id=aid, tier=tier_id, value=admitted, ref=parent_annotation, ordinal=ordinal
        )
        for instance in minted:
            self.domain_instances[instance.iri] = instance
        self._note_annotation_id(aid)
        return aid

    def set_ontological_value(
        self,
        annotation_id: str,
        user_term: str,
        instance_spec: Mapping[str, InstanceSpec] | None = None,
        *,
        profile: Profile,
        ontology: Ontology,
        ont_annotation_id: str | None = None,
        description: str = "",
    ) -> OntologicalValue:
        if annotation_id not in self.annotations:
            raise err.UnknownAnnotation(annotation_id)
        annotation = self.annotations[annotation_id]
        tier = self.tiers[annotation.tier]
        if not self._tier_type(tier).ontological:
            raise err.NotOntologicalTier(annotation.tier)
        request = OntologicalRequest(
            user_term=user_term,
            instances=dict(instance_spec or {}),
            ont_annotation_id=ont_annotation_id,
            description=description,
        )
        value, minted = self._build_value(tier, request, profile, ontology, annotation_id)
        annotation.value = value
        for instance in minted:
            self.domain_instances[instance.iri] = instance
        self._sweep_instances()
        return value

    def resolve_alignment(self, annotation_id: str) -> tuple[int, int] | None:
        """Derived interval; None when any required slot is untimed."""
        if annotation_id not in self.annotations:
            raise err.UnknownAnnotation(annotation_id)
        annotation = self.annotations[annotation_id]
        while isinstance(annotation, ReferringAnnotation):
            if annotation.ref not in self.annotations:
                raise err.UnknownAnnotation(annotation.ref)
            annotation = self.annotations[annotation.ref]
        begin = self._slot(annotation.begin).time
        end = self._slot(annotation.end).time
        if begin is None or end is None:
            return None
        return begin, end

    def _dependents(self, annotation: Annotation) -> Iterable[Annotation]:
        for candidate in self.annotations.values():
            if isinstance(candidate, ReferringAnnotation) and candidate.ref == annotation.id:
                yield candidate
            elif isinstance(candidate, AlignableAnnotation):
                tier = self.tiers[candidate.tier]
                if (
                    self._tier_type(tier).stereotype is Stereotype.TIME_SUBDIVISION
                    and tier.parent == annotation.tier
                    and self._subdivision_parent(candidate) == annotation.id
                ):
                    yield candidate

    def delete_annotation(self, annotation_id: str) -> list[str]:
        """Cascade delete; returns deleted annotation ids (BFS order)."""
        if annotation_id not in self.annotations:
            raise err.UnknownAnnotation(annotation_id)
        order = [annotation_id]
        queue = [annotation_id]
        doomed = {annotation_id}
        while queue:
            current = self.annotations[queue.pop(0)]
            for dependent in self._dependents(current):
                if dependent.id not in doomed:
                    doomed.add(dependent.id)
                    order.append(dependent.id)
                    queue.append(dependent.id)
        freed = set()
        for aid in order:
            annotation = self.annotations.pop(aid)
            if isinstance(annotation, AlignableAnnotation):
                freed.add(annotation.begin)
                freed.add(annotation.end)
        self._sweep_slots(freed, untimed_only=True)
        self._sweep_instances()
        return order

    # --- validation -----------------------------------------------------------

    def validate(
        self,
        ontology: Ontology | None = None,
        profiles: Mapping[str, Profile] | None = None,
    ) -> list[Issue]:
        """Report every violated invariant; empty report means valid."""
        issues: list[Issue] = []
        bad = issues.append

        positions = {}
        previous_time = None
        for i, slot in enumerate(self.time_order):
            if slot.id in positions:
                bad(Issue("ERROR", f"slot:{slot.id}", "duplicate slot id"))
            positions[slot.id] = i
            if slot.time is not None:
                if slot.time < 0:
                    bad(Issue("ERROR", f"slot:{slot.id}", f"negative time {slot.time}"))
                elif previous_time is not None and slot.time < previous_time:
                    bad(Issue("ERROR", f"slot:{slot.id}", "timed slots out of order"))
                previous_time = slot.time

        # rdf:ID fragments share one namespace in the serialized document
        reserved = {"document"} | {s.value for s in Stereotype if s is not Stereotype.NONE}
        spaces = [
            ("tier", set(self.tiers)),
            ("annotation", set(self.annotations)),
            ("slot", set(positions)),
            ("type", set(self.linguistic_types)),
            ("reserved", reserved),
        ]
        for i, (kind_a, ids_a) in enumerate(spaces):
            for kind_b, ids_b in spaces[i + 1:]:
                for clash in sorted(ids_a & ids_b):
                    bad(
                        Issue(
                            "ERROR",
                            f"{kind_a}:{clash}",
                            f"id collides with {kind_b} id {clash!r}",
                        )
                    )

        profile_owners: dict[str, str] = {}
        for tier in self.tiers.values():
            locus = f"tier:{tier.id}"
            if tier.linguistic_type not in self.linguistic_types:
                bad(Issue("ERROR", locus, f"unknown linguistic type {tier.linguistic_type!r}"))
                continue
            ltype = self._tier_type(tier)
            if tier.parent is None and ltype.stereotype is not Stereotype.NONE:
                bad(Issue("ERROR", locus, "non-root stereotype on a root tier"))
            if tier.parent is not None:
                if ltype.stereotype is Stereotype.NONE:
                    bad(Issue("ERROR", locus, "stereotype-None tier has a parent"))
                if tier.parent not in self.tiers:
                    bad(Issue("ERROR", locus, f"unknown parent tier {tier.parent!r}"))
                elif (
                    ltype.stereotype is Stereotype.TIME_SUBDIVISION
                    and self.tiers[tier.parent].linguistic_type in self.linguistic_types
                    and not self._tier_type(self.tiers[tier.parent]).time_alignable
                ):
                    bad(Issue("ERROR", locus, "Time Subdivision under a symbolic tier"))
            if ltype.ontological and tier.profile is None:
                bad(Issue("ERROR", locus, "ontological tier without profile"))
            if not ltype.ontological and tier.profile is not None:
                bad(Issue("ERROR", locus, "profile on non-ontological tier"))
            if tier.profile is not None:
                if tier.profile in profile_owners:
                    bad(
                        Issue(
                            "ERROR",
                            locus,
                            f"profile {tier.profile!r} already bound to "
                            f"{profile_owners[tier.profile]!r}",
                        )
                    )
                else:
                    profile_owners[tier.profile] = tier.id

        for tier in self.tiers.values():
            seen = {tier.id}
            cursor = tier.parent
            while cursor is not None and cursor in self.tiers:
                if cursor in seen:
                    bad(Issue("ERROR", f"tier:{tier.id}", "tier parent cycle"))
                    break
                seen.add(cursor)
                cursor = self.tiers[cursor].parent

        for ann in self.annotations.values():
            locus = f"annotation:{ann.id}"
            if ann.tier not in self.tiers:
                bad(Issue("ERROR", locus, f"unknown tier {ann.tier!r}"))
                continue
            tier = self.tiers[ann.tier]
            if tier.linguistic_type not in self.linguistic_types:
                continue
            ltype = self._tier_type(tier)
            if isinstance(ann, AlignableAnnotation):
                if not ltype.time_alignable:
                    bad(Issue("ERROR", locus, "alignable annotation on symbolic tier"))
                missing = [s for s in (ann.begin, ann.end) if s not in positions]
                if missing:
                    bad(Issue("ERROR", locus, f"unknown slots {missing}"))
                elif positions[ann.begin] >= positions[ann.end]:
                    bad(Issue("ERROR", locus, "begin not before end"))
            else:
                if ltype.stereotype not in _SYMBOLIC:
                    bad(Issue("ERROR", locus, "referring annotation on alignable tier"))
                if tier.parent is None:
                    bad(Issue("ERROR", locus, "referring annotation on a root tier"))
                if ann.ref not in self.annotations:
                    bad(Issue("ERROR", locus, f"dangling reference {ann.ref!r}"))
                else:
                    referent = self.annotations[ann.ref]
                    if tier.parent is not None and referent.tier != tier.parent:
                        bad(Issue("ERROR", locus, "referent not on the parent tier"))
                    cursor, hops = ann, 0
                    while isinstance(cursor, ReferringAnnotation):
                        if cursor.ref not in self.annotations or hops > len(self.tiers):
                            bad(Issue("ERROR", locus, "chain does not reach an alignable annotation"))
                            break
                        cursor = self.annotations[cursor.ref]
                        hops += 1
            if isinstance(ann.value, OntologicalValue) != ltype.ontological:
                expected = "ontological" if ltype.ontological else "string"
                bad(Issue("ERROR", locus, f"value kind must be {expected}"))

        for tier in self.tiers.values():
            if tier.linguistic_type not in self.linguistic_types:
                continue
            ltype = self._tier_type(tier)
            if ltype.stereotype is Stereotype.SYMBOLIC_ASSOCIATION:
                fills: dict[str, str] = {}
                for ann in self.annotations.values():
                    if isinstance(ann, ReferringAnnotation) and ann.tier == tier.id:
                        if ann.ref in fills:
                            bad(
                                Issue(
                                    "ERROR",
                                    f"annotation:{ann.id}",
                                    f"association parent {ann.ref!r} already filled "
                                    f"by {fills[ann.ref]!r}",
                                )
                            )
                        else:
                            fills[ann.ref] = ann.id
            if ltype.stereotype is Stereotype.TIME_SUBDIVISION:
                members = [
                    a
                    for a in self.annotations.values()
                    if isinstance(a, AlignableAnnotation)
                    and a.tier == tier.id
                    and a.begin in positions
                    and a.end in positions
                ]
                by_parent: dict[str, list[AlignableAnnotation]] = {}
                for ann in members:
                    parent_id = self._subdivision_parent(ann)
                    if parent_id is None:
                        bad(
                            Issue(
                                "ERROR",
                                f"annotation:{ann.id}",
                                "subdivision outside any parent annotation",
                            )
                        )
                    else:
                        by_parent.setdefault(parent_id, []).append(ann)
                for group in by_parent.values():
                    group.sort(key=lambda a: positions[a.begin])
                    for left, right in zip(group, group[1:]):
                        if positions[right.begin] < positions[left.end]:
                            bad(
                                Issue(
                                    "ERROR",
                                    f"annotation:{right.id}",
                                    f"overlaps sibling {left.id!r}",
                                )
                            )

        issues.extend(self._validate_values(ontology, profiles))
        return issues

    def _validate_values(
        self,
        ontology: Ontology | None,
        profiles: Mapping[str, Profile] | None,
    ) -> list[Issue]:
        issues: list[Issue] = []
        for ann in self.annotations.values():
            value = ann.value
            if not isinstance(value, OntologicalValue):
                continue
            locus = f"annotation:{ann.id}"
            if not value.instances:
                issues.append(Issue("ERROR", locus, "ontological value with no instances"))
            tier = self.tiers.get(ann.tier)
            profile = None
            if profiles is not None and tier is not None and tier.profile is not None:
                profile = profiles.get(tier.profile)
            if profile is not None:
                if value.user_term not in profile.mappings:
                    issues.append(
                        Issue(
                            "ERROR",
                            locus,
                            f"user term {value.user_term!r} not in profile {tier.profile!r}",
                        )
                    )
                elif len(value.instances) != len(profile.lookup(value.user_term)):
                    issues.append(
                        Issue(
                            "ERROR",
                            locus,
                            "instance count differs from the user term's mapping",
                        )
                    )
                elif ontology is not None:
                    targets = profile.lookup(value.user_term)
                    for target, iri in zip(targets, value.instances):
                        try:
                            descriptor = resolve_term(ontology, target)
                        except (err.NotFound, err.Ambiguous):
                            issues.append(
                                Issue("ERROR", locus, f"target {target!r} unresolvable")
                            )
                            continue
                        if descriptor.kind is TermKind.INDIVIDUAL:
                            if iri != descriptor.iri:
                                issues.append(
                                    Issue(
                                        "ERROR",
                                        locus,
                                        f"instance {iri!r} should reference {descriptor.iri!r}",
                                    )
                                )
                        else:
                            minted = self.domain_instances.get(iri)
                            if minted is None:
                                issues.append(
                                    Issue(
                                        "ERROR", locus, f"minted instance {iri!r} missing"
                                    )
                                )
                            elif minted.class_iri != descriptor.iri:
                                issues.append(
                                    Issue(
                                        "ERROR",
                                        locus,
                                        f"instance {iri!r} typed {minted.class_iri!r}, "
                                        f"expected {descriptor.iri!r}",
                                    )
                                )
        return issues


def create_document(
    author: str = "",
    date: str = "",
    media_descriptors: Iterable[MediaDescriptor] = (),
    time_unit: str = "milliseconds",
) -> AnnotationDocument:
    return AnnotationDocument(
        author=author,
        date=date,
        time_unit=time_unit,
        media_descriptors=list(media_descriptors),
    )
