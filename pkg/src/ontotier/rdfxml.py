"""RDF/XML persistence for annotation documents.

Documents are stored as instances of the multimedia annotation vocabulary
(prefix ``media``): one ``media:AnnotationDocument`` node, ``media:TimeSlot``
nodes in time order, ``media:Tier`` nodes carrying their linguistic type and
annotations, plus typed instance nodes for ontology instances minted while
annotating. Intra-document links use ``rdf:ID`` / ``rdf:resource`` pairs
against the document's base IRI.

Byte-identical output is not a contract; RDF-graph equality is. Referring
annotations never store interval data — alignment stays derived.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from . import errors as err
from .document import (
    AlignableAnnotation,
    Annotation,
    AnnotationDocument,
    DomainInstance,
    ForeignProperty,
    LinguisticType,
    MediaDescriptor,
    OntologicalValue,
    ReferringAnnotation,
    Stereotype,
    StringValue,
    TimeSlot,
    Tier,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
MEDIA_NS = "http://www.cs.wayne.edu/~yudeng/project/elan3/multimedia.owl#"

_RDF_RDF = f"{{{RDF_NS}}}RDF"
_RDF_ID = f"{{{RDF_NS}}}ID"
_RDF_ABOUT = f"{{{RDF_NS}}}about"
_RDF_RESOURCE = f"{{{RDF_NS}}}resource"
_RDF_TYPE = f"{{{RDF_NS}}}type"
_RDF_DESCRIPTION = f"{{{RDF_NS}}}Description"
_XML_BASE = "{http://www.w3.org/XML/1998/namespace}base"

_DOC_NODE_ID = "document"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_bool(text: str | None, what: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise err.MalformedXml(f"{what}: expected true/false, got {text!r}")


def _split_iri(iri: str) -> tuple[str, str]:
    if "#" in iri:
        ns, local = iri.rsplit("#", 1)
        return ns + "#", local
    ns, local = iri.rsplit("/", 1)
    return ns + "/", local


class _Writer:
    def __init__(self, doc: AnnotationDocument, base_iri: str, media_ns: str):
        self.doc = doc
        self.base = base_iri.rstrip("#")
        self.ns = media_ns
        self.emitted_types: set[str] = set()

    def tag(self, name: str) -> str:
        return f"{{{self.ns}}}{name}"

    def absolute(self, fragment: str) -> str:
        return f"{self.base}#{fragment}"

    def prop(self, parent: ET.Element, name: str, text: str = "") -> ET.Element:
        el = ET.SubElement(parent, self.tag(name))
        el.text = text
        return el

    def ref(self, parent: ET.Element, name: str, target: str) -> ET.Element:
        el = ET.SubElement(parent, self.tag(name))
        el.set(_RDF_RESOURCE, target)
        return el

    def extras(self, parent: ET.Element, node_id: str) -> None:
        for foreign in self.doc.extra_properties.get(node_id, ()):
            el = ET.SubElement(parent, foreign.tag)
            if foreign.resource is not None:
                el.set(_RDF_RESOURCE, foreign.resource)
            if foreign.text is not None:
                el.text = foreign.text

    def write(self) -> ET.Element:
        root = ET.Element(_RDF_RDF)
        if self.base:
            root.set(_XML_BASE, self.base)
        self.write_document_node(root)
        stereotypes = {
            lt.stereotype for lt in self.doc.linguistic_types.values()
        } - {Stereotype.NONE}
        for stereotype in sorted(stereotypes, key=lambda s: s.value):
            ET.SubElement(root, self.tag("Constraint")).set(_RDF_ID, stereotype.value)
        for slot in self.doc.time_order:
            self.write_slot(root, slot)
        for tier in self.doc.tiers.values():
            self.write_tier(root, tier)
        for type_id, ltype in self.doc.linguistic_types.items():
            if type_id not in self.emitted_types:
                node = ET.SubElement(root, self.tag("LinguisticType"))
                node.set(_RDF_ID, type_id)
                self.fill_type(node, ltype)
        for instance in self.doc.domain_instances.values():
            self.write_instance(root, instance)
        for raw in self.doc.extra_nodes:
            root.append(ET.fromstring(raw))
        return root

    def write_document_node(self, root: ET.Element) -> None:
        node = ET.SubElement(root, self.tag("AnnotationDocument"))
        node.set(_RDF_ID, _DOC_NODE_ID)
        self.prop(node, "hasAuthor", self.doc.author)
        self.prop(node, "hasDate", self.doc.date)
        self.prop(node, "hasTimeUnit", self.doc.time_unit)
        for i, media in enumerate(self.doc.media_descriptors):
            holder = ET.SubElement(node, self.tag("hasMediaDescriptor"))
            descriptor = ET.SubElement(holder, self.tag("MediaDescriptor"))
            descriptor.set(_RDF_ID, f"md{i}")
            self.prop(descriptor, "hasMediaURL", media.media_url)
            self.prop(descriptor, "hasMimeType", media.mime_type)
            if media.time_origin is not None:
                self.prop(descriptor, "hasTimeOrigin", str(media.time_origin))
            self.extras(descriptor, f"md{i}")
        self.extras(node, _DOC_NODE_ID)

    def write_slot(self, root: ET.Element, slot: TimeSlot) -> None:
        node = ET.SubElement(root, self.tag("TimeSlot"))
        node.set(_RDF_ID, slot.id)
        self.prop(node, "hasTimeSlotID", slot.id)
        if slot.time is not None:
            self.prop(node, "hasTimeValue", str(slot.time))
        self.extras(node, slot.id)

    def fill_type(self, node: ET.Element, ltype: LinguisticType) -> None:
        self.prop(node, "hasTimeAlignable", _bool(bool(ltype.time_alignable)))
        self.prop(node, "hasLinguisticTypeID", ltype.id)
        if ltype.stereotype is not Stereotype.NONE:
            self.ref(node, "hasConstraint", self.absolute(ltype.stereotype.value))
        self.prop(node, "hasGraphicRef", _bool(ltype.graphic_ref))
        self.prop(node, "hasOntological", _bool(ltype.ontological))
        self.extras(node, ltype.id)

    def write_tier(self, root: ET.Element, tier: Tier) -> None:
        node = ET.SubElement(root, self.tag("Tier"))
        node.set(_RDF_ID, tier.id)
        self.prop(node, "hasTierID", tier.id)
        if tier.parent is not None:
            self.ref(node, "hasParent", self.absolute(tier.parent))
        if tier.profile is not None:
            self.prop(node, "hasProfile", tier.profile)
        holder = ET.SubElement(node, self.tag("hasLinguisticType"))
        if tier.linguistic_type in self.emitted_types:
            holder.set(_RDF_RESOURCE, self.absolute(tier.linguistic_type))
        else:
            type_node = ET.SubElement(holder, self.tag("LinguisticType"))
            type_node.set(_RDF_ID, tier.linguistic_type)
            self.fill_type(type_node, self.doc.linguistic_types[tier.linguistic_type])
            self.emitted_types.add(tier.linguistic_type)
        for annotation in self.doc.annotations.values():
            if annotation.tier == tier.id:
                self.write_annotation(node, annotation)
        self.extras(node, tier.id)

    def write_annotation(self, tier_node: ET.Element, annotation: Annotation) -> None:
        holder = ET.SubElement(tier_node, self.tag("hasAnnotation"))
        if isinstance(annotation, AlignableAnnotation):
            node = ET.SubElement(holder, self.tag("AlignableAnnotation"))
            node.set(_RDF_ID, annotation.id)
            self.prop(node, "hasAnnotationID", annotation.id)
            self.ref(node, "hasBeginTimeSlot", self.absolute(annotation.begin))
            self.ref(node, "hasEndTimeSlot", self.absolute(annotation.end))
        else:
            assert isinstance(annotation, ReferringAnnotation)
            node = ET.SubElement(holder, self.tag("RefAnnotation"))
            node.set(_RDF_ID, annotation.id)
            self.prop(node, "hasAnnotationID", annotation.id)
            self.ref(node, "hasAnnotationRef", self.absolute(annotation.ref))
            self.prop(node, "hasOrdinal", str(annotation.ordinal))
        value_holder = ET.SubElement(node, self.tag("hasAnnotationValue"))
        value_id = f"{annotation.id}Value"
        value = annotation.value
        if isinstance(value, OntologicalValue):
            value_node = ET.SubElement(value_holder, self.tag("OntologyAnnotation"))
            value_node.set(_RDF_ID, value_id)
            self.prop(value_node, "hasUserDefinedTerm", value.user_term)
            for instance in value.instances:
                self.ref(value_node, "hasInstances", instance)
            self.prop(value_node, "hasOntAnnotationDescription", value.description)
            self.prop(value_node, "hasOntAnnotationId", value.ont_annotation_id)
        else:
            value_node = ET.SubElement(value_holder, self.tag("StringAnnotation"))
            value_node.set(_RDF_ID, value_id)
            self.prop(value_node, "hasStringValue", value.text)
        self.extras(value_node, value_id)
        self.extras(node, annotation.id)

    def write_instance(self, root: ET.Element, instance: DomainInstance) -> None:
        node = ET.SubElement(root, _RDF_DESCRIPTION)
        node.set(_RDF_ABOUT, instance.iri)
        ET.SubElement(node, _RDF_TYPE).set(_RDF_RESOURCE, instance.class_iri)
        for prop_iri, literal in instance.fills:
            ns, local = _split_iri(prop_iri)
            fill = ET.SubElement(node, f"{{{ns}}}{local}")
            fill.text = literal


def serialize_document(
    doc: AnnotationDocument, base_iri: str, media_ns: str = MEDIA_NS
) -> bytes:
    """Emit the document as RDF/XML; raises InvalidDocument when it fails validation."""
    issues = doc.validate()
    if issues:
        raise err.InvalidDocument("; ".join(str(i) for i in issues[:5]))
    ET.register_namespace("rdf", RDF_NS)
    ET.register_namespace("media", media_ns)
    root = _Writer(doc, base_iri, media_ns).write()
    tree = ET.ElementTree(root)
    ET.indent(tree)
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True)


class _Reader:
    def __init__(self, root: ET.Element):
        self.root = root
        self.base = (root.get(_XML_BASE) or "").rstrip("#")
        self.ns = self._detect_media_ns()
        self.ids: set[str] = set()
        self.doc = AnnotationDocument()
        self.pending_refs: list[tuple[str, str, str]] = []  # (fragment, space, locus)
        self.tier_type_refs: list[tuple[str, str]] = []  # (tier id, type fragment)

    def _detect_media_ns(self) -> str:
        for el in self.root:
            if el.tag.endswith("}AnnotationDocument"):
                return el.tag[1:].rsplit("}", 1)[0]
        raise err.MalformedXml("no AnnotationDocument node found")

    def tag(self, name: str) -> str:
        return f"{{{self.ns}}}{name}"

    def local(self, tag: str) -> str | None:
        prefix = f"{{{self.ns}}}"
        if tag.startswith(prefix):
            return tag[len(prefix):]
        return None

    def register_id(self, el: ET.Element, what: str) -> str:
        ident = el.get(_RDF_ID)
        if ident is None:
            raise err.MalformedXml(f"{what} node without rdf:ID")
        if ident in self.ids:
            raise err.MalformedXml(f"duplicate rdf:ID {ident!r}")
        self.ids.add(ident)
        return ident

    def fragment(self, ref: str) -> tuple[bool, str]:
        """(is intra-document, fragment or full IRI)."""
        if ref.startswith("#"):
            return True, ref[1:]
        if self.base and ref.startswith(self.base + "#"):
            return True, ref[len(self.base) + 1:]
        return False, ref

    def require_fragment(self, ref: str, locus: str) -> str:
        intra, value = self.fragment(ref)
        if not intra:
            raise err.DanglingReference(f"{locus}: {ref!r} does not reference this document")
        return value

    def foreign(self, el: ET.Element) -> ForeignProperty:
        return ForeignProperty(
            tag=el.tag,
            text=el.text if el.text is not None else None,
            resource=el.get(_RDF_RESOURCE),
        )

    def read(self) -> AnnotationDocument:
        instances: list[ET.Element] = []
        for el in self.root:
            name = self.local(el.tag)
            if name == "AnnotationDocument":
                self.read_document_node(el)
            elif name == "TimeSlot":
                self.read_slot(el)
            elif name == "Constraint":
                self.register_id(el, "Constraint")
            elif name == "Tier":
                self.read_tier(el)
            elif name == "LinguisticType":
                type_id = self.register_id(el, "LinguisticType")
                self.add_type(type_id, self.read_type_fields(el, type_id))
            elif el.tag == _RDF_DESCRIPTION and el.find(_RDF_TYPE) is not None:
                instances.append(el)
            else:
                self.doc.extra_nodes.append(
                    ET.tostring(el, encoding="unicode").strip()
                )
        for el in instances:
            self.read_instance(el)
        self.resolve_tier_types()
        self.check_references()
        self.recount()
        return self.doc

    def read_document_node(self, el: ET.Element) -> None:
        self.register_id(el, "AnnotationDocument")
        extras: list[ForeignProperty] = []
        for prop in el:
            name = self.local(prop.tag)
            text = prop.text or ""
            if name == "hasAuthor":
                self.doc.author = text
            elif name == "hasDate":
                self.doc.date = text
            elif name == "hasTimeUnit":
                self.doc.time_unit = text
            elif name == "hasMediaDescriptor":
                self.read_media(prop)
            else:
                extras.append(self.foreign(prop))
        if extras:
            self.doc.extra_properties[_DOC_NODE_ID] = tuple(extras)

    def read_media(self, holder: ET.Element) -> None:
        for node in holder:
            if self.local(node.tag) != "MediaDescriptor":
                raise err.MalformedXml(f"unexpected {node.tag} in hasMediaDescriptor")
            ident = self.register_id(node, "MediaDescriptor")
            url, mime, origin = "", "", None
            extras: list[ForeignProperty] = []
            for prop in node:
                name = self.local(prop.tag)
                if name == "hasMediaURL":
                    url = prop.text or ""
                elif name == "hasMimeType":
                    mime = prop.text or ""
                elif name == "hasTimeOrigin":
                    origin = int(prop.text or "0")
                else:
                    extras.append(self.foreign(prop))
            self.doc.media_descriptors.append(MediaDescriptor(url, mime, origin))
            if extras:
                self.doc.extra_properties[ident] = tuple(extras)

    def read_slot(self, el: ET.Element) -> None:
        slot_id = self.register_id(el, "TimeSlot")
        time = None
        extras: list[ForeignProperty] = []
        for prop in el:
            name = self.local(prop.tag)
            if name == "hasTimeValue":
                time = int(prop.text or "0")
            elif name == "hasTimeSlotID":
                pass  # redundant copy of rdf:ID
            else:
                extras.append(self.foreign(prop))
        self.doc.time_order.append(TimeSlot(slot_id, time))
        if extras:
            self.doc.extra_properties[slot_id] = tuple(extras)

    def read_type_fields(self, el: ET.Element, type_id: str) -> LinguisticType:
        alignable: bool | None = None
        stereotype = Stereotype.NONE
        graphic = False
        ontological = False
        extras: list[ForeignProperty] = []
        for prop in el:
            name = self.local(prop.tag)
            if name == "hasTimeAlignable":
                alignable = _parse_bool(prop.text, f"type {type_id!r} hasTimeAlignable")
            elif name == "hasLinguisticTypeID":
                pass  # redundant copy of rdf:ID
            elif name == "hasConstraint":
                ref = prop.get(_RDF_RESOURCE, "")
                _, fragment = self.fragment(ref)
                try:
                    stereotype = Stereotype(fragment)
                except ValueError:
                    raise err.ConstraintMismatch(
                        f"type {type_id!r}: unknown constraint {fragment!r}"
                    ) from None
            elif name == "hasGraphicRef":
                graphic = _parse_bool(prop.text, f"type {type_id!r} hasGraphicRef")
            elif name == "hasOntological":
                ontological = _parse_bool(prop.text, f"type {type_id!r} hasOntological")
            else:
                extras.append(self.foreign(prop))
        ltype = LinguisticType(  # ConstraintMismatch on invariant violations
            id=type_id,
            stereotype=stereotype,
            ontological=ontological,
            time_alignable=alignable,
            graphic_ref=graphic,
        )
        if extras:
            self.doc.extra_properties[type_id] = tuple(extras)
        return ltype

    def add_type(self, type_id: str, ltype: LinguisticType) -> None:
        existing = self.doc.linguistic_types.get(type_id)
        if existing is not None and existing != ltype:
            raise err.ConstraintMismatch(f"conflicting definitions for type {type_id!r}")
        self.doc.linguistic_types[type_id] = ltype

    def read_tier(self, el: ET.Element) -> None:
        tier_id = self.register_id(el, "Tier")
        parent = profile = None
        type_fragment: str | None = None
        annotations: list[ET.Element] = []
        extras: list[ForeignProperty] = []
        for prop in el:
            name = self.local(prop.tag)
            if name == "hasTierID":
                pass
            elif name == "hasParent":
                parent = self.require_fragment(
                    prop.get(_RDF_RESOURCE, ""), f"tier {tier_id!r} hasParent"
                )
            elif name == "hasProfile":
                profile = prop.text or ""
            elif name == "hasLinguisticType":
                resource = prop.get(_RDF_RESOURCE)
                if resource is not None:
                    type_fragment = self.require_fragment(
                        resource, f"tier {tier_id!r} hasLinguisticType"
                    )
                else:
                    for node in prop:
                        if self.local(node.tag) != "LinguisticType":
                            raise err.MalformedXml(
                                f"unexpected {node.tag} in hasLinguisticType"
                            )
                        type_fragment = self.register_id(node, "LinguisticType")
                        self.add_type(
                            type_fragment, self.read_type_fields(node, type_fragment)
                        )
            elif name == "hasAnnotation":
                annotations.extend(annotation for annotation in prop)
            else:
                extras.append(self.foreign(prop))
        if type_fragment is None:
            raise err.MalformedXml(f"tier {tier_id!r} has no linguistic type")
        self.doc.tiers[tier_id] = Tier(tier_id, type_fragment, parent, profile)
        self.tier_type_refs.append((tier_id, type_fragment))
        if parent is not None:
            self.pending_refs.append((parent, "tier", f"tier {tier_id!r} hasParent"))
        for node in annotations:
            self.read_annotation(node, tier_id)
        if extras:
            self.doc.extra_properties[tier_id] = tuple(extras)

    def read_annotation(self, el: ET.Element, tier_id: str) -> None:
        kind = self.local(el.tag)
        if kind not in ("AlignableAnnotation", "RefAnnotation"):
            raise err.MalformedXml(f"unexpected annotation node {el.tag}")
        ann_id = self.register_id(el, kind)
        begin = end = ref = None
        ordinal = 0
        value = None
        extras: list[ForeignProperty] = []
        for prop in el:
            name = self.local(prop.tag)
            if name == "hasAnnotationID":
                pass
            elif name == "hasBeginTimeSlot":
                begin = self.require_fragment(
                    prop.get(_RDF_RESOURCE, ""), f"annotation {ann_id!r} begin"
                )
            elif name == "hasEndTimeSlot":
                end = self.require_fragment(
                    prop.get(_RDF_RESOURCE, ""), f"annotation {ann_id!r} end"
                )
            elif name == "hasAnnotationRef":
                ref = self.require_fragment(
                    prop.get(_RDF_RESOURCE, ""), f"annotation {ann_id!r} ref"
                )
            elif name == "hasOrdinal":
                ordinal = int(prop.text or "0")
            elif name == "hasAnnotationValue":
                value = self.read_value(prop, ann_id)
            else:
                extras.append(self.foreign(prop))
        if value is None:
            value = StringValue("")
        if kind == "AlignableAnnotation":
            if begin is None or end is None:
                raise err.MalformedXml(f"annotation {ann_id!r} misses begin/end slots")
            self.doc.annotations[ann_id] = AlignableAnnotation(
                id=ann_id, tier=tier_id, value=value, begin=begin, end=end
            )
            self.pending_refs.append((begin, "slot", f"annotation {ann_id!r} begin"))
            self.pending_refs.append((end, "slot", f"annotation {ann_id!r} end"))
        else:
            if ref is None:
                raise err.MalformedXml(f"annotation {ann_id!r} misses hasAnnotationRef")
            self.doc.annotations[ann_id] = ReferringAnnotation(
                id=ann_id, tier=tier_id, value=value, ref=ref, ordinal=ordinal
            )
            self.pending_refs.append((ref, "annotation", f"annotation {ann_id!r} ref"))
        if extras:
            self.doc.extra_properties[ann_id] = tuple(extras)

    def read_value(self, holder: ET.Element, ann_id: str):
        for node in holder:
            name = self.local(node.tag)
            value_id = self.register_id(node, name or node.tag)
            extras: list[ForeignProperty] = []
            if name == "StringAnnotation":
                text = ""
                for prop in node:
                    if self.local(prop.tag) == "hasStringValue":
                        text = prop.text or ""
                    else:
                        extras.append(self.foreign(prop))
                if extras:
                    self.doc.extra_properties[value_id] = tuple(extras)
                return StringValue(text)
            if name == "OntologyAnnotation":
                user_term = ont_id = ""
                description = ""
                instances: list[str] = []
                for prop in node:
                    pname = self.local(prop.tag)
                    if pname == "hasUserDefinedTerm":
                        user_term = prop.text or ""
                    elif pname == "hasInstances":
                        instances.append(prop.get(_RDF_RESOURCE, ""))
                    elif pname == "hasOntAnnotationDescription":
                        description = prop.text or ""
                    elif pname == "hasOntAnnotationId":
                        ont_id = prop.text or ""
                    else:
                        extras.append(self.foreign(prop))
                if extras:
                    self.doc.extra_properties[value_id] = tuple(extras)
                return OntologicalValue(
                    ont_annotation_id=ont_id,
                    user_term=user_term,
                    instances=tuple(instances),
                    description=description,
                )
            raise err.MalformedXml(f"unexpected value node {node.tag} in {ann_id!r}")
        return None

    def read_instance(self, el: ET.Element) -> None:
        iri = el.get(_RDF_ABOUT)
        if iri is None:
            ident = el.get(_RDF_ID)
            if ident is None:
                raise err.MalformedXml("instance node without rdf:about")
            iri = f"{self.base}#{ident}"
        class_iri = ""
        fills: list[tuple[str, str]] = []
        for prop in el:
            if prop.tag == _RDF_TYPE:
                class_iri = prop.get(_RDF_RESOURCE, "")
            else:
                ns, local = prop.tag[1:].split("}", 1)
                fills.append((ns + local, prop.text or ""))
        self.doc.domain_instances[iri] = DomainInstance(iri, class_iri, tuple(fills))

    def resolve_tier_types(self) -> None:
        for tier_id, fragment in self.tier_type_refs:
            if fragment not in self.doc.linguistic_types:
                raise err.DanglingReference(
                    f"tier {tier_id!r}: linguistic type #{fragment} not defined"
                )

    def check_references(self) -> None:
        slots = {slot.id for slot in self.doc.time_order}
        spaces = {
            "tier": set(self.doc.tiers),
            "slot": slots,
            "annotation": set(self.doc.annotations),
        }
        for fragment, space, locus in self.pending_refs:
            if fragment not in spaces[space]:
                raise err.DanglingReference(f"{locus}: #{fragment} has no matching rdf:ID")

    def recount(self) -> None:
        self.doc._next_ann = 1
        self.doc._next_slot = 1
        for ann_id in self.doc.annotations:
            self.doc._note_annotation_id(ann_id)
        for slot in self.doc.time_order:
            match = slot.id.startswith("ts") and slot.id[2:].isdigit()
            if match:
                self.doc._next_slot = max(self.doc._next_slot, int(slot.id[2:]) + 1)


def parse_document(data: bytes | str) -> AnnotationDocument:
    """Rebuild a document from RDF/XML; inverse of serialize_document."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise err.MalformedXml(f"unparseable RDF/XML: {exc}") from exc
    if root.tag != _RDF_RDF:
        raise err.MalformedXml(f"expected rdf:RDF root, found {root.tag}")
    return _Reader(root).read()
