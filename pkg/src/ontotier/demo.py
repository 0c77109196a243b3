"""A small interlinear demo corpus: ontology, profile, six-tier document.

Used by the test suite as a golden fixture and by scripts/build_demo.py to
materialize an example corpus on disk. The ontology is a hand-written
GOLD-flavored fragment (classes with and without restrictions, multi-parent
classes, part-of-speech individuals); the document is a two-word interlinear
annotation with orthography, translation, word/parse subdivisions, glosses,
and an ontological part-of-speech tier.
"""

from __future__ import annotations

from .document import (
    AnnotationDocument,
    InstanceSpec,
    LinguisticType,
    MediaDescriptor,
    OntologicalRequest,
    Stereotype,
    create_document,
)
from .ontology import Ontology, load_ontology
from .profile import Profile, UserTerm, create_profile

GOLD_IRI = "http://www.u.arizona.edu/~farrar/gold.owl"
DEMO_BASE_IRI = "file:///C:/wabo4.eaf"
DEMO_PROFILE_REF = "C:\\wabo4.prf"

DEMO_ONTOLOGY_XML = f"""<?xml version="1.0" encoding="UTF-8"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns:gold="{GOLD_IRI}#"
         xml:base="{GOLD_IRI}">
  <owl:Ontology rdf:about=""/>
  <owl:Class rdf:ID="LinguisticExpression"/>
  <owl:Class rdf:ID="WrittenLinguisticExpression">
    <rdfs:subClassOf rdf:resource="#LinguisticExpression"/>
  </owl:Class>
  <owl:Class rdf:ID="Word">
    <rdfs:subClassOf rdf:resource="#LinguisticExpression"/>
  </owl:Class>
  <owl:Class rdf:ID="WordPart">
    <rdfs:subClassOf rdf:resource="#LinguisticExpression"/>
  </owl:Class>
  <owl:Class rdf:ID="Prefix">
    <rdfs:subClassOf rdf:resource="#WordPart"/>
  </owl:Class>
  <owl:Class rdf:ID="GrammaticalCategory"/>
  <owl:Class rdf:ID="SemanticFeature"/>
  <owl:Class rdf:ID="Noun">
    <rdfs:subClassOf rdf:resource="#GrammaticalCategory"/>
  </owl:Class>
  <owl:Class rdf:ID="Verb">
    <rdfs:subClassOf rdf:resource="#GrammaticalCategory"/>
  </owl:Class>
  <owl:Class rdf:ID="Inanimate">
    <rdfs:subClassOf rdf:resource="#GrammaticalCategory"/>
    <rdfs:subClassOf rdf:resource="#SemanticFeature"/>
  </owl:Class>
  <owl:Class rdf:ID="PartOfSpeech">
    <rdfs:subClassOf rdf:resource="#GrammaticalCategory"/>
  </owl:Class>
  <owl:Class rdf:ID="Tense">
    <rdfs:subClassOf rdf:resource="#GrammaticalCategory"/>
    <rdfs:subClassOf>
      <owl:Restriction>
        <owl:onProperty rdf:resource="#hasTenseValue"/>
        <owl:cardinality rdf:datatype="http://www.w3.org/2001/XMLSchema#int">1</owl:cardinality>
      </owl:Restriction>
    </rdfs:subClassOf>
  </owl:Class>
  <owl:ObjectProperty rdf:ID="hasTenseValue"/>
  <gold:PartOfSpeech rdf:ID="Preverb"/>
  <gold:PartOfSpeech rdf:ID="Participle"/>
</rdf:RDF>
"""


def demo_ontology() -> Ontology:
    return load_ontology(DEMO_ONTOLOGY_XML, source_iri=GOLD_IRI)


def demo_profile() -> Profile:
    profile = create_profile("Artem", "Potawatomi Language", "1.0", GOLD_IRI)
    profile.add_mapping(UserTerm("NI"), ["Noun", "Inanimate"])
    profile.add_mapping(UserTerm("PV"), ["Preverb"])
    profile.add_mapping(UserTerm("PC"), ["Participle"])
    return profile


def demo_document(
    profile: Profile | None = None, ontology: Ontology | None = None
) -> AnnotationDocument:
    """Two-word interlinear document over six tiers.

    Orthographic (root, whole clip) > Translation / Words > Parse > Gloss >
    Ontology; the Ontology tier is bound to the demo profile and holds the
    part-of-speech values PC and PV (annotation a42, referring to gloss a31).
    """
    profile = profile or demo_profile()
    ontology = ontology or demo_ontology()
    doc = create_document(
        author="Artem",
        date="2004-05-14",
        media_descriptors=[MediaDescriptor("file:///C:/wabo4.wav", "audio/x-wav", 0)],
    )
    doc.add_linguistic_type(LinguisticType("orthographic", Stereotype.NONE))
    doc.add_linguistic_type(LinguisticType("association", Stereotype.SYMBOLIC_ASSOCIATION))
    doc.add_linguistic_type(LinguisticType("subdivision", Stereotype.SYMBOLIC_SUBDIVISION))
    doc.add_linguistic_type(
        LinguisticType("ontology", Stereotype.SYMBOLIC_ASSOCIATION, ontological=True)
    )
    doc.add_tier("Orthographic", "orthographic")
    doc.add_tier("Translation", "association", parent="Orthographic")
    doc.add_tier("Words", "subdivision", parent="Orthographic")
    doc.add_tier("Parse", "subdivision", parent="Words")
    doc.add_tier("Gloss", "association", parent="Parse")
    doc.add_tier("Ontology", "ontology", parent="Gloss", profile=DEMO_PROFILE_REF)

    begin = doc.add_time_slot(0)
    end = doc.add_time_slot(2000)
    doc.add_alignable_annotation(
        "Orthographic", begin, end, "neko wabozo", annotation_id="a1"
    )
    doc.add_referring_annotation(
        "Translation", "a1", "he used to be a rabbit", annotation_id="a2"
    )
    doc.add_referring_annotation("Words", "a1", "neko", annotation_id="a10")
    doc.add_referring_annotation("Words", "a1", "wabozo", annotation_id="a11")
    doc.add_referring_annotation("Parse", "a10", "neko", annotation_id="a20")
    doc.add_referring_annotation("Parse", "a11", "wabozo", annotation_id="a21")
    doc.add_referring_annotation("Gloss", "a20", "used to", annotation_id="a30")
    doc.add_referring_annotation("Gloss", "a21", "rabbit", annotation_id="a31")
    doc.add_referring_annotation(
        "Ontology",
        "a30",
        OntologicalRequest("PC", ont_annotation_id="d"),
        annotation_id="a41",
        profile=profile,
        ontology=ontology,
    )
    doc.add_referring_annotation(
        "Ontology",
        "a31",
        OntologicalRequest("PV", ont_annotation_id="e"),
        annotation_id="a42",
        profile=profile,
        ontology=ontology,
    )
    return doc


def demo_instance_specs() -> dict[str, InstanceSpec]:
    """Instance names for annotating with the class-valued user term NI."""
    return {"Noun": InstanceSpec("n1"), "Inanimate": InstanceSpec("i1")}
