import copy
import random

import pytest

import ontotier.errors as err
from ontotier.demo import DEMO_PROFILE_REF, GOLD_IRI, demo_instance_specs
from ontotier.document import (
    AlignableAnnotation,
    InstanceSpec,
    LinguisticType,
    OntologicalRequest,
    ReferringAnnotation,
    Stereotype,
    StringValue,
    OntologicalValue,
    create_document,
)

from oracles import subdivision_acceptance


def base_doc():
    doc = create_document(author="Artem")
    doc.add_linguistic_type(LinguisticType("utterance", Stereotype.NONE))
    doc.add_linguistic_type(LinguisticType("timesub", Stereotype.TIME_SUBDIVISION))
    doc.add_linguistic_type(LinguisticType("symsub", Stereotype.SYMBOLIC_SUBDIVISION))
    doc.add_linguistic_type(LinguisticType("symassoc", Stereotype.SYMBOLIC_ASSOCIATION))
    doc.add_linguistic_type(
        LinguisticType("ontology", Stereotype.SYMBOLIC_ASSOCIATION, ontological=True)
    )
    return doc


# --- linguistic types ---------------------------------------------------------


def test_type_invariants():
    with pytest.raises(err.ConstraintMismatch):
        LinguisticType("bad", Stereotype.NONE, ontological=True)
    with pytest.raises(err.ConstraintMismatch):
        LinguisticType("bad", Stereotype.NONE, time_alignable=False)
    with pytest.raises(err.ConstraintMismatch):
        LinguisticType("bad", Stereotype.SYMBOLIC_ASSOCIATION, time_alignable=True)
    assert LinguisticType("ok", Stereotype.TIME_SUBDIVISION).time_alignable
    assert not LinguisticType("ok", Stereotype.SYMBOLIC_SUBDIVISION).time_alignable


# --- tier hierarchy ------------------------------------------------------------


def test_six_tier_build_accepted(doc):
    assert list(doc.tiers) == [
        "Orthographic",
        "Translation",
        "Words",
        "Parse",
        "Gloss",
        "Ontology",
    ]
    assert doc.tiers["Ontology"].profile == DEMO_PROFILE_REF
    assert doc.validate() == []


def test_rootless_symbolic_tier_rejected():
    doc = base_doc()
    with pytest.raises(err.RootMustBeAlignable):
        doc.add_tier("Translation", "symassoc")
    assert "Translation" not in doc.tiers


def test_rootless_time_subdivision_rejected():
    doc = base_doc()
    with pytest.raises(err.ParentRequired):
        doc.add_tier("Sub", "timesub")


def test_parent_on_alignable_tier_rejected():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    with pytest.raises(err.ParentForbidden):
        doc.add_tier("Root2", "utterance", parent="Root")


def test_duplicate_tier_and_unknown_refs():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    with pytest.raises(err.DuplicateTier):
        doc.add_tier("Root", "utterance")
    with pytest.raises(err.UnknownLinguisticType):
        doc.add_tier("X", "nope")
    with pytest.raises(err.UnknownParent):
        doc.add_tier("X", "symassoc", parent="nope")


def test_profile_binding_rules():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    with pytest.raises(err.ProfileRequired):
        doc.add_tier("Ont", "ontology", parent="Root")
    with pytest.raises(err.ProfileForbidden):
        doc.add_tier("T", "symassoc", parent="Root", profile="p.prf")
    doc.add_tier("Ont", "ontology", parent="Root", profile="p.prf")
    with pytest.raises(err.ProfileAlreadyBound):
        doc.add_tier("Ont2", "ontology", parent="Root", profile="p.prf")


def test_delete_tier_cascades_fig5_hierarchy(doc):
    deleted = doc.delete_tier("Words")
    assert set(deleted) == {"Words", "Parse", "Gloss", "Ontology"}
    assert set(doc.tiers) == {"Orthographic", "Translation"}
    assert {a.tier for a in doc.annotations.values()} == {"Orthographic", "Translation"}
    assert doc.validate() == []


def test_delete_leaf_tier(doc):
    assert doc.delete_tier("Ontology") == ["Ontology"]
    assert "Gloss" in doc.tiers
    assert doc.domain_instances == {}  # swept with the values that held them


def test_delete_tier_unknown(doc):
    with pytest.raises(err.UnknownTier):
        doc.delete_tier("nope")


# --- time slots ------------------------------------------------------------------


def test_slot_ordering_simple():
    doc = base_doc()
    first = doc.add_time_slot(0)
    second = doc.add_time_slot(2000)
    assert [s.id for s in doc.time_order] == [first, second]


def test_untimed_slot_keeps_insertion_position():
    doc = base_doc()
    a = doc.add_time_slot(0)
    u = doc.add_time_slot()
    b = doc.add_time_slot(2000)
    assert [s.id for s in doc.time_order] == [a, u, b]
    mid = doc.add_time_slot(1000)
    assert [s.id for s in doc.time_order] == [a, u, mid, b]


def test_negative_time_rejected():
    doc = base_doc()
    with pytest.raises(err.NegativeTime):
        doc.add_time_slot(-1)


def test_random_insertions_keep_timed_subsequence_sorted():
    rng = random.Random(3)
    doc = base_doc()
    for _ in range(100):
        doc.add_time_slot(rng.randrange(10 ** 4) if rng.random() < 0.8 else None)
    times = [s.time for s in doc.time_order if s.time is not None]
    assert times == sorted(times)


# --- alignable annotations ----------------------------------------------------------


def test_root_annotation_spans_whole_clip(doc):
    assert doc.resolve_alignment("a1") == (0, 2000)
    assert isinstance(doc.annotations["a1"], AlignableAnnotation)


def test_alignable_on_symbolic_tier_rejected(doc):
    with pytest.raises(err.NotAlignableTier):
        doc.add_alignable_annotation("Words", "ts1", "ts2", "x")


def test_inverted_interval_rejected():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    a = doc.add_time_slot(0)
    b = doc.add_time_slot(10)
    with pytest.raises(err.InvertedInterval):
        doc.add_alignable_annotation("Root", b, a, "x")
    with pytest.raises(err.UnknownSlot):
        doc.add_alignable_annotation("Root", a, "nope", "x")


def subdivision_doc():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    doc.add_tier("Sub", "timesub", parent="Root")
    begin = doc.add_time_slot(0)
    end = doc.add_time_slot(1000)
    parent = doc.add_alignable_annotation("Root", begin, end, "parent")
    return doc, begin, end, parent


def test_subdivision_must_stay_inside_parent():
    doc, begin, end, _ = subdivision_doc()
    outside = doc.add_time_slot(2000)
    with pytest.raises(err.OutsideParentSlot):
        doc.add_alignable_annotation("Sub", begin, outside, "child")
    cut = doc.add_time_slot(400)
    doc.add_alignable_annotation("Sub", begin, cut, "left")
    doc.add_alignable_annotation("Sub", cut, end, "right")
    assert doc.validate() == []


def test_subdivision_overlap_rejected():
    doc, begin, end, _ = subdivision_doc()
    c1 = doc.add_time_slot(400)
    c2 = doc.add_time_slot(600)
    doc.add_alignable_annotation("Sub", begin, c2, "wide")
    with pytest.raises(err.OverlapsSibling):
        doc.add_alignable_annotation("Sub", c1, end, "clash")


def test_subdivision_acceptance_matches_containment_oracle():
    rng = random.Random(17)
    for _ in range(150):
        doc = base_doc()
        doc.add_tier("Root", "utterance")
        doc.add_tier("Sub", "timesub", parent="Root")
        # two disjoint parent intervals
        parents = [(0, 400), (500, 900)]
        slots = {}
        for pb, pe in parents:
            slots[pb] = doc.add_time_slot(pb)
            slots[pe] = doc.add_time_slot(pe)
            doc.add_alignable_annotation("Root", slots[pb], slots[pe], "p")
        sibling_intervals: dict[int, list[tuple[int, int]]] = {}
        for _ in range(rng.randint(1, 5)):
            begin_ms = rng.randrange(0, 950, 10)
            end_ms = begin_ms + rng.choice([10, 50, 200, 600])
            expected = subdivision_acceptance(parents, sibling_intervals, begin_ms, end_ms)
            for t in (begin_ms, end_ms):
                if t not in slots:
                    slots[t] = doc.add_time_slot(t)
            try:
                doc.add_alignable_annotation("Sub", slots[begin_ms], slots[end_ms], "c")
                accepted = True
            except (err.OutsideParentSlot, err.OverlapsSibling, err.InvertedInterval):
                accepted = False
            assert accepted == expected, (begin_ms, end_ms, sibling_intervals)
            if accepted:
                for index, (pb, pe) in enumerate(parents):
                    if pb <= begin_ms and end_ms <= pe:
                        sibling_intervals.setdefault(index, []).append((begin_ms, end_ms))
                        break


# --- referring annotations ------------------------------------------------------------


def test_referring_words_chain(doc):
    neko = doc.annotations["a10"]
    assert isinstance(neko, ReferringAnnotation)
    assert neko.ref == "a1"
    assert doc.annotations["a30"].value == StringValue("used to")
    assert doc.annotations["a41"].value.user_term == "PC"


def test_referring_on_alignable_tier_rejected(doc):
    with pytest.raises(err.NotReferringTier):
        doc.add_referring_annotation("Orthographic", "a1", "x")


def test_association_already_filled(doc):
    with pytest.raises(err.AssociationAlreadyFilled):
        doc.add_referring_annotation("Translation", "a1", "second translation")


def test_parent_on_wrong_tier(doc):
    with pytest.raises(err.ParentOnWrongTier):
        doc.add_referring_annotation("Gloss", "a10", "gloss of a word")
    with pytest.raises(err.UnknownParentAnnotation):
        doc.add_referring_annotation("Words", "zz", "x")


def test_subdivision_ordinals_append_and_insert(doc):
    third = doc.add_referring_annotation("Words", "a1", "third")
    assert doc.annotations[third].ordinal == 2
    inserted = doc.add_referring_annotation("Words", "a1", "first", ordinal=0)
    assert doc.annotations[inserted].ordinal == 0
    assert doc.annotations["a10"].ordinal == 1
    assert doc.annotations["a11"].ordinal == 2
    assert doc.annotations[third].ordinal == 3


def test_string_value_on_ontological_tier_rejected(doc, profile, gold):
    word = doc.add_referring_annotation("Words", "a1", "third")
    parse = doc.add_referring_annotation("Parse", word, "third")
    with pytest.raises(err.NotOntologicalTier):
        doc.add_referring_annotation(
            "Gloss", parse, OntologicalRequest("PV"), profile=profile, ontology=gold
        )
    gloss = doc.add_referring_annotation("Gloss", parse, "third gloss")
    with pytest.raises(err.OntologicalValueRequired):
        doc.add_referring_annotation("Ontology", gloss, "free text")


# --- ontological values -------------------------------------------------------------


def test_individual_reference_pv(doc):
    value = doc.annotations["a42"].value
    assert value.user_term == "PV"
    assert value.instances == (f"{GOLD_IRI}#Preverb",)
    assert value.ont_annotation_id == "e"
    assert doc.domain_instances == {}  # individuals are referenced, not minted


def test_minting_two_instances_for_ni(doc, profile, gold):
    value = doc.set_ontological_value(
        "a41",
        "NI",
        demo_instance_specs(),
        profile=profile,
        ontology=gold,
        ont_annotation_id="f",
    )
    assert value.instances == (f"{GOLD_IRI}#n1", f"{GOLD_IRI}#i1")
    assert len(value.instances) == len(profile.lookup("NI"))
    assert doc.domain_instances[f"{GOLD_IRI}#n1"].class_iri == f"{GOLD_IRI}#Noun"
    assert doc.domain_instances[f"{GOLD_IRI}#i1"].class_iri == f"{GOLD_IRI}#Inanimate"
    assert doc.validate(ontology=gold, profiles={DEMO_PROFILE_REF: profile}) == []


def test_missing_instance_name(doc, profile, gold):
    with pytest.raises(err.MissingInstanceName):
        doc.set_ontological_value("a41", "NI", {}, profile=profile, ontology=gold)


def test_restricted_class_needs_fills(doc, profile, gold):
    profile.add_mapping("TNS", ["Tense"])
    with pytest.raises(err.MissingPropertyFills):
        doc.set_ontological_value(
            "a41", "TNS", {"Tense": InstanceSpec("t1")}, profile=profile, ontology=gold
        )
    value = doc.set_ontological_value(
        "a41",
        "TNS",
        {"Tense": InstanceSpec("t1", ((f"{GOLD_IRI}#hasTenseValue", "past"),))},
        profile=profile,
        ontology=gold,
    )
    assert value.instances == (f"{GOLD_IRI}#t1",)
    assert doc.domain_instances[f"{GOLD_IRI}#t1"].fills == (
        (f"{GOLD_IRI}#hasTenseValue", "past"),
    )


def test_unknown_user_term(doc, profile, gold):
    with pytest.raises(err.UnknownUserTerm):
        doc.set_ontological_value("a41", "XX", {}, profile=profile, ontology=gold)
    with pytest.raises(err.NotOntologicalTier):
        doc.set_ontological_value("a30", "PV", {}, profile=profile, ontology=gold)


def test_replacing_value_sweeps_unreferenced_instances(doc, profile, gold):
    doc.set_ontological_value(
        "a41", "NI", demo_instance_specs(), profile=profile, ontology=gold
    )
    assert len(doc.domain_instances) == 2
    doc.set_ontological_value("a41", "PC", {}, profile=profile, ontology=gold)
    assert doc.domain_instances == {}


# --- alignment inheritance ------------------------------------------------------------


def test_translation_inherits_orthographic_interval(doc):
    assert doc.resolve_alignment("a2") == doc.resolve_alignment("a1") == (0, 2000)


def test_deep_chain_resolves(doc):
    for aid in ("a10", "a20", "a30", "a41", "a42"):
        assert doc.resolve_alignment(aid) == (0, 2000)


def test_untimed_slot_gives_unaligned():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    begin = doc.add_time_slot()
    end = doc.add_time_slot()
    aid = doc.add_alignable_annotation("Root", begin, end, "x")
    assert doc.resolve_alignment(aid) is None
    with pytest.raises(err.UnknownAnnotation):
        doc.resolve_alignment("nope")


# --- cascading deletes ------------------------------------------------------------------


def test_delete_neko_word_cascades_chain(doc):
    deleted = doc.delete_annotation("a10")
    assert set(deleted) == {"a10", "a20", "a30", "a41"}
    assert "a11" in doc.annotations  # the sibling word survives
    assert "a42" in doc.annotations
    assert doc.validate() == []


def test_delete_leaf_annotation(doc):
    assert doc.delete_annotation("a42") == ["a42"]
    assert "a31" in doc.annotations


def test_delete_time_subdivision_children_with_parent():
    doc, begin, end, parent = subdivision_doc()
    cut = doc.add_time_slot(500)
    left = doc.add_alignable_annotation("Sub", begin, cut, "left")
    right = doc.add_alignable_annotation("Sub", cut, end, "right")
    deleted = doc.delete_annotation(parent)
    assert set(deleted) == {parent, left, right}
    assert doc.annotations == {}


def test_delete_annotation_sweeps_untimed_orphan_slots():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    begin = doc.add_time_slot()
    end = doc.add_time_slot()
    keeper = doc.add_time_slot(5)
    aid = doc.add_alignable_annotation("Root", begin, end, "x")
    doc.delete_annotation(aid)
    assert [s.id for s in doc.time_order] == [keeper]


# --- slot moves ------------------------------------------------------------------------


def test_move_extends_inherited_intervals(doc):
    end_slot = doc.annotations["a1"].end
    doc.move_time_slot(end_slot, 2500)
    assert doc.resolve_alignment("a2") == (0, 2500)
    assert doc.resolve_alignment("a42") == (0, 2500)
    assert doc.validate() == []


def test_move_inverting_interval_rejected(doc):
    end_slot = doc.annotations["a1"].end
    snapshot = copy.deepcopy(doc)
    with pytest.raises(err.WouldInvertInterval):
        doc.move_time_slot(doc.annotations["a1"].begin, 2300)
    assert doc == snapshot  # transactional: rejected edits leave no trace
    with pytest.raises(err.UnknownSlot):
        doc.move_time_slot("nope", 5)
    with pytest.raises(err.NegativeTime):
        doc.move_time_slot(end_slot, -2)


def test_move_shrinking_parent_under_child_rejected():
    doc, begin, end, parent = subdivision_doc()
    cut = doc.add_time_slot(500)
    doc.add_alignable_annotation("Sub", begin, cut, "left")
    snapshot = copy.deepcopy(doc)
    with pytest.raises(err.WouldEscapeParent):
        doc.move_time_slot(end, 400)  # parent [0,400] no longer covers [0,500]
    assert doc == snapshot


def test_move_causing_sibling_overlap_rejected():
    doc, begin, end, parent = subdivision_doc()
    c1 = doc.add_time_slot(300)
    c2 = doc.add_time_slot(400)
    doc.add_alignable_annotation("Sub", begin, c1, "left")
    doc.add_alignable_annotation("Sub", c2, end, "right")
    with pytest.raises(err.OverlapsSibling):
        doc.move_time_slot(c2, 100)


def test_move_keeps_zero_length_allowed():
    doc = base_doc()
    doc.add_tier("Root", "utterance")
    a = doc.add_time_slot(0)
    b = doc.add_time_slot(10)
    doc.add_alignable_annotation("Root", a, b, "x")
    doc.move_time_slot(b, 0)  # equal times, begin still precedes end positionally
    assert doc.resolve_alignment("a1") == (0, 0)


# --- validation --------------------------------------------------------------------------


def test_validate_clean_demo(doc, gold, profile):
    assert doc.validate() == []
    assert doc.validate(ontology=gold, profiles={DEMO_PROFILE_REF: profile}) == []


def test_validate_reports_dangling_reference(doc):
    doc.annotations["a30"].ref = "gone"
    report = doc.validate()
    assert any("dangling" in i.message for i in report)
    assert all(i.level == "ERROR" for i in report)


def test_validate_reports_value_kind_violation(doc):
    doc.annotations["a42"].value = StringValue("oops")
    assert any("value kind" in i.message for i in doc.validate())


def test_validate_reports_wrong_user_term(doc, gold, profile):
    original = doc.annotations["a42"].value
    doc.annotations["a42"].value = OntologicalValue(
        ont_annotation_id="e", user_term="ZZ", instances=original.instances
    )
    report = doc.validate(ontology=gold, profiles={DEMO_PROFILE_REF: profile})
    assert any("ZZ" in i.message for i in report)
