"""Command-line front door: validate, inspect, and search annotation
documents, and manage profile files.

Exit codes: 0 success, 1 domain failure, 2 I/O or usage failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .document import AnnotationDocument
from .errors import OntotierError
from .ontology import Ontology, load_ontology
from .profile import Profile, parse_profile, serialize_profile, validate_profile, create_profile
from .rdfxml import parse_document
from .search import search_term, search_text


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _load_doc(path: str) -> AnnotationDocument:
    return parse_document(_read(path))


def _load_ontology(path: str) -> Ontology:
    return load_ontology(_read(path), source_iri=Path(path).resolve().as_uri())


def _profile_basename(reference: str) -> str:
    return reference.replace("\\", "/").rsplit("/", 1)[-1]


def _load_profiles_dir(directory: str, doc: AnnotationDocument) -> dict[str, Profile]:
    """Match tier profile references against .prf files in a directory by basename."""
    available = {p.name: p for p in Path(directory).glob("*.prf")}
    profiles = {}
    for tier in doc.tiers.values():
        if tier.profile is None:
            continue
        candidate = available.get(_profile_basename(tier.profile))
        if candidate is not None:
            profiles[tier.profile] = parse_profile(candidate.read_bytes())
    return profiles


def cmd_validate(args: argparse.Namespace) -> int:
    doc = _load_doc(args.document)
    ontology = _load_ontology(args.ontology) if args.ontology else None
    profiles = _load_profiles_dir(args.profiles, doc) if args.profiles else None
    report = doc.validate(ontology=ontology, profiles=profiles)
    for issue in report:
        print(issue)
    return 0 if not report else 1


def cmd_info(args: argparse.Namespace) -> int:
    doc = _load_doc(args.document)
    counts: dict[str, int] = {tier_id: 0 for tier_id in doc.tiers}
    for annotation in doc.annotations.values():
        counts[annotation.tier] = counts.get(annotation.tier, 0) + 1
    print(f"{len(doc.tiers)} tiers, {len(doc.annotations)} annotations, "
          f"{len(doc.time_order)} time slots")

    def show(tier_id: str, depth: int) -> None:
        tier = doc.tiers[tier_id]
        ltype = doc.linguistic_types[tier.linguistic_type]
        suffix = " [ontological]" if ltype.ontological else ""
        print(f"{'  ' * depth}{tier_id} ({ltype.stereotype.value}{suffix}): "
              f"{counts[tier_id]} annotations")
        for child in doc.tier_children(tier_id):
            show(child, depth + 1)

    for tier in doc.tiers.values():
        if tier.parent is None:
            show(tier.id, 0)
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    doc = _load_doc(args.document)
    if args.text is not None:
        hits = search_text(doc, args.text, case_sensitive=not args.ignore_case)
    else:
        ontology = _load_ontology(args.ontology) if args.ontology else None
        hits = search_term(
            doc, args.term, ontology=ontology, include_subclasses=args.subclasses
        )
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "tier": h.tier_id,
                        "annotation": h.annotation_id,
                        "begin": h.interval[0] if h.interval else None,
                        "end": h.interval[1] if h.interval else None,
                        "value": h.matched_text,
                    }
                    for h in hits
                ]
            )
        )
    else:
        for h in hits:
            begin = str(h.interval[0]) if h.interval else "-"
            end = str(h.interval[1]) if h.interval else "-"
            print(f"{h.tier_id}\t{h.annotation_id}\t{begin}\t{end}\t{h.matched_text}")
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    if args.profile_command == "new":
        profile = create_profile(args.author, args.desc, args.version, args.source)
        Path(args.output).write_bytes(serialize_profile(profile))
        return 0
    if args.profile_command == "add-term":
        profile = parse_profile(_read(args.file))
        profile.add_mapping(args.name, args.targets)
        Path(args.file).write_bytes(serialize_profile(profile))
        return 0
    if args.profile_command == "rename":
        profile = parse_profile(_read(args.file))
        profile.rename_user_term(args.old, args.new)
        Path(args.file).write_bytes(serialize_profile(profile))
        return 0
    if args.profile_command == "check":
        profile = parse_profile(_read(args.file))
        report = validate_profile(profile, _load_ontology(args.ontology))
        for issue in report:
            print(issue)
        return 0 if not report else 1
    raise AssertionError(args.profile_command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontotier",
        description="Validate, inspect, and search tiered annotation documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a document, optionally against ontology/profiles")
    p.add_argument("document")
    p.add_argument("--ontology")
    p.add_argument("--profiles", help="directory of .prf files, matched by basename")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="print the tier tree with annotation counts")
    p.add_argument("document")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("search", help="search annotations by text or ontological term")
    p.add_argument("document")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text")
    group.add_argument("--term")
    p.add_argument("--json", action="store_true")
    p.add_argument("--ignore-case", action="store_true")
    p.add_argument("--ontology", help="enables subclass expansion for --term")
    p.add_argument("--subclasses", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("profile", help="create and edit profile files")
    psub = p.add_subparsers(dest="profile_command", required=True)
    pn = psub.add_parser("new")
    pn.add_argument("output")
    pn.add_argument("--author", default="")
    pn.add_argument("--desc", default="")
    pn.add_argument("--version", default="1.0")
    pn.add_argument("--source", required=True)
    pa = psub.add_parser("add-term")
    pa.add_argument("file")
    pa.add_argument("name")
    pa.add_argument("targets", nargs="+")
    pr = psub.add_parser("rename")
    pr.add_argument("file")
    pr.add_argument("old")
    pr.add_argument("new")
    pc = psub.add_parser("check")
    pc.add_argument("file")
    pc.add_argument("--ontology", required=True)
    p.set_defaults(func=cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OntotierError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
