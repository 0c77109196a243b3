#!/usr/bin/env python3
"""Materialize the demo corpus (ontology, profile, annotation document) on disk.

Usage: python scripts/build_demo.py [OUTPUT_DIR]

Writes gold.owl, wabo4.prf, and wabo4.eaf, then prints the CLI invocations
that inspect them.
"""

import sys
from pathlib import Path

from ontotier.demo import (
    DEMO_BASE_IRI,
    DEMO_ONTOLOGY_XML,
    demo_document,
    demo_profile,
)
from ontotier.profile import serialize_profile
from ontotier.rdfxml import serialize_document


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo-corpus")
    out.mkdir(parents=True, exist_ok=True)
    (out / "gold.owl").write_text(DEMO_ONTOLOGY_XML)
    (out / "wabo4.prf").write_bytes(serialize_profile(demo_profile()))
    (out / "wabo4.eaf").write_bytes(serialize_document(demo_document(), DEMO_BASE_IRI))
    print(f"wrote {out}/gold.owl, {out}/wabo4.prf, {out}/wabo4.eaf")
    print("try:")
    print(f"  ontotier info {out}/wabo4.eaf")
    print(f"  ontotier validate {out}/wabo4.eaf --ontology {out}/gold.owl --profiles {out}")
    print(f"  ontotier search {out}/wabo4.eaf --text neko")


if __name__ == "__main__":
    main()
