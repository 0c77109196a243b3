#!/usr/bin/env python3
"""Start the annotation HTTP service, preloaded with the demo corpus.

Usage: PORT=8470 python scripts/run_service.py [--empty]

With --empty no demo data is loaded. The timeline UI in frontend/ talks to
this service.
"""

import os
import sys

import uvicorn

from ontotier.demo import (
    DEMO_BASE_IRI,
    GOLD_IRI,
    demo_document,
    demo_ontology,
    demo_profile,
)
from ontotier.service import DEFAULT_PORT, DocEntry, Store, create_app


def main() -> None:
    store = Store()
    if "--empty" not in sys.argv[1:]:
        store.ontologies["gold"] = demo_ontology()
        store.profiles["wabo4.prf"] = demo_profile()
        store.docs["wabo4"] = DocEntry(demo_document())
        print("preloaded: ontology 'gold', profile 'wabo4.prf', document 'wabo4'")
        print(f"document base IRI: {DEMO_BASE_IRI}; ontology source: {GOLD_IRI}")
    app = create_app(store)
    uvicorn.run(app, host="127.0.0.1", port=int(os.environ.get("PORT", DEFAULT_PORT)))


if __name__ == "__main__":
    main()
