import pytest

from ontotier.demo import demo_document, demo_ontology, demo_profile

# Verbatim example profile document: author Artem, Potawatomi, one user
# term NI combining Noun and Inanimate.
FIG2_PROFILE_XML = """<?xml version="1.0" encoding="UTF-8"?>
<PROFILE
  AUTHOR="Artem" DESCRIPTION="Potawatomi Language" VERSION="1.0"
  SOURCE="http://www.u.arizona.edu/~farrar/gold.owl">
  <USER_DEFINED_TERM DESCRIPTION="" NAME="NI">
    <ONTOLOGY_TERM NAME="Noun"/>
    <ONTOLOGY_TERM NAME="Inanimate"/>
  </USER_DEFINED_TERM>
</PROFILE>
"""

GOLD_PREVERB = "http://www.u.arizona.edu/~farrar/gold.owl#Preverb"


@pytest.fixture(scope="session")
def gold():
    return demo_ontology()


@pytest.fixture()
def profile():
    return demo_profile()


@pytest.fixture()
def doc(gold):
    return demo_document(ontology=gold)
