import os

import pytest

import bordered

DATA = os.path.join(os.path.dirname(__file__), "..", "..", "data")

TORUS = """
PMC T GENUS 1 PAIRS (1 3) (2 4)
ALGEBRA A_T FROM T
BIMODULE I = IDENTITY A_T
MORPHISM Id = IDENTITY I
MORPHISM Z = ZERO I I
"""


def test_pmc_and_basis():
    assert bordered.pmc_report(1, [(1, 3), (2, 4)])["valid"]
    assert not bordered.pmc_report(1, [(1, 2), (3, 4)])["valid"]
    assert len(bordered.strand_basis(1, [(1, 3), (2, 4)])) == 16
    assert bordered.f2_rank(2, 2, [(0, 0), (1, 0)]) == 1


def test_commands():
    doc = bordered.parse_document(TORUS)
    assert doc.bimodules == ["I"]
    code, rep = bordered.execute(doc, "homology I")
    assert code == 0 and rep["report"]["homology"] == 10
    code, rep = bordered.execute(doc, "morphism homotopic Id Z --cap 1")
    assert code == 1 and rep["report"]["cap"] == 1
    code, rep = bordered.execute(doc, ["bimodule", "verify", "Nope"])
    assert code == 2 and rep["status"] == "error"


def test_round_trip():
    doc = bordered.parse_document(TORUS)
    text = doc.emit_bimodule("I").replace("BIMODULE I ", "BIMODULE J ")
    doc.add(text)
    assert bordered.execute(doc, "bimodule verify J")[0] == 0


def test_errors():
    with pytest.raises(bordered.BorderedError, match="MalformedMatching"):
        bordered.parse_document("PMC T GENUS 1 PAIRS (1 3) (2 5)\n")


def test_tutorial():
    doc = bordered.load(os.path.join(DATA, "torus_tutorial.bfh"))
    results = bordered.run_all(doc)
    assert results and all(r["status"] == "pass" for r in results)
