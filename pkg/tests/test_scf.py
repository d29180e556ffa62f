from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import SCF_DIR
from smoothsym.classify import reference_catalog_for, supported_types
from smoothsym.scf import ScfError, document_datum, document_fan, document_from, parse_scf, print_scf

SHIPPED = sorted(SCF_DIR.glob("*.scf"))

MINIMAL = """\
# B2 with the short coroot colored
rootsystem B2
lattice root
hermitian false
cone
ray coroot 1
ray vec -1 0
colors 1
end
"""


def test_shipped_files_present():
    assert len(SHIPPED) >= 8


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_roundtrip(path):
    doc = parse_scf(path.read_text())
    again = parse_scf(print_scf(doc))
    assert again == doc
    assert print_scf(again) == print_scf(doc)


def test_minimal_document():
    doc = parse_scf(MINIMAL)
    assert doc.type_label == "B2"
    assert doc.comments == ("# B2 with the short coroot colored",)
    (cone,) = doc.cones
    assert cone.rays[0].kind == "coroot"
    assert cone.rays[1].vector == (Fraction(-1), Fraction(0))
    d = document_datum(doc)
    assert len(document_fan(doc, d).maximal_cones) == 1


@pytest.mark.parametrize(
    "text,line",
    [
        ("lattice root\n", 1),
        ("rootsystem B2\nray coroot 1\n", 2),
        ("rootsystem B2\ncone\nray vec 1 2 3\nend\n", 3),
        ("rootsystem B2\ncone\nray coroot 5\nend\n", 3),
        ("rootsystem B2\ncone\nray vec 1/0 1\nend\n", 3),
        ("rootsystem B2\ncone\nray coroot 1\n", 2),
        ("rootsystem Q2\n", 1),
        ("rootsystem B2\nfiber 1 3\n", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(ScfError) as exc:
        parse_scf(text)
    assert exc.value.line == line


def test_unknown_color():
    with pytest.raises(ScfError, match="unknown color"):
        parse_scf("rootsystem B2\ncone\nray coroot 1\ncolors 1:2\nend\n")


def test_lattice_basis_rows():
    text = "rootsystem A1\nlattice basis\nrow 1/2 -1/2\nhermitian false\n"
    doc = parse_scf(text)
    assert document_datum(doc).chi == document_datum(parse_scf("rootsystem A1\nlattice weight\n")).chi


@pytest.mark.parametrize("label", supported_types(4))
def test_catalog_export_roundtrip(label):
    for e in reference_catalog_for(label):
        doc = document_from(e.datum, e.fan.maximal_cones, ["# x"])
        back = parse_scf(print_scf(doc))
        d = document_datum(back)
        assert d == e.datum
        assert document_fan(back, d) == e.fan


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=2, max_size=2))
def test_vector_rays_roundtrip(v):
    if not any(v):
        return
    text = "rootsystem G2\ncone\nray vec " + " ".join(str(x) for x in v) + "\ncolors -\nend\n"
    doc = parse_scf(text)
    assert doc.cones[0].rays[0].vector == tuple(v)
    assert parse_scf(print_scf(doc)) == doc
