from pathlib import Path

import pytest

from mrp.algebra import Element
from mrp.errors import InputError
from mrp.instance import (
    ParseError,
    load_instance,
    parse_instance,
    parse_json,
    serialize,
    serialize_json,
)

FIXTURES = Path(__file__).parent / "fixtures"


def test_minimal():
    inst = parse_instance("atoms 2\nfamily f:\n  10\n")
    assert inst.families == {"f": (Element.from_bitstring("10"),)}


def test_out_of_range_index_names_line():
    with pytest.raises(ParseError) as info:
        parse_instance("atoms 3\nfamily f:\n  {0, 1}\n  {1, 3}\n")
    assert info.value.line == 4
    assert "line 4" in str(info.value)


@pytest.mark.parametrize("text, line", [
    ("family f:\n", 1),
    ("atoms 2\nfamily f:\n  {}\n", 3),
    ("atoms 2\nfamily f:\n  00\n", 3),
    ("atoms 2\nfamily f:\n  101\n", 3),
    ("atoms 2\nfamily f:\n  {a}\n", 3),
    ("atoms 2\n  10\n", 2),
    ("atoms 2\nfamily f\n", 2),
    ("atoms 2\nfamily f:\nfamily f:\n", 3),
    ("atoms 2\ndecomposition d:\n  g\n", 3),
    ("atoms x\n", 1),
    ("atoms 2\nnames a\n", 2),
])
def test_diagnostics(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line


def test_names_and_labels():
    inst = parse_instance("atoms 3\nnames p q r\nfamily f:\n  {p, r}\n  {1}\n")
    assert [e.indices() for e in inst.families["f"]] == [[0, 2], [1]]
    assert inst.format_set(inst.families["f"][0]) == "{p, r}"


def test_forward_reference_and_comments():
    text = "atoms 2  # two points\ndecomposition d:\n  f\nfamily f:\n  11 # top\n"
    inst = parse_instance(text)
    assert inst.decompositions == {"d": ("f",)}


def test_empty_family_parses_but_is_unusable():
    inst = load_instance(FIXTURES / "empty_piece.txt")
    assert inst.families["empty"] == ()
    with pytest.raises(InputError):
        inst.family("empty")


@pytest.mark.parametrize("name", ["fano.txt", "small.txt", "dyadic3.txt", "flat.txt",
                                  "power3.txt"])
def test_round_trip(name):
    inst = load_instance(FIXTURES / name)
    again = parse_instance(serialize(inst))
    assert again == inst
    assert parse_instance(serialize(again)) == again
    assert parse_json(serialize_json(inst)) == inst


def test_fano_fixture():
    inst = load_instance(FIXTURES / "fano.txt")
    assert inst.atom_count == 7
    assert len(inst.family("fano")) == 7


def test_json_form(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"atom_count": 3, "families": {"f": [[0, 1], "011"]}, '
                    '"decompositions": {"d": ["f"]}}')
    inst = load_instance(path)
    assert [e.bitstring() for e in inst.families["f"]] == ["110", "011"]
    with pytest.raises(InputError):
        parse_json('{"atom_count": 3, "families": {"f": [[3]]}}')
    with pytest.raises(InputError):
        parse_json('{"atom_count": 3, "decompositions": {"d": ["nope"]}}')
    with pytest.raises(ParseError):
        parse_json("{not json")


def test_missing_file():
    with pytest.raises(InputError):
        load_instance(FIXTURES / "does-not-exist.txt")
