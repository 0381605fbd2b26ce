import json
from fractions import Fraction

import pytest

from ampcyl.cases import (
    TYPE_LABELS,
    ParseError,
    RationalError,
    SchemaError,
    UnresolvedNameError,
    bundled_case,
    bundled_cases,
    filename_for,
    label_for,
    load_case,
    parse_rational,
    serialize,
)


def test_thirteen_bundled_labels():
    cases = bundled_cases()
    assert tuple(cases) == TYPE_LABELS
    assert len(cases) == 13


def test_prime_labels_map_to_portable_stems():
    assert filename_for("A7'") == "A7p"
    assert filename_for("A7''") == "A7pp"
    assert label_for("A7pp") == "A7''"
    assert label_for("nope") is None


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)),
    ("-3", Fraction(-3)),
    ("+2", Fraction(2)),
    ("7/10", Fraction(7, 10)),
    ("-117/14", Fraction(-117, 14)),
    ("4/6", Fraction(2, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/-2", "a/b", "1 /2", "--1"])
def test_malformed_rational(text):
    with pytest.raises(RationalError):
        parse_rational(text)


def test_zero_denominator():
    with pytest.raises(RationalError):
        parse_rational("1/0")


def test_non_string_rational_is_schema_error():
    with pytest.raises(SchemaError):
        parse_rational(3)


@pytest.mark.parametrize("label", TYPE_LABELS)
def test_round_trip(label):
    case = bundled_case(label)
    assert load_case(serialize(case)) == case


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        load_case("{ not json")
    assert err.value.position > 0


def _doc(label="D6+A1"):
    return json.loads(serialize(bundled_case(label)))


def test_missing_key_rejected():
    doc = _doc()
    del doc["cylinders"]
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_unknown_key_rejected():
    doc = _doc()
    doc["comments"] = "hi"
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_unknown_type_label_rejected():
    doc = _doc()
    doc["type"] = "E8"
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_unknown_morphism_rejected():
    doc = _doc()
    doc["morphism"] = "g"
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_wrong_coordinate_length_rejected():
    doc = _doc()
    doc["lines"][0]["coords"].append("0")
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_dangling_pushforward_rejected():
    doc = _doc()
    doc["pushforwards"]["ghost"] = ["1", "0"]
    with pytest.raises(UnresolvedNameError):
        load_case(json.dumps(doc))


def test_dangling_mori_generator_rejected():
    doc = _doc()
    doc["mori_generators"].append("ghost")
    with pytest.raises(UnresolvedNameError):
        load_case(json.dumps(doc))


def test_dangling_cylinder_boundary_rejected():
    doc = _doc()
    doc["cylinders"][0]["boundary"].append("ghost")
    with pytest.raises(UnresolvedNameError):
        load_case(json.dumps(doc))


def test_dangling_expected_set_rejected():
    doc = _doc()
    doc["expected"]["covering_sets"].append(["U9"])
    with pytest.raises(UnresolvedNameError):
        load_case(json.dumps(doc))


def test_pullback_target_must_be_basis_name():
    doc = _doc()
    doc["pullbacks"][0]["target"] = "zbar"
    with pytest.raises(UnresolvedNameError):
        load_case(json.dumps(doc))


def test_asymmetric_gram_rejected():
    doc = _doc()
    doc["basis"]["gram"] = [["9", "3"], ["2", "1/2"]]
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_degenerate_gram_rejected():
    doc = _doc()
    doc["basis"]["gram"] = [["1", "1"], ["1", "1"]]
    with pytest.raises(SchemaError):
        load_case(json.dumps(doc))


def test_bad_rational_in_gram():
    doc = _doc()
    doc["basis"]["gram"][0][0] = "9/0"
    with pytest.raises(RationalError):
        load_case(json.dumps(doc))


def test_composite_morphism_loads():
    case = bundled_case("A5+A2")
    assert case.morphism == "f∘g"


def test_unknown_bundled_label():
    with pytest.raises(KeyError):
        bundled_case("E8")
