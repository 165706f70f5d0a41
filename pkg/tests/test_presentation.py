import json

import pytest

from gradreg.errors import (InhomogeneousRelation, InputError, NonComposablePath,
                            PresentationSyntaxError, UnknownSymbol)
from gradreg.presentation import parse_presentation
from gradreg.scalar import FieldSpec


def _doc(**overrides):
    doc = {
        "vertices": ["1"],
        "arrows": [
            {"name": "x", "from": "1", "to": "1", "deg": 1},
            {"name": "y", "from": "1", "to": "1", "deg": 1},
        ],
        "relations": [[{"coef": 1, "path": ["x", "y"]}, {"coef": -1, "path": ["y", "x"]}]],
    }
    doc.update(overrides)
    return doc


def test_parse_defaults_to_rationals():
    P = parse_presentation(json.dumps(_doc()))
    assert P.field.is_rational
    assert P.vertices == ("1",)
    assert [a.name for a in P.arrows] == ["x", "y"]
    assert P.relation_degree(P.relations[0]) == 2


def test_field_override_wins():
    P = parse_presentation(_doc(field={"Fp": 7}), FieldSpec(11))
    assert P.field.modulus == 11


def test_serialize_is_stable_under_reparse():
    P = parse_presentation(_doc(field={"Fp": 32003}))
    again = parse_presentation(P.serialize())
    assert again == P
    assert again.serialize() == P.serialize()


def test_zero_coefficient_terms_are_dropped():
    doc = _doc(relations=[[{"coef": 0, "path": ["x"]}], [{"coef": "1/2", "path": ["x", "x"]}]])
    P = parse_presentation(doc)
    assert len(P.relations) == 1
    assert str(P.relations[0][0].coef) == "1/2"


def test_unknown_arrow():
    doc = _doc(relations=[[{"coef": 1, "path": ["z"]}]])
    with pytest.raises(UnknownSymbol):
        parse_presentation(doc)


def test_unknown_vertex():
    doc = _doc(arrows=[{"name": "x", "from": "1", "to": "2", "deg": 1}], relations=[])
    with pytest.raises(UnknownSymbol):
        parse_presentation(doc)


def test_inhomogeneous_relation():
    doc = _doc(relations=[[{"coef": 1, "path": ["x"]}, {"coef": 1, "path": ["x", "y"]}]])
    with pytest.raises(InhomogeneousRelation):
        parse_presentation(doc)


def test_non_composable_path():
    doc = {
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2", "deg": 1},
                   {"name": "b", "from": "1", "to": "2", "deg": 1}],
        "relations": [[{"coef": 1, "path": ["a", "b"]}]],
    }
    with pytest.raises(NonComposablePath):
        parse_presentation(doc)


@pytest.mark.parametrize("bad", [
    "{not json",
    json.dumps({"vertices": []}),
    json.dumps(_doc(extra=1)),
    json.dumps(_doc(arrows=[{"name": "x", "from": "1", "to": "1", "deg": -1}], relations=[])),
    json.dumps(_doc(arrows=[{"name": "x", "from": "1", "to": "1", "deg": 1}] * 2, relations=[])),
])
def test_syntax_errors(bad):
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(bad)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        parse_presentation("[]")
    assert issubclass(PresentationSyntaxError, InputError)
