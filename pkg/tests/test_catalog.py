import pytest

from gradreg.catalog import KNOWN_FLAGS, catalog_names, get_entry, load_catalog
from gradreg.errors import BadInput
from gradreg.file_handler import FileHandler


def test_catalog_entries_are_well_formed():
    catalog = load_catalog()
    assert {"poly1", "poly2", "qplane", "dualnum", "ext2", "kron2"} <= set(catalog)
    for entry in catalog.values():
        assert entry.flags <= set(KNOWN_FLAGS)
        if entry.gorenstein is not None:
            n = len(entry.document["vertices"])
            assert len(entry.gorenstein.validate(n).r) == n


def test_names_follow_file_order():
    assert catalog_names()[0] == "poly1"


def test_parameter_override_changes_relation():
    default = get_entry("qplane").presentation()
    three = get_entry("qplane:q=3").presentation()
    assert str(default.relations[0][1].coef) == "-2"
    assert str(three.relations[0][1].coef) == "-3"


def test_parameters_appear_in_algebra_name():
    assert get_entry("qplane:q=5").build(2).name == "qplane(q=5)"
    assert get_entry("poly1").build(2).name == "poly1"


@pytest.mark.parametrize("spec", ["nosuch", "qplane:r=2", "qplane:q"])
def test_bad_catalog_specs(spec):
    with pytest.raises(BadInput):
        get_entry(spec)


def test_entry_json_is_serializable(tmp_path):
    path = tmp_path / "entry.json"
    assert FileHandler.save_json(str(path), get_entry("dualnum").to_json())
    data = FileHandler.load_json(str(path))
    assert data["gorenstein"]["ell"] == [-1]
    assert data["flags"] == ["bdc", "noetherian"]


def test_load_json_warns_on_missing_file(tmp_path, capsys):
    assert FileHandler.load_json(str(tmp_path / "nope.json")) is None
    assert "nope.json" in capsys.readouterr().err


def test_digest_ignores_key_order():
    assert FileHandler.digest({"a": 1, "b": [1, 2]}) == FileHandler.digest({"b": [1, 2], "a": 1})
