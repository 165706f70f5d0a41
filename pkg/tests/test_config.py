import json

import pytest

from gradreg.config import BoundsConfig, create_bounds_from_config
from gradreg.scalar import FieldSpec


def _write(tmp_path, data):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_defaults_when_file_is_missing(tmp_path, monkeypatch):
    monkeypatch.delenv("GRADREG_THREADS", raising=False)
    config = BoundsConfig.from_config_file(str(tmp_path / "missing.json"))
    assert (config.H, config.N, config.margin, config.threads) == (8, 12, 2, 1)
    assert config.field == FieldSpec.default()


def test_broken_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{broken", encoding="utf-8")
    assert BoundsConfig.from_config_file(str(path)).N == 12


def test_values_are_read_from_bounds_section(tmp_path):
    path = _write(tmp_path, {"bounds": {"H": "5", "N": 10, "field": "Q", "n_max": 15}})
    bounds = create_bounds_from_config(path)
    assert (bounds.H, bounds.N, bounds.n_limit) == (5, 10, 15)
    assert bounds.field.is_rational


def test_overrides_win_and_none_is_ignored(tmp_path):
    path = _write(tmp_path, {"bounds": {"H": 5, "N": 10}})
    bounds = create_bounds_from_config(path, H=3, N=None)
    assert (bounds.H, bounds.N) == (3, 10)


def test_threads_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("GRADREG_THREADS", "4")
    assert BoundsConfig.from_config_file(str(tmp_path / "missing.json")).threads == 4


@pytest.mark.parametrize("values", [{"N": 0}, {"H": -1}, {"cap": "many"}, {"field": "bogus"}])
def test_invalid_values(values):
    with pytest.raises(ValueError):
        BoundsConfig(**values)


def test_validate_relations(tmp_path):
    ok, _ = BoundsConfig(N=8, margin=2).validate()
    assert ok
    ok, message = BoundsConfig(N=4, margin=2).validate()
    assert not ok and "margin" in message
    with pytest.raises(ValueError):
        create_bounds_from_config(_write(tmp_path, {"bounds": {"N": 4}}))
