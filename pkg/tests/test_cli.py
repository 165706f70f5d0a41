import importlib
import json

import pytest

# gradreg/__init__ re-exports main(), which shadows the gradreg.main submodule
cli = importlib.import_module("gradreg.main")
from gradreg.main import EXIT_COMPUTATION, EXIT_FAILS, EXIT_INPUT, EXIT_OK, main


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    # 避免读到工作目录里的 config.json
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("GRADREG_THREADS", raising=False)


def _run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (json.loads(out.read_text(encoding="utf-8")) if out.exists() else None)


def test_catalog_list_prints_json(capsys):
    assert main(["catalog", "list"]) == EXIT_OK
    names = [e["name"] for e in json.loads(capsys.readouterr().out)]
    assert "poly2" in names and "dualnum" in names


def test_catalog_dump_unknown_name(capsys):
    assert main(["catalog", "dump", "nosuch"]) == EXIT_INPUT
    assert "nosuch" in capsys.readouterr().err


def test_algebra_hilbert(tmp_path):
    code, doc = _run(tmp_path, "algebra", "--catalog", "poly2", "--N", "4", "--hilbert")
    assert code == EXIT_OK
    assert doc["results"]["hilbert"]["totals"] == [1, 2, 3, 4, 5]
    assert doc["algebra"]["flags"] == ["as_regular", "bdc", "noetherian"]
    assert doc["bounds"]["N"] == 4


def test_document_digest_is_reproducible(tmp_path):
    _, first = _run(tmp_path, "algebra", "--catalog", "qplane:q=3", "--N", "3")
    _, second = _run(tmp_path, "algebra", "--catalog", "qplane:q=3", "--N", "3")
    assert first["digest"] == second["digest"]
    assert first["algebra"]["name"] == "qplane(q=3)"


def test_resolve_trivial_module(tmp_path):
    code, doc = _run(tmp_path, "resolve", "--catalog", "poly2", "--H", "3", "--N", "6")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["betti"]["terminated"]
    assert results["linear"] == "linear"
    assert results["pdim"] == {"kind": "int", "value": 2}


def test_reg_on_dual_numbers(tmp_path):
    code, doc = _run(tmp_path, "reg", "--catalog", "dualnum", "--module", "free", "--H", "4", "--N", "8")
    assert code == EXIT_OK
    regs = doc["results"]["regularities"]
    assert regs["exreg"]["value"] == {"kind": "int", "value": -1}
    assert regs["CMreg"]["value"] == {"kind": "int", "value": 1}
    assert "ASreg" in doc["results"]["algebra"]


def test_config_file_is_read(tmp_path):
    (tmp_path / "config.json").write_text(json.dumps({"bounds": {"N": 5}}), encoding="utf-8")
    _, doc = _run(tmp_path, "algebra", "--catalog", "poly1")
    assert doc["algebra"]["N"] == 5


@pytest.mark.parametrize("argv", [
    ["algebra", "--catalog", "nosuch"],
    ["algebra", "--N", "4"],
    ["algebra", "--catalog", "poly2", "--N", "8", "--margin", "5"],
    ["resolve", "--catalog", "poly2", "--N", "6", "--module", "vertex:9"],
    ["twist", "--catalog", "kron2", "--N", "3", "--p", "1,x"],
    ["verify", "--catalog", "poly2", "--N", "6", "--checks", "C99"],
])
def test_input_errors(argv):
    assert main(argv) == EXIT_INPUT


def test_missing_presentation_file(tmp_path):
    assert main(["algebra", "--presentation", str(tmp_path / "none.json")]) == EXIT_INPUT


def test_presentation_file(tmp_path):
    path = tmp_path / "poly1.json"
    path.write_text(json.dumps({
        "field": "Q",
        "vertices": ["1"],
        "arrows": [{"name": "x", "from": "1", "to": "1", "deg": 1}],
        "relations": [],
    }), encoding="utf-8")
    code, doc = _run(tmp_path, "algebra", "--presentation", str(path), "--N", "3", "--hilbert")
    assert code == EXIT_OK
    assert doc["results"]["hilbert"]["totals"] == [1, 1, 1, 1]
    assert doc["algebra"]["flags"] == []


def test_cap_exceeded_is_computation_error():
    assert main(["algebra", "--catalog", "poly3", "--N", "6", "--cap", "3"]) == EXIT_COMPUTATION


def test_duality_without_data():
    assert main(["reg", "--catalog", "tri2", "--N", "6", "--H", "2", "--cm", "duality"]) == EXIT_INPUT


def test_verify_passes(tmp_path):
    code, doc = _run(tmp_path, "verify", "--catalog", "poly2", "--N", "6", "--H", "3",
                     "--instances", "1", "--checks", "C2")
    assert code == EXIT_OK
    assert set(doc["results"]) == {"summary", "suite_digest"}
    assert all(o["check"] == "C2" for o in doc["checks"])


class _FailedReport:
    failed = True

    def to_json(self):
        return {"summary": {}, "digest": "0" * 64, "outcomes": []}


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "run_theorem_suite", lambda A, cfg: _FailedReport())
    code, _ = _run(tmp_path, "verify", "--catalog", "poly1", "--N", "4", "--checks", "C1")
    assert code == EXIT_FAILS


def test_usage_error_exits_with_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_view_renders_tables(capsys):
    assert main(["resolve", "--catalog", "poly2", "--H", "3", "--N", "6", "--view"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Betti table" in out
    assert "resolution terminated" in out


def test_verify_view_shows_summary(capsys):
    code = main(["verify", "--catalog", "dualnum", "--N", "6", "--H", "3", "--instances", "1",
                 "--checks", "C1", "--view"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "Summary" in out and "C1" in out
