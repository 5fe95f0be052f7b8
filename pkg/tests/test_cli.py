import json

import pytest

from qrt.cli import main
from qrt.corpus import corpus_dir
from qrt.formats import algebra_document, load_algebra, load_module, module_document
from qrt.modules import is_isomorphic

C_PATH = str(corpus_dir() / "C.json")


@pytest.fixture
def module_files(tmp_path, corpus):
    paths = {}
    for name, m in corpus.C_modules.items():
        p = tmp_path / (name.replace("/", "_") + ".json")
        p.write_text(json.dumps(module_document(m, C_PATH)))
        paths[name] = str(p)
    ex2 = tmp_path / "example_2.json"
    ex2.write_text(json.dumps(module_document(corpus.example_module("example_2"), C_PATH)))
    paths["example_2"] = str(ex2)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_info(capsys):
    code, out, _ = run(capsys, "algebra", "info", C_PATH, "--json")
    info = json.loads(out)
    assert code == 0
    assert info["dim"] == 13 and info["gl_dim"] == 2 and info["radical_dim"] == 8


def test_module_info(capsys, module_files):
    code, out, _ = run(capsys, "module", "info", C_PATH, module_files["3/4"], "--json")
    info = json.loads(out)
    assert info["pd"] == 1 and info["summands"][0]["picture"] == "3/4"


def test_tau_writes_reloadable_module(capsys, module_files, tmp_path, corpus):
    out_file = tmp_path / "tau.json"
    code, out, _ = run(capsys, "tau", C_PATH, module_files["3/4"], "--out", str(out_file))
    assert code == 0 and out.strip() == "4/5"
    assert is_isomorphic(load_module(corpus.C, str(out_file)), corpus.C_modules["4/5"])


def test_hom_and_ext(capsys, module_files):
    assert run(capsys, "hom", C_PATH, module_files["3/4"], module_files["2/3/4"])[1].strip() == "1"
    code, out, _ = run(capsys, "ext", C_PATH, module_files["1"], module_files["4"], "--degree", "2", "--basis",
                       "--json")
    assert json.loads(out)["dim"] == 1
    assert len(json.loads(out)["basis"]) == 1


def test_relation_extension_and_check(capsys, module_files, tmp_path):
    bundle_dir = tmp_path / "bundle"
    code, out, _ = run(capsys, "relation-extension", C_PATH, "--out", str(bundle_dir), "--json")
    assert code == 0 and json.loads(out) == {"C": 13, "E": 3, "B": 16}
    b_doc = json.loads((bundle_dir / "B.json").read_text())
    assert len(b_doc["labels"]) == 16 and len(b_doc["ext_quiver"]["arrows"]) == 5
    code, out, _ = run(capsys, "check", "partial_tilt_iff", "--bundle", str(bundle_dir),
                       "--module", module_files["example_2"], "--json")
    assert code == 0 and json.loads(out)["consistent"]


def test_profile(capsys, module_files):
    code, out, _ = run(capsys, "profile", C_PATH, module_files["3/4"], "--json")
    assert json.loads(out)["is_partial_tilting"]
    code, out, _ = run(capsys, "tau-rigid", C_PATH, module_files["3/4"])
    assert out.strip() == "tau-rigid"


def test_corpus_suite_command(capsys):
    code, out, _ = run(capsys, "corpus-suite")
    assert code == 0
    assert "example_4: ok" in out


def test_seeded_reports_are_byte_identical(capsys, monkeypatch):
    monkeypatch.setenv("QRT_SEED", "5")
    first = run(capsys, "paper-suite", "--json")[1]
    second = run(capsys, "paper-suite", "--json", "--seed", "5")[1]
    assert first == second
    assert json.loads(first)["seed"] == 5


@pytest.mark.parametrize("argv", [
    ["algebra", "info", "/no/such/file.json"],
    ["paper-suite", "--field", "p:4"],
    ["check", "no_such_check", "--bundle", ".", "--module", "x.json"],
])
def test_input_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("QRT_SEED", "abc")
    assert main(["algebra", "info", C_PATH]) == 2


def test_unknown_check_name(capsys, module_files, tmp_path):
    bundle_dir = tmp_path / "b"
    main(["relation-extension", C_PATH, "--out", str(bundle_dir)])
    assert main(["check", "nope", "--bundle", str(bundle_dir), "--module", module_files["1"]]) == 2


def test_algebra_document_round_trip(corpus):
    for a in (corpus.A, corpus.C, corpus.B_presented):
        again = load_algebra(algebra_document(a))
        assert again.products == a.products and again.labels == a.labels


def test_module_document_round_trip(corpus):
    for m in corpus.C_modules.values():
        assert is_isomorphic(load_module(corpus.C, module_document(m)), m)
