import json
import subprocess
import sys
from pathlib import Path

import pytest

from kalmbach import formats
from kalmbach.algebras import enumerate_algebras
from kalmbach.cli import main
from kalmbach.effect import all_effect_algebras
from kalmbach.errors import CycleDetected
from kalmbach.omp import all_omps
from kalmbach.poset import all_bounded_posets

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def roundtrip_json(to_json, from_json, x):
    return from_json(formats.loads(formats.dumps(to_json(x))))


def test_json_roundtrips():
    for P in all_bounded_posets(5):
        assert roundtrip_json(formats.poset_to_json, formats.poset_from_json, P) == P
        for M in enumerate_algebras(P) if P.n <= 4 else ():
            assert roundtrip_json(formats.algebra_to_json, formats.algebra_from_json, M) == M
    for E in all_effect_algebras(5):
        assert roundtrip_json(formats.ea_to_json, formats.ea_from_json, E) == E
    for A in all_omps(5):
        assert roundtrip_json(formats.omp_to_json, formats.omp_from_json, A) == A


def test_full_mode_and_detection():
    doc = {"elements": ["0", "a", "1"], "relation": [["0", "a"], ["a", "1"], ["0", "1"]], "mode": "full"}
    kind, P = formats.read_structure(doc)
    assert kind == "poset" and P.n == 3
    with pytest.raises(formats.FormatError):
        formats.read_structure([1, 2])
    with pytest.raises(formats.FormatError):
        formats.read_structure({"elements": []})


def test_reader_raises_validation_errors():
    with pytest.raises(CycleDetected):
        formats.poset_from_json({"elements": ["0", "1"], "relation": [["0", "1"], ["1", "0"]]})


def test_extend_golden(capsys, tmp_path):
    code, out, _ = run(capsys, "extend", FIXTURES / "three_chain.json")
    assert code == 0
    assert out == (FIXTURES / "k_three_chain.json").read_text(encoding="utf-8")
    dot = tmp_path / "k.dot"
    code, _, _ = run(capsys, "extend", FIXTURES / "three_chain.json", "--dot", dot)
    assert dot.read_text(encoding="utf-8") == (FIXTURES / "k_three_chain.dot").read_text(encoding="utf-8")


def test_extend_two_chain(capsys):
    code, out, _ = run(capsys, "extend", FIXTURES / "two_chain.json")
    assert code == 0
    assert json.loads(out)["elements"] == ["[]", "[0<1]"]


def test_malformed_json_exit_two(capsys):
    code, _, err = run(capsys, "extend", FIXTURES / "malformed.json")
    assert code == 2
    assert "malformed.json:2:20" in err


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, _ = run(capsys, "check", tmp_path / "nope.json")
    assert code == 2


def test_invalid_structure_exit_three(capsys, tmp_path):
    bad = tmp_path / "cycle.json"
    bad.write_text(json.dumps({"elements": ["0", "1"], "relation": [["0", "1"], ["1", "0"]]}))
    code, _, err = run(capsys, "extend", bad)
    assert code == 3
    assert "cycle" in err.lower()


def test_cap_exceeded_exit_three(capsys):
    code, _, _ = run(capsys, "laws", "omp", "--max-size", "6")
    assert code == 3


def test_check_failure_exit_four(capsys, tmp_path):
    doc = formats.ea_to_json(next(iter(all_effect_algebras(4, min_size=4))))
    doc["oplus"] = [t for t in doc["oplus"] if t[:2] != ["a", "0"]]
    bad = tmp_path / "ea.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", bad)
    assert code == 4
    report = json.loads(out)
    assert report["ok"] is False
    assert report["checks"]["ea-axioms"]["witness"]


def test_check_passes(capsys):
    for name in ("three_chain.json", "k_three_chain.json", "lukasiewicz4.json"):
        code, out, _ = run(capsys, "check", FIXTURES / name)
        assert code == 0
        assert json.loads(out)["ok"] is True


def test_render_examples(capsys):
    code, out, _ = run(capsys, "render", FIXTURES / "three_chain.json")
    assert code == 0
    assert out.count(" -> ") == 2
    assert sum(line.strip().endswith('";') and "->" not in line for line in out.splitlines()) == 3
    code, out, _ = run(capsys, "render", FIXTURES / "diamond.json")
    assert out.count(" -> ") == 4
    code, out, _ = run(capsys, "render", FIXTURES / "k_three_chain.json")
    assert out == (FIXTURES / "k_three_chain.dot").read_text(encoding="utf-8")
    assert out.count("⊥") == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("laws", "monad", "--max-size", "3"),
        ("laws", "adjunction", "--max-size", "4"),
        ("laws", "lemma1", "--max-size", "4"),
        ("laws", "algebra"),
        ("roundtrip", "EG", "--max-size", "5"),
        ("roundtrip", "GE", "--max-size", "4"),
        ("roundtrip", "DP", "--max-size", "5"),
    ],
)
def test_law_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["failed"] == 0 and report["checks"] > 0


def test_monad_report_counts(capsys):
    _, out, _ = run(capsys, "laws", "monad", "--max-size", "3")
    details = json.loads(out)["details"]
    assert {(d["T"], d["T2"]) for d in details} == {(2, 2), (4, 6)}


def test_ge_report_counts(capsys):
    _, out, _ = run(capsys, "roundtrip", "GE", "--max-size", "4")
    details = {d["instance"]: d for d in json.loads(out)["details"]}
    assert all(d["algebras"] == d["effect_algebras"] for d in details.values())
    assert details["{0,a,b,1 | 0<a,0<b,a<1,b<1}"]["algebras"] == 2


def test_reports_are_deterministic(capsys):
    first = run(capsys, "laws", "monad", "--max-size", "4", "--seed", "3")
    second = run(capsys, "laws", "monad", "--max-size", "4", "--seed", "3")
    assert first == second


def test_enumerate(capsys):
    _, out, _ = run(capsys, "enumerate", "posets", "--size", "4")
    assert len(json.loads(out)) == 3
    _, out, _ = run(capsys, "enumerate", "posets", "--size", "4", "--iso")
    assert len(json.loads(out)) == 2
    _, out, _ = run(capsys, "enumerate", "eas", "--size", "4")
    assert len(json.loads(out)) == len(list(all_effect_algebras(4, min_size=4)))
    _, out, _ = run(capsys, "enumerate", "omps", "--size", "4")
    assert len(json.loads(out)) == 1
    _, out, _ = run(capsys, "enumerate", "algebras", "--size", "3")
    assert len(json.loads(out)) == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "k.json"
    code, out, _ = run(capsys, "extend", FIXTURES / "three_chain.json", "-o", target)
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == (FIXTURES / "k_three_chain.json").read_text(encoding="utf-8")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kalmbach", "extend", str(FIXTURES / "three_chain.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (FIXTURES / "k_three_chain.json").read_text(encoding="utf-8")
