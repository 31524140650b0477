import json

import pytest

from aftlab import config
from aftlab.adjunction import WHISKERED_UNIT_CELL
from aftlab.cli import _instance_bundle, main, plain, run
from aftlab.daft import generate_instances, verify_daft
from aftlab.fincat import Diagram, colimit, is_universal, label, validate_category
from aftlab.formats import parse_functor
from aftlab.weights import image_cocone

CORPUS = config.CORPUS_PATH


def corpus(name):
    return str(CORPUS / name)


def functor_args(source, target, fun):
    return [corpus(source), corpus(target), corpus(fun)]


@pytest.fixture
def chain3_identity(tmp_path):
    path = tmp_path / "one.fun"
    path.write_text(
        "functor 1\n"
        "object bot |-> bot\nobject mid |-> mid\nobject top |-> top\n"
        "morphism bot<=mid |-> bot<=mid\nmorphism mid<=top |-> mid<=top\nmorphism bot<=top |-> bot<=top\n"
    )
    return str(path)


def test_check_adjoint_finds_the_retraction():
    code, report = run(["check-adjoint", *functor_args("chain2.fincat", "chain3.fincat", "chain-inclusion.fun"), "--quiet"])
    assert code == 0
    assert report.verdicts == {"right_adjoint": True, "empty_admissible": True}
    assert "object mid |-> bot" in report.witnesses["right_adjoint"]


def test_check_adjoint_reports_the_failing_object():
    code, report = run(["check-adjoint", *functor_args("discrete2.fincat", "point.fincat", "discrete-to-point.fun"), "--quiet"])
    assert code == 1
    assert report.counterexamples["object"] == "*"


def test_malformed_category_is_an_input_error(tmp_path):
    bad = tmp_path / "bad.fincat"
    bad.write_text("category loop\nobject a b\nmorphism f : a -> b\nmorphism g : b -> a\n")
    code, report = run(["check-adjoint", str(bad), str(bad), corpus("chain-inclusion.fun"), "--quiet"])
    assert code == 2
    assert report.error.startswith("UndefinedCompositeError")


def test_missing_file_is_an_input_error():
    code, report = run(["check-adjoint", "nope.fincat", "nope.fincat", "nope.fun", "--quiet"])
    assert code == 2
    assert report.error.startswith("FileNotFoundError")


def test_classify_split_idempotent(tmp_path):
    psh = tmp_path / "split.psh"
    psh.write_text("presheaf W over idempotent\nvalues * = e\naction e : e |-> e\n")
    code, report = run(["classify", corpus("idempotent.fincat"), str(psh), "--class", "absolute", "--quiet"])
    assert code == 0
    assert report.verdicts == {"classification": True, "recheck": True}
    code, report = run(["classify", corpus("idempotent.fincat"), str(psh), "--class", "empty", "--quiet"])
    assert code == 1


def test_admissible():
    args = functor_args("discrete2.fincat", "point.fincat", "discrete-to-point.fun")
    code, report = run(["admissible", *args, "--class", "empty", "--quiet"])
    assert code == 1
    assert report.verdicts == {"*": False}
    code, report = run(["admissible", *args, "--class", "Discrete", "--quiet"])
    assert code == 0


def test_cocontinuous():
    args = functor_args("chain2.fincat", "chain2.fincat", "constant-top.fun")
    code, report = run(["cocontinuous", *args, "--class", "small", "--bound", "3", "--quiet"])
    assert code == 1
    assert report.verdicts == {"cocontinuous": False, "size_bound": 3}
    assert any("size_bound=3" in note for note in report.notes)
    code, _ = run(["cocontinuous", *args, "--class", "connected", "--bound", "3", "--quiet"])
    assert code == 0


def test_daft_multiadjoint():
    code, report = run(["daft", "--psi", "connected", "--phi", "discrete", "--count", "40", "--quiet"])
    assert code == 0
    assert report.verdicts["total"] == 40
    assert report.verdicts["agreements"] == 40
    assert report.counterexamples == {}


def test_daft_unsupported_pair():
    code, report = run(["daft", "--psi", "small", "--phi", "filtered", "--quiet"])
    assert code == 2
    assert report.error.startswith("UnsupportedPair")


def test_reports_are_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        code, _ = run(["daft", "--profile", "adjoint", "--count", "20", "--seed", "5", "--output", str(out), "--quiet"])
        assert code == 0
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text())
    assert data["schema"] == config.REPORT_SCHEMA
    assert data["tool_version"] == config.TOOL_VERSION
    assert "timing" not in data
    assert data["arguments"]["seed"] == 5


def test_jobs_do_not_change_the_report(tmp_path):
    one, four = tmp_path / "one.json", tmp_path / "four.json"
    run(["daft", "--profile", "virtual", "--count", "20", "--output", str(one), "--quiet"])
    run(["daft", "--profile", "virtual", "--count", "20", "--jobs", "4", "--output", str(four), "--quiet"])
    assert one.read_bytes() == four.read_bytes()


def test_timing_is_opt_in():
    _, report = run(["poset-aft", "--max-size", "2", "--timing", "--quiet"])
    assert report.to_dict()["timing"] >= 0


def test_pack_replay(tmp_path):
    pack = str(tmp_path / "lattice.pack")
    code, report = run(["gen-corpus", "--profile", "lattice", "--count", "30", "--out", pack, "--quiet"])
    assert code == 0
    assert report.verdicts == {"written": 30}
    _, direct = run(["daft", "--profile", "lattice", "--count", "30", "--quiet"])
    code, replayed = run(["daft", "--corpus", pack, "--quiet"])
    assert code == 0
    assert replayed.verdicts["total"] == 30
    assert [r["id"] for r in replayed.verdicts["records"]] == [r["id"] for r in direct.verdicts["records"]]
    assert replayed.verdicts["agreements"] == direct.verdicts["agreements"]


def test_unreadable_pack(tmp_path):
    pack = tmp_path / "junk.pack"
    pack.write_bytes(b"not a pack")
    code, report = run(["daft", "--corpus", str(pack), "--quiet"])
    assert code == 2
    assert report.error.startswith("CorpusError")


def test_compose_reflection_with_itself():
    code, report = run([
        "compose-adjunctions", corpus("chain2.fincat"), corpus("chain3.fincat"), corpus("chain2.fincat"),
        corpus("chain-reflection.fun"), corpus("chain-reflection.fun"), "--quiet",
    ])
    assert code == 0
    assert report.verdicts == {"triangle_identities": True}


def test_compose_reports_the_failing_cell(chain3_identity):
    code, report = run([
        "compose-adjunctions", corpus("chain2.fincat"), corpus("chain3.fincat"), corpus("chain3.fincat"),
        corpus("chain-reflection.fun"), chain3_identity, "--quiet",
    ])
    assert code == 1
    assert report.counterexamples == {"cell": WHISKERED_UNIT_CELL, "object": "mid"}


def test_compose_needs_right_adjoints():
    code, report = run([
        "compose-adjunctions", corpus("point.fincat"), corpus("discrete2.fincat"), corpus("point.fincat"),
        corpus("discrete-to-point.fun"), corpus("discrete-to-point.fun"), "--quiet",
    ])
    assert code == 1
    assert report.counterexamples["missing_right_adjoint"] == "first"


def test_poset_aft(tmp_path):
    vee = tmp_path / "vee.poset"
    vee.write_text("poset vee\nelement a b c\nleq a b\nleq a c\n")
    code, report = run(["poset-aft", str(vee), "--max-size", "3", "--quiet"])
    assert code == 0
    assert report.verdicts["exceptions"] == 0
    assert report.verdicts["presentable"]["vee"]["failures"] == 0
    assert report.verdicts["presentable"]["vee"]["checks"] > 0


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["daft", "--psi", "sifted"],
    ["daft", "--count", "0"],
    ["gen-corpus", "--profile", "lattice"],
])
def test_usage_errors(argv):
    code, report = run(argv)
    assert code == 2
    assert report is None


def test_main_prints_json(capsys):
    assert main(["poset-aft", "--max-size", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "poset-aft"
    assert data["holds"] is True


def test_reported_adjoint_failure_fails_again(tmp_path):
    args = functor_args("discrete2.fincat", "point.fincat", "discrete-to-point.fun")
    code, report = run(["check-adjoint", *args, "--quiet"])
    assert code == 1
    reported = tmp_path / "reported.fun"
    reported.write_text(report.counterexamples["functor"])
    code, again = run(["check-adjoint", args[0], args[1], str(reported), "--quiet"])
    assert code == 1
    assert again.counterexamples == report.counterexamples


def test_reported_diagram_is_not_preserved(tmp_path):
    args = functor_args("chain2.fincat", "chain2.fincat", "constant-top.fun")
    code, report = run(["cocontinuous", *args, "--class", "small", "--bound", "3", "--quiet"])
    assert code == 1
    reported = report.counterexamples
    fun = tmp_path / "reported.fun"
    fun.write_text(reported["functor"])
    code, again = run(["cocontinuous", args[0], args[1], str(fun), "--class", "small", "--bound", "3", "--quiet"])
    assert code == 1
    assert again.counterexamples == reported

    chain2 = validate_category((CORPUS / "chain2.fincat").read_text())
    shape = validate_category(reported["diagram"]["shape"])
    D = Diagram(parse_functor(reported["diagram"]["diagram"], shape, chain2))
    f = parse_functor(reported["functor"], chain2, chain2)
    col = colimit(D)
    assert col is not None
    assert not is_universal(image_cocone(f, col.cocone))


def test_daft_profile_takes_an_explicit_pair():
    code, report = run(["daft", "--profile", "lattice", "--psi", "finite", "--phi", "filtered", "--count", "3",
                        "--quiet"])
    assert code == 0
    assert [(r["psi"], r["phi"]) for r in report.verdicts["records"]] == [("finite", "filtered")] * 3
    code, report = run(["daft", "--profile", "lattice", "--phi", "filtered", "--count", "3", "--quiet"])
    assert code == 2
    assert report.error.startswith("UnsupportedPair")


def test_daft_records_carry_witnesses():
    code, report = run(["daft", "--profile", "adjoint", "--count", "5", "--quiet"])
    assert code == 0
    records = {r["id"]: r for r in report.verdicts["records"]}
    top = records["adjoint-corpus-constant-top"]
    assert top["lhs"] is False
    assert top["failing_object"] == "bot"
    assert top["failing_datum"] == []
    assert top["witnesses"] == {"top": ["top", "id_top"]}
    assert records["adjoint-corpus-chain-inclusion"]["failing_datum"] is None


def test_instance_bundle_names_the_failing_object():
    instance = next(generate_instances(0, "adjoint"))
    record = verify_daft(instance)
    bundle = _instance_bundle(instance, record)
    assert bundle["id"] == instance.instance_id
    assert bundle["failing_object"] == plain(record.failing_object)
    assert set(bundle["witnesses"]) == {label(b) for b, _ in record.witnesses}
