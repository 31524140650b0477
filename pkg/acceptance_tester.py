"""End-to-end checks of the theorem harness, one block per guarantee the tool makes."""
import itertools
import json

import pytest

from aftlab import config
from aftlab.adjunction import (
    admissible_closed_under_composition_check,
    brute_force_adjunctions,
    find_right_adjoint,
    is_phi_admissible,
)
from aftlab.cli import run
from aftlab.corpus import load_corpus
from aftlab.daft import TheoremInstance, generate_instances, profile_for, verify_admissible_implies_cocontinuous, verify_daft
from aftlab.errors import PreconditionFailure
from aftlab.fincat import enumerate_categories, enumerate_functors, validate_category
from aftlab.presheaf import WeightClass
from aftlab.weights import TABLE_PAIRS, cocompleteness_decomposition_check

PAIRS = [(psi.value, phi.value) for psi, phi in TABLE_PAIRS]
CLASSES = list(WeightClass)


def corpus_categories(max_morphisms):
    found = []
    for path in sorted(config.CORPUS_PATH.glob("*.fincat")):
        C = validate_category(path.read_text())
        if len(C.morphisms) <= max_morphisms:
            found.append(C)
    return found


def test_poset_aft_on_lattices_up_to_five():
    code, report = run(["poset-aft", "--max-size", "5", "--quiet"])
    assert code == 0
    assert report.verdicts["exceptions"] == 0
    assert report.verdicts["maps"] > 500


@pytest.mark.parametrize("psi,phi", PAIRS)
def test_theorem_holds_on_every_table_pair(psi, phi, tmp_path):
    corpus_count = sum(1 for e in load_corpus() if profile_for(psi, phi).name in e.profiles)
    count = 200 + corpus_count
    out = tmp_path / "report.json"
    code, report = run(["daft", "--psi", psi, "--phi", phi, "--count", str(count), "--output", str(out), "--quiet"])
    assert code == 0, report.verdicts["disagreements"]
    assert report.verdicts["total"] == count
    assert report.verdicts["disagreements"] == []
    checked = count - len(report.verdicts["precondition_failures"])
    assert report.verdicts["agreements"] == checked
    assert json.loads(out.read_text())["holds"] is True


def test_multiadjoint_separation():
    entry = next(e for e in load_corpus() if e.entry_id == "discrete-to-point")
    f = entry.functor
    assert not find_right_adjoint(f)
    assert is_phi_admissible(f, WeightClass.DISCRETE)
    record = verify_daft(TheoremInstance("separation", f, WeightClass.CONNECTED, WeightClass.DISCRETE, 5))
    assert record.lhs and record.rhs and record.agreement


def test_adjoint_oracles_agree_on_corpus_categories():
    categories = corpus_categories(8)
    for A, B in itertools.product(categories, repeat=2):
        for f in enumerate_functors(A, B):
            found = find_right_adjoint(f)
            assert found.holds == is_phi_admissible(f, WeightClass.EMPTY).holds == bool(brute_force_adjunctions(f)), f


@pytest.mark.parametrize("name", ["adjoint", "semiadjoint", "pluriadjoint", "multiadjoint", "virtual"])
def test_admissible_functors_are_cocontinuous(name):
    for instance in itertools.islice(generate_instances(config.DEFAULT_SEED, name), 200):
        try:
            holds = verify_admissible_implies_cocontinuous(instance.functor, instance.psi, instance.phi,
                                                           instance.size_bound)
        except PreconditionFailure:
            continue
        assert holds, instance.instance_id


def test_admissibility_is_closed_under_composition():
    categories = [C for C in corpus_categories(8) if len(C.objects) <= 3]
    for A, B, C in itertools.product(categories, repeat=3):
        for f in enumerate_functors(A, B):
            for g in enumerate_functors(B, C):
                for wc in CLASSES:
                    assert admissible_closed_under_composition_check(f, g, wc), (f, g, wc)


@pytest.mark.parametrize("psi,phi", [("finite", "filtered"), ("connected", "discrete")])
def test_cocompleteness_decomposes(psi, phi):
    for C in list(enumerate_categories(4)) + corpus_categories(9):
        assert cocompleteness_decomposition_check(C, psi, phi, 3), C


@pytest.mark.parametrize("psi,phi", PAIRS)
def test_reports_are_byte_identical(psi, phi, tmp_path):
    outputs = []
    for i in range(2):
        out = tmp_path / f"run{i}.json"
        run(["daft", "--psi", psi, "--phi", phi, "--count", "25", "--seed", "11", "--output", str(out), "--quiet"])
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
