import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from aftlab.adjunction import find_right_adjoint, is_phi_admissible
from aftlab.corpus import load_corpus
from aftlab.daft import (
    PROFILES,
    TheoremInstance,
    corollary_agrees,
    generate_instances,
    minimize_counterexample,
    profile_for,
    run_suite,
    verify_admissible_implies_cocontinuous,
    verify_daft,
    verify_freyd,
)
from aftlab.errors import PreconditionFailure, UnsupportedPair
from aftlab.posetlab import as_functor, enumerate_lattices, monotone_maps
from aftlab.presheaf import WeightClass


def corpus_entry(entry_id):
    return next(e for e in load_corpus() if e.entry_id == entry_id)


def instance(entry_id, psi, phi, bound=3):
    return TheoremInstance(entry_id, corpus_entry(entry_id).functor, WeightClass(psi), WeightClass(phi), bound)


def test_corpus_expectations():
    entries = load_corpus()
    assert len(entries) == 8
    for entry in entries:
        for wc in WeightClass:
            expected = entry.expected(wc)
            assert expected is not None, (entry.entry_id, wc)
            assert is_phi_admissible(entry.functor, wc).holds == expected, (entry.entry_id, wc)
    assert corpus_entry("discrete-to-point").expected("Discrete") is True
    assert corpus_entry("constant-top").expected(WeightClass.EMPTY) is False


def test_profile_lookup():
    assert profile_for("connected", "discrete").name == "multiadjoint"
    assert profile_for(WeightClass.SMALL, WeightClass.EMPTY).name == "adjoint"
    with pytest.raises(UnsupportedPair):
        profile_for("small", "filtered")


def test_adjoint_pair_examples():
    record = verify_daft(instance("diamond-collapse", "small", "empty"))
    assert record.lhs and record.rhs and record.agreement
    record = verify_daft(instance("constant-top", "small", "empty"))
    assert not record.lhs and not record.rhs_cocontinuous and record.agreement
    assert record.failing_object == "bot"


def test_records_carry_admissibility_witnesses():
    record = verify_daft(instance("constant-top", "small", "empty"))
    assert record.failing_datum == ()
    assert dict(record.witnesses) == {"top": ("top", "id_top")}
    record = verify_daft(instance("discrete-to-point", "connected", "discrete", 5))
    assert [b for b, _ in record.witnesses] == ["*"]
    assert record.failing_datum is None


def test_multiadjoint_separation():
    f = corpus_entry("discrete-to-point").functor
    assert not find_right_adjoint(f)
    assert is_phi_admissible(f, WeightClass.DISCRETE)
    record = verify_daft(instance("discrete-to-point", "connected", "discrete", 5))
    assert record.lhs and record.rhs and record.agreement


def test_virtual_pair_is_degenerate():
    record = verify_daft(instance("lift-bottom", "empty", "small"))
    assert record.lhs and record.rhs_admissible and record.rhs_cocontinuous
    assert any("virtual" in note for note in record.notes)


def test_precondition_failure():
    with pytest.raises(PreconditionFailure) as exc:
        verify_daft(instance("idempotent-split", "small", "absolute"))
    assert exc.value.side == "source"


def test_unsupported_pair():
    with pytest.raises(UnsupportedPair):
        verify_daft(instance("chain-inclusion", "small", "filtered"))


# instance generation

def test_corpus_entries_lead_each_profile():
    head = list(itertools.islice(generate_instances(0, "multiadjoint"), 6))
    assert head[0].instance_id == "multiadjoint-corpus-discrete-to-point"
    assert all(i.origin == "corpus" for i in head)


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=0, max_value=2 ** 16))
def test_generation_is_deterministic(seed):
    for name in ("adjoint", "virtual"):
        first = list(itertools.islice(generate_instances(seed, name), 30))
        second = list(itertools.islice(generate_instances(seed, name), 30))
        assert [i.instance_id for i in first] == [i.instance_id for i in second]
        assert [i.functor for i in first] == [i.functor for i in second]


def test_lattice_profile_is_exhaustive():
    profile = PROFILES["lattice"]
    lattices = enumerate_lattices(profile.max_size)
    expected = sum(len(list(monotone_maps(P, Q))) for P in lattices for Q in lattices)
    stream = generate_instances(0, profile)
    exhaustive = [i for i in itertools.islice(stream, expected + 20) if i.origin == "exhaustive"]
    assert len(exhaustive) == expected


# suites

@pytest.mark.parametrize("name", ["adjoint", "semiadjoint", "pluriadjoint", "virtual"])
def test_profiles_agree(name):
    summary = run_suite(itertools.islice(generate_instances(1, name), 60))
    assert summary.holds, summary.disagreements
    assert summary.counterexamples == []
    assert summary.total == 60


def test_multiadjoint_profile_agrees():
    summary = run_suite(itertools.islice(generate_instances(1, "multiadjoint"), 40), jobs=2)
    assert summary.holds, summary.disagreements
    assert summary.precondition_failures == []


def test_lattice_corollary():
    summary = run_suite(itertools.islice(generate_instances(0, "lattice"), 150))
    assert summary.holds
    assert summary.corollary_mismatches == []
    assert summary.preorders == summary.total


def test_semiadjoint_corpus_reports_skipped_instance():
    summary = run_suite(itertools.islice(generate_instances(0, "semiadjoint"), 10))
    assert ("semiadjoint-corpus-idempotent-split", "source") in summary.precondition_failures


def test_jobs_do_not_change_records():
    instances = list(itertools.islice(generate_instances(3, "virtual"), 30))
    one = run_suite(instances, jobs=1)
    three = run_suite(instances, jobs=3)
    assert one.records == three.records


def test_admissible_implies_cocontinuous():
    for inst in itertools.islice(generate_instances(2, "pluriadjoint"), 60):
        assert verify_admissible_implies_cocontinuous(inst.functor, inst.psi, inst.phi, inst.size_bound)


def test_corollary_only_applies_to_lattice_maps():
    inst = next(generate_instances(0, "virtual"))
    record = verify_daft(inst)
    assert corollary_agrees(record, inst)


# Freyd's formulation

def test_freyd_on_lattice_maps():
    for P, Q in itertools.product(enumerate_lattices(3), repeat=2):
        for m in monotone_maps(P, Q):
            f = as_functor(m)
            record = verify_freyd(f, 3)
            assert record.agreement
            assert record.lhs == find_right_adjoint(f).holds


# minimization

def test_minimize_with_artificial_predicate():
    start = instance("discrete-to-point", "connected", "discrete", 5)
    smaller = minimize_counterexample(start, lambda i: "a1" in i.functor.source.objects)
    assert smaller.functor.source.objects == ("a1",)
    smaller.functor.check_laws()


def test_minimize_drops_unused_target_objects():
    start = instance("lift-bottom", "small", "empty")
    rng = random.Random(7)
    keep = rng.choice(["bot", "top"])
    smaller = minimize_counterexample(start, lambda i: keep in i.functor.source.objects)
    assert smaller.functor.source.objects == (keep,)
    assert set(smaller.functor.target.objects) == set(smaller.functor.object_map.values())
