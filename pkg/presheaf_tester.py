import pytest

from aftlab.errors import ObjectNotFound, PresheafLawError, UnsupportedClass
from aftlab.fincat import Category, enumerate_categories, has_terminal
from aftlab.posetlab import MonotoneMap, as_functor, chain
from aftlab.presheaf import (
    Presheaf,
    WeightClass,
    classify,
    constant_presheaf,
    elements,
    enumerate_presheaves,
    hom_presheaf,
    karoubi_extension,
    recheck,
    representable,
    representable_over_karoubi,
    solution_set_witness,
    splitting_presheaf,
)

# the suite: every presheaf with at most two elements per object over the
# categories with at most three morphisms
SUITE = [(A, W) for A in enumerate_categories(3) for W in enumerate_presheaves(A, 2)]

CLASSES = list(WeightClass)


def walking_arrow():
    return Category.build(["a", "b"], [("f", "a", "b")], {}, name="arrow")


def discrete2():
    return Category.build(["a1", "a2"], [], {}, name="discrete2")


def idempotent_monoid():
    return Category.build(["*"], [("e", "*", "*")], {("e", "e"): "e"}, name="idempotent")


def test_weight_class_parsing():
    assert WeightClass.parse(" Filtered ") is WeightClass.FILTERED
    with pytest.raises(UnsupportedClass):
        WeightClass.parse("sifted")


def test_presheaf_laws_are_checked():
    A = walking_arrow()
    bad = Presheaf(A, {"a": ("x",), "b": ("y",)}, {"f": {"y": "nope"}})
    with pytest.raises(PresheafLawError):
        bad.check_laws()


# categories of elements

def test_elements_of_a_representable_has_terminal():
    A = walking_arrow()
    el, projection = elements(representable(A, "b"))
    assert el.objects == (("a", "f"), ("b", "id_b"))
    assert has_terminal(el) == ("b", "id_b")
    projection.check_laws()


def test_elements_of_constant_on_discrete():
    el, _ = elements(constant_presheaf(discrete2(), ["*"]))
    assert len(el.objects) == 2
    assert el.is_discrete()


def test_elements_of_constant_on_arrow():
    el, _ = elements(constant_presheaf(walking_arrow(), ["*"]))
    assert has_terminal(el) == ("b", "*")


def test_elements_count_matches_size():
    for A, W in SUITE:
        el, _ = elements(W)
        assert len(el.objects) == W.size()
        assert el.check_laws() == []


# classification

def test_representables_lie_in_every_class():
    for A in enumerate_categories(3):
        for a in A.objects:
            W = representable(A, a)
            for wc in CLASSES:
                assert classify(W, wc).holds, (A, a, wc)


def test_constant_on_discrete():
    W = constant_presheaf(discrete2(), ["*"])
    assert classify(W, WeightClass.DISCRETE)
    assert not classify(W, WeightClass.EMPTY)
    assert not classify(W, WeightClass.CONNECTED)
    assert classify(W, WeightClass.SMALL)


def test_empty_presheaf():
    W = constant_presheaf(walking_arrow(), [])
    assert classify(W, WeightClass.DISCRETE)
    assert not classify(W, WeightClass.CONNECTED)
    assert not classify(W, WeightClass.FILTERED)
    assert not classify(W, WeightClass.EMPTY)
    assert solution_set_witness(W) == ()


def test_splitting_of_the_free_idempotent_is_absolute():
    A = idempotent_monoid()
    W = splitting_presheaf(A, "*", "e")
    assert W.values["*"] == ("e",)
    c = classify(W, WeightClass.ABSOLUTE)
    assert c.holds
    assert c.witness == ("*", "e", "e")
    assert not classify(W, WeightClass.EMPTY)
    assert representable_over_karoubi(W)


def test_hom_presheaf_of_inclusion():
    C2, C3 = chain(2), chain(3)
    f = as_functor(MonotoneMap(C2, C3, {"bot": "bot", "top": "top"}))
    W = hom_presheaf(f, "mid")
    assert W.values == {"bot": ("bot<=mid",), "top": ()}
    with pytest.raises(ObjectNotFound):
        hom_presheaf(f, "nope")


def test_class_subsumption():
    implications = [
        (WeightClass.EMPTY, WeightClass.DISCRETE),
        (WeightClass.EMPTY, WeightClass.FILTERED),
        (WeightClass.EMPTY, WeightClass.ABSOLUTE),
        (WeightClass.ABSOLUTE, WeightClass.FILTERED),
        (WeightClass.FILTERED, WeightClass.CONNECTED),
        (WeightClass.DISCRETE, WeightClass.SMALL),
        (WeightClass.CONNECTED, WeightClass.SMALL),
    ]
    for A, W in SUITE:
        verdicts = {wc: classify(W, wc).holds for wc in CLASSES}
        for stronger, weaker in implications:
            if verdicts[stronger]:
                assert verdicts[weaker], (A, W, stronger, weaker)


def test_absolute_agrees_with_karoubi_extension():
    for A, W in SUITE:
        assert classify(W, WeightClass.ABSOLUTE).holds == representable_over_karoubi(W), (A, W)


def test_karoubi_extension_is_a_presheaf():
    A = idempotent_monoid()
    for W in enumerate_presheaves(A, 3):
        karoubi_extension(W).check_laws()


def test_classifications_recheck():
    for A, W in SUITE:
        for wc in CLASSES:
            assert recheck(W, classify(W, wc)), (A, W, wc)


# solution sets

def test_solution_set_of_representable():
    W = representable(walking_arrow(), "b")
    assert solution_set_witness(W) == (("b", "id_b"),)


def test_solution_set_of_constant_on_discrete():
    W = constant_presheaf(discrete2(), ["*"])
    assert solution_set_witness(W) == (("a1", "*"), ("a2", "*"))


def test_enumerated_presheaves_are_lawful():
    for A, W in SUITE:
        W.check_laws()
