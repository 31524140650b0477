import pytest
from hypothesis import given, settings, strategies as st

from aftlab.adjunction import find_right_adjoint
from aftlab.errors import UnsupportedPair
from aftlab.fincat import (
    Category,
    connected_components,
    enumerate_categories,
    enumerate_functors,
    identity_functor,
    is_filtered,
)
from aftlab.posetlab import MonotoneMap, Poset, as_category, as_functor, chain, enumerate_lattices
from aftlab.presheaf import WeightClass
from aftlab.weights import (
    TABLE_PAIRS,
    bound_note,
    cocompleteness_decomposition_check,
    default_bound,
    diagrams,
    enumerate_shapes,
    free_idempotent,
    in_class,
    is_cocomplete,
    is_cocontinuous,
    iso_key,
    table_pair,
)

CLASSES = list(WeightClass)


def discrete2():
    return Category.build(["a1", "a2"], [], {}, name="discrete2")


def diamond():
    return Poset.from_relation(
        ["bot", "x", "y", "top"],
        [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")],
        name="diamond",
    )


def test_table_pairs():
    assert len(TABLE_PAIRS) == 5
    assert table_pair("connected", "discrete") == (WeightClass.CONNECTED, WeightClass.DISCRETE)
    with pytest.raises(UnsupportedPair):
        table_pair("small", "filtered")


def test_default_bound():
    assert default_bound(Category.build(["*"], [], {})) == 3
    assert default_bound(as_category(diamond())) == 5
    assert default_bound(as_category(chain(4))) == 5
    assert "capped at 5" in bound_note(default_bound(discrete2()))


# shape families

def test_discrete_shapes():
    shapes = enumerate_shapes(WeightClass.DISCRETE, 2)
    assert len(shapes) == 3
    assert [len(J.objects) for J in shapes] == [0, 1, 2]
    assert all(J.is_discrete() for J in shapes)


def test_connected_shapes_exclude_empty():
    shapes = enumerate_shapes(WeightClass.CONNECTED, 1)
    assert len(shapes) == 1
    assert len(shapes.shapes[0].objects) == 1


def test_empty_and_absolute_shapes():
    assert len(enumerate_shapes(WeightClass.EMPTY, 5)) == 0
    assert len(enumerate_shapes(WeightClass.ABSOLUTE, 1)) == 0
    assert list(enumerate_shapes(WeightClass.ABSOLUTE, 2)) == [free_idempotent()]


def test_diagrams_enumerate_every_functor():
    two = enumerate_shapes(WeightClass.DISCRETE, 2).shapes[2]
    found = list(diagrams(two, as_category(chain(2))))
    assert len(found) == 4
    assert len({D.functor for D in found}) == 4


@pytest.mark.parametrize("weight_class", CLASSES)
def test_shapes_are_sound(weight_class):
    for bound in range(1, 5):
        for J in enumerate_shapes(weight_class, bound):
            assert in_class(J, weight_class)
            assert len(J.morphisms) <= bound
            if weight_class is WeightClass.CONNECTED:
                assert len(connected_components(J)) == 1
            if weight_class is WeightClass.FILTERED:
                assert is_filtered(J)


@pytest.mark.parametrize("weight_class", CLASSES)
def test_shape_families_grow_with_the_bound(weight_class):
    for bound in range(1, 4):
        smaller = set(enumerate_shapes(weight_class, bound))
        assert smaller <= set(enumerate_shapes(weight_class, bound + 1))


def test_monoids_are_shapes():
    connected = enumerate_shapes(WeightClass.CONNECTED, 2)
    assert len(connected) == 3
    assert [len(J.morphisms) for J in connected] == [1, 2, 2]
    assert iso_key(free_idempotent()) in {iso_key(J) for J in connected}
    filtered = enumerate_shapes(WeightClass.FILTERED, 2)
    assert [iso_key(J) for J in filtered][1:] == [iso_key(free_idempotent())]


def test_iso_key_ignores_labels():
    arrow = Category.build(["a", "b"], [("f", "a", "b")], {})
    flipped = Category.build(["y", "x"], [("g", "x", "y")], {})
    assert iso_key(arrow) == iso_key(flipped)
    assert iso_key(arrow) != iso_key(discrete2())


@pytest.mark.parametrize("weight_class", CLASSES)
def test_shapes_are_pairwise_non_isomorphic(weight_class):
    shapes = enumerate_shapes(weight_class, 4)
    assert len({iso_key(J) for J in shapes}) == len(shapes)


# cocompleteness

def test_lattices_are_cocomplete():
    for L in enumerate_lattices(4):
        assert is_cocomplete(as_category(L), WeightClass.SMALL, 3)


def test_discrete_lacks_coproducts():
    verdict = is_cocomplete(discrete2(), WeightClass.DISCRETE, 2)
    assert not verdict
    assert "size_bound=2" in verdict.note


def test_terminal_object_gives_filtered_colimits():
    assert is_cocomplete(as_category(chain(3)), WeightClass.FILTERED, 2)


def test_unsplit_idempotent_has_no_connected_colimit():
    M = free_idempotent()
    for wc in (WeightClass.CONNECTED, WeightClass.FILTERED):
        verdict = is_cocomplete(M, wc, 2)
        assert not verdict, wc
        assert iso_key(verdict.counterexample.functor.source) == iso_key(M)
    assert is_cocomplete(Category.build(["*"], [], {}), WeightClass.CONNECTED, 2)


def test_cocompleteness_is_monotone_in_the_bound():
    for C in enumerate_categories(3):
        for wc in CLASSES:
            for bound in range(1, 3):
                if is_cocomplete(C, wc, bound + 1):
                    assert is_cocomplete(C, wc, bound), (C, wc, bound)


# cocontinuity

def test_identity_is_cocontinuous():
    C = as_category(diamond())
    for wc in CLASSES:
        assert is_cocontinuous(identity_functor(C), wc, 3)


def test_constant_top_is_not_cocontinuous():
    C2 = chain(2)
    f = as_functor(MonotoneMap(C2, C2, {"bot": "top", "top": "top"}))
    assert not is_cocontinuous(f, WeightClass.DISCRETE, 2)
    assert not is_cocontinuous(f, WeightClass.SMALL, 3)
    assert is_cocontinuous(f, WeightClass.CONNECTED, 3)


def test_join_preserving_collapse_is_finitely_cocontinuous():
    f = as_functor(MonotoneMap(diamond(), chain(2), {"bot": "bot", "x": "top", "y": "bot", "top": "top"}))
    assert is_cocontinuous(f, WeightClass.FINITE, 3)


SMALL = enumerate_categories(3)


@settings(deadline=None, max_examples=80)
@given(st.integers(min_value=0, max_value=len(SMALL) - 1), st.integers(min_value=0, max_value=len(SMALL) - 1))
def test_left_adjoints_are_cocontinuous(i, j):
    A, B = SMALL[i], SMALL[j]
    for f in enumerate_functors(A, B):
        if find_right_adjoint(f):
            for wc in CLASSES:
                assert is_cocontinuous(f, wc, 3), (f, wc)


@settings(deadline=None, max_examples=60)
@given(st.integers(min_value=0, max_value=len(SMALL) - 1), st.integers(min_value=0, max_value=len(SMALL) - 1))
def test_cocontinuity_is_monotone_in_the_bound(i, j):
    for f in enumerate_functors(SMALL[i], SMALL[j]):
        for wc in CLASSES:
            for bound in range(1, 3):
                if is_cocontinuous(f, wc, bound + 1):
                    assert is_cocontinuous(f, wc, bound), (f, wc, bound)


# decomposition

def test_decomposition_examples():
    assert cocompleteness_decomposition_check(as_category(diamond()), "finite", "filtered", 3)
    assert cocompleteness_decomposition_check(discrete2(), "connected", "discrete", 3)
    assert cocompleteness_decomposition_check(Category.build(["*"], [], {}), "small", "absolute", 3)
    with pytest.raises(UnsupportedPair):
        cocompleteness_decomposition_check(discrete2(), "small", "filtered", 3)


def test_decomposition_over_small_categories():
    for C in enumerate_categories(3):
        for psi, phi in TABLE_PAIRS:
            assert cocompleteness_decomposition_check(C, psi, phi, 3), (C, psi, phi)


@pytest.mark.parametrize("psi,phi", [("finite", "filtered"), ("connected", "discrete")])
def test_decomposition_up_to_four_morphisms(psi, phi):
    for C in enumerate_categories(4):
        assert cocompleteness_decomposition_check(C, psi, phi, 3), C
