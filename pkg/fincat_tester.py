import itertools

import pytest
from hypothesis import given, settings, strategies as st

from aftlab import config
from aftlab.errors import AssociativityError, IdentityLawError, ShapeMismatch, UndefinedCompositeError
from aftlab.fincat import (
    Category,
    Diagram,
    Functor,
    NaturalTransformation,
    cocones,
    colimit,
    comma,
    connected_components,
    constant_functor,
    enumerate_categories,
    enumerate_functors,
    full_subcategory,
    has_initial,
    has_terminal,
    identity_functor,
    idempotents_split,
    is_filtered,
    is_universal,
    karoubi_completion,
    opposite,
    terminal_category,
    validate_category,
)
from aftlab.formats import serialize_category
from aftlab.posetlab import as_category, chain
from aftlab.presheaf import WeightClass
from aftlab.weights import enumerate_shapes

# small suite shared by the exhaustive checks below
SMALL = enumerate_categories(3)
SHAPES = enumerate_categories(3, acyclic=True)
CORPUS_CATEGORIES = [validate_category(p.read_text()) for p in sorted(config.CORPUS_PATH.glob("*.fincat"))]


def walking_arrow():
    return Category.build(["a", "b"], [("f", "a", "b")], {}, name="arrow")


def discrete2():
    return Category.build(["a1", "a2"], [], {}, name="discrete2")


def idempotent_monoid():
    return Category.build(["*"], [("e", "*", "*")], {("e", "e"): "e"}, name="idempotent")


def diamond():
    return validate_category(
        "category diamond\n"
        "object bot x y top\n"
        "morphism bot<=x : bot -> x\n"
        "morphism bot<=y : bot -> y\n"
        "morphism x<=top : x -> top\n"
        "morphism y<=top : y -> top\n"
        "morphism bot<=top : bot -> top\n"
        "compose x<=top . bot<=x = bot<=top\n"
        "compose y<=top . bot<=y = bot<=top\n"
    )


# validation

def test_validate_terminal():
    C = validate_category("object *\n")
    assert C.objects == ("*",)
    assert C.morphisms == ("id_*",)


def test_validate_walking_arrow():
    C = validate_category("object a b\nmorphism f : a -> b\n")
    assert C.hom("a", "b") == ("f",)
    assert C.hom("b", "a") == ()
    assert C == walking_arrow()


def test_associativity_error_names_the_triple():
    text = (
        "object *\n"
        "morphism a : * -> *\n"
        "morphism b : * -> *\n"
        "compose a . a = b\n"
        "compose a . b = a\n"
        "compose b . a = a\n"
        "compose b . b = a\n"
    )
    with pytest.raises(AssociativityError) as exc:
        validate_category(text)
    assert exc.value.triple == ("b", "a", "a")
    assert exc.value.violations[0] is exc.value
    assert all(isinstance(v, AssociativityError) for v in exc.value.violations)


def test_missing_composite():
    text = "object a b c\nmorphism f : a -> b\nmorphism g : b -> c\n"
    with pytest.raises(UndefinedCompositeError) as exc:
        validate_category(text)
    assert exc.value.pair == ("g", "f")


def test_identity_law_error():
    text = "object a b\nmorphism f : a -> b\nmorphism f2 : a -> b\ncompose id_b . f = f2\n"
    with pytest.raises(IdentityLawError) as exc:
        validate_category(text)
    assert exc.value.morphism == "f"


@pytest.mark.parametrize("index", range(len(enumerate_categories(4))))
def test_serialize_round_trip(index):
    C = enumerate_categories(4)[index]
    assert validate_category(serialize_category(C)) == C


# opposite

def test_opposite_examples():
    T = terminal_category()
    assert opposite(T) == T
    op = opposite(walking_arrow())
    assert op.hom("b", "a") == ("f",)
    assert op.hom("a", "b") == ()
    C3 = opposite(as_category(chain(3)))
    assert C3.hom("top", "bot") == ("bot<=top",)
    assert C3.compose("bot<=mid", "mid<=top") == "bot<=top"


def test_opposite_is_an_involution():
    for C in enumerate_categories(4):
        assert opposite(opposite(C)) == C


# comma categories

def test_comma_of_terminal_identities():
    one = identity_functor(terminal_category())
    K = comma(one, one).category
    assert len(K.objects) == 1
    assert len(K.morphisms) == 1


def test_comma_discrete_over_point():
    T = terminal_category()
    F = Functor(discrete2(), T, {"a1": "*", "a2": "*"}, {})
    K, first, second = comma(F, identity_functor(T))
    assert [o[0] for o in K.objects] == ["a1", "a2"]
    assert K.is_discrete()
    first.check_laws()
    second.check_laws()


def test_comma_arrows_into_b():
    A = walking_arrow()
    K = comma(identity_functor(A), constant_functor(terminal_category(), A, "b")).category
    assert K.objects == (("a", "*", "f"), ("b", "*", "id_b"))
    assert has_terminal(K) == ("b", "*", "id_b")


# colimits

def _brute_cocones(D):
    F, J, C = D.functor, D.shape, D.target
    found = []
    for apex in C.objects:
        for legs in itertools.product(*(C.hom(F.ob(j), apex) for j in J.objects)):
            leg = dict(zip(J.objects, legs))
            if all(C.compose(leg[J.target[u]], F.mor(u)) == leg[J.source[u]] for u in J.morphisms):
                found.append((apex, legs))
    return found


def _brute_mediators(C, first, second):
    (apex1, legs1), (apex2, legs2) = first, second
    return [
        m for m in C.hom(apex1, apex2)
        if all(C.compose(m, l1) == l2 for l1, l2 in zip(legs1, legs2))
    ]


def test_colimit_of_empty_diagram_is_initial():
    C = as_category(chain(2))
    empty = Category([], [], {}, {}, name="0")
    col = colimit(Diagram(Functor(empty, C, {}, {})))
    assert col.cocone.apex == "bot"
    assert col.cocone.legs == ()


def test_colimit_of_two_copies():
    A = walking_arrow()
    two = Category.build(["j0", "j1"], [], {})
    col = colimit(Diagram(Functor(two, A, {"j0": "a", "j1": "a"}, {})))
    assert col.cocone.apex == "a"
    assert col.cocone.legs == ("id_a", "id_a")


def test_pushout_in_diamond():
    span = Category.build(["j0", "j1", "j2"], [("u", "j0", "j1"), ("v", "j0", "j2")], {})
    F = Functor(span, diamond(), {"j0": "bot", "j1": "x", "j2": "y"}, {"u": "bot<=x", "v": "bot<=y"})
    col = colimit(Diagram(F.check_laws()))
    assert col.cocone.apex == "top"
    assert col.cocone.legs == ("bot<=top", "x<=top", "y<=top")


def test_no_coproduct_in_discrete():
    two = Category.build(["j0", "j1"], [], {})
    assert colimit(Diagram(Functor(two, discrete2(), {"j0": "a1", "j1": "a2"}, {}))) is None


def test_colimits_are_universal_by_brute_force():
    for J in SHAPES:
        for C in SMALL:
            for F in enumerate_functors(J, C):
                D = Diagram(F)
                every = _brute_cocones(D)
                col = colimit(D)
                universal = [c for c in every if all(len(_brute_mediators(C, c, d)) == 1 for d in every)]
                if col is None:
                    assert universal == []
                else:
                    assert (col.cocone.apex, col.cocone.legs) == universal[0]


@pytest.mark.parametrize("C", CORPUS_CATEGORIES, ids=lambda C: C.name)
def test_colimits_over_cyclic_shapes_by_brute_force(C):
    for J in enumerate_shapes(WeightClass.SMALL, 4):
        for F in enumerate_functors(J, C):
            D = Diagram(F)
            every = _brute_cocones(D)
            assert sorted((c.apex, c.legs) for c in cocones(D)) == sorted(every)
            col = colimit(D)
            universal = [c for c in every if all(len(_brute_mediators(C, c, d)) == 1 for d in every)]
            if col is None:
                assert universal == [], (J, F)
            else:
                assert (col.cocone.apex, col.cocone.legs) == universal[0], (J, F)


def test_cocones_match_brute_force():
    for J in SHAPES:
        for C in SMALL:
            for F in enumerate_functors(J, C):
                D = Diagram(F)
                assert sorted((c.apex, c.legs) for c in cocones(D)) == sorted(_brute_cocones(D))


def test_cocone_that_is_not_universal():
    A = walking_arrow()
    two = Category.build(["j0", "j1"], [], {})
    D = Diagram(Functor(two, A, {"j0": "a", "j1": "a"}, {}))
    at_b = cocones(D, "b")
    assert [c.legs for c in at_b] == [("f", "f")]
    verdict = is_universal(at_b[0])
    assert not verdict
    assert verdict.counterexample[1] == ()


# shape predicates

def test_terminal_and_initial():
    assert has_terminal(terminal_category()) == "*"
    assert has_terminal(discrete2()) is None
    assert has_initial(discrete2()) is None
    A = walking_arrow()
    assert has_terminal(A) == "b"
    assert has_initial(A) == "a"
    empty = Category([], [], {}, {})
    assert has_terminal(empty) is None
    assert has_initial(empty) is None


def test_connected_components():
    assert connected_components(discrete2()) == (("a1",), ("a2",))
    assert connected_components(walking_arrow()) == (("a", "b"),)
    C = Category.build(["a", "b", "c"], [("f", "a", "b")], {})
    assert connected_components(C) == (("a", "b"), ("c",))


def test_is_filtered_examples():
    assert is_filtered(as_category(chain(3)))
    verdict = is_filtered(discrete2())
    assert not verdict
    assert verdict.counterexample == ("pair", "a1", "a2")
    parallel = Category.build(["a", "b"], [("u", "a", "b"), ("v", "a", "b")], {})
    assert is_filtered(parallel).counterexample == ("parallel", "u", "v")
    assert is_filtered(Category([], [], {}, {})).counterexample == ("empty",)


def test_terminal_object_makes_filtered():
    for C in enumerate_categories(4):
        if has_terminal(C) is not None:
            assert is_filtered(C), C


def test_full_subcategory():
    C = as_category(chain(3))
    sub, inclusion = full_subcategory(C, ["top", "bot"])
    assert sub.objects == ("bot", "top")
    assert set(sub.morphisms) == {"id_bot", "id_top", "bot<=top"}
    assert sub.check_laws() == []
    inclusion.check_laws()


def test_preorders_and_isomorphisms():
    assert as_category(chain(3)).is_preorder()
    assert not idempotent_monoid().is_preorder()
    swap = Category.build(["a", "b"], [("f", "a", "b"), ("g", "b", "a")],
                          {("g", "f"): "id_a", ("f", "g"): "id_b"})
    assert swap.check_laws() == []
    assert swap.is_isomorphism("f")
    assert not walking_arrow().is_isomorphism("f")
    assert not idempotent_monoid().is_isomorphism("e")


# natural transformations

def test_components_with_wrong_ends_are_rejected():
    C = as_category(chain(3))
    one = identity_functor(C)
    with pytest.raises(ShapeMismatch):
        NaturalTransformation(one, one, {"bot": "id_bot", "mid": "mid<=top", "top": "id_top"})


def test_whiskering_and_inverse():
    A = walking_arrow()
    one = identity_functor(A)
    cell = NaturalTransformation.identity(one)
    assert cell.inverse() == cell
    assert cell.whisker_left(one) == cell
    assert cell.then(cell) == cell
    const_b = constant_functor(A, A, "b")
    to_b = NaturalTransformation(one, const_b, {"a": "f", "b": "id_b"}).check_naturality()
    assert to_b.first_non_invertible() == "a"
    assert to_b.inverse() is None


# Karoubi completion

def test_karoubi_of_poset_is_itself():
    C = as_category(chain(3))
    K, embedding = karoubi_completion(C)
    assert len(K.objects) == 3
    assert len(K.morphisms) == len(C.morphisms)
    assert idempotents_split(K)


def test_karoubi_of_terminal():
    K, _ = karoubi_completion(terminal_category())
    assert len(K.objects) == 1
    assert len(K.morphisms) == 1


def test_karoubi_splits_the_free_idempotent():
    A = idempotent_monoid()
    assert not idempotents_split(A)
    K, embedding = karoubi_completion(A)
    assert K.objects == (("*", "id_*"), ("*", "e"))
    verdict = idempotents_split(K)
    assert verdict
    y, r, s = verdict.witness[("e", ("*", "id_*"), ("*", "id_*"))]
    assert y == ("*", "e")


@settings(deadline=None, max_examples=60)
@given(st.integers(min_value=0, max_value=len(SMALL) - 1))
def test_karoubi_embedding_is_fully_faithful(index):
    A = SMALL[index]
    K, E = karoubi_completion(A)
    E.check_laws()
    assert idempotents_split(K)
    for x in A.objects:
        for y in A.objects:
            images = [E.mor(m) for m in A.hom(x, y)]
            assert len(set(images)) == len(images)
            assert set(images) == set(K.hom(E.ob(x), E.ob(y)))


# enumeration

def test_functor_counts():
    A = walking_arrow()
    assert len(list(enumerate_functors(A, A))) == 3
    assert len(list(enumerate_functors(discrete2(), A))) == 4
    for F in enumerate_functors(A, A):
        F.check_laws()


def test_enumerated_categories_are_valid():
    for C in enumerate_categories(4):
        assert C.check_laws() == []
    assert all(not any(J.hom(x, x)[1:] for x in J.objects) for J in SHAPES)
