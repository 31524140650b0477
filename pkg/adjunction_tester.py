import itertools

import pytest

from aftlab.adjunction import (
    COUNIT_CELL,
    WHISKERED_UNIT_CELL,
    Adjunction,
    admissible_closed_under_composition_check,
    brute_force_adjunctions,
    compose_adjunctions_mixed,
    find_right_adjoint,
    is_phi_admissible,
    solution_set_condition,
    verify_adjunction,
)
from aftlab.errors import HypothesisFailure, ShapeMismatch
from aftlab.fincat import (
    Category,
    Functor,
    NaturalTransformation,
    enumerate_categories,
    enumerate_functors,
    identity_functor,
)
from aftlab.posetlab import (
    MonotoneMap,
    as_category,
    as_functor,
    chain,
    closure_operators,
    discrete,
    enumerate_lattices,
    monotone_maps,
    reflective_subposet,
)
from aftlab.presheaf import WeightClass

CLASSES = list(WeightClass)


def reflection3():
    """chain3 -> chain2 sending mid to top."""
    C3, C2 = chain(3), chain(2)
    return as_functor(MonotoneMap(C3, C2, {"bot": "bot", "mid": "top", "top": "top"}, name="l"))


def inclusion2():
    C2, C3 = chain(2), chain(3)
    return as_functor(MonotoneMap(C2, C3, {"bot": "bot", "top": "top"}, name="incl"))


def test_identity_adjunction():
    C = as_category(chain(3))
    assert verify_adjunction(Adjunction.identity(C))


def test_reflection_adjunction_by_hand():
    l = reflection3()
    r = as_functor(MonotoneMap(chain(2), chain(3), {"bot": "bot", "top": "top"}, name="r"))
    unit = NaturalTransformation(identity_functor(l.source), r.compose(l),
                                 {"bot": "id_bot", "mid": "mid<=top", "top": "id_top"})
    counit = NaturalTransformation(l.compose(r), identity_functor(l.target), {"bot": "id_bot", "top": "id_top"})
    assert verify_adjunction(Adjunction(l, r, unit, counit))


def test_unit_with_wrong_components_is_rejected():
    l = reflection3()
    r = as_functor(MonotoneMap(chain(2), chain(3), {"bot": "bot", "top": "top"}, name="r"))
    with pytest.raises(ShapeMismatch):
        NaturalTransformation(identity_functor(l.source), r.compose(l),
                              {"bot": "id_bot", "mid": "id_mid", "top": "id_top"})


def test_verify_reports_triangle_failures():
    # both cells natural, counit collapses the idempotent to the identity
    A = Category.build(["*"], [("e", "*", "*")], {("e", "e"): "e"})
    one = identity_functor(A)
    e_cell = NaturalTransformation(one, one, {"*": "e"})
    verdict = verify_adjunction(Adjunction(one, one, e_cell, e_cell))
    assert not verdict
    assert verdict.counterexample == ("left triangle", "*")


def test_verify_rejects_mismatched_functors():
    l = reflection3()
    with pytest.raises(ShapeMismatch):
        verify_adjunction(Adjunction(l, l, None, None))


# right-adjoint search

def test_right_adjoint_of_identity():
    C = as_category(chain(3))
    verdict = find_right_adjoint(identity_functor(C))
    assert verdict
    assert verdict.witness.right == identity_functor(C)


def test_right_adjoint_of_inclusion():
    verdict = find_right_adjoint(inclusion2())
    assert verdict.witness.right.object_map == {"bot": "bot", "mid": "bot", "top": "top"}
    assert verdict.witness.counit.name == "epsilon"


def test_no_right_adjoint_into_the_point():
    D = as_category(discrete(["a1", "a2"]))
    T = as_category(chain(1))
    f = Functor(D, T, {"a1": "c0", "a2": "c0"}, {})
    verdict = find_right_adjoint(f)
    assert not verdict
    assert verdict.counterexample == "c0"
    assert brute_force_adjunctions(f) == ()
    assert not is_phi_admissible(f, WeightClass.EMPTY)
    assert is_phi_admissible(f, WeightClass.DISCRETE)


def test_three_adjoint_procedures_agree():
    suite = enumerate_categories(3)
    for A, B in itertools.product(suite, repeat=2):
        for f in enumerate_functors(A, B):
            found = find_right_adjoint(f)
            brute = brute_force_adjunctions(f)
            assert found.holds == is_phi_admissible(f, WeightClass.EMPTY).holds == bool(brute), f
            if found:
                assert found.witness in brute


def test_empty_admissibility_implies_every_class():
    suite = enumerate_categories(3)
    for A, B in itertools.product(suite, repeat=2):
        for f in enumerate_functors(A, B):
            if is_phi_admissible(f, WeightClass.EMPTY):
                for wc in CLASSES:
                    assert is_phi_admissible(f, wc), (f, wc)


def test_solution_sets_exist():
    f = inclusion2()
    verdict = solution_set_condition(f)
    assert verdict
    assert dict(verdict.witness)["mid"] == (("bot", "bot<=mid"),)


# admissibility is closed under composition

def test_composites_stay_admissible():
    posets = [chain(1), chain(2), chain(3), discrete(["p", "q"])]
    classes = [WeightClass.EMPTY, WeightClass.DISCRETE, WeightClass.CONNECTED,
               WeightClass.FILTERED, WeightClass.ABSOLUTE]
    for P, Q, R in itertools.product(posets, repeat=3):
        A, B, C = as_category(P), as_category(Q), as_category(R)
        for m in monotone_maps(P, Q):
            f = as_functor(m, A, B)
            for n in monotone_maps(Q, R):
                g = as_functor(n, B, C)
                for wc in classes:
                    assert admissible_closed_under_composition_check(f, g, wc), (m, n, wc)


def test_composition_check_needs_composable_functors():
    with pytest.raises(ShapeMismatch):
        admissible_closed_under_composition_check(inclusion2(), inclusion2(), WeightClass.EMPTY)


# composing an adjunction after a reflection

def test_compose_two_identities():
    C = as_category(chain(3))
    one = Adjunction.identity(C)
    composite = compose_adjunctions_mixed(one, one)
    assert composite.left == identity_functor(C)
    assert verify_adjunction(composite)


def test_compose_reflection_with_itself():
    first = find_right_adjoint(reflection3()).witness
    composite = compose_adjunctions_mixed(first, first)
    assert composite.left == identity_functor(first.left.target)
    assert verify_adjunction(composite)


def test_reflection_then_identity_breaks_the_hypothesis():
    first = find_right_adjoint(reflection3()).witness
    second = Adjunction.identity(first.left.source)
    with pytest.raises(HypothesisFailure) as exc:
        compose_adjunctions_mixed(first, second)
    assert exc.value.cell == WHISKERED_UNIT_CELL
    assert exc.value.obj == "mid"


def test_counit_must_be_invertible():
    P = chain(1)
    l = as_functor(MonotoneMap(P, chain(2), {"c0": "bot"}, name="l"))
    first = find_right_adjoint(l).witness
    with pytest.raises(HypothesisFailure) as exc:
        compose_adjunctions_mixed(first, Adjunction.identity(l.source))
    assert exc.value.cell == COUNIT_CELL
    assert exc.value.obj == "top"


def test_composition_needs_a_shared_domain():
    first = find_right_adjoint(reflection3()).witness
    with pytest.raises(ShapeMismatch):
        compose_adjunctions_mixed(first, Adjunction.identity(as_category(chain(2))))


def _reflection(L, c, category):
    X, l, _ = reflective_subposet(L, c)
    return find_right_adjoint(as_functor(l, category, as_category(X))).witness


def test_composition_over_closure_pairs():
    satisfied, violated = 0, 0
    for L in enumerate_lattices(5):
        category = as_category(L)
        closures = closure_operators(L)
        reflections = [_reflection(L, c, category) for c in closures]
        for (c, first), (c2, second) in itertools.product(zip(closures, reflections), repeat=2):
            fixed = {x for x in L.elements if c(x) == x}
            fixed2 = {x for x in L.elements if c2(x) == x}
            if fixed2 <= fixed:
                composite = compose_adjunctions_mixed(first, second)
                assert verify_adjunction(composite), (L, c, c2)
                satisfied += 1
            else:
                with pytest.raises(HypothesisFailure) as exc:
                    compose_adjunctions_mixed(first, second)
                assert exc.value.cell == WHISKERED_UNIT_CELL
                assert exc.value.obj in fixed2 - fixed
                violated += 1
    assert satisfied >= 100
    assert violated >= 10
