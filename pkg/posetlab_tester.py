import itertools

import pytest
from hypothesis import given, settings, strategies as st

from aftlab.adjunction import find_right_adjoint
from aftlab.errors import NotCompleteLattice, OrderError, ShapeMismatch
from aftlab.posetlab import (
    MonotoneMap,
    Poset,
    as_category,
    as_functor,
    brute_force_right_adjoint,
    chain,
    closure_operators,
    discrete,
    disjoint_union,
    downset_completion,
    enumerate_lattices,
    enumerate_posets,
    extend_along_yoneda,
    from_category,
    galois_right_adjoint,
    monotone_from_functor,
    monotone_maps,
    preserves_all_joins,
    presentable_aft_check,
    reflective_subposet,
)


def diamond():
    return Poset.from_relation(
        ["bot", "x", "y", "top"],
        [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")],
        name="diamond",
    )


def constant(P, Q, value):
    return MonotoneMap(P, Q, {x: value for x in P.elements}, name="const")


def identity(P):
    return MonotoneMap(P, P, {x: x for x in P.elements}, name="1")


def test_relation_closure_and_antisymmetry():
    P = Poset.from_relation(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.le("a", "c")
    assert not P.le("c", "a")
    with pytest.raises(OrderError):
        Poset.from_relation(["a", "b"], [("a", "b"), ("b", "a")])


def test_joins_and_meets():
    D = diamond()
    assert D.join(("x", "y")) == "top"
    assert D.meet(("x", "y")) == "bot"
    assert D.bottom() == "bot"
    assert D.top() == "top"
    assert D.is_complete_lattice()
    P = discrete(["x", "y"])
    assert P.join(("x", "y")) is None
    assert P.missing_join() == ()
    assert sorted(D.covers()) == sorted([("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")])


def test_disjoint_union_tags_elements():
    U = disjoint_union(chain(2), chain(1))
    assert U.elements == ("bot_0", "top_0", "c0_1")
    assert U.le("bot_0", "top_0")
    assert not U.le("bot_0", "c0_1")


def test_poset_counts():
    assert len(enumerate_posets(4)) == 1 + 1 + 2 + 5 + 16
    sizes = [len(L) for L in enumerate_lattices(5)]
    assert {n: sizes.count(n) for n in set(sizes)} == {1: 1, 2: 1, 3: 1, 4: 2, 5: 5}


# downset completion

def test_downsets_of_a_chain():
    D, unit = downset_completion(chain(2))
    assert D.elements == ((), ("bot",), ("bot", "top"))
    assert D.le((), ("bot",)) and D.le(("bot",), ("bot", "top"))
    assert unit("bot") == ("bot",)
    assert unit("top") == ("bot", "top")


def test_downsets_of_discrete_and_empty():
    D, _ = downset_completion(discrete(["x", "y"]))
    assert len(D) == 4
    assert D.is_complete_lattice()
    assert not D.le(("x",), ("y",))
    E, _ = downset_completion(discrete([]))
    assert E.elements == ((),)


def test_downset_joins_are_unions():
    for P in enumerate_posets(3):
        D, unit = downset_completion(P)
        assert unit.is_monotone()
        for r in range(len(D) + 1):
            for subset in itertools.combinations(D.elements, r):
                union = {x for S in subset for x in S}
                assert D.join(subset) == tuple(x for x in P.elements if x in union)


# Galois connections

def test_right_adjoint_of_identity():
    D = diamond()
    verdict = galois_right_adjoint(identity(D))
    assert verdict
    assert verdict.witness.mapping == {x: x for x in D.elements}


def test_right_adjoint_of_inclusion():
    C2, C3 = chain(2), chain(3)
    incl = MonotoneMap(C2, C3, {"bot": "bot", "top": "top"})
    g = galois_right_adjoint(incl).witness
    assert g.mapping == {"bot": "bot", "mid": "bot", "top": "top"}
    assert brute_force_right_adjoint(incl) == g


def test_constant_top_has_no_right_adjoint():
    C2 = chain(2)
    verdict = galois_right_adjoint(constant(C2, C2, "top"))
    assert not verdict
    assert verdict.counterexample == ()
    assert brute_force_right_adjoint(constant(C2, C2, "top")) is None


def test_galois_needs_complete_lattices():
    P = discrete(["x", "y"])
    with pytest.raises(NotCompleteLattice):
        galois_right_adjoint(MonotoneMap(P, chain(2), {"x": "bot", "y": "top"}))


def test_lattice_aft_exhaustive():
    lattices = enumerate_lattices(5)
    checked = 0
    for P in lattices:
        for Q in lattices:
            for m in monotone_maps(P, Q):
                checked += 1
                assert (brute_force_right_adjoint(m) is not None) == preserves_all_joins(m).holds, m
    assert checked > 500


def test_encodings_agree():
    lattices = enumerate_lattices(3)
    for P in lattices:
        assert from_category(as_category(P)) == P
        for Q in lattices:
            for m in monotone_maps(P, Q):
                f = as_functor(m).check_laws()
                assert monotone_from_functor(f) == m
                assert find_right_adjoint(f).holds == (brute_force_right_adjoint(m) is not None)


# left extension along the downset embedding

def test_extension_of_the_unit_is_identity():
    P = chain(2)
    D, unit = downset_completion(P)
    g = extend_along_yoneda(unit, D)
    assert g.mapping == {S: S for S in D.elements}


def test_extension_into_diamond():
    P = discrete(["x", "y"])
    f = MonotoneMap(P, diamond(), {"x": "x", "y": "y"})
    g = extend_along_yoneda(f)
    assert g(()) == "bot"
    assert g(("x",)) == "x"
    assert g(("x", "y")) == "top"


def test_extension_collapses_a_chain():
    C2 = chain(2)
    g = extend_along_yoneda(identity(C2))
    assert g.mapping == {(): "bot", ("bot",): "bot", ("bot", "top"): "top"}


@settings(deadline=None, max_examples=40)
@given(st.integers(min_value=0, max_value=len(enumerate_posets(3)) - 1),
       st.integers(min_value=0, max_value=len(enumerate_lattices(4)) - 1))
def test_extensions_are_left_adjoints(p, l):
    P, L = enumerate_posets(3)[p], enumerate_lattices(4)[l]
    D, unit = downset_completion(P)
    for f in monotone_maps(P, L):
        g = extend_along_yoneda(f, D)
        assert galois_right_adjoint(g)
        assert g.compose(unit) == f
        assert presentable_aft_check(P, L, g)


def test_presentable_check_on_arbitrary_maps():
    P = chain(2)
    D, _ = downset_completion(P)
    for L in enumerate_lattices(3):
        for g in monotone_maps(D, L):
            assert presentable_aft_check(P, L, g)


def test_presentable_check_needs_a_map_out_of_the_downsets():
    P = chain(2)
    D, _ = downset_completion(P)
    L, other = chain(3), chain(2)
    with pytest.raises(ShapeMismatch):
        presentable_aft_check(P, L, next(monotone_maps(P, L)))
    g = next(monotone_maps(D, other))
    assert presentable_aft_check(P, other, g)
    with pytest.raises(ShapeMismatch):
        presentable_aft_check(P, L, g)


# closures

def test_closures_on_chain3():
    C3 = chain(3)
    closures = closure_operators(C3)
    fixed = sorted(tuple(x for x in C3.elements if c(x) == x) for c in closures)
    assert fixed == sorted([("bot", "mid", "top"), ("bot", "top"), ("mid", "top"), ("top",)])


def test_reflective_subposet():
    C3 = chain(3)
    c = MonotoneMap(C3, C3, {"bot": "bot", "mid": "top", "top": "top"})
    X, l, r = reflective_subposet(C3, c)
    assert X.elements == ("bot", "top")
    assert l.is_monotone() and r.is_monotone()
    assert l.compose(r) == identity(X)
