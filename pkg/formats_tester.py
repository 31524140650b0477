import pytest

from aftlab.corpus import load_corpus
from aftlab.errors import FunctorLawError, ParseError, PresheafLawError
from aftlab.fincat import enumerate_categories, validate_category
from aftlab.formats import (
    parse_category,
    parse_functor,
    parse_poset,
    parse_presheaf,
    serialize_category,
    serialize_functor,
    serialize_poset,
    serialize_presheaf,
)
from aftlab.posetlab import enumerate_posets
from aftlab.presheaf import enumerate_presheaves

ARROW = "category arrow\nobject a b\nmorphism f : a -> b\n"


def test_parse_category_with_comments():
    raw = parse_category("# a comment\ncategory arrow   # trailing\nobject a b\n\nmorphism f : a -> b\n")
    assert raw.name == "arrow"
    assert raw.objects == ["a", "b"]
    assert raw.arrows == [("f", "a", "b")]


@pytest.mark.parametrize("text, line_no", [
    ("object a a\n", 1),
    ("object a\nmorphism f : a -> b\n", 2),
    ("object a b\nmorphism f : a -> b\nmorphism f : a -> b\n", 3),
    ("object a b\nmorphism f : a -> b\ncompose f . f = f\n", 3),
    ("object a\nmorphism e : a -> a\ncompose e . e = e\ncompose e . e = id_a\n", 4),
    ("object a\nwhatever\n", 2),
    ("object a\ncompose g . id_a = g\n", 2),
])
def test_parse_errors_name_the_line(text, line_no):
    with pytest.raises(ParseError) as exc:
        parse_category(text)
    assert exc.value.line_no == line_no


def test_category_round_trip():
    for C in enumerate_categories(3):
        text = serialize_category(C)
        assert validate_category(text) == C
        assert serialize_category(validate_category(text)) == text


def test_functor_round_trip():
    for entry in load_corpus():
        f = entry.functor
        assert parse_functor(serialize_functor(f), f.source, f.target) == f


def test_functor_errors():
    A = validate_category(ARROW)
    with pytest.raises(ParseError):
        parse_functor("object a |-> a\n", A, A)
    with pytest.raises(ParseError):
        parse_functor("object a |-> c\nobject b |-> b\nmorphism f |-> f\n", A, A)
    with pytest.raises(FunctorLawError):
        parse_functor("object a |-> b\nobject b |-> a\nmorphism f |-> f\n", A, A)


def test_presheaf_round_trip():
    for C in enumerate_categories(2):
        for W in enumerate_presheaves(C, 2):
            assert parse_presheaf(serialize_presheaf(W), C) == W


def test_presheaf_errors():
    A = validate_category(ARROW)
    W = parse_presheaf("presheaf W over arrow\nvalues a = x\nvalues b = y\naction f : y |-> x\n", A)
    assert W.act("f", "y") == "x"
    with pytest.raises(PresheafLawError):
        parse_presheaf("values a = x\nvalues b = y\n", A)
    with pytest.raises(ParseError):
        parse_presheaf("values c = x\n", A)


def test_poset_round_trip():
    for P in enumerate_posets(4):
        assert parse_poset(serialize_poset(P)) == P


def test_poset_errors():
    with pytest.raises(ParseError):
        parse_poset("element a\nleq a b\n")
