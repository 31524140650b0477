"""Preservation side of the weight classes: bounded shape families,
cocompleteness and cocontinuity.

A shape of size k is a finite category with at most k morphisms, identities
counted, that passes the class predicate; monoids and other categories with
cycles are included, so a shape like the free idempotent is only colimited in
categories where it splits. Shapes are kept once per isomorphism class. The
Absolute class uses the free idempotent alone. Verdicts only ever mean
"verified up to the bound".
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from aftlab.config import BOUND_RATIONALE, SHAPE_BOUND_CEILING, SHAPE_BOUND_PAD
from aftlab.errors import UnsupportedClass, UnsupportedPair
from aftlab.fincat import (
    Category,
    Cocone,
    Diagram,
    Verdict,
    colimit,
    connected_components,
    enumerate_categories,
    enumerate_functors,
    is_filtered,
    is_universal,
)
from aftlab.presheaf import WeightClass

log = logging.getLogger(__name__)

# (psi, phi) -> the kind of adjoint phi-admissibility describes
TABLE_PAIRS = {
    (WeightClass.SMALL, WeightClass.EMPTY): "adjoints",
    (WeightClass.SMALL, WeightClass.ABSOLUTE): "semiadjoints",
    (WeightClass.FINITE, WeightClass.FILTERED): "pluriadjoints",
    (WeightClass.CONNECTED, WeightClass.DISCRETE): "multiadjoints",
    (WeightClass.EMPTY, WeightClass.SMALL): "virtual adjoints",
}


def table_pair(psi, phi):
    pair = (WeightClass(psi), WeightClass(phi))
    if pair not in TABLE_PAIRS:
        raise UnsupportedPair(*pair)
    return pair


def default_bound(C):
    return min(len(C.morphisms) + SHAPE_BOUND_PAD, SHAPE_BOUND_CEILING)


def bound_note(size_bound):
    return f"size_bound={size_bound}: {BOUND_RATIONALE}"


def free_idempotent():
    return Category.build(["j0"], [("e", "j0", "j0")], {("e", "e"): "e"}, name="idem")


@dataclass(frozen=True)
class ShapeFamily:
    weight_class: WeightClass
    size_bound: int
    shapes: tuple

    def __iter__(self):
        return iter(self.shapes)

    def __len__(self):
        return len(self.shapes)


def in_class(J, weight_class):
    """Class predicate on a single shape."""
    if weight_class is WeightClass.EMPTY:
        return False
    if weight_class is WeightClass.DISCRETE:
        return J.is_discrete()
    if weight_class is WeightClass.CONNECTED:
        return len(connected_components(J)) == 1
    if weight_class in (WeightClass.FINITE, WeightClass.SMALL):
        return True
    if weight_class is WeightClass.FILTERED:
        return is_filtered(J).holds
    if weight_class is WeightClass.ABSOLUTE:
        return J == free_idempotent()
    raise UnsupportedClass(weight_class, "in_class")


@lru_cache(maxsize=None)
def iso_key(J):
    """Same key for isomorphic shapes: the least relabelled table over all object and arrow orders."""
    objects = J.objects
    arrows = [m for m in J.morphisms if not J.is_identity(m)]
    best = None
    for object_order in itertools.permutations(range(len(objects))):
        ob = dict(zip(objects, object_order))
        for arrow_order in itertools.permutations(range(len(arrows))):
            name = {m: ("a", i) for m, i in zip(arrows, arrow_order)}
            name.update({J.identity[o]: ("i", ob[o]) for o in objects})
            key = (
                tuple(sorted((name[m], ob[J.source[m]], ob[J.target[m]]) for m in arrows)),
                tuple(sorted((name[g], name[f], name[h]) for (g, f), h in J.table.items())),
            )
            if best is None or key < best:
                best = key
    return len(objects), best


def _one_per_iso_class(categories):
    seen = set()
    for J in categories:
        key = iso_key(J)
        if key not in seen:
            seen.add(key)
            yield J


@lru_cache(maxsize=None)
def enumerate_shapes(weight_class, size_bound):
    weight_class = WeightClass(weight_class)
    if weight_class is WeightClass.EMPTY:
        shapes = ()
    elif weight_class is WeightClass.ABSOLUTE:
        shapes = (free_idempotent(),) if size_bound >= 2 else ()
    else:
        members = (J for J in enumerate_categories(size_bound) if in_class(J, weight_class))
        shapes = tuple(_one_per_iso_class(members))
    log.debug("%s shapes up to %d morphisms: %d", weight_class, size_bound, len(shapes))
    return ShapeFamily(weight_class, size_bound, shapes)


def diagrams(shape, C):
    for F in enumerate_functors(shape, C):
        yield Diagram(F)


@lru_cache(maxsize=None)
def _colimit(diagram):
    return colimit(diagram)


@lru_cache(maxsize=None)
def is_cocomplete(C, weight_class, size_bound):
    """Every bounded diagram of the class has a colimit; the counterexample is the first that does not."""
    for shape in enumerate_shapes(weight_class, size_bound):
        for D in diagrams(shape, C):
            if _colimit(D) is None:
                return Verdict(False, counterexample=D, note=bound_note(size_bound))
    return Verdict(True, note=bound_note(size_bound))


def image_cocone(f, cocone):
    """f applied to a cocone over D: a cocone over f D."""
    D = Diagram(f.compose(cocone.diagram.functor))
    return Cocone(D, f.ob(cocone.apex), tuple(f.mor(leg) for leg in cocone.legs))


def is_cocontinuous(f, weight_class, size_bound):
    """
    # For each bounded diagram with a colimit in the source, the image of the
    # colimit cocone must be universal in the target.
    """
    for shape in enumerate_shapes(weight_class, size_bound):
        for D in diagrams(shape, f.source):
            col = _colimit(D)
            if col is None:
                continue
            if not is_universal(image_cocone(f, col.cocone)):
                return Verdict(False, counterexample=D, note=bound_note(size_bound))
    return Verdict(True, note=bound_note(size_bound))


def cocompleteness_decomposition_check(C, psi, phi, size_bound):
    """Small-cocomplete iff psi-cocomplete and phi-cocomplete, both sides computed separately."""
    psi, phi = table_pair(psi, phi)
    whole = is_cocomplete(C, WeightClass.SMALL, size_bound).holds
    parts = is_cocomplete(C, psi, size_bound).holds and is_cocomplete(C, phi, size_bound).holds
    return whole == parts
