"""Finite-set-valued presheaves and their classification into weight classes.

A presheaf lies in the Phi-cocompletion of the representables exactly when its
category of elements has the matching shape: a terminal object (Empty), a
terminal object per component (Discrete), nonempty and connected (Connected),
filtered (Filtered), or the presheaf is a retract of a representable
(Absolute). Small and Finite hold for every finite presheaf.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any

from aftlab.errors import ObjectNotFound, PresheafLawError, UnsupportedClass
from aftlab.fincat import (
    Category,
    Functor,
    Verdict,
    connected_components,
    full_subcategory,
    has_terminal,
    identity_functor,
    is_filtered,
    karoubi_completion,
    label,
)

log = logging.getLogger(__name__)

FINITE_SCALE_NOTE = "constant true at finite scale: every finite presheaf is a finite colimit of representables"


class WeightClass(Enum):
    EMPTY = "empty"
    ABSOLUTE = "absolute"
    DISCRETE = "discrete"
    CONNECTED = "connected"
    FINITE = "finite"
    FILTERED = "filtered"
    SMALL = "small"

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise UnsupportedClass(text, "parsing") from None

    def __str__(self):
        return self.value


class Presheaf:

    """
    :param base: Category A
    :param values: object -> ordered tuple of elements
    :param actions: morphism f: a -> a' -> {x' in W(a'): x in W(a)}; identities may be left out
    """
    def __init__(self, base, values, actions, name="W"):
        self.base = base
        self.name = name
        self.values = {a: tuple(values.get(a, ())) for a in base.objects}
        self.actions = {}
        for m in base.morphisms:
            given = actions.get(m)
            if given is None and base.is_identity(m):
                given = {x: x for x in self.values[base.source[m]]}
            self.actions[m] = dict(given or {})

    def act(self, m, x):
        return self.actions[m][x]

    def size(self):
        return sum(len(xs) for xs in self.values.values())

    def check_laws(self):
        A = self.base
        for m in A.morphisms:
            s, t = A.source[m], A.target[m]
            action = self.actions[m]
            if set(action) != set(self.values[t]) or any(x not in self.values[s] for x in action.values()):
                raise PresheafLawError(f"{self.name}({m}) is not a function {label(t)} -> {label(s)}")
        for o in A.objects:
            if any(self.act(A.identity[o], x) != x for x in self.values[o]):
                raise PresheafLawError(f"{self.name} does not fix the identity of {label(o)}")
        for g in A.morphisms:
            for f in A.hom_into(A.source[g]):
                gf = A.compose(g, f)
                for x in self.values[A.target[g]]:
                    if self.act(gf, x) != self.act(f, self.act(g, x)):
                        raise PresheafLawError(f"{self.name} breaks contravariance at {g} . {f}")
        return self

    def key(self):
        return (self.base, tuple(self.values[a] for a in self.base.objects),
                tuple(tuple(sorted(self.actions[m].items(), key=repr)) for m in self.base.morphisms))

    def __eq__(self, other):
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Presheaf({self.name!r} on {self.base.name}, {self.size()} elements)"


def hom_presheaf(f, b):
    """B(f-, b) on the source of f."""
    B = f.target
    if not B.has_object(b):
        raise ObjectNotFound(b, B.name)
    A = f.source
    values = {a: B.hom(f.ob(a), b) for a in A.objects}
    actions = {
        h: {k: B.compose(k, f.mor(h)) for k in values[A.target[h]]}
        for h in A.morphisms
    }
    return Presheaf(A, values, actions, name=f"{B.name}({f.name}-,{label(b)})")


def representable(A, a):
    return hom_presheaf(identity_functor(A), a)


def constant_presheaf(A, elements):
    elements = tuple(elements)
    return Presheaf(A, {a: elements for a in A.objects},
                    {m: {x: x for x in elements} for m in A.morphisms}, name="const")


def splitting_presheaf(A, a, e):
    """The image of the idempotent e on A(-, a)."""
    values = {x: tuple(h for h in A.hom(x, a) if A.compose(e, h) == h) for x in A.objects}
    actions = {m: {h: A.compose(h, m) for h in values[A.target[m]]} for m in A.morphisms}
    return Presheaf(A, values, actions, name=f"split({label(e)})")


def elements(W):
    """Category of elements, with (a, x) -> (a', x') for h: a -> a' when W(h)(x') = x."""
    A = W.base
    objects = [(a, x) for a in A.objects for x in W.values[a]]
    records = []
    for o in objects:
        for o2 in objects:
            for h in A.hom(o[0], o2[0]):
                if W.act(h, o2[1]) == o[1]:
                    records.append(((h, o, o2), o, o2))
    identity = {o: (A.identity[o[0]], o, o) for o in objects}
    by_source = {}
    for r in records:
        by_source.setdefault(r[1], []).append(r[0])
    table = {}
    for f, s, _ in records:
        for g in by_source.get(f[2], ()):
            table[(g, f)] = (A.compose(g[0], f[0]), s, g[2])
    el = Category(objects, records, identity, table, name=f"el({W.name})")
    projection = Functor(el, A, {o: o[0] for o in objects}, {r[0]: r[0][0] for r in records}, name="pi")
    return el, projection


@dataclass(frozen=True)
class Classification:
    weight_class: WeightClass
    holds: bool
    witness: Any = None
    counterexample: Any = None
    note: str = ""

    def __bool__(self):
        return self.holds


def _component_terminals(el):
    terminals = []
    for component in connected_components(el):
        sub, _ = full_subcategory(el, component)
        t = has_terminal(sub)
        if t is None:
            return None, component
        terminals.append((component, t))
    return tuple(terminals), None


def retract_witness(W):
    """
    # First (a, e, w) exhibiting W as the splitting of the idempotent e on
    # A(-, a): every map W_e -> W is h |-> W(h)(w) for a w fixed by W(e),
    # so the search over w is complete.
    """
    A = W.base
    for a in A.objects:
        for e in A.idempotents(a):
            split = {x: tuple(h for h in A.hom(x, a) if A.compose(e, h) == h) for x in A.objects}
            for w in W.values[a]:
                if W.act(e, w) != w:
                    continue
                if all(_is_bijection(split[x], [W.act(h, w) for h in split[x]], W.values[x])
                       for x in A.objects):
                    return (a, e, w)
    return None


def _is_bijection(domain, images, codomain):
    return len(domain) == len(codomain) and set(images) == set(codomain)


def classify(W, weight_class):
    weight_class = WeightClass(weight_class)
    if weight_class in (WeightClass.SMALL, WeightClass.FINITE):
        return Classification(weight_class, True, note=FINITE_SCALE_NOTE)
    if weight_class is WeightClass.ABSOLUTE:
        found = retract_witness(W)
        return Classification(weight_class, found is not None, witness=found)
    el, _ = elements(W)
    if weight_class is WeightClass.EMPTY:
        t = has_terminal(el)
        # no terminal element: the counterexample is the whole category of elements
        return Classification(weight_class, t is not None, witness=t,
                              counterexample=None if t is not None else tuple(el.objects))
    if weight_class is WeightClass.DISCRETE:
        terminals, bad = _component_terminals(el)
        return Classification(weight_class, terminals is not None, witness=terminals, counterexample=bad)
    if weight_class is WeightClass.CONNECTED:
        components = connected_components(el)
        ok = len(components) == 1
        return Classification(weight_class, ok, witness=components[0] if ok else None,
                              counterexample=None if ok else components)
    if weight_class is WeightClass.FILTERED:
        verdict = is_filtered(el)
        return Classification(weight_class, verdict.holds, witness=verdict.witness,
                              counterexample=verdict.counterexample)
    raise UnsupportedClass(weight_class, "classify")


def _hom_to(W, target):
    """For each element (a', x'), the arrows h: a' -> a with W(h)(x) = x'."""
    A = W.base
    a, x = target
    return {(b, y): [h for h in A.hom(b, a) if W.act(h, x) == y] for b in A.objects for y in W.values[b]}


def recheck(W, classification):
    """Re-verify a classification directly; negative verdicts are recomputed."""
    tag, witness = classification.weight_class, classification.witness
    if not classification.holds:
        return not classify(W, tag).holds
    if tag in (WeightClass.SMALL, WeightClass.FINITE):
        return True
    if tag is WeightClass.EMPTY:
        return all(len(hs) == 1 for hs in _hom_to(W, witness).values())
    if tag is WeightClass.DISCRETE:
        covered = set()
        for component, t in witness:
            arrows = _hom_to(W, t)
            if any(len(arrows[o]) != 1 for o in component):
                return False
            covered.update(component)
        return covered == {(a, x) for a in W.base.objects for x in W.values[a]}
    if tag is WeightClass.CONNECTED:
        return len(connected_components(elements(W)[0])) == 1 and len(witness) == W.size()
    if tag is WeightClass.FILTERED:
        el, _ = elements(W)
        pairs, parallels = witness
        pair_ok = all(el.source[u] == x and el.target[u] == z and el.source[v] == y and el.target[v] == z
                      for x, y, z, u, v in pairs)
        para_ok = all(el.compose(w, u) == el.compose(w, v) for u, v, w in parallels)
        return bool(el.objects) and pair_ok and para_ok and len(pairs) == len(el.objects) * (len(el.objects) + 1) // 2
    if tag is WeightClass.ABSOLUTE:
        a, e, w = witness
        A = W.base
        if A.compose(e, e) != e or W.act(e, w) != w:
            return False
        for x in A.objects:
            split = [h for h in A.hom(x, a) if A.compose(e, h) == h]
            if not _is_bijection(split, [W.act(h, w) for h in split], W.values[x]):
                return False
        return True
    raise UnsupportedClass(tag, "recheck")


def karoubi_extension(W):
    """W extended to the Karoubi completion: W'(a, e) is the part of W(a) fixed by e."""
    K, _ = karoubi_completion(W.base)
    values = {o: tuple(x for x in W.values[o[0]] if W.act(o[1], x) == x) for o in K.objects}
    actions = {m: {x: W.act(m[0], x) for x in values[K.target[m]]} for m in K.morphisms}
    return Presheaf(K, values, actions, name=f"{W.name}^kar")


def representable_over_karoubi(W):
    """Second procedure for the Absolute class."""
    return classify(karoubi_extension(W), WeightClass.EMPTY).holds


def covers(W, family):
    """Whether the coproduct of representables at the family maps onto W."""
    A = W.base
    reached = set()
    for a, x in family:
        for b in A.objects:
            for h in A.hom(b, a):
                reached.add((b, W.act(h, x)))
    return all((b, y) in reached for b in A.objects for y in W.values[b])


def solution_set_witness(W):
    """Least jointly surjective family of elements, by greedy removal in input order."""
    family = [(a, x) for a in W.base.objects for x in W.values[a]]
    for element in list(family):
        rest = [e for e in family if e != element]
        if covers(W, rest):
            family = rest
    return tuple(family)


def enumerate_presheaves(A, max_size):
    """Every presheaf on A with value sets {x0, x1, ...} of size at most max_size."""
    arrows = [m for m in A.morphisms if not A.is_identity(m)]
    position = {m: i for i, m in enumerate(arrows)}
    checks = [[] for _ in arrows]
    for g in arrows:
        for f in A.hom_into(A.source[g]):
            if A.is_identity(f):
                continue
            h = A.compose(g, f)
            slots = [position[g], position[f]] + ([] if A.is_identity(h) else [position[h]])
            checks[max(slots)].append((g, f, h))
    for sizes in itertools.product(range(max_size + 1), repeat=len(A.objects)):
        values = {a: tuple(f"x{i}" for i in range(n)) for a, n in zip(A.objects, sizes)}
        actions = {A.identity[a]: {x: x for x in values[a]} for a in A.objects}

        def extend(i):
            if i == len(arrows):
                yield Presheaf(A, values, {m: dict(act) for m, act in actions.items()})
                return
            m = arrows[i]
            dom, cod = values[A.target[m]], values[A.source[m]]
            for images in itertools.product(cod, repeat=len(dom)):
                actions[m] = dict(zip(dom, images))
                if all(
                    all(actions[h][x] == actions[f][actions[g][x]] for x in values[A.target[g]])
                    for g, f, h in checks[i]
                ):
                    yield from extend(i + 1)
            actions.pop(m, None)

        yield from extend(0)
