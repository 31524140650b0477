"""Finite categories given by explicit composition tables.

Objects and morphisms are arbitrary hashable ids; the order in which a
category lists them is the "input order" every witness search follows, so
all outputs are deterministic.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, NamedTuple

from aftlab.errors import (
    AssociativityError,
    FunctorLawError,
    IdentityLawError,
    NaturalityError,
    ObjectNotFound,
    ShapeMismatch,
    UndefinedCompositeError,
)

log = logging.getLogger(__name__)


def label(x):
    """Flat text name for a (possibly nested) id."""
    if isinstance(x, tuple):
        return "(" + ",".join(label(part) for part in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure: the answer plus whatever proves it."""

    holds: bool
    witness: Any = None
    counterexample: Any = None
    note: str = ""

    def __bool__(self):
        return self.holds


class Category:

    """
    :param objects: ordered object ids
    :param morphisms: ordered (id, source, target) records, identities included
    :param identity: object -> its identity morphism
    :param table: (later, earlier) -> composite, one entry per composable pair
    """
    def __init__(self, objects, morphisms, identity, table, name="C"):
        self.name = name
        self.objects = tuple(objects)
        records = tuple((m, s, t) for m, s, t in morphisms)
        self.morphisms = tuple(m for m, _, _ in records)
        self.source = {m: s for m, s, _ in records}
        self.target = {m: t for m, _, t in records}
        self.identity = dict(identity)
        self.table = dict(table)
        self._records = records
        self._object_index = {o: i for i, o in enumerate(self.objects)}
        self._morphism_index = {m: i for i, m in enumerate(self.morphisms)}
        self._identities = frozenset(self.identity.values())
        hom = {}
        for m, s, t in records:
            hom.setdefault((s, t), []).append(m)
        self._hom = {key: tuple(ms) for key, ms in hom.items()}
        self._into = {o: tuple(m for m, _, t in records if t == o) for o in self.objects}
        self._out = {o: tuple(m for m, s, _ in records if s == o) for o in self.objects}
        self._key = None
        self._hash = None

    """
    # Builds a category from its non-identity arrows.
    # Identities are named id_<object> and their composites are filled in;
    # explicit composites are kept as given so that validation can see them.
    """
    @classmethod
    def build(cls, objects, arrows, composites, name="C"):
        identity = {o: f"id_{label(o)}" for o in objects}
        records = [(identity[o], o, o) for o in objects] + [tuple(a) for a in arrows]
        table = dict(composites)
        for m, s, t in records:
            table.setdefault((identity[t], m), m)
            table.setdefault((m, identity[s]), m)
        return cls(objects, records, identity, table, name=name)

    def hom(self, x, y):
        return self._hom.get((x, y), ())

    def compose(self, g, f):
        """g after f."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise UndefinedCompositeError(g, f) from None

    def compose_path(self, *path):
        """Composite of a path written later-first, like g . f."""
        result = path[-1]
        for m in reversed(path[:-1]):
            result = self.compose(m, result)
        return result

    def is_identity(self, m):
        return m in self._identities

    def index(self, obj):
        try:
            return self._object_index[obj]
        except KeyError:
            raise ObjectNotFound(obj, self.name) from None

    def morphism_index(self, m):
        return self._morphism_index[m]

    def has_object(self, obj):
        return obj in self._object_index

    def inverse(self, m):
        """Two-sided inverse of m found by search, or None."""
        s, t = self.source[m], self.target[m]
        for n in self.hom(t, s):
            if self.compose(n, m) == self.identity[s] and self.compose(m, n) == self.identity[t]:
                return n
        return None

    def is_isomorphism(self, m):
        return self.inverse(m) is not None

    def idempotents(self, obj):
        return tuple(e for e in self.hom(obj, obj) if self.compose(e, e) == e)

    def is_preorder(self):
        return all(len(ms) <= 1 for ms in self._hom.values())

    def is_discrete(self):
        return all(self.is_identity(m) for m in self.morphisms)

    def records(self):
        return self._records

    def check_laws(self):
        """Every violated category law, in a fixed order."""
        problems = []
        for o in self.objects:
            i = self.identity.get(o)
            if i is None or self.source.get(i) != o or self.target.get(i) != o:
                problems.append(IdentityLawError(i if i is not None else o,
                                                 "identity has wrong source/target"))
        if problems:
            return problems
        for g in self.morphisms:
            for f in self.hom_into(self.source[g]):
                h = self.table.get((g, f))
                if h is None:
                    problems.append(UndefinedCompositeError(g, f))
                elif self.source.get(h) != self.source[f] or self.target.get(h) != self.target[g]:
                    problems.append(UndefinedCompositeError(g, f))
        if problems:
            return problems
        for f in self.morphisms:
            s, t = self.source[f], self.target[f]
            if self.table[(self.identity[t], f)] != f or self.table[(f, self.identity[s])] != f:
                problems.append(IdentityLawError(f))
        for f in self.morphisms:
            for g in self.hom_out(self.target[f]):
                gf = self.table[(g, f)]
                for h in self.hom_out(self.target[g]):
                    if self.table[(self.table[(h, g)], f)] != self.table[(h, gf)]:
                        problems.append(AssociativityError(h, g, f))
        return problems

    def hom_into(self, obj):
        return self._into.get(obj, ())

    def hom_out(self, obj):
        return self._out.get(obj, ())

    def key(self):
        if self._key is None:
            table = tuple(
                (g, f, self.table[(g, f)])
                for g in self.morphisms for f in self.hom_into(self.source[g])
                if (g, f) in self.table
            )
            self._key = (self.objects, self._records,
                         tuple(self.identity.get(o) for o in self.objects), table)
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Category):
            return NotImplemented
        return hash(self) == hash(other) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"Category({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


class Functor:

    """
    :param source: Category
    :param target: Category
    :param object_map: total map on source objects
    :param morphism_map: total map on source morphisms; identities may be left out
    """
    def __init__(self, source, target, object_map, morphism_map, name="F"):
        self.source = source
        self.target = target
        self.name = name
        self.object_map = {o: object_map[o] for o in source.objects}
        full = dict(morphism_map)
        for o in source.objects:
            full.setdefault(source.identity[o], target.identity[self.object_map[o]])
        self.morphism_map = {m: full[m] for m in source.morphisms}

    def ob(self, x):
        return self.object_map[x]

    def mor(self, m):
        return self.morphism_map[m]

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ShapeMismatch(f"cannot compose {self.name} after {other.name}")
        return Functor(
            other.source, self.target,
            {o: self.ob(other.ob(o)) for o in other.source.objects},
            {m: self.mor(other.mor(m)) for m in other.source.morphisms},
            name=f"{self.name}{other.name}",
        )

    def check_laws(self):
        A, B = self.source, self.target
        for m in A.morphisms:
            fm = self.morphism_map[m]
            if B.source.get(fm) != self.ob(A.source[m]) or B.target.get(fm) != self.ob(A.target[m]):
                raise FunctorLawError(f"{self.name} sends {m} to {fm} with the wrong ends")
        for o in A.objects:
            if self.mor(A.identity[o]) != B.identity[self.ob(o)]:
                raise FunctorLawError(f"{self.name} does not preserve the identity of {o}")
        for g in A.morphisms:
            for f in A.hom_into(A.source[g]):
                if self.mor(A.compose(g, f)) != B.compose(self.mor(g), self.mor(f)):
                    raise FunctorLawError(f"{self.name} does not preserve {g} . {f}")
        return self

    def key(self):
        return (self.source, self.target,
                tuple(self.object_map[o] for o in self.source.objects),
                tuple(self.morphism_map[m] for m in self.source.morphisms))

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Functor({self.name!r}: {self.source.name} -> {self.target.name})"


def identity_functor(C):
    return Functor(C, C, {o: o for o in C.objects}, {m: m for m in C.morphisms}, name="1")


def constant_functor(J, C, c):
    return Functor(J, C, {j: c for j in J.objects},
                   {u: C.identity[c] for u in J.morphisms}, name=f"const_{label(c)}")


def terminal_category(obj="*"):
    return Category.build([obj], [], {}, name="1")


def full_subcategory(C, objects):
    keep = set(objects)
    objs = [o for o in C.objects if o in keep]
    records = [r for r in C.records() if r[1] in keep and r[2] in keep]
    kept = {r[0] for r in records}
    table = {k: h for k, h in C.table.items() if k[0] in kept and k[1] in kept}
    sub = Category(objs, records, {o: C.identity[o] for o in objs}, table, name=f"{C.name}|sub")
    inclusion = Functor(sub, C, {o: o for o in objs}, {m: m for m in sub.morphisms}, name="incl")
    return sub, inclusion


class NaturalTransformation:

    """
    :param source: Functor F
    :param target: Functor G with the same source and target categories as F
    :param components: object -> morphism F x -> G x of the target category
    """
    def __init__(self, source, target, components, name="alpha"):
        if source.source != target.source or source.target != target.target:
            raise ShapeMismatch(f"{name}: {source.name} and {target.name} are not parallel")
        self.source = source
        self.target = target
        self.name = name
        self.components = {o: components[o] for o in source.source.objects}
        C = source.target
        for o, m in self.components.items():
            if C.source.get(m) != source.ob(o) or C.target.get(m) != target.ob(o):
                raise ShapeMismatch(f"{name} component at {label(o)} has the wrong ends")

    def __getitem__(self, obj):
        return self.components[obj]

    def naturality_failure(self):
        """First morphism whose naturality square fails, or None."""
        A, C = self.source.source, self.source.target
        for m in A.morphisms:
            s, t = A.source[m], A.target[m]
            if C.compose(self[t], self.source.mor(m)) != C.compose(self.target.mor(m), self[s]):
                return m
        return None

    def check_naturality(self):
        m = self.naturality_failure()
        if m is not None:
            raise NaturalityError(m)
        return self

    def then(self, other):
        """Vertical composite: self first, then other."""
        if self.target != other.source:
            raise ShapeMismatch(f"cannot follow {self.name} by {other.name}")
        C = self.source.target
        return NaturalTransformation(
            self.source, other.target,
            {o: C.compose(other[o], self[o]) for o in self.components},
            name=f"{other.name}.{self.name}",
        )

    def whisker_left(self, H):
        """alpha H: components alpha at H x."""
        return NaturalTransformation(
            self.source.compose(H), self.target.compose(H),
            {o: self[H.ob(o)] for o in H.source.objects},
            name=f"{self.name}{H.name}",
        )

    def whisker_right(self, H):
        """H alpha: components H(alpha x)."""
        return NaturalTransformation(
            H.compose(self.source), H.compose(self.target),
            {o: H.mor(m) for o, m in self.components.items()},
            name=f"{H.name}{self.name}",
        )

    def first_non_invertible(self):
        C = self.source.target
        for o in self.source.source.objects:
            if C.inverse(self[o]) is None:
                return o
        return None

    def inverse(self):
        C = self.source.target
        inverses = {}
        for o, m in self.components.items():
            n = C.inverse(m)
            if n is None:
                return None
            inverses[o] = n
        return NaturalTransformation(self.target, self.source, inverses, name=f"{self.name}^-1")

    @staticmethod
    def identity(F):
        return NaturalTransformation(F, F, {o: F.target.identity[F.ob(o)] for o in F.source.objects},
                                     name=f"1_{F.name}")

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.source, self.target, self.components) == (other.source, other.target, other.components)

    def __repr__(self):
        return f"NaturalTransformation({self.name!r}: {self.source.name} => {self.target.name})"


@dataclass(frozen=True)
class Diagram:
    functor: Functor

    @property
    def shape(self):
        return self.functor.source

    @property
    def target(self):
        return self.functor.target


@dataclass(frozen=True)
class Cocone:
    diagram: Diagram
    apex: Any
    legs: tuple  # one leg per shape object, in shape order

    def leg(self, j):
        return self.legs[self.diagram.shape.index(j)]

    def is_cocone(self):
        F = self.diagram.functor
        J, C = F.source, F.target
        return all(
            C.compose(self.leg(J.target[u]), F.mor(u)) == self.leg(J.source[u])
            for u in J.morphisms
        )


@dataclass(frozen=True)
class Colimit:
    cocone: Cocone
    mediators: tuple  # (other cocone, unique mediating morphism) for every cocone


def _cocone_legs(diagram, apex):
    F = diagram.functor
    J, C = F.source, F.target
    order = J.objects
    position = {j: i for i, j in enumerate(order)}
    checks = [[] for _ in order]
    for u in J.morphisms:
        if J.is_identity(u):
            continue
        j, k = J.source[u], J.target[u]
        checks[max(position[j], position[k])].append((F.mor(u), j, k))
    legs = {}

    def extend(i):
        if i == len(order):
            yield tuple(legs[j] for j in order)
            return
        j = order[i]
        for m in C.hom(F.ob(j), apex):
            legs[j] = m
            if all(C.table[(legs[k], du)] == legs[jj] for du, jj, k in checks[i]):
                yield from extend(i + 1)
        legs.pop(j, None)

    yield from extend(0)


def cocones(diagram, apex=None):
    """Every cocone over the diagram, apexes in object order, legs lexicographic."""
    apexes = diagram.target.objects if apex is None else (apex,)
    return tuple(Cocone(diagram, c, legs) for c in apexes for legs in _cocone_legs(diagram, c))


def mediators(cocone, other):
    C = cocone.diagram.target
    return tuple(
        m for m in C.hom(cocone.apex, other.apex)
        if all(C.table[(m, leg)] == leg2 for leg, leg2 in zip(cocone.legs, other.legs))
    )


def is_universal(cocone, every=None):
    """A cocone is universal when it maps uniquely into every cocone."""
    every = cocones(cocone.diagram) if every is None else every
    found = []
    for other in every:
        ms = mediators(cocone, other)
        if len(ms) != 1:
            return Verdict(False, counterexample=(other, ms))
        found.append((other, ms[0]))
    return Verdict(True, witness=tuple(found))


def colimit(diagram):
    """The lexicographically least universal cocone, or None."""
    every = cocones(diagram)
    for candidate in every:
        verdict = is_universal(candidate, every)
        if verdict:
            return Colimit(candidate, verdict.witness)
    return None


def has_terminal(C):
    for o in C.objects:
        if all(len(C.hom(x, o)) == 1 for x in C.objects):
            return o
    return None


def has_initial(C):
    for o in C.objects:
        if all(len(C.hom(o, x)) == 1 for x in C.objects):
            return o
    return None


def connected_components(C):
    parent = {o: o for o in C.objects}

    def find(o):
        while parent[o] != o:
            parent[o] = parent[parent[o]]
            o = parent[o]
        return o

    for m in C.morphisms:
        a, b = find(C.source[m]), find(C.target[m])
        if a != b:
            # the root is always the earliest object of its class
            if C.index(a) < C.index(b):
                parent[b] = a
            else:
                parent[a] = b
    groups = {}
    for o in C.objects:
        groups.setdefault(find(o), []).append(o)
    return tuple(tuple(g) for g in groups.values())


def is_filtered(C):
    """
    # Filtered: nonempty, every pair of objects has a cocone object, every
    # parallel pair is equalized by some arrow out of its target.
    # Witness: (pair certificates, parallel-pair certificates).
    """
    if not C.objects:
        return Verdict(False, counterexample=("empty",))
    pairs = []
    for x, y in itertools.combinations_with_replacement(C.objects, 2):
        z = next((z for z in C.objects if C.hom(x, z) and C.hom(y, z)), None)
        if z is None:
            return Verdict(False, counterexample=("pair", x, y))
        pairs.append((x, y, z, C.hom(x, z)[0], C.hom(y, z)[0]))
    parallels = []
    for x in C.objects:
        for y in C.objects:
            for u, v in itertools.combinations(C.hom(x, y), 2):
                w = next((w for w in C.hom_out(y) if C.compose(w, u) == C.compose(w, v)), None)
                if w is None:
                    return Verdict(False, counterexample=("parallel", u, v))
                parallels.append((u, v, w))
    return Verdict(True, witness=(tuple(pairs), tuple(parallels)))


def opposite(C):
    return Category(
        C.objects,
        [(m, t, s) for m, s, t in C.records()],
        C.identity,
        {(f, g): h for (g, f), h in C.table.items()},
        name=f"{C.name}^op",
    )


class Comma(NamedTuple):
    category: Category
    first: Functor   # projection to the source of F
    second: Functor  # projection to the source of G


def comma(F, G):
    """(F | G): objects (a, b, h: Fa -> Gb), morphisms commuting squares."""
    if F.target != G.target:
        raise ShapeMismatch(f"{F.name} and {G.name} do not share a target")
    A, B, C = F.source, G.source, F.target
    objects = [(a, b, h) for a in A.objects for b in B.objects for h in C.hom(F.ob(a), G.ob(b))]
    records = []
    for o in objects:
        a, b, h = o
        for o2 in objects:
            a2, b2, h2 = o2
            for u in A.hom(a, a2):
                for v in B.hom(b, b2):
                    if C.compose(G.mor(v), h) == C.compose(h2, F.mor(u)):
                        records.append(((u, v, o, o2), o, o2))
    identity = {o: (A.identity[o[0]], B.identity[o[1]], o, o) for o in objects}
    by_source = {}
    for r in records:
        by_source.setdefault(r[1], []).append(r[0])
    table = {}
    for f, s, t in records:
        for g in by_source.get(t, ()):
            table[(g, f)] = (A.compose(g[0], f[0]), B.compose(g[1], f[1]), s, g[3])
    K = Category(objects, records, identity, table, name=f"({F.name}|{G.name})")
    first = Functor(K, A, {o: o[0] for o in objects}, {r[0]: r[0][0] for r in records}, name="P")
    second = Functor(K, B, {o: o[1] for o in objects}, {r[0]: r[0][1] for r in records}, name="Q")
    return Comma(K, first, second)


def karoubi_completion(A):
    """Free splitting of idempotents, with the full embedding a -> (a, 1)."""
    objects = [(a, e) for a in A.objects for e in A.idempotents(a)]
    records = []
    for o in objects:
        for o2 in objects:
            for h in A.hom(o[0], o2[0]):
                if A.compose_path(o2[1], h, o[1]) == h:
                    records.append(((h, o, o2), o, o2))
    identity = {o: (o[1], o, o) for o in objects}
    by_source = {}
    for r in records:
        by_source.setdefault(r[1], []).append(r[0])
    table = {}
    for f, s, t in records:
        for g in by_source.get(t, ()):
            table[(g, f)] = (A.compose(g[0], f[0]), s, g[2])
    K = Category(objects, records, identity, table, name=f"Kar({A.name})")
    unit = {a: (a, A.identity[a]) for a in A.objects}
    embedding = Functor(A, K, unit, {m: (m, unit[A.source[m]], unit[A.target[m]]) for m in A.morphisms},
                        name="y")
    return K, embedding


def idempotents_split(C):
    """Every idempotent e: x -> x factors as s . r with r . s = 1."""
    witness = {}
    for x in C.objects:
        for e in C.idempotents(x):
            found = None
            for y in C.objects:
                for r in C.hom(x, y):
                    for s in C.hom(y, x):
                        if C.compose(s, r) == e and C.compose(r, s) == C.identity[y]:
                            found = (y, r, s)
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                return Verdict(False, counterexample=e)
            witness[e] = found
    return Verdict(True, witness=witness)


def enumerate_functors(A, B):
    """Every functor A -> B, objects then non-identity morphisms in order."""
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
    for images in itertools.product(B.objects, repeat=len(A.objects)):
        obj = dict(zip(A.objects, images))
        mor = {A.identity[o]: B.identity[obj[o]] for o in A.objects}

        def extend(i):
            if i == len(arrows):
                yield Functor(A, B, obj, dict(mor))
                return
            m = arrows[i]
            for n in B.hom(obj[A.source[m]], obj[A.target[m]]):
                mor[m] = n
                if all(mor[h] == B.table[(mor[g], mor[f])] for g, f, h in checks[i]):
                    yield from extend(i + 1)
            mor.pop(m, None)

        yield from extend(0)


def _assoc_violated(table, out, tgt):
    for (g, f), gf in table.items():
        for h in out[tgt[g]]:
            hg = table.get((h, g))
            if hg is None:
                continue
            left = table.get((hg, f))
            right = table.get((h, gf))
            if left is not None and right is not None and left != right:
                return True
    return False


@lru_cache(maxsize=None)
def enumerate_categories(max_morphisms, acyclic=False):
    """
    # Every labelled finite category with at most max_morphisms morphisms
    # (identities counted). Objects are o0, o1, ...; arrows are listed by
    # (source, target) in non-decreasing order so relabelled copies of the same
    # arrow multiset are generated once. With acyclic=True only categories whose
    # arrows run from lower to higher objects are produced.
    """
    prefix = "j" if acyclic else "o"
    found = [Category([], [], {}, {}, name="0")]
    for total in range(1, max_morphisms + 1):
        for k in range(1, total + 1):
            m = total - k
            objects = [f"{prefix}{i}" for i in range(k)]
            if acyclic:
                slots = [(s, t) for s in objects for t in objects if objects.index(s) < objects.index(t)]
            else:
                slots = [(s, t) for s in objects for t in objects]
            for ends in itertools.combinations_with_replacement(slots, m):
                found.extend(_tables_for(objects, ends, prefix, len(found)))
    log.debug("enumerated %d categories up to %d morphisms (acyclic=%s)", len(found), max_morphisms, acyclic)
    return tuple(found)


def _tables_for(objects, ends, prefix, serial):
    identity = {o: f"id_{o}" for o in objects}
    arrows = [(f"{'u' if prefix == 'j' else 'm'}{i}", s, t) for i, (s, t) in enumerate(ends)]
    records = [(identity[o], o, o) for o in objects] + arrows
    base = {}
    for name, s, t in records:
        base[(identity[t], name)] = name
        base[(name, identity[s])] = name
    pairs = [(g, f) for g, gs, _ in arrows for f, _, ft in arrows if ft == gs]
    hom = {}
    for name, s, t in records:
        hom.setdefault((s, t), []).append(name)
    src = {name: s for name, s, _ in records}
    tgt = {name: t for name, _, t in records}
    leaving = {o: [name for name, s, _ in records if s == o] for o in objects}
    found = []
    table = dict(base)

    def extend(i):
        if i == len(pairs):
            found.append(Category(objects, records, identity, dict(table), name=f"cat{serial + len(found)}"))
            return
        g, f = pairs[i]
        for h in hom.get((src[f], tgt[g]), ()):
            table[(g, f)] = h
            if not _assoc_violated(table, leaving, tgt):
                extend(i + 1)
            del table[(g, f)]

    extend(0)
    return found


def validate_category(raw):
    """
    # Parses (when given text) and validates a category description.
    # Raises the first violated law; its `violations` lists all of them.
    """
    from aftlab.formats import parse_category

    if isinstance(raw, str):
        raw = parse_category(raw)
    C = Category.build(raw.objects, raw.arrows, raw.composites, name=raw.name)
    problems = C.check_laws()
    if problems:
        first = problems[0]
        first.violations = tuple(problems)
        log.debug("%s: %d law violations", raw.name, len(problems))
        raise first
    return C
