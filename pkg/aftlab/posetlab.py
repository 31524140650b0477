"""Posets and lattices: Galois connections, downset completion, left extension
along the principal-downset embedding, and the presentable adjoint functor
check.

Posets keep a boolean relation matrix instead of a composition table, which is
what makes exhaustive lattice enumeration cheap; `as_category` and
`from_category` bridge to fincat.
"""
import itertools
import logging
from functools import lru_cache

import numpy as np

from aftlab.errors import NotCompleteLattice, OrderError, ShapeMismatch
from aftlab.fincat import Category, Functor, Verdict, label

log = logging.getLogger(__name__)


class Poset:

    """
    :param elements: ordered element ids
    :param leq: boolean matrix, leq[i, j] iff elements[i] <= elements[j]
    """
    def __init__(self, elements, leq, name="P"):
        self.name = name
        self.elements = tuple(elements)
        self.leq = np.array(leq, dtype=bool).reshape(len(self.elements), len(self.elements))
        self.leq.setflags(write=False)
        self._index = {x: i for i, x in enumerate(self.elements)}

    @classmethod
    def from_relation(cls, elements, pairs, name="P"):
        """Reflexive-transitive closure of the given pairs; antisymmetry is checked."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            leq[index[a], index[b]] = True
        for k in range(n):
            leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
        clash = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
        if len(clash):
            i, j = clash[0]
            raise OrderError(f"{label(elements[i])} and {label(elements[j])} are below each other")
        return cls(elements, leq, name=name)

    def index(self, x):
        return self._index[x]

    def le(self, a, b):
        return bool(self.leq[self._index[a], self._index[b]])

    def upper_bounds(self, subset):
        idx = [self._index[x] for x in subset]
        mask = np.all(self.leq[idx, :], axis=0) if idx else np.ones(len(self.elements), dtype=bool)
        return [self.elements[i] for i in np.flatnonzero(mask)]

    def lower_bounds(self, subset):
        idx = [self._index[x] for x in subset]
        mask = np.all(self.leq[:, idx], axis=1) if idx else np.ones(len(self.elements), dtype=bool)
        return [self.elements[i] for i in np.flatnonzero(mask)]

    def join(self, subset):
        ups = self.upper_bounds(subset)
        for u in ups:
            if all(self.le(u, v) for v in ups):
                return u
        return None

    def meet(self, subset):
        downs = self.lower_bounds(subset)
        for d in downs:
            if all(self.le(v, d) for v in downs):
                return d
        return None

    def bottom(self):
        return self.join(())

    def top(self):
        return self.meet(())

    def missing_join(self):
        """A subset without a join, or None. Empty and binary joins suffice for finite posets."""
        if self.bottom() is None:
            return ()
        for a, b in itertools.combinations(self.elements, 2):
            if self.join((a, b)) is None:
                return (a, b)
        return None

    def is_complete_lattice(self):
        return self.missing_join() is None

    def require_complete(self):
        missing = self.missing_join()
        if missing is not None:
            raise NotCompleteLattice(missing)
        return self

    def downset(self, x):
        i = self._index[x]
        return tuple(self.elements[j] for j in np.flatnonzero(self.leq[:, i]))

    def covers(self):
        """Hasse diagram edges (a, b) with b covering a."""
        edges = []
        for a in self.elements:
            for b in self.elements:
                if a != b and self.le(a, b) and not any(
                    c not in (a, b) and self.le(a, c) and self.le(c, b) for c in self.elements
                ):
                    edges.append((a, b))
        return edges

    def key(self):
        return (self.elements, self.leq.tobytes())

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({self.name!r}, {len(self.elements)} elements)"


class MonotoneMap:
    def __init__(self, source, target, mapping, name="f"):
        self.source = source
        self.target = target
        self.name = name
        self.mapping = {x: mapping[x] for x in source.elements}

    def __call__(self, x):
        return self.mapping[x]

    def is_monotone(self):
        return all(
            self.target.le(self(a), self(b))
            for a in self.source.elements for b in self.source.elements if self.source.le(a, b)
        )

    def compose(self, other):
        """self after other."""
        return MonotoneMap(other.source, self.target, {x: self(other(x)) for x in other.source.elements},
                           name=f"{self.name}{other.name}")

    def key(self):
        return (self.source, self.target, tuple(self.mapping[x] for x in self.source.elements))

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        pairs = ", ".join(f"{label(x)}->{label(y)}" for x, y in self.mapping.items())
        return f"MonotoneMap({self.name}: {pairs})"


def chain(n, name=None):
    names = {2: ("bot", "top"), 3: ("bot", "mid", "top")}.get(n, tuple(f"c{i}" for i in range(n)))
    return Poset.from_relation(names, zip(names, names[1:]), name=name or f"chain{n}")


def discrete(elements, name="discrete"):
    return Poset.from_relation(elements, (), name=name)


def disjoint_union(*posets, name=None):
    elements, pairs = [], []
    for k, P in enumerate(posets):
        tag = {x: f"{label(x)}_{k}" for x in P.elements}
        elements.extend(tag[x] for x in P.elements)
        pairs.extend((tag[a], tag[b]) for a in P.elements for b in P.elements if P.le(a, b))
    return Poset.from_relation(elements, pairs, name=name or "+".join(P.name for P in posets))


def downset_completion(P):
    """Downsets ordered by inclusion (each a tuple in P's order), with the unit p -> down(p)."""
    n = len(P)
    downsets = []
    for mask in range(1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if all(mask >> j & 1 for i in members for j in np.flatnonzero(P.leq[:, i])):
            downsets.append(tuple(P.elements[i] for i in members))
    downsets.sort(key=lambda s: (len(s), [P.index(x) for x in s]))
    pairs = [(s, t) for s in downsets for t in downsets if set(s) <= set(t)]
    D = Poset.from_relation(downsets, pairs, name=f"D({P.name})")
    unit = MonotoneMap(P, D, {p: P.downset(p) for p in P.elements}, name="down")
    return D, unit


def preserves_all_joins(f):
    """For finite lattices preserving the empty join and binary joins is preserving all joins."""
    P, L = f.source, f.target
    if f(P.bottom()) != L.bottom():
        return Verdict(False, counterexample=())
    for a, b in itertools.combinations(P.elements, 2):
        if f(P.join((a, b))) != L.join((f(a), f(b))):
            return Verdict(False, counterexample=(a, b))
    return Verdict(True)


def _is_galois(f, g):
    P, L = f.source, f.target
    return all(L.le(f(a), b) == P.le(a, g(b)) for a in P.elements for b in L.elements)


def galois_right_adjoint(f):
    """g(b) = join {a : f a <= b} when f preserves all joins; verified pointwise."""
    f.source.require_complete()
    f.target.require_complete()
    joins = preserves_all_joins(f)
    if not joins:
        return joins
    P, L = f.source, f.target
    g = MonotoneMap(L, P, {b: P.join([a for a in P.elements if L.le(f(a), b)]) for b in L.elements},
                    name=f"{f.name}*")
    if not _is_galois(f, g):
        raise AssertionError(f"join formula failed to give a right adjoint of {f.name}")
    return Verdict(True, witness=g)


def brute_force_right_adjoint(f):
    """
    # Search every candidate value of a right adjoint independently at each b:
    # the Galois condition f a <= b iff a <= g b only involves g(b).
    """
    P, L = f.source, f.target
    chosen = {}
    for b in L.elements:
        below = {a for a in P.elements if L.le(f(a), b)}
        found = [c for c in P.elements if {a for a in P.elements if P.le(a, c)} == below]
        if not found:
            return None
        chosen[b] = found[0]
    return MonotoneMap(L, P, chosen, name=f"{f.name}*")


def extend_along_yoneda(f, D=None):
    """Left extension of f: P -> L along P -> D(P): a set goes to the join of its image."""
    L = f.target.require_complete()
    if D is None:
        D, _ = downset_completion(f.source)
    return MonotoneMap(D, L, {S: L.join([f(p) for p in S]) for S in D.elements}, name=f"ext({f.name})")


def _same_order(A, B):
    return tuple(A.elements) == tuple(B.elements) and np.array_equal(A.leq, B.leq)


def presentable_aft_check(P, L, g):
    """
    # Maps out of D(P) are the poset shadow of maps out of a presentable
    # object: g is left adjoint iff it preserves all joins. Both sides are
    # computed independently and compared. g must run from D(P) to L.
    """
    D, _ = downset_completion(P)
    if not (_same_order(g.source, D) and _same_order(g.target, L)):
        raise ShapeMismatch(f"{g.name} does not run from {D.name} to {L.name}")
    cocontinuous = preserves_all_joins(g).holds
    left_adjoint = brute_force_right_adjoint(g) is not None
    return cocontinuous == left_adjoint


def monotone_maps(P, Q):
    """Every monotone map P -> Q, lexicographic in Q's order."""
    elements = P.elements
    chosen = {}

    def extend(i):
        if i == len(elements):
            yield MonotoneMap(P, Q, dict(chosen))
            return
        x = elements[i]
        for y in Q.elements:
            if all(
                (not P.le(elements[j], x) or Q.le(chosen[elements[j]], y))
                and (not P.le(x, elements[j]) or Q.le(y, chosen[elements[j]]))
                for j in range(i)
            ):
                chosen[x] = y
                yield from extend(i + 1)
        chosen.pop(x, None)

    yield from extend(0)


def _canonical(leq):
    n = leq.shape[0]
    return min(leq[np.ix_(p, p)].tobytes() for p in itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def enumerate_posets(max_size):
    """One naturally labelled representative per isomorphism class, sizes 0..max_size."""
    found = []
    for n in range(max_size + 1):
        strict = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        for mask in range(1 << len(strict)):
            leq = np.eye(n, dtype=bool)
            for bit, (i, j) in enumerate(strict):
                if mask >> bit & 1:
                    leq[i, j] = True
            if not np.array_equal(leq, leq | (leq.astype(np.uint8) @ leq.astype(np.uint8) > 0)):
                continue
            key = _canonical(leq)
            if key in seen:
                continue
            seen.add(key)
            found.append(Poset([f"e{i}" for i in range(n)], leq, name=f"poset{n}_{len(seen)}"))
    log.debug("enumerated %d posets up to size %d", len(found), max_size)
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_lattices(max_size):
    lattices = []
    for P in enumerate_posets(max_size):
        if len(P) and P.is_complete_lattice():
            lattices.append(Poset(P.elements, P.leq, name=f"lattice{len(P)}_{len(lattices)}"))
    return tuple(lattices)


def closure_operators(P):
    """Monotone, extensive, idempotent maps P -> P."""
    return tuple(
        c for c in monotone_maps(P, P)
        if all(P.le(x, c(x)) and c(c(x)) == c(x) for x in P.elements)
    )


def reflective_subposet(P, c):
    """Fixed points of the closure c with the reflection P -> Fix(c) and the inclusion back."""
    fixed = [x for x in P.elements if c(x) == x]
    X = Poset.from_relation(fixed, [(a, b) for a in fixed for b in fixed if P.le(a, b)], name=f"Fix({P.name})")
    reflection = MonotoneMap(P, X, {x: c(x) for x in P.elements}, name="l")
    inclusion = MonotoneMap(X, P, {x: x for x in fixed}, name="r")
    return X, reflection, inclusion


def arrow_name(a, b):
    return f"{label(a)}<={label(b)}"


def as_category(P):
    strict = [(a, b) for a in P.elements for b in P.elements if a != b and P.le(a, b)]
    arrows = [(arrow_name(a, b), a, b) for a, b in strict]
    composites = {
        (arrow_name(b, c), arrow_name(a, b)): arrow_name(a, c)
        for a, b in strict for b2, c in strict if b2 == b
    }
    return Category.build(P.elements, arrows, composites, name=P.name)


def as_functor(f, source=None, target=None):
    A = source or as_category(f.source)
    B = target or as_category(f.target)
    morphisms = {}
    for m in A.morphisms:
        a, b = A.source[m], A.target[m]
        fa, fb = f(a), f(b)
        morphisms[m] = B.identity[fa] if fa == fb else arrow_name(fa, fb)
    return Functor(A, B, dict(f.mapping), morphisms, name=f.name)


def from_category(C):
    """The poset a skeletal preorder category encodes, or None."""
    if not C.is_preorder():
        return None
    n = len(C.objects)
    leq = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(C.objects):
        for j, y in enumerate(C.objects):
            leq[i, j] = bool(C.hom(x, y))
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        return None
    return Poset(C.objects, leq, name=C.name)


def monotone_from_functor(F, source=None, target=None):
    P = source or from_category(F.source)
    Q = target or from_category(F.target)
    return MonotoneMap(P, Q, dict(F.object_map), name=F.name)
