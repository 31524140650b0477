"""Instance-by-instance harness for the relative adjoint functor theorem.

For a table pair (psi, phi) and a functor f whose source and target are
psi-cocomplete up to the bound, the two sides compared are

    lhs  f is phi-admissible
    rhs  f is small-admissible and psi-cocontinuous

Small-admissibility is constant true for finite presheaves; it is evaluated
anyway so the degeneracy shows up in every record.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Any, Optional

from aftlab import config
from aftlab.adjunction import find_right_adjoint, is_phi_admissible, solution_set_condition
from aftlab.errors import PreconditionFailure
from aftlab.fincat import enumerate_categories, enumerate_functors, full_subcategory
from aftlab.posetlab import (
    MonotoneMap,
    as_category,
    as_functor,
    disjoint_union,
    enumerate_lattices,
    monotone_maps,
    preserves_all_joins,
)
from aftlab.presheaf import FINITE_SCALE_NOTE, WeightClass
from aftlab.weights import is_cocomplete, is_cocontinuous, table_pair

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Profile:
    name: str
    psi: WeightClass
    phi: WeightClass
    size_bound: int
    family: str                 # lattice | components | categories
    max_size: int = config.MAX_LATTICE_SIZE
    components: int = 1
    exhaustive: bool = False


PROFILES = {
    p.name: p
    for p in (
        Profile("adjoint", WeightClass.SMALL, WeightClass.EMPTY, 3, "lattice"),
        Profile("semiadjoint", WeightClass.SMALL, WeightClass.ABSOLUTE, 3, "lattice"),
        Profile("pluriadjoint", WeightClass.FINITE, WeightClass.FILTERED, 3, "lattice"),
        Profile("multiadjoint", WeightClass.CONNECTED, WeightClass.DISCRETE, 5, "components",
                max_size=3, components=config.MAX_COMPONENTS),
        Profile("virtual", WeightClass.EMPTY, WeightClass.SMALL, 3, "categories",
                max_size=config.RANDOM_CATEGORY_MORPHISMS),
        Profile("lattice", WeightClass.SMALL, WeightClass.EMPTY, 3, "lattice",
                max_size=config.EXHAUSTIVE_LATTICE_SIZE, exhaustive=True),
    )
}


def profile_for(psi, phi):
    """The first named profile on a table pair."""
    pair = table_pair(psi, phi)
    return next(p for p in PROFILES.values() if (p.psi, p.phi) == pair)


@dataclass(frozen=True)
class TheoremInstance:
    instance_id: str
    functor: Any
    psi: WeightClass
    phi: WeightClass
    size_bound: int
    origin: str = "random"
    monotone: Optional[MonotoneMap] = field(default=None, compare=False)

    @cached_property
    def preconditions(self):
        """(side, Verdict) for psi-cocompleteness of the source and the target."""
        return tuple(
            (side, is_cocomplete(C, self.psi, self.size_bound))
            for side, C in (("source", self.functor.source), ("target", self.functor.target))
        )

    def preconditions_hold(self):
        return all(v.holds for _, v in self.preconditions)


@dataclass(frozen=True)
class VerdictRecord:
    instance_id: str
    psi: WeightClass
    phi: WeightClass
    size_bound: int
    lhs: bool
    rhs_admissible: bool
    rhs_cocontinuous: bool
    failing_object: Any = None     # first b where phi-admissibility fails
    failing_datum: Any = None      # why B(f-, failing_object) is outside the class
    failing_diagram: Any = None    # first diagram whose colimit is not preserved
    witnesses: tuple = ()          # (b, classification witness) for each admissible b
    notes: tuple = ()

    @property
    def rhs(self):
        return self.rhs_admissible and self.rhs_cocontinuous

    @property
    def agreement(self):
        return self.lhs == self.rhs


def _require_preconditions(instance):
    for side, verdict in instance.preconditions:
        if not verdict:
            raise PreconditionFailure(side, verdict.counterexample)


def verify_daft(instance):
    psi, phi = table_pair(instance.psi, instance.phi)
    _require_preconditions(instance)
    f = instance.functor
    lhs = is_phi_admissible(f, phi)
    small = is_phi_admissible(f, WeightClass.SMALL)
    cocontinuous = is_cocontinuous(f, psi, instance.size_bound)
    notes = [cocontinuous.note, f"small-admissibility {FINITE_SCALE_NOTE}"]
    if phi is WeightClass.SMALL:
        notes.append("virtual adjoints: both sides constant true at finite scale")
    return VerdictRecord(
        instance.instance_id, psi, phi, instance.size_bound,
        lhs=lhs.holds,
        rhs_admissible=small.holds,
        rhs_cocontinuous=cocontinuous.holds,
        failing_object=lhs.failing,
        failing_datum=next((c.counterexample for _, c in lhs.verdicts if not c.holds), None),
        failing_diagram=cocontinuous.counterexample,
        witnesses=tuple((b, c.witness) for b, c in lhs.verdicts if c.holds),
        notes=tuple(notes),
    )


def verify_admissible_implies_cocontinuous(f, psi, phi, size_bound):
    psi, phi = table_pair(psi, phi)
    _require_preconditions(TheoremInstance("admissible-implies-cocontinuous", f, psi, phi, size_bound))
    if not is_phi_admissible(f, phi):
        return True
    return is_cocontinuous(f, psi, size_bound).holds


def verify_freyd(f, size_bound):
    """
    # Right adjoint exists iff f is small-cocontinuous and every B(f-, b)
    # has a solution set. Only the source must be cocomplete.
    """
    instance = TheoremInstance("freyd", f, WeightClass.SMALL, WeightClass.EMPTY, size_bound)
    side, verdict = instance.preconditions[0]
    if not verdict:
        raise PreconditionFailure(side, verdict.counterexample)
    adjoint = find_right_adjoint(f)
    solution_set = solution_set_condition(f)
    cocontinuous = is_cocontinuous(f, WeightClass.SMALL, size_bound)
    return VerdictRecord(
        "freyd", WeightClass.SMALL, WeightClass.EMPTY, size_bound,
        lhs=adjoint.holds,
        rhs_admissible=solution_set.holds,
        rhs_cocontinuous=cocontinuous.holds,
        failing_object=adjoint.counterexample,
        failing_diagram=cocontinuous.counterexample,
        notes=(cocontinuous.note, f"solution set {solution_set.note}"),
    )


@lru_cache(maxsize=None)
def _category(P):
    return as_category(P)


def _poset_instance(profile, instance_id, m, origin):
    f = as_functor(m, _category(m.source), _category(m.target))
    return TheoremInstance(instance_id, f, profile.psi, profile.phi, profile.size_bound,
                           origin=origin, monotone=m)


def _random_poset(rng, profile):
    lattices = enumerate_lattices(profile.max_size)
    if profile.family == "lattice":
        return rng.choice(lattices)
    parts = [rng.choice(lattices) for _ in range(rng.randint(1, profile.components))]
    return parts[0] if len(parts) == 1 else disjoint_union(*parts)


def _random_instance(rng, profile, instance_id):
    if profile.family == "categories":
        universe = enumerate_categories(profile.max_size)
        while True:
            A, B = rng.choice(universe), rng.choice(universe)
            functors = list(enumerate_functors(A, B))
            if functors:
                f = rng.choice(functors)
                return TheoremInstance(instance_id, f, profile.psi, profile.phi, profile.size_bound)
    P, Q = _random_poset(rng, profile), _random_poset(rng, profile)
    maps = list(monotone_maps(P, Q))
    return _poset_instance(profile, instance_id, rng.choice(maps), "random")


def generate_instances(seed, profile):
    """
    # Deterministic stream: the handcrafted corpus entries tagged with the
    # profile, then (exhaustive profiles) every monotone map between
    # lattices up to max_size, then seeded random instances without end.
    """
    from aftlab.corpus import load_corpus

    if isinstance(profile, str):
        profile = PROFILES[profile]
    for entry in load_corpus():
        if profile.name in entry.profiles:
            yield TheoremInstance(f"{profile.name}-corpus-{entry.entry_id}", entry.functor,
                                  profile.psi, profile.phi, profile.size_bound, origin="corpus")
    serial = itertools.count()
    if profile.exhaustive:
        lattices = enumerate_lattices(profile.max_size)
        for P in lattices:
            for Q in lattices:
                for m in monotone_maps(P, Q):
                    yield _poset_instance(profile, f"{profile.name}-exhaustive-{next(serial):05d}", m,
                                          "exhaustive")
    rng = random.Random(seed)
    while True:
        yield _random_instance(rng, profile, f"{profile.name}-{seed}-{next(serial):05d}")


def minimize_counterexample(instance, still_failing):
    """
    # Greedy deletion: drop source objects, then target objects outside the
    # image, keeping each deletion that leaves the instance failing.
    """
    current = instance
    shrunk = True
    while shrunk:
        shrunk = False
        f = current.functor
        for o in f.source.objects:
            sub, inclusion = full_subcategory(f.source, [x for x in f.source.objects if x != o])
            candidate = replace(current, functor=f.compose(inclusion), monotone=None)
            if still_failing(candidate):
                log.debug("minimize: dropped source object %s", o)
                current, shrunk = candidate, True
                break
        if shrunk:
            continue
        image = set(f.object_map.values())
        for o in f.target.objects:
            if o in image:
                continue
            sub, _ = full_subcategory(f.target, [x for x in f.target.objects if x != o])
            g = type(f)(f.source, sub, f.object_map, f.morphism_map, name=f.name)
            candidate = replace(current, functor=g, monotone=None)
            if still_failing(candidate):
                log.debug("minimize: dropped target object %s", o)
                current, shrunk = candidate, True
                break
    return current


def disagrees(instance):
    try:
        return not verify_daft(instance).agreement
    except PreconditionFailure:
        return False


def corollary_agrees(record, instance):
    """For lattice instances of the adjoint pair: lhs matches join preservation."""
    if instance.monotone is None or (record.psi, record.phi) != (WeightClass.SMALL, WeightClass.EMPTY):
        return True
    return record.lhs == preserves_all_joins(instance.monotone).holds


@dataclass
class SuiteSummary:
    records: list = field(default_factory=list)            # VerdictRecords sorted by instance id
    precondition_failures: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)    # minimized disagreeing instances
    preorders: int = 0                                     # instances whose source and target are preorders
    corollary_mismatches: list = field(default_factory=list)
    total: int = 0

    @property
    def agreements(self):
        return sum(1 for r in self.records if r.agreement)

    @property
    def disagreements(self):
        return [r.instance_id for r in self.records if not r.agreement]

    @property
    def holds(self):
        return not self.disagreements and not self.corollary_mismatches


def run_suite(instances, jobs=config.DEFAULT_JOBS):
    from aftlab.worker import run_workers

    instances = list(instances)
    results = run_workers(instances, verify_daft, jobs)
    summary = SuiteSummary(total=len(instances))
    by_id = {i.instance_id: i for i in instances}
    for instance_id, outcome in results:
        instance = by_id[instance_id]
        if instance.functor.source.is_preorder() and instance.functor.target.is_preorder():
            summary.preorders += 1
        if isinstance(outcome, PreconditionFailure):
            summary.precondition_failures.append((instance_id, outcome.side))
            continue
        summary.records.append(outcome)
        if not corollary_agrees(outcome, instance):
            summary.corollary_mismatches.append(instance_id)
        if not outcome.agreement:
            log.warning("disagreement on %s, minimizing", instance_id)
            summary.counterexamples.append(minimize_counterexample(instance, disagrees))
    log.info("%d instances, %d agreements, %d preconditions failed, %d preorders",
             summary.total, summary.agreements, len(summary.precondition_failures), summary.preorders)
    return summary