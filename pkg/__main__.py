from itertools import islice
from time import process_time

from aftlab.adjunction import find_right_adjoint
from aftlab.daft import PROFILES, generate_instances, run_suite
from aftlab.fincat import enumerate_categories, enumerate_functors
from aftlab.posetlab import brute_force_right_adjoint, enumerate_lattices, monotone_maps, preserves_all_joins

# Timing for the main suites; run from the repository root.

t0 = process_time()
categories = enumerate_categories(4)
t1 = process_time()
print("Enumerating categories up to 4 morphisms took:\t", t1 - t0, f"({len(categories)} tables)")

t0 = process_time()
maps = exceptions = 0
lattices = enumerate_lattices(5)
for P in lattices:
    for Q in lattices:
        for m in monotone_maps(P, Q):
            maps += 1
            exceptions += (brute_force_right_adjoint(m) is not None) != preserves_all_joins(m).holds
t1 = process_time()
print("Lattice AFT over lattices up to 5 elements took:\t", t1 - t0, f"({maps} maps, {exceptions} exceptions)")

t0 = process_time()
found = 0
for A in categories[:40]:
    for B in categories[:40]:
        for f in enumerate_functors(A, B):
            found += find_right_adjoint(f).holds
t1 = process_time()
print("Right adjoint search on small functors took:\t", t1 - t0, f"({found} adjoints)")

for name in ("adjoint", "pluriadjoint", "multiadjoint", "virtual"):
    t0 = process_time()
    summary = run_suite(islice(generate_instances(0, PROFILES[name]), 200))
    t1 = process_time()
    print(f"DAFT {name} profile, 200 instances took:\t", t1 - t0,
          f"({summary.agreements} agree, {len(summary.precondition_failures)} skipped)")
