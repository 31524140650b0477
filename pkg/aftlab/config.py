# aftlab/config.py
from pathlib import Path

TOOL_VERSION = "0.3.0"              # echoed in every report
REPORT_SCHEMA = "aftlab.report/2"   # bump when report fields change
PACK_SCHEMA = "aftlab.pack/1"       # msgpack corpus packs

DEFAULT_SEED = 0
SHAPE_BOUND_PAD = 2                 # default bound = |morphisms of source| + pad
SHAPE_BOUND_CEILING = 5             # enumeration cost grows fast past this
BOUND_RATIONALE = (
    "shapes are the finite categories of the class with at most `size_bound` morphisms "
    "(identities counted), one per isomorphism class; the default bound is "
    f"|morphisms of source| + {SHAPE_BOUND_PAD}, capped at {SHAPE_BOUND_CEILING}; "
    "verdicts are bounded-verified, never unbounded claims"
)

# Parallelism for the corpus runner
JOBS_ENV_VAR = "AFTLAB_JOBS"
DEFAULT_JOBS = 1

# Instance generator limits
MAX_LATTICE_SIZE = 4                # random lattices drawn up to this many elements
MAX_COMPONENTS = 2                  # disjoint lattice summands for the multiadjoint profile
EXHAUSTIVE_LATTICE_SIZE = 4         # the lattice profile enumerates every monotone map up to here
RANDOM_CATEGORY_MORPHISMS = 4       # virtual profile draws arbitrary categories up to here

# Filenames or paths
CORPUS_PATH = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_MANIFEST = "manifest.json"
