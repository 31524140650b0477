"""Command-line front end.

Every subcommand builds a Report; exit code 0 means the property holds or the
construction succeeded, 1 that it fails (counterexample in the report), 2 an
input or validation error.
"""
import argparse
import hashlib
import itertools
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from time import process_time
from typing import Optional

from colorama import Fore, Style
from colorama import init as colorama_init

from aftlab import config
from aftlab.adjunction import compose_adjunctions_mixed, find_right_adjoint, is_phi_admissible, verify_adjunction
from aftlab.corpus import read_pack, write_pack
from aftlab.daft import PROFILES, generate_instances, profile_for, run_suite, verify_daft
from aftlab.errors import AftlabError, HypothesisFailure
from aftlab.fincat import Category, Diagram, Functor, label, validate_category
from aftlab.formats import parse_functor, parse_poset, parse_presheaf, serialize_category, serialize_functor
from aftlab.posetlab import (
    brute_force_right_adjoint,
    downset_completion,
    enumerate_lattices,
    extend_along_yoneda,
    galois_right_adjoint,
    monotone_maps,
    preserves_all_joins,
    presentable_aft_check,
)
from aftlab.presheaf import FINITE_SCALE_NOTE, WeightClass, classify, recheck
from aftlab.weights import bound_note, default_bound, is_cocontinuous, table_pair

log = logging.getLogger(__name__)

@dataclass
class RunConfig:
    command: str
    inputs: tuple = ()
    psi: Optional[str] = None
    phi: Optional[str] = None
    weight_class: Optional[str] = None
    size_bound: Optional[int] = None
    seed: int = config.DEFAULT_SEED
    count: int = 100
    profile: Optional[str] = None
    corpus: Optional[str] = None
    max_size: int = 4
    out: Optional[str] = None
    output: Optional[str] = None
    jobs: int = config.DEFAULT_JOBS
    json: bool = False
    quiet: bool = False
    verbose: bool = False
    timing: bool = False

    def echo(self):
        """The parts of the configuration that determine the report contents."""
        skip = {"output", "jobs", "json", "quiet", "verbose", "timing"}
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items() if k not in skip}


@dataclass
class Report:
    command: str
    arguments: dict
    inputs_digest: str
    holds: Optional[bool] = None
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    error: Optional[str] = None
    timing: Optional[float] = None

    def to_dict(self):
        data = asdict(self)
        data["schema"] = config.REPORT_SCHEMA
        data["tool_version"] = config.TOOL_VERSION
        if self.timing is None:
            del data["timing"]
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not >= 1")
    return value


def _weight(text):
    try:
        return WeightClass.parse(text).value
    except AftlabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_jobs():
    try:
        return max(1, int(os.environ.get(config.JOBS_ENV_VAR, config.DEFAULT_JOBS)))
    except ValueError:
        return config.DEFAULT_JOBS


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--quiet", action="store_true", help="print nothing")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--timing", action="store_true", help="add elapsed process time to the report")
    common.add_argument("--jobs", type=_positive, default=_default_jobs(),
                        help=f"worker threads (default ${config.JOBS_ENV_VAR} or {config.DEFAULT_JOBS})")

    parser = argparse.ArgumentParser(prog="aftlab", description="Adjoint functor theorems on finite categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-adjoint", parents=[common], help="search a right adjoint")
    p.add_argument("inputs", nargs=3, metavar="FILE", help="A.fincat B.fincat f.fun")

    p = sub.add_parser("classify", parents=[common], help="classify a presheaf")
    p.add_argument("inputs", nargs=2, metavar="FILE", help="A.fincat W.psh")
    p.add_argument("--class", dest="weight_class", type=_weight, required=True)

    p = sub.add_parser("admissible", parents=[common], help="weight-class admissibility of a functor")
    p.add_argument("inputs", nargs=3, metavar="FILE", help="A.fincat B.fincat f.fun")
    p.add_argument("--class", dest="weight_class", type=_weight, required=True)

    p = sub.add_parser("cocontinuous", parents=[common], help="bounded colimit preservation")
    p.add_argument("inputs", nargs=3, metavar="FILE", help="A.fincat B.fincat f.fun")
    p.add_argument("--class", dest="weight_class", type=_weight, required=True)
    p.add_argument("--bound", dest="size_bound", type=_positive)

    p = sub.add_parser("daft", parents=[common], help="run the theorem harness")
    p.add_argument("--psi", type=_weight)
    p.add_argument("--phi", type=_weight)
    p.add_argument("--profile", choices=sorted(PROFILES))
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--bound", dest="size_bound", type=_positive)
    p.add_argument("--corpus", help="replay a msgpack pack written by gen-corpus")

    p = sub.add_parser("compose-adjunctions", parents=[common], help="compose l' r -| l r'")
    p.add_argument("inputs", nargs=5, metavar="FILE", help="x.fincat y.fincat z.fincat l.fun l2.fun")

    p = sub.add_parser("poset-aft", parents=[common], help="exhaustive lattice check and presentability")
    p.add_argument("inputs", nargs="*", metavar="FILE", help="P.poset ...")
    p.add_argument("--max-size", type=_positive, default=4)

    p = sub.add_parser("gen-corpus", parents=[common], help="write generated instances to a pack")
    p.add_argument("--profile", choices=sorted(PROFILES), required=True)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--out", required=True)
    return parser


def parse_args(argv):
    args = vars(build_parser().parse_args(argv))
    args["inputs"] = tuple(args.get("inputs") or ())
    return RunConfig(**args)


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def digest(paths):
    h = hashlib.sha256()
    for path in paths:
        h.update(os.path.basename(path).encode("utf-8") + b"\0")
        with open(path, "rb") as f:
            h.update(f.read())
        h.update(b"\0")
    return h.hexdigest()


def plain(x):
    """JSON-ready copy of a witness; categories and functors become their text formats."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, Category):
        return serialize_category(x)
    if isinstance(x, Functor):
        return serialize_functor(x)
    if isinstance(x, Diagram):
        return {"shape": serialize_category(x.shape), "diagram": serialize_functor(x.functor)}
    if isinstance(x, dict):
        return {label(k): plain(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return [plain(v) for v in x]
    return label(x)


def _load_functor(cfg):
    a_path, b_path, f_path = cfg.inputs[:3]
    A = validate_category(_read(a_path))
    B = A if b_path == a_path else validate_category(_read(b_path))
    return parse_functor(_read(f_path), A, B)


def cmd_check_adjoint(cfg, report):
    f = _load_functor(cfg)
    verdict = find_right_adjoint(f)
    report.verdicts["right_adjoint"] = verdict.holds
    report.verdicts["empty_admissible"] = is_phi_admissible(f, WeightClass.EMPTY).holds
    if verdict:
        adj = verdict.witness
        report.witnesses = {"right_adjoint": plain(adj.right), "unit": plain(adj.unit.components),
                            "counit": plain(adj.counit.components)}
    else:
        report.counterexamples = {"object": plain(verdict.counterexample), "functor": plain(f)}
    return verdict.holds


def cmd_classify(cfg, report):
    A = validate_category(_read(cfg.inputs[0]))
    W = parse_presheaf(_read(cfg.inputs[1]), A)
    c = classify(W, cfg.weight_class)
    report.verdicts = {"classification": c.holds, "recheck": recheck(W, c)}
    report.witnesses = {"witness": plain(c.witness)}
    if c.counterexample is not None:
        report.counterexamples = {"datum": plain(c.counterexample)}
    if c.note:
        report.notes.append(c.note)
    return c.holds


def cmd_admissible(cfg, report):
    f = _load_functor(cfg)
    adm = is_phi_admissible(f, cfg.weight_class)
    report.verdicts = {label(b): c.holds for b, c in adm.verdicts}
    report.witnesses = {label(b): plain(c.witness) for b, c in adm.verdicts if c.holds}
    if not adm:
        report.counterexamples = {"object": plain(adm.failing), "functor": plain(f)}
    if adm.weight_class in (WeightClass.SMALL, WeightClass.FINITE):
        report.notes.append(FINITE_SCALE_NOTE)
    return adm.holds


def cmd_cocontinuous(cfg, report):
    f = _load_functor(cfg)
    bound = cfg.size_bound or default_bound(f.source)
    verdict = is_cocontinuous(f, cfg.weight_class, bound)
    report.verdicts = {"cocontinuous": verdict.holds, "size_bound": bound}
    if not verdict:
        report.counterexamples = {"diagram": plain(verdict.counterexample), "functor": plain(f)}
    report.notes.append(bound_note(bound))
    return verdict.holds


def _record(r):
    return {
        "id": r.instance_id, "psi": r.psi.value, "phi": r.phi.value,
        "lhs": r.lhs, "rhs_admissible": r.rhs_admissible, "rhs_cocontinuous": r.rhs_cocontinuous,
        "agreement": r.agreement, "failing_object": plain(r.failing_object),
        "failing_datum": plain(r.failing_datum), "witnesses": {label(b): plain(w) for b, w in r.witnesses},
    }


def _instance_bundle(instance, record):
    f = instance.functor
    return {
        "id": instance.instance_id,
        "source": serialize_category(f.source),
        "target": serialize_category(f.target),
        "functor": serialize_functor(f),
        "psi": instance.psi.value,
        "phi": instance.phi.value,
        "size_bound": instance.size_bound,
        "failing_object": plain(record.failing_object),
        "failing_datum": plain(record.failing_datum),
        "witnesses": {label(b): plain(w) for b, w in record.witnesses},
    }


def cmd_daft(cfg, report):
    if cfg.corpus:
        header, instances = read_pack(cfg.corpus)
        report.notes.append(f"replayed pack profile={header.get('profile')} seed={header.get('seed')}")
    else:
        if cfg.profile:
            profile = PROFILES[cfg.profile]
            if cfg.psi or cfg.phi:
                psi, phi = table_pair(cfg.psi or profile.psi, cfg.phi or profile.phi)
                profile = replace(profile, psi=psi, phi=phi)
        else:
            profile = profile_for(cfg.psi or "small", cfg.phi or "empty")
        instances = list(itertools.islice(generate_instances(cfg.seed, profile), cfg.count))
    if cfg.size_bound:
        instances = [replace(i, size_bound=cfg.size_bound) for i in instances]
    summary = run_suite(instances, cfg.jobs)
    report.verdicts = {
        "total": summary.total,
        "agreements": summary.agreements,
        "disagreements": summary.disagreements,
        "precondition_failures": [list(p) for p in summary.precondition_failures],
        "corollary_mismatches": summary.corollary_mismatches,
        "preorders": summary.preorders,
        "records": [_record(r) for r in summary.records],
    }
    if summary.counterexamples:
        minimized = [_instance_bundle(i, verify_daft(i)) for i in summary.counterexamples]
        report.counterexamples = {"minimized": minimized}
    bounds = sorted({i.size_bound for i in instances})
    report.notes += [bound_note(b) for b in bounds]
    report.notes.append(f"small-admissibility {FINITE_SCALE_NOTE}")
    if any(i.phi is WeightClass.SMALL for i in instances):
        report.notes.append("virtual adjoints: both sides constant true at finite scale")
    return summary.holds


def cmd_compose(cfg, report):
    X, Y, Z = (validate_category(_read(p)) for p in cfg.inputs[:3])
    l = parse_functor(_read(cfg.inputs[3]), Y, X)
    l2 = parse_functor(_read(cfg.inputs[4]), Y, Z)
    first, second = find_right_adjoint(l), find_right_adjoint(l2)
    for name, verdict in (("first", first), ("second", second)):
        if not verdict:
            report.counterexamples = {"missing_right_adjoint": name, "object": plain(verdict.counterexample)}
            return False
    try:
        composite = compose_adjunctions_mixed(first.witness, second.witness)
    except HypothesisFailure as failure:
        report.counterexamples = {"cell": failure.cell, "object": plain(failure.obj)}
        return False
    verdict = verify_adjunction(composite)
    report.verdicts = {"triangle_identities": verdict.holds}
    report.witnesses = {"left": plain(composite.left), "right": plain(composite.right),
                        "unit": plain(composite.unit.components), "counit": plain(composite.counit.components)}
    if not verdict:
        report.counterexamples = {"failure": plain(verdict.counterexample)}
    return verdict.holds


def cmd_poset_aft(cfg, report):
    lattices = enumerate_lattices(cfg.max_size)
    checked, exceptions = 0, []
    for P in lattices:
        for Q in lattices:
            for m in monotone_maps(P, Q):
                checked += 1
                if (brute_force_right_adjoint(m) is not None) != preserves_all_joins(m).holds:
                    exceptions.append({"source": P.name, "target": Q.name, "map": plain(m.mapping)})
    report.verdicts = {"lattices": len(lattices), "maps": checked, "exceptions": len(exceptions)}
    if exceptions:
        report.counterexamples["exceptions"] = exceptions
    presentable = {}
    for path in cfg.inputs:
        P = parse_poset(_read(path))
        D, _ = downset_completion(P)
        failures, total = 0, 0
        for L in lattices:
            for g in monotone_maps(D, L):
                total += 1
                failures += not presentable_aft_check(P, L, g)
            for f in monotone_maps(P, L):
                total += 1
                failures += not galois_right_adjoint(extend_along_yoneda(f, D)).holds
        presentable[P.name] = {"checks": total, "failures": failures}
    if presentable:
        report.verdicts["presentable"] = presentable
    return not exceptions and all(v["failures"] == 0 for v in presentable.values())


def cmd_gen_corpus(cfg, report):
    profile = PROFILES[cfg.profile]
    instances = list(itertools.islice(generate_instances(cfg.seed, profile), cfg.count))
    write_pack(cfg.out, instances, profile.name, cfg.seed)
    report.verdicts = {"written": len(instances)}
    return True


HANDLERS = {
    "check-adjoint": cmd_check_adjoint,
    "classify": cmd_classify,
    "admissible": cmd_admissible,
    "cocontinuous": cmd_cocontinuous,
    "daft": cmd_daft,
    "compose-adjunctions": cmd_compose,
    "poset-aft": cmd_poset_aft,
    "gen-corpus": cmd_gen_corpus,
}


def _print_summary(report, code):
    status = {0: Fore.GREEN + "holds", 1: Fore.RED + "fails", 2: Fore.YELLOW + "error"}[code]
    print(f"{report.command}: {status}{Style.RESET_ALL}")
    if report.error:
        print(f"  {report.error}")
    for key, value in report.verdicts.items():
        if key != "records":
            print(f"  {key}: {value}")
    failures = report.verdicts.get("precondition_failures")
    if failures:
        print(f"  {Fore.YELLOW}{len(failures)} instances skipped on preconditions{Style.RESET_ALL}")
    for key, value in report.counterexamples.items():
        print(f"  {Fore.RED}counterexample {key}{Style.RESET_ALL}: {value}")


def run(argv):
    """Returns (exit code, Report); usage errors give (2, None)."""
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = process_time()
    report = Report(cfg.command, cfg.echo(), "")
    try:
        inputs = list(cfg.inputs) + ([cfg.corpus] if cfg.corpus else [])
        if cfg.command in ("daft", "gen-corpus") and not cfg.corpus:
            inputs.append(os.path.join(config.CORPUS_PATH, config.CORPUS_MANIFEST))
        report.inputs_digest = digest(inputs)
        holds = HANDLERS[cfg.command](cfg, report)
        report.holds = bool(holds)
        code = 0 if holds else 1
    except (AftlabError, OSError) as exc:
        log.debug("input error", exc_info=True)
        report.error = f"{type(exc).__name__}: {exc}"
        code = 2
    if cfg.timing:
        report.timing = round(process_time() - start, 6)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as f:
            f.write(report.to_json())
    if cfg.json:
        sys.stdout.write(report.to_json())
    elif not cfg.quiet:
        _print_summary(report, code)
    return code, report


def main(argv=None):
    colorama_init()
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code
