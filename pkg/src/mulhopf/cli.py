"""Command line front end.

Inputs are either ``gallery:<name>(<params>)`` for a built-in example or
a path to a spec file.  Every command emits a report (text by default,
``--report json`` for the machine-readable document) and exits with

    0   every check passed (possibly only on the window)
    1   a check failed; the report carries the witness
    2   the window was too small to decide something
    3   bad input (unparseable file, unknown gallery name, missing data)

``--jobs`` runs independent checks of one stage concurrently; reports
are assembled in a fixed order regardless, so output stays deterministic.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .algebra import (
    InputError, Verdict, WindowInsufficiency,
    check_associativity, check_idempotent, check_local_units,
    check_nondegenerate,
)
from .bialgebra import check_coassociative, check_counit, check_fons, synthesize_counit
from .comodule import (
    ComoduleAlgebra, check_comodule_coassoc, check_comodule_coassoc_framed,
    check_comodule_counit,
)
from .hopf import check_antipode, check_convolution_inverse, check_hopf, \
    iota_map, synthesize_antipode
from . import gallery, specfile
from .report import Report, digest


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mulhopf",
        description="check and synthesize multiplier bialgebra structure")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "check-algebra": "associativity, idempotency, non-degeneracy, local units",
        "check-bialgebra": "algebra checks plus coproduct axioms",
        "check-hopf": "bialgebra checks plus canonical maps and antipode",
        "check-comodule": "coaction axioms (declared coaction, or the algebra over itself)",
        "synthesize-counit": "solve for the counit values and verify them",
        "synthesize-antipode": "solve for the antipode and verify it",
        "classify": "run the whole ladder and name the strongest structure",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="gallery:<name>(<params>) or a spec file path")
        p.add_argument("--window", type=_positive,
                       help="basis window for infinite families")
        p.add_argument("--expansion", type=_positive,
                       help="window scale factor for searches (default 2)")
        p.add_argument("--report", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, help="recorded in the report")
        p.add_argument("--jobs", type=_positive,
                       default=int(os.environ.get("MULHOPF_JOBS", "1")),
                       help="worker threads per stage (env MULHOPF_JOBS)")
        p.add_argument("--timing", action="store_true",
                       help="include per-check timings in the report")
    return parser


def resolve_input(text):
    """(gallery entry, display source, content digest)."""
    if text.startswith("gallery:"):
        expr = text[len("gallery:"):]
        return gallery.build(expr), text, digest(text)
    try:
        with open(text, "r", encoding="utf-8") as fh:
            content = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {text}: {exc.strerror}") from None
    spec = specfile.parse_spec(content)
    return specfile.build_bundle(spec, name=text), text, digest(content)


class Runner:
    """Executes check groups, keeps (verdict, timing) rows in order."""

    def __init__(self, jobs=1, timing=False):
        self.jobs = jobs
        self.timing = timing
        self.rows = []  # (Verdict, timing_ms or None)

    def _timed(self, task):
        t0 = time.perf_counter()
        out = task()
        dt = (time.perf_counter() - t0) * 1000.0 if self.timing else None
        return (out if isinstance(out, list) else [out]), dt

    def group(self, tasks) -> list:
        """Run tasks (each returns a Verdict or a list) and record results.

        Results land in submission order even under --jobs.
        """
        if self.jobs > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                done = [f.result() for f in [pool.submit(self._timed, t) for t in tasks]]
        else:
            done = [self._timed(t) for t in tasks]
        out = []
        for verdicts, dt in done:
            for v in verdicts:
                self.rows.append((v, dt))
                out.append(v)
        return out

    def flush_into(self, report: Report):
        for v, dt in self.rows:
            report.add(v, dt)
        self.rows = []


def _require_bialgebra(entry):
    if entry.bialgebra is None:
        raise InputError(f"{entry.name} declares no coproduct")
    return entry.bialgebra


def _fmt_scalar(field, v):
    return field.format(v)


def _counit_table(bundle, synthesis):
    alg = bundle.algebra
    keys = sorted(synthesis.table, key=alg.sort_key)
    return {alg.fmt_id(k): _fmt_scalar(alg.field, synthesis.table[k]) for k in keys}


def _antipode_table(bundle, table):
    alg = bundle.algebra
    keys = sorted(table, key=alg.sort_key)
    return {alg.fmt_id(k): str(table[k]) for k in keys}


# --- stages ----------------------------------------------------------------


def stage_algebra(run: Runner, alg, window) -> list:
    return run.group([
        lambda: check_associativity(alg, window),
        lambda: check_idempotent(alg, window),
        lambda: check_nondegenerate(alg, window),
        lambda: check_local_units(alg, window),
    ])


def stage_bialgebra(run: Runner, bundle, window, expansion) -> list:
    delta = bundle.delta
    sl = bundle.slicer(window, expansion)
    return run.group([
        lambda: delta.validate(),
        lambda: check_fons(delta, window=window, expansion=expansion),
        lambda: check_coassociative(delta, slicer=sl),
    ])


def stage_counit(run: Runner, bundle, window, expansion, report: Report):
    """Synthesize the counit and verify the laws.

    Returns (synthesis or None, verdicts recorded for this stage).
    """
    delta = bundle.delta
    sl = bundle.slicer(window, expansion)
    label = bundle.algebra.window_label(sl.ids)
    syn = synthesize_counit(delta, slicer=sl)
    if syn is None:
        vs = run.group([lambda: Verdict(
            "counit synthesis", "failed", label,
            detail="no multiplicative solution of the counit identities")])
        return None, vs
    vs = run.group([
        lambda: Verdict("counit synthesis", bundle.algebra.baseline(sl.ids),
                        label, detail=syn.detail or f"witness g = {syn.witness}"),
        lambda: check_counit(delta, syn.extension, slicer=sl),
    ])
    report.add_table("epsilon", _counit_table(bundle, syn))
    return syn, vs


def stage_antipode(run: Runner, bundle, epsilon, window, expansion, report: Report):
    sl = bundle.slicer(window, expansion)
    syn = synthesize_antipode(bundle.delta, epsilon, slicer=sl)
    run.group([lambda: syn.verdicts])
    if syn.table is not None:
        report.add_table("antipode", _antipode_table(bundle, syn.table))
    if not syn.ok and not any(not v.ok for v in syn.verdicts):
        run.group([lambda: Verdict("antipode synthesis", "failed",
                                   bundle.algebra.window_label(sl.ids),
                                   detail=syn.detail)])
    return syn


# --- commands --------------------------------------------------------------


def cmd_check_algebra(entry, run, report, window, expansion):
    stage_algebra(run, entry.algebra, window)


def cmd_check_bialgebra(entry, run, report, window, expansion):
    bundle = _require_bialgebra(entry)
    stage_algebra(run, entry.algebra, window)
    stage_bialgebra(run, bundle, window, expansion)
    if bundle.epsilon is not None:
        sl = bundle.slicer(window, expansion)
        run.group([lambda: check_counit(bundle.delta, bundle.epsilon, slicer=sl)])
    else:
        stage_counit(run, bundle, window, expansion, report)


def cmd_check_hopf(entry, run, report, window, expansion):
    bundle = _require_bialgebra(entry)
    stage_algebra(run, entry.algebra, window)
    stage_bialgebra(run, bundle, window, expansion)
    sl = bundle.slicer(window, expansion)
    if bundle.epsilon is not None:
        epsilon = bundle.epsilon
        run.group([lambda: check_counit(bundle.delta, epsilon, slicer=sl)])
    else:
        syn, _ = stage_counit(run, bundle, window, expansion, report)
        if syn is None:
            return
        epsilon = syn.extension
    gate = check_hopf(bundle.delta, slicer=sl)
    run.group([
        lambda: gate["T1"]["bijectivity"],
        lambda: gate["T2"]["bijectivity"],
        lambda: gate["hopf"],
    ])
    if not gate["hopf"].ok:
        return
    if bundle.antipode is not None:
        s = bundle.antipode
        run.group([
            lambda: check_antipode(bundle.delta, epsilon, s, slicer=sl),
            lambda: check_convolution_inverse(bundle.delta, epsilon, s,
                                              iota_map(bundle.algebra),
                                              slicer=sl),
        ])
    else:
        syn = synthesize_antipode(bundle.delta, epsilon, slicer=sl)
        run.group([lambda: syn.verdicts[2:] or
                   [Verdict("antipode synthesis", "failed",
                            bundle.algebra.window_label(sl.ids),
                            detail=syn.detail)]])
        if syn.table is not None:
            report.add_table("antipode", _antipode_table(bundle, syn.table))


def cmd_check_comodule(entry, run, report, window, expansion):
    bundle = _require_bialgebra(entry)
    coaction = entry.params.get("coaction")
    com = ComoduleAlgebra(entry.algebra, coaction or bundle.delta, bundle,
                          window=window, expansion=expansion)
    run.group([lambda: com.coaction.validate()])
    run.group([
        lambda: check_comodule_coassoc(com),
        lambda: check_comodule_coassoc_framed(com),
        lambda: check_comodule_coassoc(com, method="element"),
        lambda: check_comodule_counit(com),
    ])


def cmd_synthesize_counit(entry, run, report, window, expansion):
    bundle = _require_bialgebra(entry)
    stage_counit(run, bundle, window, expansion, report)


def cmd_synthesize_antipode(entry, run, report, window, expansion):
    bundle = _require_bialgebra(entry)
    if bundle.epsilon is not None:
        epsilon = bundle.epsilon
    else:
        syn, _ = stage_counit(run, bundle, window, expansion, report)
        if syn is None:
            return
        epsilon = syn.extension
    stage_antipode(run, bundle, epsilon, window, expansion, report)


def cmd_classify(entry, run, report, window, expansion):
    alg = entry.algebra
    tier = stage_algebra(run, alg, window)
    qual_window = window if window is not None else "declared basis"
    if any(not v.ok for v in tier):
        report.set_classification("not a non-degenerate idempotent algebra")
        return
    all_proven = all(v.status == "proven" for v in tier)

    if entry.bialgebra is None:
        report.set_classification(_qualify("non-degenerate idempotent algebra",
                                           alg, all_proven, qual_window))
        return
    bundle = entry.bialgebra
    tier = stage_bialgebra(run, bundle, window, expansion)
    if any(not v.ok for v in tier):
        report.set_classification(
            "non-degenerate idempotent algebra (coproduct fails its axioms)")
        return
    all_proven = all_proven and all(v.status == "proven" for v in tier)

    syn, counit_vs = stage_counit(run, bundle, window, expansion, report)
    if syn is None or any(not v.ok for v in counit_vs):
        report.set_classification("coassociative comultiplication without counit")
        return
    all_proven = all_proven and all(v.status == "proven" for v in counit_vs)

    asyn = stage_antipode(run, bundle, syn.extension, window, expansion, report)
    if not all(v.ok for v in asyn.verdicts[:2]) or not asyn.ok:
        report.set_classification(_qualify("multiplier bialgebra", alg,
                                           False, qual_window))
        return
    all_proven = all_proven and all(v.status == "proven" for v in asyn.verdicts)
    report.set_classification(_qualify("multiplier Hopf algebra", alg,
                                       all_proven, qual_window))


def _qualify(name, alg, proven, window):
    if proven and alg.finite:
        return f"{name} (proven; finite)"
    if proven:
        return f"{name} (proven)"
    return f"{name} (holds_on_window {window})"


_COMMANDS = {
    "check-algebra": cmd_check_algebra,
    "check-bialgebra": cmd_check_bialgebra,
    "check-hopf": cmd_check_hopf,
    "check-comodule": cmd_check_comodule,
    "synthesize-counit": cmd_synthesize_counit,
    "synthesize-antipode": cmd_synthesize_antipode,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        entry, source, source_digest = resolve_input(args.input)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    window = args.window if args.window is not None else entry.default_window
    expansion = args.expansion
    if expansion is None:
        expansion = entry.bialgebra.expansion if entry.bialgebra else 2
    report = Report(args.command, source, source_digest,
                    window=window, expansion=expansion, seed=args.seed)
    run = Runner(jobs=args.jobs, timing=args.timing)
    try:
        _COMMANDS[args.command](entry, run, report, window, expansion)
    except WindowInsufficiency as exc:
        run.flush_into(report)
        _emit(report, args.report)
        print(f"window insufficient: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    run.flush_into(report)
    _emit(report, args.report)
    return report.exit_code


def _emit(report: Report, kind: str):
    sys.stdout.write(report.to_json() if kind == "json" else report.to_text())
