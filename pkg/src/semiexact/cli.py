"""Command line entry point.

Exit status: 0 when every requested check passes, 1 when a check fails
(including axiom violations found while loading a document and lemma
refutations), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import NATURALS, SEMIRING_FAMILIES, Semiring, builtin_semiring
from .diagrams import LEMMA_IDS, connecting_morphism, lemma_verify, snake_hypotheses, validate_diagram
from .document import AlgebraDocument, parse
from .errors import AxiomError, HypothesisError, InputError, SemiexactError
from .exactness import sequence_report
from .explorer.enumeration import MAX_ENUMERATION_ORDER, enumerate_semimodules
from .explorer.fuzz import FuzzConfig, format_report, report_dict, run_fuzz
from .morphisms import classify, cokernel, kernel

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class Outcome:
    """Text lines and a JSON mirror, plus whether every check passed."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.data: dict = {"command": command}
        self.passed = True
        self.text: str | None = None  # a preformatted report replaces the lines

    def fail(self):
        self.passed = False


def _flag(v) -> str:
    return {True: "true", False: "false", None: "n/a"}[v]


def _select(table: dict, wanted: list[str] | None, kind: str, doc_lookup) -> list[tuple[str, object]]:
    if wanted:
        return [(name, doc_lookup(name)) for name in wanted]
    if not table:
        raise InputError(f"the document defines no {kind}")
    return list(table.items())


def cmd_check(doc: AlgebraDocument, args, out: Outcome):
    out.data["entities"] = {}
    for kind in ("semirings", "semimodules", "morphisms"):
        for name in getattr(doc, kind):
            out.lines.append(f"{kind[:-1]} {name}: ok")
            out.data["entities"][f"{kind[:-1]} {name}"] = "ok"
    for name, s in doc.sequences.items():
        chains = [v.chain for v in sequence_report(s)]
        out.lines.append(f"sequence {name}: ok (chain at every junction: {_flag(all(chains))})")
        out.data["entities"][f"sequence {name}"] = "ok"
    for name, d in doc.diagrams.items():
        report = validate_diagram(d)
        status = "ok" if report.ok else f"does not commute: {report.summary()}"
        out.lines.append(f"diagram {name}: {status}")
        out.data["entities"][f"diagram {name}"] = status
        if not report.ok:
            out.fail()


def cmd_classify(doc: AlgebraDocument, args, out: Outcome):
    out.data["morphisms"] = {}
    for name, f in _select(doc.morphisms, args.m, "morphisms", doc.morphism):
        flags = classify(f).as_dict()
        out.lines.append(f"{name}: " + " ".join(f"{k}={_flag(v)}" for k, v in flags.items()))
        out.data["morphisms"][name] = flags


def cmd_exact(doc: AlgebraDocument, args, out: Outcome):
    out.data["sequences"] = {}
    for name, s in _select(doc.sequences, args.s, "sequences", doc.sequence):
        objects = s.objects
        verdicts = sequence_report(s)
        rows = []
        for i, v in enumerate(verdicts):
            tiers = v.tiers()
            at = objects[i + 1].name or f"object {i + 1}"
            line = f"{name} at {at}: " + " ".join(f"{k}={_flag(x)}" for k, x in tiers.items())
            if v.witness:
                line += f" witness={list(v.witness)}"
            out.lines.append(line)
            rows.append({"at": at, **tiers, "witness": list(v.witness) if v.witness else None})
            if not v.exact:
                out.fail()
        out.lines.append(f"{name}: {'exact' if all(v.exact for v in verdicts) else 'not exact'}")
        out.data["sequences"][name] = rows


def _delta_table(cert, d) -> list[tuple[int, int]]:
    """delta with kernel elements and cokernel classes named by their representatives."""
    a1, _, a3 = d.vert[0]
    ker3 = kernel(a3).members
    reps = [members[0] for members in cokernel(a1).class_members]
    return [(ker3[i], reps[v]) for i, v in enumerate(cert.delta.map)]


def cmd_snake(doc: AlgebraDocument, args, out: Outcome):
    out.data["diagrams"] = {}
    for name, d in _select(doc.diagrams, args.d, "diagrams", doc.diagram):
        failed = [label for label, ok in snake_hypotheses(d) if not ok]
        if failed:
            out.lines.append(f"{name}: snake hypotheses fail: {', '.join(failed)}")
            out.data["diagrams"][name] = {"hypotheses_failed": failed}
            out.fail()
            continue
        cert = connecting_morphism(d)
        checks = {
            "well_defined": cert.well_defined,
            "ker_delta": cert.ker_delta_ok,
            "image_delta": cert.image_delta_ok,
            "delta_k_uniform": cert.delta_k_uniform,
            "four_term_exact": cert.four_term_exact,
        }
        out.lines.append(f"{name}: columns={cert.columns} lifts_checked={cert.lifts_checked} "
                         + " ".join(f"{k}={_flag(v)}" for k, v in checks.items()))
        entry = {"columns": cert.columns, "lifts_checked": cert.lifts_checked, **checks}
        if args.emit_delta:
            table = _delta_table(cert, d)
            out.lines.append(f"{name}: delta [" + ", ".join(f"{k}↦{v}" for k, v in table) + "]")
            entry["delta"] = [[k, v] for k, v in table]
        if cert.disagreement:
            out.lines.append(f"{name}: lift disagreement {list(cert.disagreement)}")
            entry["disagreement"] = list(cert.disagreement)
        out.data["diagrams"][name] = entry
        if not cert.all_ok:
            out.fail()


def cmd_lemma(doc: AlgebraDocument, args, out: Outcome):
    out.data["lemma_id"] = args.id
    out.data["diagrams"] = {}
    for name, d in _select(doc.diagrams, args.d, "diagrams", doc.diagram):
        v = lemma_verify(args.id, d)
        entry: dict = {"hypotheses": {label: ok for label, ok in v.hypotheses},
                       "hypotheses_satisfied": v.hypotheses_satisfied}
        if not v.hypotheses_satisfied:
            missing = [label for label, ok in v.hypotheses if not ok]
            out.lines.append(f"{name}: {args.id} hypotheses not satisfied ({', '.join(missing)})")
        else:
            out.lines.append(f"{name}: {args.id} {'holds' if v.conclusion_holds else 'REFUTED'}")
            for c in v.claims:
                kind = "claim" if c.asserted else "observation"
                state = _flag(c.holds) if c.applicable else "not applicable"
                out.lines.append(f"  {kind} {c.name}: {state}")
            entry["claims"] = [
                {"name": c.name, "applicable": c.applicable, "holds": c.holds, "asserted": c.asserted}
                for c in v.claims
            ]
            entry["conclusion_holds"] = v.conclusion_holds
            if v.counterexample:
                entry["counterexample"] = v.counterexample
                out.fail()
        out.data["diagrams"][name] = entry


def parse_semiring(text: str) -> Semiring:
    """``N0``, ``boolean`` or ``family:k``."""
    if text == NATURALS.name:
        return NATURALS
    family, _, k = text.partition(":")
    if family not in SEMIRING_FAMILIES:
        raise argparse.ArgumentTypeError(f"unknown semiring {text!r}")
    try:
        return builtin_semiring(family, int(k) if k else None)
    except (ValueError, SemiexactError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def cmd_enumerate(args, out: Outcome):
    S = args.semiring
    out.data.update({"semiring": S.name, "order": args.order})
    corpus = enumerate_semimodules(S, args.order)
    out.data["count"] = len(corpus.objects)
    out.lines.append(f"{S.name} order {args.order}: {len(corpus.objects)} up to isomorphism")
    if not args.count_only:
        out.data["objects"] = []
        for M in corpus.objects:
            out.lines.append(f"{M.name} add={[list(r) for r in M.add]}"
                             + ("" if M.act is None else f" act={[list(r) for r in M.act]}"))
            out.data["objects"].append({"name": M.name, "add": [list(r) for r in M.add],
                                        "act": None if M.act is None else [list(r) for r in M.act]})


def cmd_fuzz(args, out: Outcome):
    config = FuzzConfig(seed=args.seed, trials=args.trials, max_order=args.max_order,
                        lemma_id=args.id, workers=args.workers)
    records = run_fuzz(config)
    out.text = format_report(config, records)
    out.data.update(report_dict(config, records))
    if any(r.status == "refuted" for r in records):
        out.fail()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semiexact", description="Finite semimodules, exactness and diagram lemmas.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def with_doc(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("document", type=Path)
        return sp

    with_doc("check", "validate every entity of a document")
    sp = with_doc("classify", "classification flags of morphisms")
    sp.add_argument("-m", action="append", metavar="NAME", help="morphism (repeatable; default all)")
    sp = with_doc("exact", "exactness tiers of sequences")
    sp.add_argument("-s", action="append", metavar="NAME", help="sequence (repeatable; default all)")
    sp = with_doc("snake", "connecting map and snake certificate")
    sp.add_argument("-d", action="append", metavar="NAME", help="diagram (repeatable; default all)")
    sp.add_argument("--emit-delta", action="store_true", help="print the connecting map")
    sp = with_doc("lemma", "check a diagram lemma")
    sp.add_argument("--id", required=True, choices=LEMMA_IDS)
    sp.add_argument("-d", action="append", metavar="NAME", help="diagram (repeatable; default all)")

    sp = sub.add_parser("enumerate", help="semimodules of a given order up to isomorphism")
    sp.add_argument("--semiring", type=parse_semiring, default=NATURALS, help="N0, boolean or family:k")
    sp.add_argument("--order", type=int, required=True, choices=range(1, MAX_ENUMERATION_ORDER + 1))
    sp.add_argument("--count-only", action="store_true")

    sp = sub.add_parser("fuzz", help="seeded lemma fuzzing")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--max-order", type=int, default=8)
    sp.add_argument("--id", choices=LEMMA_IDS, help="one lemma (default: all, round robin)")
    sp.add_argument("--workers", type=int, help="worker processes (capped by SEMIEXACT_THREADS)")
    return p


DOC_COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "exact": cmd_exact,
    "snake": cmd_snake,
    "lemma": cmd_lemma,
}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run a command and return its exit status and report."""
    args = build_parser().parse_args(argv)
    out = Outcome(args.command)
    try:
        if args.command in DOC_COMMANDS:
            try:
                text = args.document.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as e:
                return EXIT_INPUT, f"error: cannot read {args.document}: {e}\n"
            doc = parse(text)
            DOC_COMMANDS[args.command](doc, args, out)
        elif args.command == "enumerate":
            cmd_enumerate(args, out)
        else:
            cmd_fuzz(args, out)
    except AxiomError as e:
        return EXIT_FAILED, _render_error(args, "validation", e)
    except HypothesisError as e:
        return EXIT_INPUT, _render_error(args, "input", e)
    except SemiexactError as e:
        return EXIT_INPUT, _render_error(args, type(e).__name__, e)

    code = EXIT_OK if out.passed else EXIT_FAILED
    out.data["passed"] = out.passed
    if args.format == "json":
        return code, json.dumps(out.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out.text is not None:
        return code, out.text
    return code, "\n".join(out.lines) + "\n"


def _render_error(args, kind: str, e: Exception) -> str:
    if args.format == "json":
        return json.dumps({"command": args.command, "error": kind, "message": str(e)}, indent=2) + "\n"
    return f"error ({kind}): {e}\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code != EXIT_INPUT else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
