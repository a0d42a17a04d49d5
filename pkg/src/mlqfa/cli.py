"""Command-line front end.

Subcommands: ``simulate``, ``equiv``, ``classify``, ``minimize``,
``witness``, ``gallery``.  All input and output is UTF-8 JSON (``--format
text`` renders the same structure as plain lines).  A path of ``-`` reads
the automaton document from stdin; ``classify``, ``minimize`` and
``witness`` default to stdin so they compose in pipes.

Exit codes: 0 for success (including "equivalent" and plain reports),
1 when ``equiv`` finds the automata not equivalent or ``witness`` finds a
witness (the query asks about absence, so presence is the failing
answer), 2 for malformed input or validation errors.

The environment variable ``MLQFA_MODE`` (``exact`` or ``float``) sets the
default scalar mode used when emitting gallery fixtures; documents carry
their own mode otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .analysis import classify, ck_to_dk, detect_ck, detect_f, detect_forbidden, minimize_dfa
from .automata import (DFA, KLetterDFA, MMQFA, MultiLetterQFA,
                       ValidationError, accept_probability, dfa_run,
                       kdfa_run, mm_run)
from .equivalence import (PROBABILITY_TOL, bounded_equivalence,
                          decide_equivalence_unary)
from .gallery import GALLERY_IDS, build_gallery
from .linalg import EXACT, FLOAT
from .serialize import (automaton_from_json, automaton_to_json,
                        probability_to_json, report_to_json, verdict_to_json,
                        witness_to_json, word_from_str)


@dataclass
class CliConfig:
    mode: str = EXACT
    tol: float = PROBABILITY_TOL
    max_k: int = 3
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValidationError("tol: must be positive")
        if self.max_k < 1:
            raise ValidationError("max-k: must be >= 1")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlqfa",
        description="Simulate windowed quantum automata, decide unary "
                    "equivalence, and classify DFAs by structural witnesses.")
    parser.add_argument("--mode", choices=(EXACT, FLOAT),
                        default=os.environ.get("MLQFA_MODE", EXACT),
                        help="scalar mode for generated fixtures (default: "
                             "MLQFA_MODE or exact)")
    parser.add_argument("--tol", type=float, default=PROBABILITY_TOL,
                        help="float-mode probability tolerance")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, help="write result here "
                        "instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run an automaton document on a word")
    p.add_argument("automaton", help="automaton JSON path, or - for stdin")
    p.add_argument("word", help="space-separated symbols; '' is the empty word")

    p = sub.add_parser("equiv", help="decide or bound-check equivalence of two "
                                     "windowed QFAs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--strategy", choices=("full", "span"), default="span",
                   help="unary scan strategy (default: span early stop)")
    p.add_argument("--bound", type=int, default=None,
                   help="check words up to this length only (required for "
                        "non-unary alphabets)")

    p = sub.add_parser("classify", help="structural classification of a DFA")
    p.add_argument("automaton", nargs="?", default="-")
    p.add_argument("--max-k", type=int, default=3, dest="max_k")

    p = sub.add_parser("minimize", help="emit the canonical minimal DFA")
    p.add_argument("automaton", nargs="?", default="-")

    p = sub.add_parser("witness", help="search one structural witness kind")
    p.add_argument("automaton", nargs="?", default="-")
    p.add_argument("--kind", choices=("ck", "dk", "f", "forbidden"), required=True)
    p.add_argument("--k", type=int, default=None, help="order for ck/dk kinds")

    p = sub.add_parser("gallery", help="emit a built-in fixture as JSON")
    p.add_argument("id", choices=GALLERY_IDS)
    p.add_argument("--k", type=int, default=None, help="parameter for 'lk'")
    return parser


def _load_document(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise ValidationError(f"input: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"input: malformed JSON: {e}") from None
    return automaton_from_json(doc)


def _load_dfa(path: str) -> DFA:
    a = _load_document(path)
    if not isinstance(a, DFA):
        raise ValidationError("type: expected a 'dfa' document")
    return a


def _load_qfa(path: str) -> MultiLetterQFA:
    a = _load_document(path)
    if not isinstance(a, MultiLetterQFA):
        raise ValidationError("type: expected a 'kqfa' document")
    return a


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _emit(config: CliConfig, payload) -> None:
    if config.format == "json":
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(_render_text(payload)) + "\n"
    if config.output and config.output != "-":
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args, config: CliConfig) -> int:
    a = _load_document(args.automaton)
    word = word_from_str(args.word)
    if isinstance(a, DFA):
        state = dfa_run(a, a.initial, word)
        payload = {"state": state, "accepted": state in a.accepting}
    elif isinstance(a, KLetterDFA):
        state = kdfa_run(a, word)
        payload = {"state": state, "accepted": state in a.accepting}
    elif isinstance(a, MultiLetterQFA):
        payload = {"probability": probability_to_json(accept_probability(a, word))}
    elif isinstance(a, MMQFA):
        p_acc, p_rej, p_res = mm_run(a, word)
        payload = {"p_acc": probability_to_json(p_acc),
                   "p_rej": probability_to_json(p_rej),
                   "p_residual": probability_to_json(p_res)}
    else:  # pragma: no cover - loaders return one of the above
        raise ValidationError("type: unsupported automaton")
    _emit(config, payload)
    return 0


def _cmd_equiv(args, config: CliConfig) -> int:
    a1 = _load_qfa(args.first)
    a2 = _load_qfa(args.second)
    if args.bound is not None:
        verdict = bounded_equivalence(a1, a2, args.bound, tol=config.tol)
    elif a1.alphabet.is_unary and a2.alphabet.is_unary:
        strategy = "full-bound" if args.strategy == "full" else "span-early-stop"
        verdict = decide_equivalence_unary(a1, a2, strategy=strategy,
                                           tol=config.tol)
    else:
        raise ValidationError(
            "alphabet: exact decision needs a unary alphabet; pass --bound "
            "for a bounded check")
    _emit(config, verdict_to_json(verdict))
    return 0 if verdict.equivalent else 1


def _cmd_classify(args, config: CliConfig) -> int:
    d = _load_dfa(args.automaton)
    report = classify(d, max_k=args.max_k)
    _emit(config, report_to_json(report))
    return 0


def _cmd_minimize(args, config: CliConfig) -> int:
    d = _load_dfa(args.automaton)
    _emit(config, automaton_to_json(minimize_dfa(d)))
    return 0


def _cmd_witness(args, config: CliConfig) -> int:
    d = _load_dfa(args.automaton)
    if args.kind in ("ck", "dk"):
        if args.k is None:
            raise ValidationError("k: --kind ck/dk requires --k")
        found = detect_ck(d, args.k)
        if args.kind == "dk" and found is not None:
            found = ck_to_dk(d, found)
    elif args.kind == "f":
        found = detect_f(d)
    else:
        found = detect_forbidden(d)
    payload = {"kind": args.kind,
               "witness": witness_to_json(found) if found else None}
    _emit(config, payload)
    return 1 if found is not None else 0


def _cmd_gallery(args, config: CliConfig) -> int:
    fixture = build_gallery(args.id, k=args.k, mode=config.mode)
    _emit(config, automaton_to_json(fixture))
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "equiv": _cmd_equiv,
    "classify": _cmd_classify,
    "minimize": _cmd_minimize,
    "witness": _cmd_witness,
    "gallery": _cmd_gallery,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        config = CliConfig(mode=args.mode, tol=args.tol,
                           max_k=getattr(args, "max_k", 3),
                           output=args.output, format=args.format)
        return _COMMANDS[args.command](args, config)
    except (ValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
