"""Command-line entry points: validate, correct, eval, serve, export.

The two-stage workflow the tool is built around:

    tagmend correct corpus.txt --stage 1 --out stage1.tsv   # closed data, M1
    tagmend serve stage1.tsv corpus.txt --session s1.log    # annotators review
    tagmend export corpus.txt stage1.tsv --session s1.log --out corrected.txt
    tagmend correct corrected.txt --stage 2 --out stage2.tsv # open data, M1

Stage 1 yields few, high-precision candidates; stage 2 extracts many more
from the open-data probabilities.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .correction import (
    METHOD_M1,
    METHOD_M2,
    MODE_CLOSED,
    MODE_OPEN,
    DecisionListLearner,
    MaxentLearner,
    make_folds,
    rank,
    read_candidates,
    score_closed,
    score_open,
    write_candidates,
)
from .corpus import Taxonomy, UNTAGGABLE_GROUP, load_corpus_file, write_corpus
from .evaluation import build_report, inject_errors, render_report, write_report_tsv
from .features import write_feature_dump
from .maxent import MaxentConfig
from .session import SessionError, SessionLog, corrected_corpus, live_verdicts
from .synthesis import GeneratorSpec, generate_synthetic_corpus

BIND_ENV_VAR = "TAGMEND_BIND"
DEFAULT_BIND = "127.0.0.1:8760"

STAGE_PRESETS = {
    1: ("maxent", MODE_CLOSED, METHOD_M1),
    2: ("maxent", MODE_OPEN, METHOD_M1),
}


def _load_taxonomy(path: str | None) -> Taxonomy:
    return Taxonomy.from_file(path) if path else Taxonomy.default()


def _make_learner(name: str, iterations: int, tolerance: float, cutoff: int = 1):
    if name == "maxent":
        return MaxentLearner(
            MaxentConfig(
                max_iterations=iterations, tolerance=tolerance, min_feature_count=cutoff
            )
        )
    if name == "dlist":
        return DecisionListLearner()
    raise ValueError(f"unknown learner {name!r}")


def cmd_validate(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    examples, report = load_corpus_file(args.corpus, taxonomy)
    for issue in report.errors:
        print(f"record {issue.record_ordinal} (line {issue.line_no}): {issue.message}")
    untaggable = sum(1 for ex in examples if ex.v_category.group == UNTAGGABLE_GROUP)
    print(
        f"{report.record_count} records, {len(report.errors)} errors, "
        f"{len(examples)} loaded, {untaggable} untaggable"
    )
    if args.dump_features:
        with open(args.dump_features, "w", encoding="utf-8", newline="") as handle:
            write_feature_dump(examples, handle)
        print(f"feature dump written to {args.dump_features}")
    return 0 if not report.errors else 1


def cmd_correct(args: argparse.Namespace) -> int:
    learner_name, mode, method = args.learner, args.mode, args.rank
    if args.stage is not None:
        conflicting = {"--learner", "--mode", "--rank"} & getattr(args, "explicit_flags", set())
        if conflicting:
            print(
                f"error: --stage is a preset and conflicts with {', '.join(sorted(conflicting))}",
                file=sys.stderr,
            )
            return 2
        learner_name, mode, method = STAGE_PRESETS[args.stage]
    taxonomy = _load_taxonomy(args.taxonomy)
    corpus, report = load_corpus_file(args.corpus, taxonomy, exclude_untaggable=True)
    if report.errors:
        first = report.errors[0]
        print(
            f"error: corpus has {len(report.errors)} bad record(s); "
            f"first at line {first.line_no}: {first.message}",
            file=sys.stderr,
        )
        return 1
    learner = _make_learner(learner_name, args.iterations, args.tolerance, args.cutoff)
    try:
        if mode == MODE_CLOSED:
            candidates = score_closed(corpus, learner, taxonomy)
        else:
            folds = make_folds(corpus, args.folds, args.seed)
            candidates = score_open(corpus, learner, folds, taxonomy)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    ranked = rank(candidates, method)
    write_candidates(ranked, args.out)
    print(
        f"{len(ranked)} candidates ({learner_name}, {mode}, {method}) "
        f"from {len(corpus)} tags -> {args.out}"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    spec = GeneratorSpec(size=args.size, rule_seed=args.seed)
    corpus = generate_synthetic_corpus(spec, taxonomy)
    corpus = [ex for ex in corpus if ex.v_category.group != UNTAGGABLE_GROUP]
    noisy, gold = inject_errors(corpus, args.rate, args.seed + 1, taxonomy)
    learner = _make_learner(args.learner, args.iterations, args.tolerance, args.cutoff)
    if args.mode == MODE_CLOSED:
        candidates = score_closed(noisy, learner, taxonomy)
    else:
        folds = make_folds(noisy, args.folds, args.seed + 2)
        candidates = score_open(noisy, learner, folds, taxonomy)
    report = build_report(candidates, gold, seed=args.seed + 3)
    print(
        f"benchmark: {len(corpus)} tags, {len(gold)} injected errors, "
        f"{len(candidates)} candidates ({args.learner}, {args.mode})"
    )
    print(render_report(report), end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            write_report_tsv(report, handle)
        print(f"report table written to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve_review

    taxonomy = _load_taxonomy(args.taxonomy)
    bind = args.bind or os.environ.get(BIND_ENV_VAR, DEFAULT_BIND)
    try:
        serve_review(
            args.candidates,
            args.corpus,
            taxonomy,
            args.session,
            bind=bind,
            ui_dir=args.ui,
        )
    except SessionError as err:
        print(f"error: refusing to start: {err}", file=sys.stderr)
        return 1
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    corpus, report = load_corpus_file(args.corpus, taxonomy)
    if report.errors:
        print(f"error: corpus has {len(report.errors)} bad record(s)", file=sys.stderr)
        return 1
    candidates = read_candidates(args.candidates)
    by_ref = {c.example_id: c for c in candidates}
    try:
        verdicts = SessionLog(args.session).load()
        corrected = corrected_corpus(corpus, by_ref, verdicts, taxonomy)
    except SessionError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    write_corpus(corrected, args.out)
    applied = sum(
        1 for v in live_verdicts(verdicts).values() if v.decision in ("accept", "edit")
    )
    print(f"applied {applied} verdict(s) -> {args.out}")
    return 0


def build_parser(config: dict[str, Any] | None = None) -> argparse.ArgumentParser:
    """The CLI parser; ``config`` holds defaults loaded from ``--config``."""
    cfg = config or {}

    def default(key: str, fallback):
        return cfg.get(key, fallback)

    parser = argparse.ArgumentParser(
        prog="tagmend",
        description="Detect and correct mislabeled tense/aspect/modality tags.",
    )
    parser.add_argument(
        "--config", help="JSON file of default values for the flags below (flags win)"
    )
    parser.add_argument(
        "--taxonomy",
        default=default("taxonomy", None),
        help="taxonomy TSV (default: the 34-category file shipped with the package)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a corpus and report per-record problems")
    p.add_argument("corpus")
    p.add_argument("--dump-features", help="write exampleId<TAB>featureKey lines here")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("correct", help="score all tags and write ranked correction candidates")
    p.add_argument("corpus")
    p.add_argument("--learner", choices=("maxent", "dlist"), default=default("learner", "maxent"))
    p.add_argument(
        "--mode", choices=(MODE_CLOSED, MODE_OPEN), default=default("mode", MODE_CLOSED)
    )
    p.add_argument(
        "--rank", choices=(METHOD_M1, METHOD_M2), default=default("rank", METHOD_M1)
    )
    p.add_argument(
        "--stage",
        type=int,
        choices=sorted(STAGE_PRESETS),
        help="preset: 1 = maxent/closed/M1 (high precision first), 2 = maxent/open/M1 (volume)",
    )
    p.add_argument("--folds", type=int, default=default("folds", 10))
    p.add_argument("--seed", type=int, default=default("seed", 0))
    p.add_argument("--iterations", type=int, default=default("iterations", 200))
    p.add_argument("--tolerance", type=float, default=default("tolerance", 1e-3))
    p.add_argument(
        "--cutoff",
        type=int,
        default=default("cutoff", 1),
        help="drop (feature, category) pairs seen fewer times than this",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("eval", help="synthetic benchmark: generate, corrupt, correct, report")
    p.add_argument("--size", type=int, default=default("size", 4000))
    p.add_argument("--rate", type=float, default=default("rate", 0.05))
    p.add_argument("--seed", type=int, default=default("seed", 0))
    p.add_argument("--learner", choices=("maxent", "dlist"), default=default("learner", "maxent"))
    p.add_argument(
        "--mode", choices=(MODE_CLOSED, MODE_OPEN), default=default("mode", MODE_CLOSED)
    )
    p.add_argument("--folds", type=int, default=default("folds", 10))
    p.add_argument("--iterations", type=int, default=default("iterations", 200))
    p.add_argument("--tolerance", type=float, default=default("tolerance", 1e-3))
    p.add_argument(
        "--cutoff",
        type=int,
        default=default("cutoff", 2),
        help="joint count cutoff; the benchmark default of 2 keeps the task honest "
        "(singleton n-grams would let a closed-data model memorize every tag)",
    )
    p.add_argument("--out", help="also write the machine-readable TSV table here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP review service")
    p.add_argument("candidates")
    p.add_argument("corpus")
    p.add_argument("--session", required=True, help="append-only verdict log")
    p.add_argument(
        "--bind",
        default=default("bind", None),
        help=f"host:port (default ${BIND_ENV_VAR} or {DEFAULT_BIND})",
    )
    p.add_argument(
        "--ui", default=default("ui", None), help="directory of built UI assets to serve at /"
    )
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="apply reviewed verdicts and write the corrected corpus")
    p.add_argument("corpus")
    p.add_argument("candidates")
    p.add_argument("--session", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    conf_parser = argparse.ArgumentParser(add_help=False)
    conf_parser.add_argument("--config")
    known, _ = conf_parser.parse_known_args(argv)
    config = None
    if known.config:
        with open(known.config, encoding="utf-8") as handle:
            config = json.load(handle)
        if not isinstance(config, dict):
            print("error: config file must hold a JSON object", file=sys.stderr)
            return 2
    args = build_parser(config).parse_args(argv)
    # remember which optionals were given literally, for conflict checks
    args.explicit_flags = {token.split("=", 1)[0] for token in argv if token.startswith("--")}
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
