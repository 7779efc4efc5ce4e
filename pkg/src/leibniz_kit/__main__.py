"""Command-line entry point for the Leibniz toolkit."""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Any

from leibniz_kit.config import REPORT_FORMATS, Config, ConfigError, ConfigManager
from leibniz_kit.logging_setup import configure_logging

LOGGER = logging.getLogger(__name__)

EXIT_MALFORMED = 3


def build_parser() -> argparse.ArgumentParser:
    from leibniz_kit.corpus import RECIPES
    from leibniz_kit.verify import CLAIM_ALIASES, CLAIMS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Path of the configuration file")
    common.add_argument("--max-dim", type=int, help="Reject algebras above this dimension")
    common.add_argument("--format", choices=sorted(REPORT_FORMATS), help="Report format")
    common.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)")

    parser = argparse.ArgumentParser(prog="leibniz-kit", description="Exact computations with Leibniz algebras over QQ")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="Classify an algebra and report its invariants")
    analyze.add_argument("file", type=Path)

    construct = commands.add_parser("construct", parents=[common], help="Build a named algebra")
    construct.add_argument("recipe", help=f"One of: {', '.join(RECIPES)} (arguments after ':')")
    construct.add_argument("--out", type=Path, help="Write the corpus entry to this file")

    verify = commands.add_parser("verify", parents=[common], help="Verify one claim on one algebra")
    verify.add_argument(
        "claim", choices=list(CLAIMS) + [a for a in CLAIM_ALIASES if a not in CLAIMS], metavar="CLAIM",
        help=f"One of: {', '.join(CLAIMS)} (descriptive names are accepted too)",
    )
    verify.add_argument("file", type=Path, nargs="?", help="Corpus entry (not needed for hierarchy)")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--trials", type=int)

    witness = commands.add_parser("witness", parents=[common], help="Print or write the hierarchy witnesses")
    witness.add_argument("--out", type=Path, help="Directory for the witness entries")

    corpus = commands.add_parser("corpus", help="Work with the corpus")
    corpus_commands = corpus.add_subparsers(dest="corpus_command", required=True)
    run = corpus_commands.add_parser("run", parents=[common], help="Verify every claim on every entry")
    run.add_argument("--seed", type=int)
    run.add_argument("--trials", type=int)
    run.add_argument("--dir", type=Path, help="Directory of extra corpus entries")
    return parser


def _effective_config(args: argparse.Namespace) -> Config:
    config = ConfigManager(args.config).load()
    overrides: dict[str, Any] = {}
    for flag, key in (
        ("max_dim", "max_dim"),
        ("format", "report_format"),
        ("log_level", "log_level"),
        ("seed", "seed"),
        ("trials", "trials"),
        ("dir", "corpus_dir"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = str(value) if key == "corpus_dir" else value
    return dataclasses.replace(config, **overrides)


def _emit(payload: Any, text: str, config: Config) -> None:
    if config.report_format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors are malformed input
        return EXIT_MALFORMED if exc.code else 0

    try:
        config = _effective_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    configure_logging(config.log_level, ConfigManager(args.config).log_dir)

    from leibniz_kit.corpus import CorpusFormatError
    from leibniz_kit.linalg import DimensionMismatch

    try:
        if args.command == "analyze":
            return _analyze(args, config)
        if args.command == "construct":
            return _construct(args, config)
        if args.command == "verify":
            return _verify(args, config)
        if args.command == "witness":
            return _witness(args, config)
        return _corpus_run(args, config)
    except (CorpusFormatError, DimensionMismatch, OSError) as exc:
        LOGGER.error("Malformed input: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def _analyze(args: argparse.Namespace, config: Config) -> int:
    from leibniz_kit.algebra import center, classify, derived, leibniz_kernel, solvable_radical
    from leibniz_kit.corpus import load_entry
    from leibniz_kit.pairing import form_radical, rank
    from leibniz_kit.verify import jsonable

    entry = load_entry(args.file, max_dim=config.max_dim)
    algebra = entry.algebra
    flags = classify(algebra)
    info: dict[str, Any] = {
        "id": entry.id,
        "dim": algebra.dim,
        "level": flags.level,
        "flags": flags.as_dict(),
        "rank": rank(algebra),
        "kernel": leibniz_kernel(algebra),
        "center_dim": center(algebra).dim,
        "derived_dim": derived(algebra).dim,
    }
    if flags.witness is not None:
        info["violation"] = {"law": flags.witness.law, "indices": list(flags.witness.indices)}
    if flags.left_central:
        info["radical"] = form_radical(algebra)
    if flags.lie:
        info["solvable_radical_dim"] = solvable_radical(algebra).dim
    payload = jsonable(info)
    text = "\n".join(f"{key}: {value}" for key, value in payload.items())
    _emit(payload, text, config)
    return 0


def _construct(args: argparse.Namespace, config: Config) -> int:
    from leibniz_kit.algebra import classify
    from leibniz_kit.corpus import CorpusFormatError, dumps_entry, entry_from_recipe, save_entry
    from leibniz_kit.pairing import rank

    entry = entry_from_recipe(args.recipe)
    if entry.algebra.dim > config.max_dim:
        raise CorpusFormatError(f"dim {entry.algebra.dim} exceeds the maximum dimension {config.max_dim}")
    entry.expected.update({"level": classify(entry.algebra).level, "rank": rank(entry.algebra)})
    if args.out:
        save_entry(entry, args.out)
    else:
        sys.stdout.write(dumps_entry(entry))
    return 0


def _verify(args: argparse.Namespace, config: Config) -> int:
    from leibniz_kit.corpus import CorpusEntry, load_entry
    from leibniz_kit.verify import hierarchy_witnesses, resolve_claim, run_claim

    if resolve_claim(args.claim) == "hierarchy":
        _, report = hierarchy_witnesses()
        report.subject = "built-in witnesses"
    else:
        if args.file is None:
            print(f"error: claim {args.claim} needs an input file", file=sys.stderr)
            return EXIT_MALFORMED
        entry: CorpusEntry = load_entry(args.file, max_dim=config.max_dim)
        report = run_claim(
            args.claim, entry, seed=config.seed, trials=config.trials, attempts=config.sample_attempts
        )
    _emit(report.to_dict(), report.render_text(), config)
    return report.status.exit_code


def _witness(args: argparse.Namespace, config: Config) -> int:
    from leibniz_kit.corpus import dumps_entry, save_entry
    from leibniz_kit.verify import hierarchy_witnesses

    entries, report = hierarchy_witnesses()
    if args.out:
        for entry in entries:
            save_entry(entry, args.out / f"{entry.id}.json")
    elif config.report_format != "json":
        for entry in entries:
            sys.stdout.write(dumps_entry(entry))
    _emit(report.to_dict(), report.render_text(), config)
    return report.status.exit_code


def _corpus_run(args: argparse.Namespace, config: Config) -> int:
    from leibniz_kit.corpus import builtin_corpus, load_corpus_dir
    from leibniz_kit.runner import CorpusRunner

    entries = [e for e in builtin_corpus() if e.algebra.dim <= config.max_dim]
    if config.corpus_dir:
        entries += load_corpus_dir(Path(config.corpus_dir), max_dim=config.max_dim)
    LOGGER.info("Running %d corpus entries", len(entries))
    summary = CorpusRunner(config).run(entries)
    _emit(summary.to_dict(), summary.render_text(), config)
    return summary.status.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
