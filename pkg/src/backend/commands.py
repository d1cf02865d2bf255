import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .checker import SwapChecker
from .frontend import RecordFormatError, read_records, scan_corpus, scan_paths, write_records
from .naming import FrequencyTable, build_frequency_table
from .report import ToolMeta, emit_sarif
from .schema import CallSiteRecord, DeclarationRecord, FilterName, ProjectRecord, Settings
from .settings import load_settings
from .similarity import load_synonyms
from .statsdb import build_db, format_morphology_report, load_db, morphology_report, save_db
from .utils import TableFormatError

EXIT_OK = 0
EXIT_WARNINGS = 1
EXIT_ERROR = 2

DEFAULT_DB_NAME = "argswap.statsdb"
DEFAULT_FREQ_NAME = "argswap.freq"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="dotenv-style file of ARGSWAP_* settings")
    parser.add_argument("--jobs", type=int, help="worker threads")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="warnings and errors only")


def _add_corpus_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("corpus", nargs="?", help="corpus root; each first-level directory is a project")
    parser.add_argument("--records", help="read projects from a record file instead of scanning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argswap", description="Find swapped arguments in C and C++ calls.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build-db", help="build the statistics database from a corpus")
    _add_corpus_source(build)
    build.add_argument("--out", default=".", help="output directory (default: current directory)")
    build.add_argument("--db", help=f"database path (default: <out>/{DEFAULT_DB_NAME})")
    build.add_argument("--freq-table", help=f"frequency table path (default: <out>/{DEFAULT_FREQ_NAME})")
    build.add_argument("--write-records", help="also save the scanned projects as a record file")
    build.add_argument("--min-token-count", type=int)
    build.add_argument("--stoplist", help="stop-morpheme file replacing the built-in list")
    _add_common(build)

    check = sub.add_parser("check", help="check source files and report swapped arguments as SARIF")
    check.add_argument("paths", nargs="*", help="source files or directories")
    check.add_argument("--records", help="check the call sites of a record file")
    check.add_argument("--out", help="SARIF output file (default: standard output)")
    check.add_argument("--db", help="statistics database; stages 2 and 3 are skipped without one")
    check.add_argument("--freq-table", help="frequency table (default: the bundled seed table)")
    check.add_argument("--synonyms", help="file of 'token,token' synonym pairs")
    check.add_argument("--stoplist", help="stop-morpheme file replacing the built-in list")
    check.add_argument("--alpha1", type=float)
    check.add_argument("--alpha2", type=float)
    check.add_argument("--beta", type=float)
    check.add_argument("--gamma", type=float)
    check.add_argument("--sim-threshold", type=float)
    check.add_argument("--min-token-count", type=int)
    check.add_argument("--disable-filter", action="append", choices=[f.value for f in FilterName],
                       help="switch a filter off (repeatable)")
    check.add_argument("--whitelist-words", help="comma-separated words that mark intentional swaps")
    check.add_argument("--max-swap-distance", type=int)
    check.add_argument("--not-rare-count", type=int)
    check.add_argument("--stages", help="stages to run, e.g. 1234 (default) or 13")
    check.add_argument("--include-suppressed", action="store_true",
                       help="report filtered warnings as suppressed results")
    _add_common(check)

    stats = sub.add_parser("corpus-stats", help="print morpheme-set size histograms")
    _add_corpus_source(stats)
    stats.add_argument("--freq-table", help="frequency table (default: built from the corpus)")
    _add_common(stats)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    overrides = {
        "JOBS": args.jobs,
        "DB": getattr(args, "db", None),
        "FREQ_TABLE": getattr(args, "freq_table", None),
        "SYNONYMS": getattr(args, "synonyms", None),
        "STOPLIST": getattr(args, "stoplist", None),
        "ALPHA1": getattr(args, "alpha1", None),
        "ALPHA2": getattr(args, "alpha2", None),
        "BETA": getattr(args, "beta", None),
        "GAMMA": getattr(args, "gamma", None),
        "SIM_THRESHOLD": getattr(args, "sim_threshold", None),
        "MIN_TOKEN_COUNT": getattr(args, "min_token_count", None),
        "DISABLED_FILTERS": getattr(args, "disable_filter", None),
        "WHITELIST_WORDS": getattr(args, "whitelist_words", None),
        "MAX_SWAP_DISTANCE": getattr(args, "max_swap_distance", None),
        "NOT_RARE_COUNT": getattr(args, "not_rare_count", None),
        "STAGES": getattr(args, "stages", None),
    }
    return load_settings(args.config, overrides)


def _load_projects(args: argparse.Namespace, jobs: int) -> List[ProjectRecord]:
    if args.records:
        return read_records(args.records)
    if not args.corpus:
        raise ValueError("Give a corpus directory or --records")
    return scan_corpus(args.corpus, jobs)


def cmd_build_db(args: argparse.Namespace) -> int:
    """Scan a corpus and write its frequency table and statistics database."""
    settings = _settings(args)
    projects = _load_projects(args, settings.jobs)
    if args.write_records:
        write_records(projects, args.write_records)

    freq = FrequencyTable.seed().merge(build_frequency_table(projects))
    db = build_db(projects, freq, settings.stats, settings.naming, jobs=settings.jobs)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    freq_path = settings.freq_table_path or str(out / DEFAULT_FREQ_NAME)
    db_path = settings.db_path or str(out / DEFAULT_DB_NAME)
    freq.save(freq_path)
    save_db(db, db_path)

    calls = sum(len(p.call_sites) for p in projects)
    print(f"projects: {len(projects)}")
    print(f"calls: {calls}")
    print(f"entries: {len(db)}")
    print(f"database: {db_path}")
    print(f"frequency table: {freq_path}")
    return EXIT_OK


def _check_inputs(args: argparse.Namespace, jobs: int) -> Tuple[List[CallSiteRecord], List[DeclarationRecord]]:
    if args.records:
        projects = read_records(args.records)
        calls = [c for p in projects for c in p.call_sites]
        decls = [d for p in projects for d in p.declarations]
        return calls, decls
    if not args.paths:
        raise ValueError("Give source paths or --records")
    return scan_paths(args.paths, jobs)


def cmd_check(args: argparse.Namespace) -> int:
    """Check sources and write a SARIF report; exit 1 when warnings remain."""
    settings = _settings(args)
    freq = FrequencyTable.load(settings.freq_table_path) if settings.freq_table_path else FrequencyTable.seed()
    db = load_db(settings.db_path) if settings.db_path else None
    if db is None:
        logging.warning("No statistics database given: vetting and the statistical checker are skipped")
    synonyms = load_synonyms(settings.synonyms_path) if settings.synonyms_path else None

    calls, decls = _check_inputs(args, settings.jobs)
    checker = SwapChecker(
        db=db, freq=freq, thresholds=settings.thresholds, synonyms=synonyms,
        filters=settings.filters, pipeline=settings.pipeline, naming=settings.naming,
        similarity=settings.similarity, jobs=settings.jobs,
    )
    result = checker.check(calls, decls)

    properties = {**settings.thresholds.as_properties(), "stages": settings.pipeline.stages}
    suppressed = result.suppressed if args.include_suppressed else []
    report = emit_sarif(result.warnings, ToolMeta(properties=properties), suppressed)
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
        logging.info(f"Wrote {len(result.warnings)} warnings to {args.out}")
    else:
        sys.stdout.write(report)
    return EXIT_WARNINGS if result.warnings else EXIT_OK


def cmd_corpus_stats(args: argparse.Namespace) -> int:
    """Print argument and parameter morpheme-set size histograms."""
    settings = _settings(args)
    projects = _load_projects(args, settings.jobs)
    if args.freq_table:
        freq = FrequencyTable.load(args.freq_table)
    else:
        freq = FrequencyTable.seed().merge(build_frequency_table(projects))
    print(format_morphology_report(morphology_report(projects, freq, settings.naming)), end="")
    return EXIT_OK


COMMANDS = {
    "build-db": cmd_build_db,
    "check": cmd_check,
    "corpus-stats": cmd_corpus_stats,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except (RecordFormatError, TableFormatError, ValueError, OSError) as e:
        logging.error(f"{args.command} failed: {e}")
        return EXIT_ERROR
