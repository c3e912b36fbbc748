"""Batch command-line front end: extract, fit-stats, score, evaluate, synth."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .audio_io import load_audio, save_wav
from .errors import ManifestError, StatsError, VoiceQualityError
from .evaluation import (
    NEUTRAL_LABEL,
    SUITE_F0_BASE,
    SUITE_F0_STEP,
    SUITE_PARAMS,
    SUITE_QUALITY,
    build_synthetic_suite,
    evaluate_pairs,
    form_pairs,
    format_report,
    load_manifest,
)
from .llf import LLF_KEYS, extract_llf_vector
from .quality import load_table, score_all
from .stats import fit_stats, load_stats, save_stats
from .synth import KINDS, generate_synthetic

STATS_ENV_VAR = "VOICEQUAL_STATS"

EXIT_CODES_HELP = (
    "exit codes: 0 success, 1 unexpected error, 2 usage, 3 audio input, "
    "4 insufficient voicing, 5 statistics, 6 correlation table, 7 manifest"
)


def _collect_audio_paths(inputs: list[str]) -> list[str]:
    paths = []
    for item in inputs:
        if os.path.isdir(item):
            paths.extend(sorted(
                os.path.join(item, name) for name in os.listdir(item)
                if name.lower().endswith(".wav")))
        else:
            paths.append(item)
    return paths


def _extract_many(paths: list[str], jobs: int):
    """Extract feature vectors for many files, preserving input order."""
    def one(path):
        return extract_llf_vector(load_audio(path))

    if jobs <= 1:
        return [one(p) for p in paths]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, paths))


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _resolve_stats(args) -> str:
    path = args.stats or os.environ.get(STATS_ENV_VAR)
    if not path:
        raise StatsError(
            f"no stats file: pass --stats or set ${STATS_ENV_VAR}")
    return path


def cmd_extract(args) -> int:
    paths = _collect_audio_paths(args.inputs)
    vectors = _extract_many(paths, args.jobs)
    out, close = _open_output(args.output)
    try:
        for path, vector in zip(paths, vectors):
            record = {"source": path}
            record.update({k: vector[k] for k in LLF_KEYS})
            out.write(json.dumps(record) + "\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_fit_stats(args) -> int:
    if args.manifest:
        samples, skipped = load_manifest(args.manifest)
        if skipped:
            print(f"warning: skipped {skipped} manifest rows", file=sys.stderr)
        vectors = [s.llf for s in samples]
        n_files = len(samples)
    else:
        paths = _collect_audio_paths(args.inputs)
        vectors = _extract_many(paths, args.jobs)
        n_files = len(paths)
    stats = fit_stats(vectors, corpus=args.corpus_label)
    save_stats(stats, args.output)
    print(f"fitted stats over {n_files} utterances -> {args.output}")
    return 0


def cmd_score(args) -> int:
    stats = load_stats(_resolve_stats(args))
    table = load_table(args.table)
    paths = _collect_audio_paths(args.inputs)
    vectors = _extract_many(paths, args.jobs)
    out, close = _open_output(args.output)
    try:
        for path, vector in zip(paths, vectors):
            result = score_all(vector, stats, table)
            record = {"source": path, "scores": result.scores}
            if args.with_contributions:
                record["z_contributions"] = result.z_contributions
            out.write(json.dumps(record) + "\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_evaluate(args) -> int:
    table = load_table(args.table)
    if args.suite:
        samples = build_synthetic_suite(args.suite, seed=args.seed)
        qualities = [SUITE_QUALITY[args.suite]]
    elif args.manifest:
        samples, skipped = load_manifest(args.manifest)
        if skipped:
            print(f"warning: skipped {skipped} manifest rows", file=sys.stderr)
        qualities = sorted({s.dominant_quality for s in samples} - {NEUTRAL_LABEL})
    else:
        raise ManifestError("evaluate needs --manifest or --suite")

    if args.stats or os.environ.get(STATS_ENV_VAR):
        stats = load_stats(_resolve_stats(args))
    else:
        stats = fit_stats([s.llf for s in samples], corpus="evaluation set")

    pairs = []
    for quality in qualities:
        pairs.extend(form_pairs(samples, quality))
    report = evaluate_pairs(pairs, stats, table)
    print(format_report(report))
    if args.output:
        record = {
            "per_quality": {q: {"total_pairs": r.total_pairs,
                                "correct": r.correct,
                                "accuracy_percent": r.accuracy_percent}
                            for q, r in report.per_quality.items()},
            "mean_accuracy_percent": report.mean_accuracy_percent,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")
    return 0


def cmd_synth(args) -> int:
    if args.suite:
        if not args.output_dir:
            raise ManifestError("--suite needs --output-dir")
        os.makedirs(args.output_dir, exist_ok=True)
        samples = []
        quality = SUITE_QUALITY[args.suite]
        for i in range(args.count):
            f0 = SUITE_F0_BASE + SUITE_F0_STEP * (i % 8)
            pos = generate_synthetic(args.suite, f0=f0, seed=args.seed + i,
                                     **SUITE_PARAMS[args.suite])
            neg = generate_synthetic("clean", f0=f0, seed=args.seed + 1000 + i)
            pos_name, neg_name = f"{args.suite}_{i:02d}.wav", f"clean_{i:02d}.wav"
            save_wav(pos, os.path.join(args.output_dir, pos_name))
            save_wav(neg, os.path.join(args.output_dir, neg_name))
            samples.append((pos_name, quality))
            samples.append((neg_name, NEUTRAL_LABEL))
        manifest = os.path.join(args.output_dir, "manifest.csv")
        with open(manifest, "w", encoding="utf-8") as fh:
            for name, label in samples:
                fh.write(f"{name},{label}\n")
        print(f"wrote {2 * args.count} files and {manifest}")
        return 0

    signal = generate_synthetic(
        args.kind, f0=args.f0, duration=args.duration, seed=args.seed,
        jitter_pct=args.jitter_pct, shimmer_db=args.shimmer_db,
        noise_ratio=args.noise_ratio)
    save_wav(signal, args.output)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voicequal",
        description="Objective voice-quality scoring from speech audio.",
        epilog=EXIT_CODES_HELP)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="compute the 25 low-level features per file")
    p.add_argument("inputs", nargs="+", help="WAV files or directories")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fit-stats", help="fit reference statistics over a corpus")
    p.add_argument("inputs", nargs="*", help="WAV files or directories")
    p.add_argument("--manifest", help="CSV manifest instead of raw files")
    p.add_argument("--output", required=True, help="stats file to write")
    p.add_argument("--corpus-label", default="")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_fit_stats)

    p = sub.add_parser("score", help="score the 24 voice qualities per file")
    p.add_argument("inputs", nargs="+", help="WAV files or directories")
    p.add_argument("--stats", help=f"stats file (default ${STATS_ENV_VAR})")
    p.add_argument("--table", help="correlation table file (default bundled)")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--with-contributions", action="store_true",
                   help="include per-feature z contributions")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", help="pairwise ranking evaluation")
    p.add_argument("--manifest", help="CSV manifest of `path,label` rows")
    p.add_argument("--suite", choices=sorted(SUITE_QUALITY),
                   help="built-in synthetic suite instead of a manifest")
    p.add_argument("--stats", help="stats file (default: fit on the eval set)")
    p.add_argument("--table", help="correlation table file (default bundled)")
    p.add_argument("--output", help="machine-readable JSON report path")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate synthetic test vowels")
    p.add_argument("--kind", choices=KINDS, default="clean")
    p.add_argument("--f0", type=float, default=150.0)
    p.add_argument("--duration", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jitter-pct", type=float, default=2.0)
    p.add_argument("--shimmer-db", type=float, default=1.0)
    p.add_argument("--noise-ratio", type=float, default=0.25)
    p.add_argument("--output", default="synth.wav", help="WAV file to write")
    p.add_argument("--suite", choices=sorted(SUITE_QUALITY),
                   help="write a full suite of WAVs plus manifest.csv")
    p.add_argument("--output-dir", help="directory for --suite output")
    p.add_argument("--count", type=int, default=8,
                   help="positives (and negatives) per --suite")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except VoiceQualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
