"""Command-line interface.

Subcommands: ingest, rank, targets, run (all three), synth (generator).
Exit codes: 0 success, 1 usage/config error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .corpus import (
    DEMO_TOPIC_PROFILES,
    DEMO_FILLER_VOCAB,
    GLUE_WORDS,
    NEGATIVE_SEED_WORDS,
    POSITIVE_SEED_WORDS,
    format_timestamp,
    generate_synthetic_corpus,
    synthetic_seed_corpus,
    write_corpus_csvs,
)
from .errors import ConfigError, DataError, EgorankError
from .pipeline import run_all, run_ingest, run_rank, run_targets
from .simdex import random_vectors, write_embeddings

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="pipeline config JSON")
    parser.add_argument("--platform", help="Facebook, Twitter or LinkedIn")
    parser.add_argument("--ego-id", dest="ego_id")
    parser.add_argument("--bucket", help="'all' or 'Category/Sentiment'")
    parser.add_argument("--n-it", dest="n_it", type=int)
    parser.add_argument("--threshold", type=int)
    parser.add_argument("--normalization", choices=["raw", "mean"])
    parser.add_argument("--allow-small", dest="allow_small", action="store_const", const=True)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out-dir", dest="out_dir")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--since")
    parser.add_argument("--until")
    for key in ("stop-list", "lemma-dictionary", "sentiment-lexicon", "negators",
                "boosters", "spelling-dictionary", "embeddings", "labeled-seed"):
        parser.add_argument(f"--{key}", dest=key.replace("-", "_"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="egorank", description=__doc__)
    parser.add_argument("--version", action="version", version=f"egorank {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("ingest", "load and preprocess all datasets into a normalized bundle"),
        ("rank", "classify, bucket and rank members by recommendation index"),
        ("targets", "select top-most influenceable targets from a ranking"),
        ("run", "ingest + rank + targets in one go"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_override_flags(p)

    synth = sub.add_parser("synth", help="write a deterministic synthetic corpus + config")
    synth.add_argument("--out", required=True, help="output directory")
    synth.add_argument("--seed", type=int, default=7)
    synth.add_argument("--members", type=int, default=60)
    synth.add_argument("--docs-per-member", dest="docs_per_member", type=int, default=12)
    synth.add_argument("--ego-docs", dest="ego_docs", type=int, default=24)
    synth.add_argument("--planted", type=int, default=10)
    synth.add_argument("--mega", type=int, default=2)
    synth.add_argument("--groups", type=int, default=2)
    synth.add_argument("--dim", type=int, default=50)
    synth.add_argument("--extra-vocab", dest="extra_vocab", type=int, default=0,
                       help="pad the embedding vocabulary to this size")
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict:
    keys = ("platform", "ego_id", "bucket", "n_it", "threshold", "normalization",
            "allow_small", "seed", "out_dir", "workers", "since", "until",
            "stop_list", "lemma_dictionary", "sentiment_lexicon", "negators",
            "boosters", "spelling_dictionary", "embeddings", "labeled_seed")
    return {k: getattr(args, k, None) for k in keys}


def cmd_synth(args: argparse.Namespace) -> int:
    out = Path(args.out)
    corpus = generate_synthetic_corpus(
        seed=args.seed,
        members=args.members,
        docs_per_member=args.docs_per_member,
        ego_docs=args.ego_docs,
        planted_members=args.planted,
        mega_members=args.mega,
        group_members=args.groups,
    )
    write_corpus_csvs(corpus, out)

    words = set(GLUE_WORDS) | set(DEMO_FILLER_VOCAB)
    words |= set(POSITIVE_SEED_WORDS) | set(NEGATIVE_SEED_WORDS)
    for profile in DEMO_TOPIC_PROFILES.values():
        words |= set(profile)
    if args.extra_vocab > len(words):
        words |= {f"w{i:05d}" for i in range(args.extra_vocab - len(words))}
    write_embeddings(out / "embeddings.txt", random_vectors(sorted(words), args.dim, args.seed))

    seed_rows = synthetic_seed_corpus(args.seed)
    with (out / "seed_categories.csv").open("w", encoding="utf-8", newline="") as fh:
        fh.write("text,category\n")
        for text, category in seed_rows:
            fh.write(f"{text},{category}\n")

    eligible_size = args.members - args.groups
    # Ask for about as many targets as were planted; bucket rankings in a
    # synthetic corpus only hold members with documents in that bucket.
    n_it = min(50, args.planted) if args.planted else min(50, eligible_size)
    config = {
        "platform": corpus.platform.value,
        "ego_id": corpus.ego_id,
        "datasets": {str(no): f"dataset_{no}.csv" for no in (1, 2, 3, 4, 6, 7, 8, 9)}
        | {"5": "members.csv"},
        "window": {
            "since": format_timestamp(corpus.window[0]),
            "until": format_timestamp(corpus.window[1]),
        },
        "resources": {"embeddings": "embeddings.txt", "labeled_seed": "seed_categories.csv"},
        "bucket": "all",
        "n_it": n_it,
        "threshold": 5000,
        "normalization": "raw",
        "allow_small": True,
        "seed": args.seed,
        "out_dir": "out",
    }
    (out / "config.json").write_text(
        json.dumps(config, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    truth = corpus.synthetic_truth
    print(f"synthetic corpus written to {out}")
    print(f"  members={args.members} docs_per_member={args.docs_per_member} "
          f"planted={len(truth.planted)} mega={len(truth.mega)}")
    print(f"  ego bucket: {truth.ego_bucket[0]}/{truth.ego_bucket[1]}")
    print(f"  run it with: egorank run --config {out / 'config.json'}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "synth":
            return cmd_synth(args)
        cfg = load_config(args.config, _overrides_from_args(args))
        if args.command == "ingest":
            result = run_ingest(cfg)
            print(json.dumps(result.report, indent=2, sort_keys=True))
        elif args.command == "rank":
            rankings = run_rank(cfg)
            for bucket, ranking in rankings.items():
                print(f"{bucket}: {len(ranking.entries)} ranked members")
        elif args.command == "targets":
            selections = run_targets(cfg)
            for bucket, sel in selections.items():
                print(f"{bucket}: N_it={sel.n_it} D_it={sel.d_it} "
                      f"effective={len(sel.effective)}")
        elif args.command == "run":
            selections = run_all(cfg)
            for bucket, sel in selections.items():
                print(f"{bucket}: N_it={sel.n_it} D_it={sel.d_it} "
                      f"effective={len(sel.effective)}")
        return EXIT_OK
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except DataError as exc:
        log.error("%s", exc)
        return EXIT_DATA
    except EgorankError as exc:
        log.error("%s", exc)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
