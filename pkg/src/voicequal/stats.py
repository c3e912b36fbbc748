"""Reference statistics: per-feature mean and standard deviation over a corpus."""

from __future__ import annotations

import datetime
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import StatsError
from .llf import LLF_KEYS, LlfVector

SCHEMA_VERSION = 1
MIN_SIGMA = 1e-9


@dataclass(frozen=True)
class FeatureStats:
    """Per-feature mu and sigma fitted over a reference corpus."""

    mu: dict[str, float]
    sigma: dict[str, float]
    corpus: str = ""
    n_utterances: int = 0
    created: str = ""

    def __post_init__(self):
        for name, d in (("mu", self.mu), ("sigma", self.sigma)):
            missing = [k for k in LLF_KEYS if k not in d]
            if missing:
                raise StatsError(f"stats {name} missing keys: {missing}")
        bad = [k for k, s in self.sigma.items() if not s > 0]
        if bad:
            raise StatsError(f"nonpositive sigma for: {bad}")


def fit_stats(vectors: Sequence[LlfVector], corpus: str = "") -> FeatureStats:
    """Sample mean and (n-1)-denominator standard deviation per feature.

    A feature whose spread collapses below 1e-9 makes the reference corpus
    unusable for z-scoring and is rejected.
    """
    vectors = list(vectors)
    if len(vectors) < 2:
        raise StatsError(f"fewer than 2 vectors: got {len(vectors)}")
    data = np.array([[v[k] for k in LLF_KEYS] for v in vectors])
    mu = data.mean(axis=0)
    sigma = data.std(axis=0, ddof=1)
    degenerate = [k for k, s in zip(LLF_KEYS, sigma) if s < MIN_SIGMA]
    if degenerate:
        raise StatsError(f"degenerate feature (zero variance): {degenerate}")
    return FeatureStats(
        mu=dict(zip(LLF_KEYS, mu.tolist())),
        sigma=dict(zip(LLF_KEYS, sigma.tolist())),
        corpus=corpus,
        n_utterances=len(vectors),
        created=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )


def save_stats(stats: FeatureStats, path: str | os.PathLike) -> None:
    """Write stats as a human-readable key/value file; floats keep full precision."""
    lines = [
        "# voicequal reference feature statistics",
        f"schema-version {SCHEMA_VERSION}",
        f"corpus {stats.corpus}",
        f"utterances {stats.n_utterances}",
        f"created {stats.created}",
    ]
    for key in LLF_KEYS:
        lines.append(f"stat {key} {stats.mu[key]!r} {stats.sigma[key]!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_stats(path: str | os.PathLike) -> FeatureStats:
    """Read a stats file written by save_stats; validates keys and sigmas."""
    mu: dict[str, float] = {}
    sigma: dict[str, float] = {}
    corpus, n_utt, created = "", 0, ""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise StatsError(f"cannot read stats {path}: {exc}")

    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "schema-version":
            if parts[1:] != [str(SCHEMA_VERSION)]:
                raise StatsError(f"{path}:{lineno}: unsupported schema version")
        elif parts[0] == "corpus":
            corpus = " ".join(parts[1:])
        elif parts[0] == "utterances":
            n_utt = int(parts[1])
        elif parts[0] == "created":
            created = parts[1] if len(parts) > 1 else ""
        elif parts[0] == "stat":
            if len(parts) != 4:
                raise StatsError(f"{path}:{lineno}: malformed stat line")
            key = parts[1]
            if key not in LLF_KEYS:
                raise StatsError(f"{path}:{lineno}: unknown feature key {key!r}")
            if key in mu:
                raise StatsError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                mu[key] = float(parts[2])
                sigma[key] = float(parts[3])
            except ValueError:
                raise StatsError(f"{path}:{lineno}: malformed number for {key!r}")
        else:
            raise StatsError(f"{path}:{lineno}: unknown directive {parts[0]!r}")

    missing = [k for k in LLF_KEYS if k not in mu]
    if missing:
        raise StatsError(f"{path}: missing keys {missing}")
    return FeatureStats(mu=mu, sigma=sigma, corpus=corpus,
                        n_utterances=n_utt, created=created)
