"""Voice-quality scoring: the correlation table, weight palette, and the
normalized weighted z-score sum that maps 25 features to 24 quality scores."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources

from .errors import TableError
from .llf import LLF_KEYS, LlfVector
from .stats import FeatureStats

QUALITY_IDS = (
    "Cov", "Aph", "Biph", "Brea", "Crea", "Dip", "Flu", "Glo",
    "Hoa", "Rou", "Nas", "Jit", "Pre", "Pul", "Res", "Shim",
    "Stra", "Stro", "Tre", "Twa", "Ven", "Wob", "Yaw", "Lou",
)

DEFAULT_TABLE_RESOURCE = "correlations_v1.txt"


class CorrelationCategory(enum.Enum):
    SN = "SN"
    N = "N"
    WN = "WN"
    NEUTRAL = "-"
    WP = "WP"
    P = "P"
    SP = "SP"
    IC = "IC"


_WEIGHTS = {
    CorrelationCategory.SN: 1.0,
    CorrelationCategory.N: 0.75,
    CorrelationCategory.WN: 0.25,
    CorrelationCategory.NEUTRAL: 0.0,
    CorrelationCategory.WP: 0.25,
    CorrelationCategory.P: 0.75,
    CorrelationCategory.SP: 1.0,
    CorrelationCategory.IC: 0.0,
}

_SIGNS = {
    CorrelationCategory.SN: -1.0,
    CorrelationCategory.N: -1.0,
    CorrelationCategory.WN: -1.0,
    CorrelationCategory.NEUTRAL: 0.0,
    CorrelationCategory.WP: 1.0,
    CorrelationCategory.P: 1.0,
    CorrelationCategory.SP: 1.0,
    CorrelationCategory.IC: 0.0,
}


def effective_coefficient(category: CorrelationCategory) -> float:
    """Signed coefficient c * w for one table cell."""
    return _SIGNS[category] * _WEIGHTS[category]


@dataclass(frozen=True)
class CorrelationTable:
    """Complete 24 x 25 map of correlation categories, plus a version string."""

    entries: dict[tuple[str, str], CorrelationCategory]
    version: str = "unversioned"

    def category(self, quality_id: str, feature_key: str) -> CorrelationCategory:
        return self.entries[(quality_id, feature_key)]

    def coefficient(self, quality_id: str, feature_key: str) -> float:
        return effective_coefficient(self.entries[(quality_id, feature_key)])

    def active_features(self, quality_id: str) -> list[str]:
        """Features with a nonzero coefficient for this quality."""
        return [k for k in LLF_KEYS if self.coefficient(quality_id, k) != 0.0]


def _parse_table(lines, origin: str) -> CorrelationTable:
    version = "unversioned"
    qualities: list[str] | None = None
    entries: dict[tuple[str, str], CorrelationCategory] = {}
    seen_features: set[str] = set()

    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "version":
            version = " ".join(parts[1:]) or version
            continue
        if parts[0] == "qualities":
            qualities = parts[1:]
            unknown = [q for q in qualities if q not in QUALITY_IDS]
            if unknown:
                raise TableError(f"{origin}:{lineno}: unknown quality ids {unknown}")
            if len(set(qualities)) != len(qualities):
                raise TableError(f"{origin}:{lineno}: duplicate quality column")
            continue
        if qualities is None:
            raise TableError(f"{origin}:{lineno}: feature row before qualities header")
        feature = parts[0]
        if feature not in LLF_KEYS:
            raise TableError(f"{origin}:{lineno}: unknown feature key {feature!r}")
        if feature in seen_features:
            raise TableError(f"{origin}:{lineno}: duplicate row for {feature!r}")
        seen_features.add(feature)
        codes = parts[1:]
        if len(codes) != len(qualities):
            raise TableError(
                f"{origin}:{lineno}: row {feature!r} has {len(codes)} cells, "
                f"expected {len(qualities)}")
        for quality, code in zip(qualities, codes):
            try:
                cat = CorrelationCategory(code)
            except ValueError:
                raise TableError(
                    f"{origin}:{lineno}: row {feature!r}, column {quality!r}: "
                    f"unknown category code {code!r}")
            entries[(quality, feature)] = cat

    if qualities is None:
        raise TableError(f"{origin}: missing qualities header")
    missing_q = [q for q in QUALITY_IDS if q not in qualities]
    if missing_q:
        raise TableError(f"{origin}: missing quality columns {missing_q}")
    missing_f = [f for f in LLF_KEYS if f not in seen_features]
    if missing_f:
        raise TableError(f"{origin}: missing feature rows {missing_f}")
    return CorrelationTable(entries, version)


def load_table(path: str | None = None) -> CorrelationTable:
    """Load a correlation table file; ``None`` loads the bundled default."""
    if path is None:
        ref = resources.files("voicequal.data") / DEFAULT_TABLE_RESOURCE
        with ref.open("r", encoding="utf-8") as fh:
            return _parse_table(fh, DEFAULT_TABLE_RESOURCE)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return _parse_table(fh, str(path))
    except OSError as exc:
        raise TableError(f"cannot read table {path}: {exc}")


@dataclass(frozen=True)
class QualityScores:
    """All 24 scores for one utterance, with per-feature contributions."""

    scores: dict[str, float]
    z_contributions: dict[str, dict[str, float]] = field(repr=False)


def score_quality(vector: LlfVector, stats: FeatureStats, table: CorrelationTable,
                  quality_id: str) -> tuple[float, dict[str, float]]:
    """Score one quality: (1/Z) * sum of coefficient-weighted z-scores.

    Z counts the features with nonzero coefficient; the per-feature signed
    weighted z-terms are returned for explainability.
    """
    if quality_id not in QUALITY_IDS:
        raise TableError(f"unknown quality id {quality_id!r}")
    active = table.active_features(quality_id)
    if not active:
        raise TableError(f"quality {quality_id!r} has no active features")
    z = len(active)
    contributions = {}
    for key in active:
        if key not in vector:
            raise ValueError(f"feature vector missing key {key!r}")
        zscore = (vector[key] - stats.mu[key]) / stats.sigma[key]
        contributions[key] = table.coefficient(quality_id, key) * zscore
    score = sum(contributions.values()) / z
    return score, contributions


def score_all(vector: LlfVector, stats: FeatureStats,
              table: CorrelationTable) -> QualityScores:
    """Score every quality for one feature vector."""
    scores, contribs = {}, {}
    for quality in QUALITY_IDS:
        s, c = score_quality(vector, stats, table, quality)
        scores[quality] = s
        contribs[quality] = c
    return QualityScores(scores, contribs)
