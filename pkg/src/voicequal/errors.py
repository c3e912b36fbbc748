"""Exception hierarchy. Each class carries the CLI exit code for its failure class."""


class VoiceQualityError(Exception):
    exit_code = 1


class AudioIOError(VoiceQualityError):
    """Unreadable, unsupported, malformed, or too-short audio input."""
    exit_code = 3


class SilentInputError(AudioIOError):
    """Audio decoded to all zeros."""
    exit_code = 3


class InsufficientVoicingError(VoiceQualityError):
    """Too few voiced frames for the voiced-only features."""
    exit_code = 4


class StatsError(VoiceQualityError):
    """Reference statistics could not be fitted, saved, or loaded."""
    exit_code = 5


class TableError(VoiceQualityError):
    """Correlation table file is malformed or incomplete."""
    exit_code = 6


class ManifestError(VoiceQualityError):
    """Evaluation manifest is malformed or references bad data."""
    exit_code = 7
