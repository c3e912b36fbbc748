"""Glottal-period features: jitter, shimmer, HNR, and the semitone pitch mean.

Period marks are found by peak-picking inside voiced regions, stepping by the
locally tracked pitch period and refining each peak to sub-sample precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioSignal
from .errors import InsufficientVoicingError
from .framing import FRAME_LENGTH_S, HOP_S
from .pitch import PitchTrack, normalized_autocorrelation

F0_REFERENCE_HZ = 27.5
MIN_CONSECUTIVE_VOICED = 3
# half-width of the peak search window, as a fraction of the local period
SEARCH_FRACTION = 0.35

PERIOD_KEYS = ("F0semitoneFrom27.5Hz", "jitterLocal", "shimmerLocaldB", "HNRdBACF")


@dataclass(frozen=True)
class PeriodMarks:
    """Sub-sample peak positions and amplitudes for one voiced region."""

    positions: np.ndarray
    amplitudes: np.ndarray

    @property
    def periods(self) -> np.ndarray:
        return np.diff(self.positions)


def voiced_runs(voiced: np.ndarray, min_len: int = MIN_CONSECUTIVE_VOICED):
    """(start, end) frame-index pairs of voiced runs of at least min_len."""
    runs = []
    start = None
    for i, v in enumerate(voiced):
        if v and start is None:
            start = i
        elif not v and start is not None:
            if i - start >= min_len:
                runs.append((start, i))
            start = None
    if start is not None and len(voiced) - start >= min_len:
        runs.append((start, len(voiced)))
    return runs


def _refine_peak(x: np.ndarray, m: int) -> tuple[float, float]:
    """Parabolic sub-sample refinement of a peak at index m; returns (pos, amp)."""
    if m <= 0 or m >= len(x) - 1:
        return float(m), abs(float(x[m]))
    s = 1.0 if x[m] >= 0 else -1.0
    y0, y1, y2 = s * x[m - 1], s * x[m], s * x[m + 1]
    denom = y0 - 2 * y1 + y2
    if denom == 0:
        return float(m), abs(float(x[m]))
    delta = float(np.clip(0.5 * (y0 - y2) / denom, -0.5, 0.5))
    amp = y1 - 0.25 * (y0 - y2) * delta
    return m + delta, abs(amp)


def find_period_marks(signal: AudioSignal, pitch: PitchTrack) -> list[PeriodMarks]:
    """Locate one glottal peak per pitch period within each voiced region."""
    fs = signal.sample_rate_hz
    x = signal.samples
    frame_len = int(round(FRAME_LENGTH_S * fs))
    hop = int(round(HOP_S * fs))

    def period_at(pos: float, lo_frame: int, hi_frame: int) -> float:
        frame = int(np.clip(round((pos - frame_len / 2) / hop), lo_frame, hi_frame - 1))
        f0 = pitch.f0_hz[frame]
        return fs / f0 if f0 > 0 else fs / 100.0

    regions = []
    for lo_frame, hi_frame in voiced_runs(pitch.voiced):
        start = lo_frame * hop
        end = min((hi_frame - 1) * hop + frame_len, len(x))
        seg = np.abs(x[start:end])
        if not np.any(seg):
            continue
        anchor = start + int(np.argmax(seg))

        marks = [anchor]
        # march forward, then backward, one expected period at a time
        pos = float(anchor)
        while True:
            t = period_at(pos, lo_frame, hi_frame)
            lo = int(round(pos + t * (1 - SEARCH_FRACTION)))
            hi = int(round(pos + t * (1 + SEARCH_FRACTION))) + 1
            if hi > end or lo <= int(pos):
                break
            m = lo + int(np.argmax(np.abs(x[lo:hi])))
            marks.append(m)
            pos = float(m)
        pos = float(anchor)
        while True:
            t = period_at(pos, lo_frame, hi_frame)
            lo = int(round(pos - t * (1 + SEARCH_FRACTION)))
            hi = int(round(pos - t * (1 - SEARCH_FRACTION))) + 1
            if lo < start or hi >= int(pos):
                break
            m = lo + int(np.argmax(np.abs(x[lo:hi])))
            marks.append(m)
            pos = float(m)

        marks.sort()
        refined = [_refine_peak(x, m) for m in marks]
        positions = np.array([p for p, _ in refined])
        amplitudes = np.array([a for _, a in refined])
        keep = amplitudes > 0
        if np.count_nonzero(keep) >= 2:
            regions.append(PeriodMarks(positions[keep], amplitudes[keep]))
    return regions


def _hnr_db(signal: AudioSignal, pitch: PitchTrack) -> float:
    """Mean over voiced frames of 10 log10(r / (1 - r)) at the pitch lag."""
    fs = signal.sample_rate_hz
    x = signal.samples
    frame_len = int(round(FRAME_LENGTH_S * fs))
    hop = int(round(HOP_S * fs))
    values = []
    for i in np.nonzero(pitch.voiced)[0]:
        f0 = pitch.f0_hz[i]
        if f0 <= 0:
            continue
        frame = x[i * hop: i * hop + frame_len]
        lag = int(round(fs / f0))
        if lag + 2 >= len(frame):
            continue
        r = normalized_autocorrelation(frame, max(2, lag - 1), lag + 1).max()
        r = float(np.clip(r, 1e-6, 1.0 - 1e-7))
        values.append(10.0 * np.log10(r / (1.0 - r)))
    if not values:
        raise InsufficientVoicingError("no usable voiced frames for HNR")
    return float(np.mean(values))


def compute_period_llfs(signal: AudioSignal, pitch: PitchTrack) -> dict[str, float]:
    """jitterLocal, shimmerLocaldB, HNRdBACF, and the mean semitone pitch.

    jitterLocal is mean |T_i - T_i+1| / mean T over consecutive periods;
    shimmerLocaldB is mean |20 log10(A_i+1 / A_i)| over consecutive period
    peak amplitudes; both pool period pairs across voiced regions.
    """
    if not voiced_runs(pitch.voiced):
        raise InsufficientVoicingError(
            f"need {MIN_CONSECUTIVE_VOICED} consecutive voiced frames")

    f0_voiced = pitch.f0_hz[pitch.voiced]
    f0_semitone = float(np.mean(12.0 * np.log2(f0_voiced / F0_REFERENCE_HZ)))

    regions = find_period_marks(signal, pitch)
    period_diffs, periods, amp_ratios_db = [], [], []
    for marks in regions:
        t = marks.periods
        periods.extend(t)
        period_diffs.extend(np.abs(np.diff(t)))
        a = marks.amplitudes
        amp_ratios_db.extend(np.abs(20.0 * np.log10(a[1:] / a[:-1])))

    if not periods:
        raise InsufficientVoicingError("no period marks found in voiced regions")
    jitter = float(np.mean(period_diffs) / np.mean(periods)) if period_diffs else 0.0
    shimmer = float(np.mean(amp_ratios_db)) if amp_ratios_db else 0.0

    return {
        "F0semitoneFrom27.5Hz": f0_semitone,
        "jitterLocal": jitter,
        "shimmerLocaldB": shimmer,
        "HNRdBACF": _hnr_db(signal, pitch),
    }
