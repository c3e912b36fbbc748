"""Autocorrelation pitch tracking with a normalized-peak voicing decision."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .framing import FrameSequence

F0_MIN = 55.0
F0_MAX = 1000.0
VOICING_PEAK_THRESHOLD = 0.45
VOICING_RMS_FRACTION = 0.01
# Shorter-lag peaks nearly as tall as the global maximum win, which keeps the
# tracker off subharmonics of pulse-like excitation.
PEAK_PREFERENCE = 0.85


@dataclass(frozen=True)
class PitchTrack:
    """Per-frame fundamental frequency, voicing flag, and periodicity.

    Unvoiced frames carry f0 = 0 and periodicity is the normalized
    autocorrelation value at the chosen pitch lag, clipped to [0, 1].
    """

    f0_hz: np.ndarray
    voiced: np.ndarray
    periodicity: np.ndarray

    def __post_init__(self):
        for arr in (self.f0_hz, self.voiced, self.periodicity):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.f0_hz)

    @property
    def n_voiced(self) -> int:
        return int(np.count_nonzero(self.voiced))


def normalized_autocorrelation(x: np.ndarray, lag_min: int, lag_max: int) -> np.ndarray:
    """Normalized cross-correlation of a frame with itself for each lag.

    r[tau] = sum(x[n] x[n+tau]) / sqrt(sum_head(x^2) * sum_tail(x^2)), which
    stays comparable across lags despite the shrinking overlap. Returns the
    values for lags lag_min..lag_max inclusive.
    """
    x = x - x.mean()
    n = len(x)
    lags = np.arange(lag_min, lag_max + 1)
    full = np.correlate(x, x, mode="full")
    num = full[n - 1 + lag_min: n - 1 + lag_max + 1]
    e = x * x
    cs = np.concatenate(([0.0], np.cumsum(e)))
    head = cs[n - lags]            # sum of e[0 .. n-tau-1]
    tail = cs[n] - cs[lags]        # sum of e[tau .. n-1]
    den = np.sqrt(head * tail)
    out = np.zeros_like(num)
    ok = den > 0
    out[ok] = num[ok] / den[ok]
    return out


def _pick_peak(r: np.ndarray, lag_min: int) -> int | None:
    """Index of the chosen local maximum inside r (excluding endpoints).

    Among near-maximal peaks, the shortest lag wins only when the
    best-correlated lag is close to an integer multiple of it; that steps
    down from period multiples without being fooled by high-frequency
    ripple peaks next to the true period.
    """
    if len(r) < 3:
        return None
    interior = (r[1:-1] >= r[:-2]) & (r[1:-1] >= r[2:])
    idx = np.nonzero(interior)[0] + 1
    if len(idx) == 0:
        return None
    best = idx[np.argmax(r[idx])]
    r_max = r[best]
    if r_max <= 0:
        return None
    best_lag = lag_min + best
    for i in idx[r[idx] >= PEAK_PREFERENCE * r_max]:
        ratio = best_lag / (lag_min + i)
        if abs(ratio - round(ratio)) <= 0.12:
            return int(i)
    return int(best)


def track_pitch(frames: FrameSequence) -> PitchTrack:
    """Estimate per-frame f0 in [55, 1000] Hz with parabolic lag refinement.

    A frame is voiced iff its normalized autocorrelation peak reaches 0.45
    and its RMS reaches 1% of the loudest frame's RMS.
    """
    fs = frames.sample_rate_hz
    n_frames = frames.n_frames
    frame_len = frames.frame_length
    lag_min = max(2, int(fs / F0_MAX))
    lag_max = min(int(fs / F0_MIN), frame_len - 2)

    rms = np.sqrt(np.mean(frames.raw_frames ** 2, axis=1))
    rms_floor = VOICING_RMS_FRACTION * (rms.max() if n_frames else 0.0)

    f0 = np.zeros(n_frames)
    voiced = np.zeros(n_frames, dtype=bool)
    periodicity = np.zeros(n_frames)

    def refine(r: np.ndarray, peak: int) -> tuple[float, float]:
        """Parabolic refinement of the peak lag and its correlation value."""
        y0, y1, y2 = r[peak - 1], r[peak], r[peak + 1]
        denom = y0 - 2 * y1 + y2
        delta = 0.5 * (y0 - y2) / denom if denom != 0 else 0.0
        delta = float(np.clip(delta, -0.5, 0.5))
        return lag_min + peak + delta, y1 - 0.25 * (y0 - y2) * delta

    for i in range(n_frames):
        x = frames.raw_frames[i]
        if not np.any(x - x.mean()):
            continue
        r = normalized_autocorrelation(x, lag_min, lag_max)
        peak = _pick_peak(r, lag_min)
        if peak is None:
            continue
        lag, r_peak = refine(r, peak)
        periodicity[i] = float(np.clip(r_peak, 0.0, 1.0))
        if r_peak >= VOICING_PEAK_THRESHOLD and rms[i] >= rms_floor and rms_floor > 0:
            voiced[i] = True
            f0[i] = float(np.clip(fs / lag, F0_MIN, F0_MAX))

    # Second pass: frames far from the voiced median get re-picked within a
    # window around the median lag, which suppresses occasional period
    # multiples/submultiples on heavily perturbed signals.
    if voiced.any():
        median_f0 = float(np.median(f0[voiced]))
        win_lo = max(lag_min, int(fs / (median_f0 * 1.25)))
        win_hi = min(lag_max, int(np.ceil(fs / (median_f0 * 0.8))))
        for i in np.nonzero(voiced)[0]:
            if abs(f0[i] - median_f0) <= 0.2 * median_f0 or win_hi - win_lo < 2:
                continue
            r = normalized_autocorrelation(frames.raw_frames[i], lag_min, lag_max)
            a, b = win_lo - lag_min, win_hi - lag_min
            seg = r[a:b + 1]
            interior = (seg[1:-1] >= seg[:-2]) & (seg[1:-1] >= seg[2:])
            idx = np.nonzero(interior)[0] + 1
            if len(idx) == 0:
                voiced[i] = False
                f0[i] = 0.0
                continue
            peak = a + int(idx[np.argmax(seg[idx])])
            lag, r_peak = refine(r, peak)
            if r_peak >= VOICING_PEAK_THRESHOLD:
                f0[i] = float(np.clip(fs / lag, F0_MIN, F0_MAX))
                periodicity[i] = float(np.clip(r_peak, 0.0, 1.0))
            else:
                voiced[i] = False
                f0[i] = 0.0

    return PitchTrack(f0, voiced, periodicity)
