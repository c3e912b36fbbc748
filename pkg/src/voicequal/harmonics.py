"""Harmonic level differences H1-H2 and H1-A3 from the voiced-frame spectra."""

from __future__ import annotations

import numpy as np

from .errors import InsufficientVoicingError
from .formants import SPECTRUM_NFFT, FormantTrack
from .framing import FrameSequence
from .pitch import PitchTrack

# F3 search region used when no formant estimate is available for a frame
DEFAULT_F3_REGION = (2000.0, 4000.0)

HARMONIC_KEYS = ("logRelF0-H1-H2", "logRelF0-H1-A3")


def _peak_level_db(spectrum_db: np.ndarray, freq_hz: float, half_width_hz: float,
                   bin_hz: float) -> float:
    """Largest spectral level within +/- half_width_hz of freq_hz."""
    lo = max(0, int(np.floor((freq_hz - half_width_hz) / bin_hz)))
    hi = min(len(spectrum_db) - 1, int(np.ceil((freq_hz + half_width_hz) / bin_hz)))
    return float(spectrum_db[lo:hi + 1].max())


def compute_harmonic_llfs(frames: FrameSequence, pitch: PitchTrack,
                          formant_track: FormantTrack | None = None) -> dict[str, float]:
    """Mean H1-H2 and H1-A3 in dB over voiced frames.

    H1 and H2 are the spectral peak levels near f0 and 2 f0 (searched within
    a quarter-f0 window, which absorbs small pitch-tracking error); A3 is the
    strongest harmonic inside the F3 +/- bandwidth region (falling back to a
    fixed 2-4 kHz region when the frame has no formant estimate).
    """
    if pitch.n_voiced == 0:
        raise InsufficientVoicingError("no voiced frames for harmonic analysis")

    fs = frames.sample_rate_hz
    bin_hz = fs / SPECTRUM_NFFT
    f3_by_frame = {}
    if formant_track is not None:
        for row, i in enumerate(formant_track.frame_indices):
            f3 = formant_track.frequencies_hz[row, 2]
            bw = formant_track.bandwidths_hz[row, 2]
            f3_by_frame[int(i)] = (f3 - bw, f3 + bw)

    h1_h2, h1_a3 = [], []
    for i in np.nonzero(pitch.voiced)[0]:
        f0 = pitch.f0_hz[i]
        spectrum_db = 20.0 * np.log10(
            np.abs(np.fft.rfft(frames.frames[i], SPECTRUM_NFFT)) + 1e-12)
        n_bins = len(spectrum_db)
        if 2 * f0 / bin_hz >= n_bins:
            continue
        half_width = f0 / 4.0
        h1 = _peak_level_db(spectrum_db, f0, half_width, bin_hz)
        h2 = _peak_level_db(spectrum_db, 2 * f0, half_width, bin_hz)
        h1_h2.append(h1 - h2)

        lo, hi = f3_by_frame.get(int(i), DEFAULT_F3_REGION)
        ks = np.arange(max(1, int(np.ceil(lo / f0))), int(hi / f0) + 1)
        if len(ks) == 0:
            # region narrower than one harmonic spacing: take the nearest harmonic
            ks = np.array([max(1, int(round((lo + hi) / 2 / f0)))])
        a3 = max(_peak_level_db(spectrum_db, k * f0, half_width, bin_hz)
                 for k in ks)
        h1_a3.append(h1 - a3)

    if not h1_h2:
        raise InsufficientVoicingError("no usable voiced frames for harmonic analysis")
    return {
        "logRelF0-H1-H2": float(np.mean(h1_h2)),
        "logRelF0-H1-A3": float(np.mean(h1_a3)),
    }
