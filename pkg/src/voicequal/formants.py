"""Formant analysis via linear prediction on pre-emphasized voiced frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientVoicingError
from .framing import FrameSequence
from .pitch import PitchTrack

PREEMPHASIS = 0.97
FORMANT_FMIN = 90.0
FORMANT_FMAX = 5500.0
MAX_BANDWIDTH = 700.0
N_FORMANTS = 3
SPECTRUM_NFFT = 4096


def lpc_coefficients(x: np.ndarray, order: int) -> np.ndarray:
    """Autocorrelation-method LPC via the Levinson-Durbin recursion.

    Returns the full polynomial [1, a1, ..., a_order].
    """
    n = len(x)
    r = np.array([np.dot(x[: n - k], x[k:]) for k in range(order + 1)])
    r[0] *= 1.0 + 1e-9  # slight diagonal loading for numerical safety
    if r[0] <= 0:
        raise ValueError("zero-energy frame")
    a = np.zeros(order + 1)
    a[0] = 1.0
    err = r[0]
    for m in range(1, order + 1):
        acc = r[m] + np.dot(a[1:m], r[m - 1:0:-1])
        k = -acc / err
        a[1:m + 1] = a[1:m + 1] + k * a[m - 1::-1][:m]
        err *= 1.0 - k * k
        if err <= 0:
            break
    return a


@dataclass(frozen=True)
class FormantTrack:
    """Per voiced frame: frequency, bandwidth, and level re F0 of formants 1-3.

    Frames where fewer than three valid poles survive are skipped; the frame
    indices of the retained frames are kept for alignment.
    """

    frame_indices: np.ndarray                # (n,)
    frequencies_hz: np.ndarray               # (n, 3)
    bandwidths_hz: np.ndarray                # (n, 3)
    amplitudes_db_rel_f0: np.ndarray         # (n, 3)

    def __len__(self) -> int:
        return len(self.frame_indices)


def _pole_formants(a: np.ndarray, fs: float) -> tuple[np.ndarray, np.ndarray]:
    """Sorted candidate (frequencies, bandwidths) from the LPC pole angles."""
    roots = np.roots(a)
    roots = roots[np.imag(roots) > 0]
    freqs = np.angle(roots) * fs / (2.0 * np.pi)
    radii = np.abs(roots)
    bws = -(fs / np.pi) * np.log(np.clip(radii, 1e-12, None))
    keep = (freqs >= FORMANT_FMIN) & (freqs <= FORMANT_FMAX) & (bws < MAX_BANDWIDTH) & (bws > 0)
    freqs, bws = freqs[keep], bws[keep]
    order = np.argsort(freqs)
    return freqs[order], bws[order]


def estimate_formants(frames: FrameSequence, pitch: PitchTrack) -> FormantTrack:
    """Estimate F1-F3 per voiced frame; amplitude is the level of the nearest
    spectral harmonic in dB relative to the level at f0."""
    if pitch.n_voiced == 0:
        raise InsufficientVoicingError("no voiced frames for formant analysis")

    fs = frames.sample_rate_hz
    order = 2 + fs // 1000
    window = np.hamming(frames.frame_length)
    bin_hz = fs / SPECTRUM_NFFT

    indices, freq_rows, bw_rows, amp_rows = [], [], [], []
    for i in np.nonzero(pitch.voiced)[0]:
        raw = frames.raw_frames[i]
        emphasized = np.append(raw[0], raw[1:] - PREEMPHASIS * raw[:-1]) * window
        try:
            a = lpc_coefficients(emphasized, order)
        except ValueError:
            continue
        freqs, bws = _pole_formants(a, fs)
        if len(freqs) < N_FORMANTS:
            continue
        freqs, bws = freqs[:N_FORMANTS], bws[:N_FORMANTS]

        spectrum_db = 20.0 * np.log10(
            np.abs(np.fft.rfft(frames.frames[i], SPECTRUM_NFFT)) + 1e-12)
        f0 = pitch.f0_hz[i]
        level_f0 = spectrum_db[int(round(f0 / bin_hz))]
        amps = []
        for f in freqs:
            harmonic = max(1, int(round(f / f0))) * f0
            b = min(int(round(harmonic / bin_hz)), len(spectrum_db) - 1)
            amps.append(spectrum_db[b] - level_f0)

        indices.append(i)
        freq_rows.append(freqs)
        bw_rows.append(bws)
        amp_rows.append(amps)

    if not indices:
        raise InsufficientVoicingError("no frames yielded three valid formants")
    return FormantTrack(
        np.array(indices),
        np.array(freq_rows),
        np.array(bw_rows),
        np.array(amp_rows),
    )
