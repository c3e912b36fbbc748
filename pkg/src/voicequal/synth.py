"""Synthetic vowel generator for verifiable ground truth.

A pulse train (optionally period- or amplitude-perturbed) excites a cascade of
three second-order resonators; the breathy variant mixes aspiration noise and
widens the first resonance.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .audio_io import CANONICAL_RATE, AudioSignal

KINDS = ("clean", "jittered", "shimmered", "breathy")

# vowel-like resonances (Hz) and bandwidths (Hz)
RESONANCES = ((700.0, 80.0), (1220.0, 100.0), (2600.0, 120.0))
BREATHY_F1_BANDWIDTH = 300.0
GLOTTAL_DECAY_S = 0.0005
MIN_DURATION_S = 0.5


def pulse_train(f0: float, duration: float, sample_rate: int, rng,
                jitter_pct: float = 0.0, shimmer_db: float = 0.0) -> np.ndarray:
    """Excitation: fractionally placed impulses smoothed by a short decay.

    Period perturbation is uniform +/- jitter_pct percent; amplitude
    perturbation is uniform +/- shimmer_db dB. Fractional impulse placement
    splits each pulse linearly across two samples so clean trains stay
    exactly periodic at non-integer periods.
    """
    n = int(round(duration * sample_rate))
    x = np.zeros(n + 2)
    period = sample_rate / f0
    t = period
    while t < n - 1:
        amp = 1.0
        if shimmer_db > 0:
            amp *= 10.0 ** (rng.uniform(-shimmer_db, shimmer_db) / 20.0)
        i = int(t)
        frac = t - i
        x[i] += (1.0 - frac) * amp
        x[i + 1] += frac * amp
        step = period
        if jitter_pct > 0:
            step *= 1.0 + rng.uniform(-jitter_pct, jitter_pct) / 100.0
        t += step
    decay = np.exp(-1.0 / (GLOTTAL_DECAY_S * sample_rate))
    x = lfilter([1.0], [1.0, -decay], x)
    return x[:n]


def vowel_filter(x: np.ndarray, sample_rate: int,
                 resonances=RESONANCES) -> np.ndarray:
    """Cascade of all-pole resonator sections."""
    for f, bw in resonances:
        r = np.exp(-np.pi * bw / sample_rate)
        x = lfilter([1.0], [1.0, -2.0 * r * np.cos(2.0 * np.pi * f / sample_rate), r * r], x)
    return x


def generate_synthetic(kind: str, f0: float = 150.0, duration: float = 1.0,
                       seed: int = 0, sample_rate: int = CANONICAL_RATE,
                       jitter_pct: float = 2.0, shimmer_db: float = 1.0,
                       noise_ratio: float = 0.25) -> AudioSignal:
    """Seeded synthetic vowel of one of four kinds.

    clean: exactly periodic; jittered: periods perturbed +/- jitter_pct %;
    shimmered: pulse amplitudes perturbed +/- shimmer_db dB; breathy:
    aspiration noise mixed at energy ratio noise_ratio with a widened first
    resonance.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
    if duration < MIN_DURATION_S:
        raise ValueError(f"duration must be >= {MIN_DURATION_S} s, got {duration}")
    if not 55.0 <= f0 <= 500.0:
        raise ValueError(f"f0 {f0} Hz outside the sensible range [55, 500]")
    if jitter_pct < 0 or shimmer_db < 0 or not 0 <= noise_ratio <= 10:
        raise ValueError("perturbation parameters must be nonnegative")

    rng = np.random.default_rng(seed)
    excitation = pulse_train(
        f0, duration, sample_rate, rng,
        jitter_pct=jitter_pct if kind == "jittered" else 0.0,
        shimmer_db=shimmer_db if kind == "shimmered" else 0.0)

    resonances = RESONANCES
    if kind == "breathy":
        resonances = ((RESONANCES[0][0], BREATHY_F1_BANDWIDTH),) + RESONANCES[1:]
    x = vowel_filter(excitation, sample_rate, resonances)

    if kind == "breathy" and noise_ratio > 0:
        noise = rng.standard_normal(len(x))
        noise *= np.sqrt(noise_ratio * np.mean(x ** 2) / np.mean(noise ** 2))
        x = x + noise

    x = 0.9 * x / np.max(np.abs(x))
    label = f"synth:{kind}:f0={f0:g}:dur={duration:g}:seed={seed}"
    return AudioSignal(x, sample_rate, source_id=label)
