import numpy as np
import pytest

from voicequal.audio_io import AudioSignal
from voicequal.errors import InsufficientVoicingError
from voicequal.formants import estimate_formants, lpc_coefficients
from voicequal.framing import frame_signal
from voicequal.pitch import track_pitch
from voicequal.synth import pulse_train, vowel_filter

TARGET = ((700.0, 80.0), (1220.0, 100.0), (2600.0, 120.0))


def _synthetic_vowel(f0=120.0, resonances=TARGET, seed=0, fs=16000):
    rng = np.random.default_rng(seed)
    x = vowel_filter(pulse_train(f0, 1.0, fs, rng), fs, resonances)
    return AudioSignal(0.9 * x / np.abs(x).max(), fs, "vowel")


def test_lpc_recovers_ar_coefficients():
    # second-order AR process: the recursion must return its coefficients
    rng = np.random.default_rng(0)
    a_true = np.array([1.0, -1.3, 0.6])
    x = rng.standard_normal(20000)
    for i in range(2, len(x)):
        x[i] = x[i] - a_true[1] * x[i - 1] - a_true[2] * x[i - 2]
    a = lpc_coefficients(x[1000:], 2)
    assert np.allclose(a, a_true, atol=0.02)


def test_synthetic_vowel_frequencies():
    sig = _synthetic_vowel()
    track = estimate_formants(frame_signal(sig), track_pitch(frame_signal(sig)))
    means = track.frequencies_hz.mean(axis=0)
    for got, (want, _) in zip(means, TARGET):
        assert abs(got - want) < 60


def test_synthetic_vowel_bandwidths():
    sig = _synthetic_vowel()
    track = estimate_formants(frame_signal(sig), track_pitch(frame_signal(sig)))
    means = track.bandwidths_hz.mean(axis=0)
    for got, (_, want) in zip(means, TARGET):
        assert abs(got - want) < 40


def test_frequencies_strictly_ordered_bandwidths_positive():
    sig = _synthetic_vowel(f0=140.0, seed=3)
    track = estimate_formants(frame_signal(sig), track_pitch(frame_signal(sig)))
    assert np.all(track.frequencies_hz[:, 0] < track.frequencies_hz[:, 1])
    assert np.all(track.frequencies_hz[:, 1] < track.frequencies_hz[:, 2])
    assert np.all(track.frequencies_hz[:, 0] > 0)
    assert np.all(track.bandwidths_hz > 0)


def test_unvoiced_only_raises():
    rng = np.random.default_rng(0)
    noise = AudioSignal(0.5 * rng.standard_normal(8000), 16000, "noise")
    frames = frame_signal(noise)
    with pytest.raises(InsufficientVoicingError):
        estimate_formants(frames, track_pitch(frames))


def test_sparse_pole_frames_are_skipped():
    # a pure sine offers one resonance at most: no frame reaches 3 formants,
    # and the all-skipped case reports insufficient voicing
    t = np.arange(8000) / 16000
    sig = AudioSignal(0.5 * np.sin(2 * np.pi * 220 * t), 16000, "sine")
    frames = frame_signal(sig)
    with pytest.raises(InsufficientVoicingError):
        estimate_formants(frames, track_pitch(frames))
