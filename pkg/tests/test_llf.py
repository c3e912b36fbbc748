import numpy as np
import pytest

from voicequal.audio_io import AudioSignal
from voicequal.errors import AudioIOError, InsufficientVoicingError
from voicequal.llf import LLF_KEYS, extract_llf_vector, validate_llf
from voicequal.synth import generate_synthetic


@pytest.fixture(scope="module")
def vowel():
    return generate_synthetic("clean", f0=150.0, duration=1.0, seed=0)


def test_vector_complete_and_finite(vowel):
    vector = extract_llf_vector(vowel)
    assert list(vector) == list(LLF_KEYS)
    assert all(np.isfinite(v) for v in vector.values())
    assert vector["jitterLocal"] >= 0
    assert vector["shimmerLocaldB"] >= 0
    for n in (1, 2, 3):
        assert vector[f"F{n}frequency"] > 0
        assert vector[f"F{n}bandwidth"] > 0


def test_determinism(vowel):
    a = extract_llf_vector(vowel)
    b = extract_llf_vector(vowel)
    assert a == b


def test_too_short_rejected():
    sig = generate_synthetic("clean", f0=150.0, duration=0.5, seed=0)
    short = AudioSignal(sig.samples[:3200], sig.sample_rate_hz, "short")  # 200 ms
    with pytest.raises(AudioIOError, match="too short"):
        extract_llf_vector(short)


def test_unvoiced_rejected():
    rng = np.random.default_rng(0)
    noise = AudioSignal(0.5 * rng.standard_normal(16000), 16000, "noise")
    with pytest.raises(InsufficientVoicingError):
        extract_llf_vector(noise)


def test_amplitude_scaling_invariances(vowel):
    full = extract_llf_vector(vowel)
    half = extract_llf_vector(
        AudioSignal(0.5 * vowel.samples, vowel.sample_rate_hz, "half"))
    assert full["Loudness"] - half["Loudness"] == pytest.approx(6.02, abs=0.1)
    for key in ("jitterLocal", "F0semitoneFrom27.5Hz", "alphaRatio",
                "hammarbergIndex", "slope0-500", "slope500-1500",
                "logRelF0-H1-H2", "F1frequency", "F2frequency", "F3frequency"):
        assert half[key] == pytest.approx(full[key], abs=1e-6), key


def test_time_reversal_stationary():
    sig = generate_synthetic("clean", f0=140.0, duration=1.0, seed=1)
    fwd = extract_llf_vector(sig)
    rev = extract_llf_vector(
        AudioSignal(sig.samples[::-1].copy(), sig.sample_rate_hz, "rev"))
    for key in ("Loudness", "alphaRatio", "hammarbergIndex"):
        assert abs(fwd[key] - rev[key]) < 0.15, key


def test_jitter_monotone_in_perturbation():
    measured = []
    for pct in (0.0, 1.0, 2.0, 4.0):
        kind = "clean" if pct == 0 else "jittered"
        sig = generate_synthetic(kind, f0=150.0, duration=1.0, seed=9,
                                 jitter_pct=pct)
        measured.append(extract_llf_vector(sig)["jitterLocal"])
    assert all(b >= a for a, b in zip(measured, measured[1:])), measured


def test_validate_llf_rejects_bad_vectors(vowel):
    vector = extract_llf_vector(vowel)
    incomplete = dict(vector)
    del incomplete["HNRdBACF"]
    with pytest.raises(ValueError, match="HNRdBACF"):
        validate_llf(incomplete)
    nonfinite = dict(vector)
    nonfinite["mfcc1"] = float("nan")
    with pytest.raises(ValueError, match="mfcc1"):
        validate_llf(nonfinite)
