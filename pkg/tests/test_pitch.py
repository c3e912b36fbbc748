import numpy as np

from voicequal.audio_io import AudioSignal
from voicequal.framing import frame_signal
from voicequal.pitch import F0_MAX, F0_MIN, track_pitch

from conftest import raw_pulse_train, sine_signal


def test_sine_220_tracked():
    pitch = track_pitch(frame_signal(sine_signal(220, duration=0.5)))
    interior = pitch.voiced[1:-1]
    assert interior.all()
    f0 = pitch.f0_hz[pitch.voiced]
    assert np.all(np.abs(f0 - 220) < 2)


def test_white_noise_mostly_unvoiced():
    rng = np.random.default_rng(0)
    sig = AudioSignal(0.5 * rng.standard_normal(8000), 16000, "noise")
    pitch = track_pitch(frame_signal(sig))
    assert np.count_nonzero(~pitch.voiced) >= 0.9 * len(pitch)


def test_silence_all_unvoiced():
    sig = AudioSignal(np.full(8000, 1e-30), 16000, "quiet")
    pitch = track_pitch(frame_signal(sig))
    assert not pitch.voiced.any()
    assert np.all(pitch.f0_hz == 0)


def test_voiced_f0_within_range():
    for freq in (80, 150, 300, 440):
        pitch = track_pitch(frame_signal(sine_signal(freq, duration=0.3)))
        f0 = pitch.f0_hz[pitch.voiced]
        assert np.all((f0 >= F0_MIN) & (f0 <= F0_MAX))


def test_pulse_train_no_subharmonic():
    # a pulse train autocorrelates equally well at period multiples; the
    # tracker must keep the fundamental
    sig = raw_pulse_train(200, duration=0.5)
    pitch = track_pitch(frame_signal(sig))
    f0 = pitch.f0_hz[pitch.voiced]
    assert np.all(np.abs(f0 - 200) < 4)


def test_track_length_matches_frames():
    frames = frame_signal(sine_signal(150, duration=0.4))
    pitch = track_pitch(frames)
    assert len(pitch) == frames.n_frames
