"""WAV decoding and normalization into a canonical in-memory signal.

All downstream analysis runs at a single canonical sample rate; multichannel
input is averaged to mono and out-of-range samples trigger peak normalization.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

from .errors import AudioIOError, SilentInputError

CANONICAL_RATE = 16000


@dataclass(frozen=True)
class AudioSignal:
    """Mono PCM samples in [-1, 1] at a fixed sample rate."""

    samples: np.ndarray
    sample_rate_hz: int
    source_id: str = ""

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if self.sample_rate_hz <= 0:
            raise AudioIOError(f"invalid sample rate {self.sample_rate_hz}")
        if samples.size == 0:
            raise AudioIOError("empty signal")
        if not np.all(np.isfinite(samples)):
            raise AudioIOError("non-finite samples")

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz


_INT_SCALES = {
    np.dtype(np.uint8): (128.0, 128.0),   # 8-bit WAV is unsigned, offset binary
    np.dtype(np.int16): (0.0, 32768.0),
    np.dtype(np.int32): (0.0, 2147483648.0),  # scipy widens 24-bit PCM to int32
}


def load_audio(path: str | os.PathLike, target_rate: int = CANONICAL_RATE) -> AudioSignal:
    """Decode a PCM WAV file into a mono AudioSignal at ``target_rate``.

    Channels are averaged, the result is resampled with a polyphase
    (band-limited) resampler, and peak-normalized only if any sample
    exceeds full scale.
    """
    try:
        rate, data = wavfile.read(os.fspath(path))
    except FileNotFoundError:
        raise AudioIOError(f"cannot read {path}: file not found")
    except Exception as exc:
        raise AudioIOError(f"cannot read {path}: {exc}")

    if data.dtype in _INT_SCALES:
        offset, scale = _INT_SCALES[data.dtype]
        x = (data.astype(np.float64) - offset) / scale
    elif data.dtype in (np.float32, np.float64):
        x = data.astype(np.float64)
    else:
        raise AudioIOError(f"unsupported encoding {data.dtype} in {path}")

    if x.ndim == 2:
        x = x.mean(axis=1)
    if x.size == 0:
        raise AudioIOError(f"zero-length audio in {path}")
    if not np.any(x):
        raise SilentInputError(f"silent input: {path}")

    if rate != target_rate:
        g = math.gcd(int(rate), int(target_rate))
        x = resample_poly(x, target_rate // g, rate // g)

    peak = np.max(np.abs(x))
    if peak > 1.0:
        x = x / peak

    return AudioSignal(x, target_rate, source_id=os.fspath(path))


def save_wav(signal: AudioSignal, path: str | os.PathLike) -> None:
    """Write a signal as 32-bit float WAV (lossless enough for round trips)."""
    wavfile.write(os.fspath(path), signal.sample_rate_hz,
                  signal.samples.astype(np.float32))
