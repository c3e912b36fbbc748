"""Short-time framing: 25 ms Hamming frames with a 10 ms hop."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioSignal
from .errors import AudioIOError

FRAME_LENGTH_S = 0.025
HOP_S = 0.010


@dataclass(frozen=True)
class FrameSequence:
    """Windowed analysis frames plus the raw blocks they were cut from.

    ``frames`` are Hamming windowed (spectral analysis); ``raw_frames`` keep
    the unwindowed samples for autocorrelation-based pitch analysis.
    """

    frames: np.ndarray        # (n_frames, frame_length)
    raw_frames: np.ndarray    # same shape, unwindowed
    sample_rate_hz: int
    frame_length_s: float = FRAME_LENGTH_S
    hop_s: float = HOP_S

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def frame_length(self) -> int:
        return self.frames.shape[1]

    @property
    def hop_length(self) -> int:
        return int(round(self.hop_s * self.sample_rate_hz))


def frame_signal(signal: AudioSignal) -> FrameSequence:
    """Cut a signal into 25 ms / 10 ms-hop Hamming frames.

    The trailing partial frame is dropped; a signal shorter than one frame
    is rejected.
    """
    fs = signal.sample_rate_hz
    frame_len = int(round(FRAME_LENGTH_S * fs))
    hop = int(round(HOP_S * fs))
    x = signal.samples
    if len(x) < frame_len:
        raise AudioIOError(
            f"signal too short: {len(x)} samples, need at least {frame_len}")

    n_frames = (len(x) - frame_len) // hop + 1
    raw = np.lib.stride_tricks.sliding_window_view(x, frame_len)[::hop][:n_frames]
    raw = np.ascontiguousarray(raw)
    windowed = raw * np.hamming(frame_len)
    return FrameSequence(windowed, raw, fs)
