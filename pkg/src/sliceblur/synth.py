"""Synthetic test image generation.

The one-over-f kind reproduces the amplitude spectrum of natural images
(|X(u)| proportional to 1/|u|) by shaping white Gaussian noise in the
Fourier domain, then rescaling to [0, 1].
"""

from __future__ import annotations

import numpy as np

KINDS = ("one-over-f", "uniform-noise", "impulse", "constant")


def make_image(kind: str, width: int, height: int, seed: int = 0) -> np.ndarray:
    """Generate a [0, 1] float image; deterministic per seed."""
    if width < 1 or height < 1:
        raise ValueError("image dimensions must be positive")
    if kind == "constant":
        return np.full((height, width), 0.5)
    if kind == "impulse":
        image = np.zeros((height, width))
        image[height // 2, width // 2] = 1.0
        return image
    rng = np.random.default_rng(seed)
    if kind == "uniform-noise":
        return rng.uniform(0.0, 1.0, size=(height, width))
    if kind == "one-over-f":
        noise = rng.standard_normal((height, width))
        fy = np.fft.fftfreq(height)[:, None] * height
        fx = np.fft.fftfreq(width)[None, :] * width
        freq = np.hypot(fy, fx)
        amplitude = np.zeros_like(freq)
        nonzero = freq > 0
        amplitude[nonzero] = 1.0 / freq[nonzero]
        image = np.fft.ifft2(np.fft.fft2(noise) * amplitude).real
        lo, hi = image.min(), image.max()
        return (image - lo) / (hi - lo)
    raise ValueError(f"unknown image kind: {kind}")
