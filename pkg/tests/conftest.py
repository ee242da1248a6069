"""Shared helpers: brute-force oracles kept independent of the library paths."""

from __future__ import annotations

import numpy as np


def naive_forward_dft(values: np.ndarray) -> np.ndarray:
    """Direct triple-sum evaluation of the normalized forward DFT."""
    n1, n2, n3 = values.shape
    out = np.zeros((n1, n2, n3), dtype=np.complex128)
    j1 = np.arange(n1)
    j2 = np.arange(n2)
    j3 = np.arange(n3)
    for k1 in range(n1):
        for k2 in range(n2):
            for k3 in range(n3):
                phase = np.exp(
                    -2j
                    * np.pi
                    * (
                        j1[:, None, None] * k1 / n1
                        + j2[None, :, None] * k2 / n2
                        + j3[None, None, :] * k3 / n3
                    )
                )
                out[k1, k2, k3] = (values * phase).sum()
    return out / (n1 * n2 * n3)


def naive_mode_sum(coefficients: np.ndarray, wavenumbers, lengths, point) -> complex:
    """Direct summation of coeff * exp(i * 2*pi*k.x/L) over every mode."""
    k1, k2, k3 = wavenumbers
    x1, x2, x3 = point
    l1, l2, l3 = lengths
    total = 0.0 + 0.0j
    for a, ka in enumerate(k1):
        for b, kb in enumerate(k2):
            for c, kc in enumerate(k3):
                total += coefficients[a, b, c] * np.exp(
                    2j * np.pi * (ka * x1 / l1 + kb * x2 / l2 + kc * x3 / l3)
                )
    return total


def random_complex(shape, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
