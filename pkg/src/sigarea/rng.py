"""Deterministic randomness.

All randomness in the package flows through one named construction so that
every shuffle, noise draw, and ensemble member is reproducible from a single
master seed regardless of execution order:

* Seed derivation: ``derive_seed(master, *parts)`` renders the master seed
  and each part as text, joins them with ``":"``, hashes with SHA-256, and
  keeps the low 128 bits.  Distinct label paths give independent keys.
* Bit source: numpy's Philox4x32-10 counter-based generator keyed by the
  derived value.  Counter-based generators have no sequential hidden state,
  so streams for different keys may be drawn in any order, in parallel, with
  identical results.
* Normal variates: the Box-Muller transform of Philox uniforms, spelled out
  in :func:`standard_normal` rather than delegated to the generator's own
  normal method, so the exact stream is documented and portable.
"""

from __future__ import annotations

import hashlib

import numpy as np

_KEY_BITS = (1 << 128) - 1


def derive_seed(master: int, *parts: object) -> int:
    """Derive a 128-bit child seed from a master seed and a label path."""
    text = ":".join([str(int(master))] + [str(p) for p in parts])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:16], "big")


def generator(seed: int) -> np.random.Generator:
    """Philox4x32-10 generator keyed by ``seed`` (low 128 bits used)."""
    return np.random.Generator(np.random.Philox(key=seed & _KEY_BITS))


def permutation(n: int, seed: int) -> np.ndarray:
    """Uniformly random permutation of range(n), determined by ``seed``."""
    return generator(seed).permutation(n)


def standard_normal(n: int, seed: int) -> np.ndarray:
    """n i.i.d. standard-normal draws via Box-Muller.

    Uniform pairs (u1, u2) from the keyed Philox stream map to

        r = sqrt(-2 ln(1 - u1))
        z = (r cos(2 pi u2), r sin(2 pi u2))

    using 1 - u1 (never zero, since u1 < 1) to keep the logarithm finite.
    Odd ``n`` drops the final sine draw.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    g = generator(seed)
    half = (n + 1) // 2
    u1 = g.random(half)
    u2 = g.random(half)
    r = np.sqrt(-2.0 * np.log1p(-u1))
    z = np.empty(2 * half)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:n]
