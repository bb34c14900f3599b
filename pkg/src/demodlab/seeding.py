"""Deterministic RNG stream derivation.

Every run hangs off one master seed; independent streams are derived by
hashing string/integer labels into a SeedSequence spawn key.  Trials labeled
by (cell, trial index) therefore get the same stream no matter what order or
thread executes them.
"""

import hashlib

import numpy as np

__all__ = ["derive_seed_sequence", "derive_rng"]


def _label_words(label):
    if isinstance(label, (int, np.integer)):
        value = int(label) & 0xFFFFFFFFFFFFFFFF
    else:
        digest = hashlib.sha256(str(label).encode("utf-8")).digest()
        value = int.from_bytes(digest[:8], "little")
    return value & 0xFFFFFFFF, value >> 32


def derive_seed_sequence(master_seed, *labels):
    key = []
    for label in labels:
        key.extend(_label_words(label))
    return np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(key))


def derive_rng(master_seed, *labels):
    """Generator for the stream named by (master_seed, labels)."""
    return np.random.default_rng(derive_seed_sequence(master_seed, *labels))
