"""Deterministic random streams.

Every random matrix is drawn from its own Philox (counter-based) generator
keyed by ``(seed, stream)``, so adding or reordering draws elsewhere never
shifts the values of another matrix.  Stream ids:

    A=0  B=1  C=2  D=3  X0=4  X1=5  dA=10  dB=11  dC=12  dD=13
"""

from __future__ import annotations

import numpy as np

STREAMS = {"A": 0, "B": 1, "C": 2, "D": 3, "X0": 4, "X1": 5,
           "dA": 10, "dB": 11, "dC": 12, "dD": 13}

GENERATOR_NAME = "numpy.Philox/SeedSequence(seed, spawn_key=(stream,))"


def stream(seed: int, name: str) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(STREAMS[name],))
    return np.random.Generator(np.random.Philox(ss))


def trial_seed(base: int, *keys: int) -> int:
    """Derive a 32-bit seed for one experiment cell/trial from a base seed."""
    state = np.random.SeedSequence([int(base), *map(int, keys)]).generate_state(1, np.uint32)
    return int(state[0])
