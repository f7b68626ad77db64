import zlib

import numpy as np

_BLOCK = 4096
_SCALE = 2**52


def as_generator(seed=None):
    """Turn ``None``, an int, a SeedSequence or a Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def derive_rng(seed, label):
    """Independent stream for a named component of a seeded run.

    The same (seed, label) always gives the same stream, and changing the
    label of one component does not perturb the others.
    """
    key = zlib.crc32(label.encode("utf-8"))
    if seed is None:
        return np.random.default_rng()
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(key,))
    return np.random.default_rng(ss)


def uniform_stream(rng, block=_BLOCK):
    """Endless iterator of U[0, 1) floats drawn from ``rng`` in blocks.

    Hot loops pull one float per decision; block draws keep per-call
    overhead of the Generator out of the loop. Values are multiples of
    2**-52 so ``int(u * n)`` stays below ``n`` for any ``n < 2**52``.
    """
    while True:
        yield from (rng.integers(0, _SCALE, size=block) / _SCALE).tolist()
