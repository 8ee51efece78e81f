"""Named random sub-streams derived from a single run seed."""

from hashlib import blake2b

import numpy as np


def stream_key(name: str, digest_size: int = 8) -> int:
    """
    Stable integer key for a sub-stream name.

    Args:
        name: Sub-stream name, e.g. "split" or "shuffle".
        digest_size: Hash output size in bytes.

    Returns:
        Unsigned integer built from the BLAKE2b digest of the name.
    """
    return int.from_bytes(
        blake2b(name.encode(), digest_size=digest_size).digest(),
        "big",
    )


def substream(seed: int, name: str) -> np.random.Generator:
    """
    Generator for the named sub-stream of ``seed``.

    Changing how many numbers one component draws never shifts the
    numbers another component sees.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, stream_key(name)]))
