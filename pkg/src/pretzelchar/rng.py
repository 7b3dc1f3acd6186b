"""Random streams.

All randomness in the package derives from one integer seed.  Task ``i``
(a sampling draw, a verification point, ...) gets its own PCG64 generator
seeded with ``SeedSequence([seed, i])``, so its stream does not depend on how
many other tasks run or in which order.
"""

import numpy as np


def task_rng(seed, index):
    if seed < 0 or index < 0:
        raise ValueError("seed and task index must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(index)])))
