"""Seed-stream derivation for reproducible parallel experiments.

Every stochastic task draws from a counter-based Philox generator whose key
is derived from (master seed, task id, replicate id). Results are therefore
identical no matter how work is scheduled across threads.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 42


def substream(master_seed, task_id=0, replicate_id=0):
    """Independent Generator for one (task, replicate) cell of an experiment."""
    ss = np.random.SeedSequence(entropy=int(master_seed),
                                spawn_key=(int(task_id), int(replicate_id)))
    return np.random.Generator(np.random.Philox(ss))
