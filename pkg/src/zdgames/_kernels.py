"""Inner loops that dominate runtime, JIT-compiled when numba is available.

Kernels never draw randomness themselves; callers pass pre-drawn uniforms so
results are bit-identical with or without the JIT.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def state_sequence(px, qy, a0, b0, u_x, u_y, out):
    """Fill `out` with joint-state indices (CC=0, CD=1, DC=2, DD=3).

    px[s] is X's cooperation probability in state s; qy[s] is Y's, already
    re-indexed to X's state ordering. a0/b0 are the realized first moves
    (1 = cooperate). u_x/u_y are uniforms for rounds 2..n.
    """
    s = (1 - a0) * 2 + (1 - b0)
    out[0] = s
    for t in range(1, out.shape[0]):
        a = 1 if u_x[t] < px[s] else 0
        b = 1 if u_y[t] < qy[s] else 0
        s = (1 - a) * 2 + (1 - b)
        out[t] = s


@njit(cache=True)
def lattice_sweep(grid, payoff, inv_k, mu, offsets,
                  site_i, site_j, nbr_pick, u_adopt, u_mut, mut_strat):
    """One asynchronous epoch: len(site_i) single-site Fermi updates in place.

    payoff[a, b] is the per-link payoff of strategy a against strategy b;
    a site's payoff is the sum over its neighborhood `offsets`.
    """
    L = grid.shape[0]
    n_off = offsets.shape[0]
    for t in range(site_i.shape[0]):
        i = site_i[t]
        j = site_j[t]
        if u_mut[t] < mu:
            grid[i, j] = mut_strat[t]
            continue
        k = nbr_pick[t]
        ni = (i + offsets[k, 0] + L) % L
        nj = (j + offsets[k, 1] + L) % L
        sf = grid[i, j]
        sm = grid[ni, nj]
        if sf == sm:
            continue
        pf = 0.0
        pm = 0.0
        for o in range(n_off):
            oi = offsets[o, 0]
            oj = offsets[o, 1]
            pf += payoff[sf, grid[(i + oi + L) % L, (j + oj + L) % L]]
            pm += payoff[sm, grid[(ni + oi + L) % L, (nj + oj + L) % L]]
        if u_adopt[t] < 1.0 / (1.0 + math.exp((pf - pm) * inv_k)):
            grid[i, j] = sm
