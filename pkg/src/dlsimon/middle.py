"""Continuous-difference propagation through the middle rounds.

A state holds one correlation value in [-1, 1] per bit and branch: entry i
is 2p-1 where p = Pr[difference bit i = 0], so +1 means the bit's difference
is certainly 0. One round maps the left branch through the AND rule

    C(x & y) = (1 + Cx + Cy + Cx*Cy) / 4

applied to the a/b rotations, multiplies by the c rotation and the right
branch (XOR rule), and swaps branches. Zero entries stay exactly zero; logs
of entries are only taken by consumers.
"""

from dataclasses import dataclass

import numpy as np

from .bitutils import bits_of


@dataclass
class ContState:
    """Continuous difference of both branches; arrays of length n."""

    left: np.ndarray
    right: np.ndarray

    def copy(self):
        return ContState(self.left.copy(), self.right.copy())


def init_from_difference(delta, spec):
    """State with entries 1 - 2*bit for the concrete difference pair."""
    dl, dr = delta
    n = spec.n
    idx = np.arange(n, dtype=np.uint64)
    left = 1.0 - 2.0 * ((dl >> idx) & 1).astype(np.float64)
    right = 1.0 - 2.0 * ((dr >> idx) & 1).astype(np.float64)
    return ContState(left, right)


def _round(left, right, spec):
    # S^t moves bit i-t to bit i, i.e. np.roll by +t along the bit axis.
    a, b, c = spec.a, spec.b, spec.c
    axis = left.ndim - 1
    la = np.roll(left, a, axis=axis)
    lb = np.roll(left, b, axis=axis)
    lc = np.roll(left, c, axis=axis)
    new_left = 0.25 * (1.0 + la + lb + la * lb) * lc * right
    return new_left, left


def propagate(state, rounds, spec):
    """Propagate `rounds` rounds; rounds = 0 returns a copy."""
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    left, right = state.left, state.right
    for _ in range(rounds):
        left, right = _round(left, right, spec)
    return ContState(left.copy(), right.copy())


def iter_states(state, rounds, spec):
    """Yield the state after each round (for studying per-round behaviour)."""
    left, right = state.left, state.right
    for _ in range(rounds):
        left, right = _round(left, right, spec)
        yield ContState(left.copy(), right.copy())


def propagate_batch(deltas, rounds, spec):
    """Propagate many concrete differences at once.

    deltas is a sequence of (left, right) pairs; returns float arrays of
    shape (len(deltas), n) for the left and right output branches.
    """
    n = spec.n
    idx = np.arange(n, dtype=np.uint64)
    dl = np.array([d[0] for d in deltas], dtype=np.uint64)
    dr = np.array([d[1] for d in deltas], dtype=np.uint64)
    left = 1.0 - 2.0 * ((dl[:, None] >> idx[None, :]) & 1).astype(np.float64)
    right = 1.0 - 2.0 * ((dr[:, None] >> idx[None, :]) & 1).astype(np.float64)
    for _ in range(rounds):
        left, right = _round(left, right, spec)
    return left, right


def middle_correlation(state, lam, spec=None):
    """Signed product of left entries selected by lam[0] and right entries
    selected by lam[1]; the empty mask gives 1, any selected zero entry 0."""
    l0, l1 = lam
    r = 1.0
    for i in bits_of(l0):
        r *= state.left[i]
    for i in bits_of(l1):
        r *= state.right[i]
    return float(r)
