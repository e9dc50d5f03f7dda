"""Differential-linear trail search strategies and the trail-to-distinguisher
transforming technique.

A DL trail (delta_in, delta_mid, lambda_mid, lambda_out) over a round
configuration (rd, rm, rl) composes as

    cor_total = 2**log2_p * r_mid * 2**(2*log2_q)

with log2_p the differential trail's -weight, r_mid the signed middle-part
correlation and log2_q the linear trail's -weight. The differential-first
strategy fixes a minimal-weight differential, propagates the middle state
and picks the linear part minimising 2*weight plus the state cost of the
root mask; the linear-first strategy fixes a minimal-weight linear trail
and scans bounded differentials for the best p * |r|. The transforming
technique sums signed per-trail contributions p_i * r_ij * q_j^2 over all
differential trails from delta_in and linear trails into lambda_out within
the probability / correlation bounds.
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import diff as diff_engine
from . import lin as lin_engine
from . import middle as middle_engine
from .bitutils import bits_of
from .cipher import rotl


@dataclass(frozen=True)
class RoundConfig:
    rd: int
    rm: int
    rl: int

    def __post_init__(self):
        if min(self.rd, self.rm, self.rl) < 1:
            raise ValueError("all parts need at least one round")

    @property
    def total(self):
        return self.rd + self.rm + self.rl

    @classmethod
    def parse(cls, text):
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError("config must be rd,rm,rl")
        return cls(*parts)


@dataclass
class DLTrail:
    spec_name: str
    config: RoundConfig
    delta_in: tuple
    delta_mid: tuple
    lambda_mid: tuple
    lambda_out: tuple
    log2_p: int           # <= 0
    r_mid: float          # signed
    log2_q: int           # <= 0
    diff_trail: object = None
    lin_trail: object = None

    @property
    def cor_total(self):
        return compose(self.log2_p, self.r_mid, self.log2_q)

    @property
    def log2_magnitude(self):
        if self.r_mid == 0.0:
            return float("-inf")
        return self.log2_p + math.log2(abs(self.r_mid)) + 2 * self.log2_q


@dataclass
class DLDistinguisher:
    spec_name: str
    config: RoundConfig
    delta_in: tuple
    lambda_out: tuple
    p_bar: int            # bound exponent, <= 0
    q_bar: int
    cor_sum: float        # signed
    cells: dict = field(default_factory=dict)
    # cells[(diff_weight, lin_weight)] = (trail_count, signed_contribution)

    @property
    def log2_magnitude(self):
        if self.cor_sum == 0.0:
            return float("-inf")
        return math.log2(abs(self.cor_sum))


def compose(log2_p, r_mid, log2_q):
    """Signed trail correlation 2^log2_p * r_mid * 2^(2 log2_q)."""
    if log2_p > 0 or log2_q > 0:
        raise ValueError("log2 bounds must be non-positive")
    if abs(r_mid) > 1.0 + 1e-12:
        raise ValueError("middle correlation out of range")
    return math.ldexp(r_mid, log2_p + 2 * log2_q)


def samples_needed(cor, epsilon=1.0):
    """Chosen-plaintext pairs needed to observe correlation cor: ceil(eps/cor^2)."""
    if cor == 0:
        raise ValueError("zero correlation cannot be distinguished")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return math.ceil(epsilon / (cor * cor))


def is_theoretical_only(cor, spec, epsilon=1.0):
    """True when the data complexity exceeds the 2^(2n) codebook."""
    return samples_needed(cor, epsilon) > 1 << (2 * spec.n)


def _state_costs(state):
    """-log2 |entry| per position (None for exact zeros), plus signs."""
    def conv(vec):
        costs = []
        for v in vec:
            costs.append(None if v == 0.0 else -math.log2(abs(v)))
        return costs
    return conv(state.left), conv(state.right)


def _mask_cost(costs, word):
    total = 0.0
    for i in bits_of(word):
        c = costs[i]
        if c is None:
            return None
        total += c
    return total


def _canonical_delta_trails(trails, spec):
    """Rotate each trail so its output difference pair is minimal, then
    dedupe by the rotated trail; deterministic order."""
    n = spec.n
    seen = {}
    for t in trails:
        best = None
        for s in range(n):
            rot = tuple(rotl(a, s, n) for a in t.alphas)
            key = (rot[-1], rot[-2], rot)
            if best is None or key < best:
                best = key
        rot = best[2]
        seen.setdefault((rot[-1], rot[-2]), diff_engine.DiffTrail(rot, t.weight))
    return [seen[k] for k in sorted(seen)]


def dfs_search(config, spec, lin_weight_cap=None):
    """Differential-first strategy.

    Fixes the minimal-weight differential part (every minimal output
    difference is tried, rotation-deduplicated), propagates the middle
    state, then minimises 2*lin_weight + root-mask state cost over linear
    trails enumerated in ascending weight. Masks selecting zero state
    entries are never chosen. Returns the best DLTrail or None.
    """
    rd, rm, rl = config.rd, config.rm, config.rl
    best_d = diff_engine.search_best_diff_trail(rd, spec)
    if best_d is None:
        return None
    pw = best_d.weight
    all_best = []
    diff_engine._search(spec, rd, pw, None, collect=all_best.append)
    all_best = [t for t in all_best if t.weight == pw]
    candidates = _canonical_delta_trails(all_best, spec)

    base_w = lin_engine.best_lin_weights(spec, rl)[rl]
    if lin_weight_cap is None:
        lin_weight_cap = base_w + 6

    prepped = []
    for dtrail in candidates:
        state = middle_engine.propagate(
            middle_engine.init_from_difference(dtrail.delta_out, spec), rm, spec)
        prepped.append((dtrail, state, _state_costs(state)))

    best = None        # (objective, serialised tie-break, DLTrail)
    state_box = {"best": None}

    def handle(lt, w):
        if lt.weight != w:
            return
        l0, l1 = lt.mask_in
        for dtrail, state, (cost_l, cost_r) in prepped:
            c1 = _mask_cost(cost_r, l1)
            if c1 is None:
                continue
            c0 = _mask_cost(cost_l, l0)
            if c0 is None:
                continue
            obj = pw + c0 + c1 + 2 * w
            r_mid = middle_engine.middle_correlation(state, (l0, l1), spec)
            if r_mid == 0.0:
                continue
            cand = DLTrail(spec.name, config, dtrail.delta_in,
                           dtrail.delta_out, (l0, l1), lt.mask_out,
                           -dtrail.weight, r_mid, -w,
                           diff_trail=dtrail, lin_trail=lt)
            key = (obj, _serialise(cand))
            cur = state_box["best"]
            if cur is None or key < (cur[0], cur[1]):
                state_box["best"] = (obj, key[1], cand)

    w = base_w
    while w <= lin_weight_cap:
        best = state_box["best"]
        if best is not None and pw + 2 * w >= best[0]:
            break
        lin_engine.for_each_free_lin_trail(
            rl, spec, w, lambda lt, _w=w: handle(lt, _w), canonical=False)
        w += 1
    best = state_box["best"]
    return best[2] if best else None


def lfs_search(config, spec, diff_weight_cap=None):
    """Linear-first strategy.

    Fixes the minimal-weight linear part (every minimal root mask is tried),
    then maximises 2^-weight * |middle correlation| over all differential
    trails with weight at most best + 6 (free non-zero input difference).
    """
    rd, rm, rl = config.rd, config.rm, config.rl
    best_l = lin_engine.search_best_lin_trail(rl, spec)
    if best_l is None:
        return None
    qw = best_l.weight
    all_best = [t for t in lin_engine.iter_free_lin_trails(rl, spec, qw)
                if t.weight == qw]
    roots = {}
    for t in all_best:
        roots.setdefault(t.mask_in, t)
    root_items = [roots[k] for k in sorted(roots)]

    bd = diff_engine.best_diff_weights(spec, rd)[rd]
    if diff_weight_cap is None:
        diff_weight_cap = bd + 6

    seen = set()
    best = None        # (score, serialised, DLTrail)
    for dtrail, w in diff_engine.iter_min_weight_differences(
            rd, spec, diff_weight_cap):
        if best is not None and -w < best[0]:
            break
        delta = dtrail.delta_out
        if delta in seen:
            continue
        seen.add(delta)
        state = middle_engine.propagate(
            middle_engine.init_from_difference(delta, spec), rm, spec)
        for lt in root_items:
            r_mid = middle_engine.middle_correlation(state, lt.mask_in, spec)
            if r_mid == 0.0:
                continue
            score = -w + math.log2(abs(r_mid))
            cand = DLTrail(spec.name, config, dtrail.delta_in, delta,
                           lt.mask_in, lt.mask_out, -w, r_mid, -qw,
                           diff_trail=dtrail, lin_trail=lt)
            key = (score, _neg(_serialise(cand)))
            if best is None or key > (best[0], _neg(best[1])):
                best = (score, _serialise(cand), cand)
    return best[2] if best else None


class _neg:
    """Inverts comparison so that max() prefers the lexicographically
    smaller serialisation on ties."""

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return self.value > other.value

    def __gt__(self, other):
        return self.value < other.value

    def __eq__(self, other):
        return self.value == other.value


def _serialise(trail):
    return (trail.delta_in, trail.delta_mid, trail.lambda_mid,
            trail.lambda_out)


def re_verify(trail, spec):
    """Recompute the three components from the trail's anchors; raises on
    any mismatch and returns (log2_p, r_mid, log2_q)."""
    if trail.diff_trail is not None:
        trail.diff_trail.validate(spec)
        if trail.diff_trail.weight != -trail.log2_p:
            raise ValueError("differential weight mismatch")
    else:
        found = diff_engine.search_diff_trail_between(
            trail.delta_in, trail.delta_mid, trail.config.rd,
            -trail.log2_p, spec)
        if found is None:
            raise ValueError("no differential trail re-derivable")
    if trail.lin_trail is not None:
        trail.lin_trail.validate(spec)
        if trail.lin_trail.weight != -trail.log2_q:
            raise ValueError("linear weight mismatch")
    else:
        found = lin_engine.search_lin_trail_between(
            trail.lambda_mid, trail.lambda_out, trail.config.rl,
            -trail.log2_q, spec)
        if found is None:
            raise ValueError("no linear trail re-derivable")
    state = middle_engine.propagate(
        middle_engine.init_from_difference(trail.delta_mid, spec),
        trail.config.rm, spec)
    r = middle_engine.middle_correlation(state, trail.lambda_mid, spec)
    if abs(r - trail.r_mid) > 1e-12:
        raise ValueError("middle correlation mismatch: %r vs %r"
                         % (r, trail.r_mid))
    return trail.log2_p, r, trail.log2_q


def transform(seed, spec, p_bar, q_bar):
    """Transform a DL trail into a clustered DL distinguisher.

    p_bar and q_bar are the non-positive log2 bounds on the differential
    probability and the linear correlation. Every differential trail from
    seed.delta_in with weight <= -p_bar and every linear trail into
    seed.lambda_out with weight <= -q_bar contributes the signed term
    p * r * q^2; one list entry per trail, duplicates included.
    """
    if 2.0 ** p_bar > 2.0 ** seed.log2_p + 1e-15:
        raise ValueError("p_bar must not exceed the seed probability")
    if 2.0 ** q_bar > 2.0 ** seed.log2_q + 1e-15:
        raise ValueError("q_bar must not exceed the seed correlation")
    re_verify(seed, spec)
    config = seed.config

    # multiplicity per (output difference, weight) and (root mask, weight)
    dmult = defaultdict(int)
    for t in diff_engine.iter_diff_trails_from(
            seed.delta_in, config.rd, -p_bar, spec):
        dmult[(t.delta_out, t.weight)] += 1
    lmult = defaultdict(int)
    for t in lin_engine.iter_lin_trails_to(
            seed.lambda_out, config.rl, -q_bar, spec):
        lmult[(t.mask_in, t.weight)] += 1

    deltas = sorted({d for d, _ in dmult})
    lams = sorted({m for m, _ in lmult})
    dindex = {d: i for i, d in enumerate(deltas)}
    lindex = {m: i for i, m in enumerate(lams)}

    # signed middle correlation matrix r[delta, lambda], computed in blocks
    n = spec.n
    lmask = np.zeros((len(lams), 2 * n), dtype=np.float64)
    for j, (l0, l1) in enumerate(lams):
        for i in bits_of(l0):
            lmask[j, i] = 1.0
        for i in bits_of(l1):
            lmask[j, n + i] = 1.0
    rmat = np.empty((len(deltas), len(lams)), dtype=np.float64)
    block = 2048
    for start in range(0, len(deltas), block):
        chunk = deltas[start:start + block]
        left, right = middle_engine.propagate_batch(chunk, config.rm, spec)
        states = np.concatenate([left, right], axis=1)  # (B, 2n)
        with np.errstate(divide="ignore"):
            logs = np.log2(np.abs(states))
        # finite sentinel so 0-coefficient matmul terms stay 0; any selected
        # zero entry drives the exponent low enough to underflow to exactly 0
        logs[np.isneginf(logs)] = -1e6
        neg = (states < 0).astype(np.float64)
        logsum = logs @ lmask.T                          # (B, L)
        with np.errstate(under="ignore"):
            mags = np.exp2(logsum)
        signs = 1.0 - 2.0 * ((neg @ lmask.T) % 2.0)
        rmat[start:start + len(chunk)] = signs * mags

    cells = {}
    cor_sum = 0.0
    dw = defaultdict(lambda: np.zeros(len(deltas)))
    for (d, w), cnt in dmult.items():
        dw[w][dindex[d]] += cnt * math.ldexp(1.0, -w)
    lw = defaultdict(lambda: np.zeros(len(lams)))
    lcnt = defaultdict(lambda: np.zeros(len(lams)))
    for (m, w), cnt in lmult.items():
        lw[w][lindex[m]] += cnt * math.ldexp(1.0, -2 * w)
        lcnt[w][lindex[m]] += cnt
    dcnt = defaultdict(lambda: np.zeros(len(deltas)))
    for (d, w), cnt in dmult.items():
        dcnt[w][dindex[d]] += cnt
    for wd in sorted(dw):
        row = dw[wd] @ rmat            # (L,)
        for wl in sorted(lw):
            contrib = float(row @ lw[wl])
            count = int(dcnt[wd].sum() * lcnt[wl].sum())
            cells[(wd, wl)] = (count, contrib)
            cor_sum += contrib
    return DLDistinguisher(spec.name, config, seed.delta_in, seed.lambda_out,
                           p_bar, q_bar, cor_sum, cells)
