"""Exact linear correlation magnitude of the Simon-like round function and
bounded search / enumeration of linear trails.

One round takes the mask pair (lam^r, lam^(r+1)) to (lam^(r+1), lam^(r+2)).
The correlation magnitude depends only on lam_out = lam^(r+1): it is
2**-wt(abits) with abits the parity-fold of the chain
tmp^j = AND_{t<=j} S^(t(b-a))(lam_out). Which residual masks

    lam_in = lam^r ^ lam^(r+2) ^ S^-c(lam^(r+1))

have non-zero correlation is a GF(2)-linear condition in lam_in (the pbits
fixed point must vanish), so admissible lam_in form a subspace inside the
support S^-a(lam_out) | S^-b(lam_out). The engine solves that system once
per lam_out and enumerates the span instead of scanning 2**n masks.

Correlation signs are not tracked: the downstream composition only uses the
square of the linear correlation, so magnitudes suffice.
"""

from dataclasses import dataclass

from .bitutils import bits_of, gf2_kernel_basis, span, words_by_weight, \
    is_pair_rotation_minimal
from .cipher import rotl


@dataclass(frozen=True)
class LinTrail:
    """Branch masks lam^0 .. lam^(R+1); round r approximates the mask pair
    (lam^r, lam^(r+1)) -> (lam^(r+1), lam^(r+2))."""

    lambdas: tuple
    weight: int

    @property
    def rounds(self):
        return len(self.lambdas) - 2

    @property
    def mask_in(self):
        return (self.lambdas[0], self.lambdas[1])

    @property
    def mask_out(self):
        return (self.lambdas[-2], self.lambdas[-1])

    def validate(self, spec):
        total = 0
        for r in range(self.rounds):
            w = lin_round_weight(self.lambdas[r], self.lambdas[r + 1],
                                 self.lambdas[r + 2], spec)
            if w is None:
                raise ValueError("zero-correlation round %d" % r)
            total += w
        if total != self.weight:
            raise ValueError("stored weight %d != recomputed %d"
                             % (self.weight, total))
        return total


def _abits(lam_out, spec):
    n = spec.n
    tmp = lam_out
    abits = lam_out
    while tmp:
        tmp = lam_out & rotl(tmp, spec.b - spec.a, n)
        abits ^= tmp
    return abits


def _pbits_final(lam_out, lam_in, abits, spec):
    """Fixed point of the pbits accumulation; zero iff correlation != 0."""
    n = spec.n
    a, b = spec.a, spec.b
    d2 = 2 * a - 2 * b
    sb = (rotl(lam_out, -a % n, n) & ~rotl(lam_out, -b % n, n)
          & ~rotl(abits, -a % n, n)) & spec.mask
    pb = rotl(sb & lam_in, d2, n)
    while sb:
        sb = rotl(sb, d2, n) & rotl(lam_out, a - 2 * b, n)
        pb = rotl((sb & lam_in) ^ pb, d2, n)
    return pb


def lin_round_weight(lam0, lam1, lam2, spec):
    """-log2 |correlation| of the mask transition, or None when zero.

    The lam_out = all-ones branch reports weight n-2 (the published
    convention, which is the squared-correlation exponent there); trails
    never contain an all-ones mask, so the value is informational only.
    """
    n = spec.n
    lam_out = lam1
    lam_in = lam0 ^ lam2 ^ rotl(lam1, -spec.c % n, n)
    support = rotl(lam_out, -spec.a % n, n) | rotl(lam_out, -spec.b % n, n)
    if lam_in & ~support & spec.mask:
        return None
    if lam_out == spec.mask:
        v = 0
        x = lam_in
        while x:
            v ^= x & 3
            x >>= 2
        return n - 2 if v == 0 else None
    abits = _abits(lam_out, spec)
    if _pbits_final(lam_out, lam_in, abits, spec):
        return None
    return abits.bit_count()


class _LinCtx:
    def __init__(self, spec):
        self.spec = spec
        self.weights = {}
        self.profiles = {}
        self.bounds = [0, 0]
        self._classes = {}
        self._scanned_upto = -1

    def weight_classes(self, max_w):
        """masks grouped by round weight, for weights <= max_w; masks with
        weight w have popcount <= 2w, so a popcount-bounded scan suffices."""
        if max_w > self._scanned_upto:
            spec = self.spec
            classes = {w: [] for w in range(max_w + 1)}
            for x in words_by_weight(spec.n, min(spec.n - 1, 2 * max_w)):
                if (x.bit_count() + 1) // 2 > max_w:
                    break
                w = _abits(x, spec).bit_count()
                if w <= max_w:
                    classes[w].append(x)
            self._classes = classes
            self._scanned_upto = max_w
        return {w: v for w, v in self._classes.items() if w <= max_w}

    def weight(self, lam_out):
        """wt(abits) or None for the all-ones mask."""
        try:
            return self.weights[lam_out]
        except KeyError:
            pass
        w = None if lam_out == self.spec.mask \
            else _abits(lam_out, self.spec).bit_count()
        if len(self.weights) < 1 << 22:
            self.weights[lam_out] = w
        return w

    def lam_in_values(self, lam_out):
        """Sorted admissible lam_in set (size 4**weight); lazy and cached."""
        try:
            return self.profiles[lam_out]
        except KeyError:
            pass
        spec = self.spec
        n = spec.n
        abits = _abits(lam_out, spec)
        support = (rotl(lam_out, -spec.a % n, n)
                   | rotl(lam_out, -spec.b % n, n)) & spec.mask
        positions = bits_of(support)
        cols = [_pbits_final(lam_out, 1 << t, abits, spec)
                for t in positions]
        basis = gf2_kernel_basis(cols)
        values = tuple(span([_sel_to_value(sel, positions) for sel in basis]))
        if len(self.profiles) < 1 << 18 and len(values) <= 1 << 12:
            self.profiles[lam_out] = values
        return values

    def profile(self, lam_out):
        """(weight, admissible lam_in values) or None for all-ones."""
        w = self.weight(lam_out)
        if w is None:
            return None
        return w, self.lam_in_values(lam_out)


def _sel_to_value(sel, positions):
    v = 0
    for j in bits_of(sel):
        v ^= 1 << positions[j]
    return v


_CTX = {}


def _ctx(spec):
    key = (spec.variant, spec.n, spec.a, spec.b, spec.c)
    if key not in _CTX:
        _CTX[key] = _LinCtx(spec)
    return _CTX[key]


def enumerate_mask_predecessors(out_pair, spec, weight_cap):
    """All lam^r completing (lam^(r+1), lam^(r+2)) with weight <= cap,
    as sorted (mask, weight) pairs."""
    if weight_cap < 0:
        return []
    l1, l2 = out_pair
    n = spec.n
    base = l2 ^ rotl(l1, -spec.c % n, n)
    if l1 == spec.mask:
        w = n - 2
        if w > weight_cap:
            return []
        cols = [1 << (t & 1) for t in range(n)]
        basis = gf2_kernel_basis(cols)
        values = span([_sel_to_value(s, list(range(n))) for s in basis])
    else:
        ctx = _ctx(spec)
        w = ctx.weight(l1)
        if w > weight_cap:
            return []
        values = ctx.lam_in_values(l1)
    return sorted((v ^ base, w) for v in values)


def best_lin_weights(spec, rounds):
    """Bound table: minimal total weight of a free-boundary linear trail."""
    ctx = _ctx(spec)
    while len(ctx.bounds) <= rounds:
        j = len(ctx.bounds)
        b = ctx.bounds
        cap = max(b[i] + b[j - i] for i in range(1, j))
        while True:
            best = _search_free(spec, j, cap)
            if best is not None:
                ctx.bounds.append(best.weight)
                break
            cap += 1
    return ctx.bounds[:rounds + 1]


def _prep_bounds(spec, rounds):
    ctx = _ctx(spec)
    if len(ctx.bounds) < rounds:
        best_lin_weights(spec, rounds - 1)
    return ctx, ctx.bounds


def _search_to(spec, rounds, cap, lambda_out, collect=None):
    """Backward bounded DFS from the fixed output pair (lam^R, lam^(R+1))."""
    if lambda_out == (0, 0):
        raise ValueError("output mask must be non-trivial")
    ctx, bounds = _prep_bounds(spec, rounds)
    n = spec.n
    state = {"best": None, "bound": cap}

    def recb(path, acc, left):
        # path holds lam^(R+1-k) .. lam^(R+1) reversed into natural order
        if left == 0:
            if collect is not None:
                collect(LinTrail(tuple(path), acc))
            else:
                cur = state["best"]
                if cur is None or acc < cur.weight:
                    state["best"] = LinTrail(tuple(path), acc)
                    state["bound"] = acc
            return
        cur, nxt = path[0], path[1]
        w = ctx.weight(cur)
        if w is None:
            return
        limit = state["bound"] if collect is None else cap
        if acc + w + bounds[left - 1] > limit:
            return
        base = nxt ^ rotl(cur, -spec.c % n, n)
        for lam_in in ctx.lam_in_values(cur):
            path.insert(0, lam_in ^ base)
            recb(path, acc + w, left - 1)
            path.pop(0)

    recb([lambda_out[0], lambda_out[1]], 0, rounds)
    return state["best"]


def _search_free(spec, rounds, cap, collect=None, canonical=True,
                 root_filter=None):
    """Forward bounded DFS over free boundaries.

    The degrees of freedom are (lam^1, lam^2) plus one lam_in choice per
    round; lam^0 follows from round 0's lam_in, which multiplies each trail
    body by the admissible lam^0 set, expanded only at the leaves.
    root_filter(lam1) may veto first-mask candidates (used when a middle
    state forbids masks that select zero entries). With collect set, every
    trail with weight <= cap is streamed to it; root pairs then come from
    cached weight classes, which keeps the root scan proportional to the
    masks that can actually appear.
    """
    ctx, bounds = _prep_bounds(spec, rounds)
    n = spec.n
    state = {"best": None, "bound": cap}

    def emit(body, acc, lam0s):
        if collect is not None:
            for l0 in lam0s:
                if l0 == 0 and body[0] == 0:
                    continue  # (lam^0, lam^1) must be non-trivial
                collect(LinTrail((l0,) + tuple(body), acc))
            return
        cand = None
        for l0 in lam0s:
            if l0 == 0 and body[0] == 0:
                continue
            t = LinTrail((l0,) + tuple(body), acc)
            if cand is None or t.lambdas < cand.lambdas:
                cand = t
        if cand is not None:
            cur = state["best"]
            if cur is None or acc < cur.weight:
                state["best"] = cand
                state["bound"] = acc

    def rec(body, acc, left, lam0s):
        if left == 0:
            emit(body, acc, lam0s)
            return
        prev, cur = body[-2], body[-1]
        w = ctx.weight(cur)
        if w is None:
            return
        limit = state["bound"] if collect is None else cap
        if acc + w + bounds[left - 1] > limit:
            return
        base = prev ^ rotl(cur, -spec.c % n, n)
        for lam_in in ctx.lam_in_values(cur):
            body.append(lam_in ^ base)
            rec(body, acc + w, left - 1, lam0s)
            body.pop()

    def try_root(l1, w1, l2):
        if l1 == 0 and l2 == 0 and rounds > 1:
            return
        base = (l2 if rounds > 1 else 0) ^ rotl(l1, -spec.c % n, n)
        lam0s = sorted(v ^ base for v in ctx.lam_in_values(l1))
        if rounds == 1:
            emit([l1, 0], w1, lam0s)
        else:
            rec([l1, l2], w1, rounds - 1, lam0s)

    if collect is not None:
        # Fixed cap: enumerate roots from weight classes.
        if rounds == 1:
            classes = ctx.weight_classes(cap)
            for w1 in sorted(classes):
                for l1 in classes[w1]:
                    if root_filter is not None and not root_filter(l1):
                        continue
                    try_root(l1, w1, 0)
            return None
        budget = cap - bounds[rounds - 2]
        classes = ctx.weight_classes(max(budget, 0))
        for w1 in sorted(classes):
            if w1 + bounds[rounds - 1] > cap:
                break
            for l1 in classes[w1]:
                if root_filter is not None and not root_filter(l1):
                    continue
                for w2 in sorted(classes):
                    if w1 + w2 + bounds[rounds - 2] > cap:
                        break
                    for l2 in classes[w2]:
                        if canonical and not is_pair_rotation_minimal(l1, l2, n):
                            continue
                        try_root(l1, w1, l2)
        return None

    # Best-trail mode: popcount-bounded scans with the shrinking bound.
    for l1 in words_by_weight(n, n - 1):
        limit = state["bound"]
        if (l1.bit_count() + 1) // 2 + bounds[rounds - 1] > limit:
            break
        w1 = ctx.weight(l1)
        if w1 is None or w1 + bounds[rounds - 1] > limit:
            continue
        if root_filter is not None and not root_filter(l1):
            continue
        if rounds == 1:
            try_root(l1, w1, 0)
            continue
        for l2 in words_by_weight(n, n - 1):
            limit = state["bound"]
            if w1 + (l2.bit_count() + 1) // 2 + bounds[rounds - 2] > limit:
                break
            if l1 == 0 and l2 == 0:
                continue
            if canonical and not is_pair_rotation_minimal(l1, l2, n):
                continue
            w2 = ctx.weight(l2)
            if w2 is None or w1 + w2 + bounds[rounds - 2] > limit:
                continue
            try_root(l1, w1, l2)
    return state["best"]


def search_best_lin_trail(rounds, spec, weight_cap=None, lambda_out=None):
    """Minimal-weight linear trail within weight_cap, else None. When
    lambda_out is given the output pair (lam^R, lam^(R+1)) is fixed."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if weight_cap is None:
        weight_cap = spec.n * rounds
    if lambda_out is not None:
        return _search_to(spec, rounds, weight_cap, lambda_out)
    return _search_free(spec, rounds, weight_cap)


def iter_lin_trails_to(lambda_out, rounds, weight_bound, spec):
    """Every trail ending in the fixed output pair with weight <= bound."""
    out = []
    _search_to(spec, rounds, weight_bound, lambda_out, collect=out.append)
    return out


def enumerate_lin_trails_to(lambda_out, rounds, weight_bound, spec):
    """(input mask pair, weight) per trail, sorted by (weight, masks)."""
    entries = [(t.weight, t.mask_in) for t in
               iter_lin_trails_to(lambda_out, rounds, weight_bound, spec)]
    entries.sort()
    return [(masks, w) for w, masks in entries]


def iter_free_lin_trails(rounds, spec, weight_bound, root_filter=None,
                         canonical=True):
    """Every free-boundary trail with weight <= bound, as a list."""
    out = []
    _search_free(spec, rounds, weight_bound, collect=out.append,
                 canonical=canonical, root_filter=root_filter)
    return out


def for_each_free_lin_trail(rounds, spec, weight_bound, callback,
                            root_filter=None, canonical=True):
    """Stream every free-boundary trail with weight <= bound to callback."""
    _search_free(spec, rounds, weight_bound, collect=callback,
                 canonical=canonical, root_filter=root_filter)


def search_lin_trail_between(mask_in, lambda_out, rounds, weight, spec):
    """A trail with fixed input and output mask pairs and exact weight."""
    for trail in iter_lin_trails_to(lambda_out, rounds, weight, spec):
        if trail.weight == weight and trail.mask_in == mask_in:
            return trail
    return None
