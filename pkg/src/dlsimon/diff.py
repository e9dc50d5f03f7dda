"""Exact differential behaviour of the Simon-like round function and bounded
branch-and-bound search / enumeration of differential trails.

For an input difference alpha (not all-ones), every reachable output
difference beta has the same probability 2**-w with

    w = wt(varibits ^ doublebits),
    varibits   = S^a(alpha) | S^b(alpha),
    doublebits = S^b(alpha) & ~S^a(alpha) & S^(2a-b)(alpha),

and the reachable gamma = beta ^ S^c(alpha) are exactly the unions of
equality classes obtained by tying position i to position i-(a-b) for every
doublebit i. That gives 2**w reachable betas per alpha, which the engine
enumerates as a GF(2) span instead of scanning 2**n candidates.
"""

from dataclasses import dataclass

from .bitutils import bits_of, span, words_by_weight, is_pair_rotation_minimal
from .cipher import rotl


@dataclass(frozen=True)
class DiffTransition:
    alpha: int
    beta: int
    weight: int


@dataclass(frozen=True)
class DiffTrail:
    """Branch differences alpha^0 .. alpha^(R+1); round r maps the pair
    (alpha^(r+1), alpha^r) to (alpha^(r+2), alpha^(r+1))."""

    alphas: tuple
    weight: int

    @property
    def rounds(self):
        return len(self.alphas) - 2

    @property
    def delta_in(self):
        return (self.alphas[1], self.alphas[0])

    @property
    def delta_out(self):
        return (self.alphas[-1], self.alphas[-2])

    def validate(self, spec):
        """Recompute the weight from Theorem-level round weights."""
        total = 0
        for r in range(self.rounds):
            w = diff_round_weight(self.alphas[r + 1],
                                  self.alphas[r + 2] ^ self.alphas[r], spec)
            if w is None:
                raise ValueError("impossible transition at round %d" % r)
            total += w
        if total != self.weight:
            raise ValueError("stored weight %d != recomputed %d"
                             % (self.weight, total))
        return total


class _DiffCtx:
    """Per-spec caches for round profiles and best-weight bound tables."""

    def __init__(self, spec):
        self.spec = spec
        self.profiles = {}
        self.bounds = [0, 0]  # best total weight for 0 and 1 rounds
        self._classes = None
        self._scanned_upto = -1

    def weight_classes(self, max_w):
        """Masks grouped by round weight, weights <= max_w, as
        (necklace representatives, all masks) pairs; round weight >=
        popcount bounds the scan."""
        if max_w > self._scanned_upto:
            from .bitutils import min_rotation
            spec = self.spec
            n = spec.n
            classes = {w: ([], []) for w in range(max_w + 1)}
            for x in words_by_weight(n, min(n - 1, max_w)):
                if x.bit_count() > max_w:
                    break
                prof = self.profile(x)
                if prof is None or prof[0] > max_w:
                    continue
                reps, full = classes[prof[0]]
                full.append(x)
                if min_rotation(x, n) == x:
                    reps.append(x)
            self._classes = classes
            self._scanned_upto = max_w
        return {w: v for w, v in self._classes.items() if w <= max_w}

    def profile(self, alpha):
        """(weight, class_masks) or None when alpha is all-ones."""
        try:
            return self.profiles[alpha]
        except KeyError:
            pass
        spec = self.spec
        n = spec.n
        if alpha == spec.mask:
            res = None
        else:
            va = rotl(alpha, spec.a, n) | rotl(alpha, spec.b, n)
            db = (rotl(alpha, spec.b, n) & ~rotl(alpha, spec.a, n)
                  & rotl(alpha, 2 * spec.a - spec.b, n)) & spec.mask
            parent = {i: i for i in bits_of(va)}

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            d = spec.a - spec.b
            for i in bits_of(db):
                ri, rj = find(i), find((i - d) % n)
                if ri != rj:
                    parent[ri] = rj
            classes = {}
            for i in parent:
                classes.setdefault(find(i), 0)
            for i in parent:
                classes[find(i)] |= 1 << i
            masks = tuple(sorted(classes.values()))
            res = (len(masks), masks)
        if len(self.profiles) < 1 << 20:
            self.profiles[alpha] = res
        return res

    def successors(self, alpha):
        """Sorted reachable betas with their common weight, or None."""
        prof = self.profile(alpha)
        if prof is None:
            return None
        w, masks = prof
        sc = rotl(alpha, self.spec.c, self.spec.n)
        betas = sorted(g ^ sc for g in span(masks))
        return w, betas


_CTX = {}


def _ctx(spec):
    key = (spec.variant, spec.n, spec.a, spec.b, spec.c)
    if key not in _CTX:
        _CTX[key] = _DiffCtx(spec)
    return _CTX[key]


def diff_round_weight(alpha, beta, spec):
    """-log2 probability of the one-round difference alpha -> beta, or None
    when the transition is impossible."""
    n = spec.n
    gamma = beta ^ rotl(alpha, spec.c, n)
    if alpha == spec.mask:
        return n - 1 if gamma.bit_count() % 2 == 0 else None
    va = rotl(alpha, spec.a, n) | rotl(alpha, spec.b, n)
    if gamma & ~va & spec.mask:
        return None
    db = (rotl(alpha, spec.b, n) & ~rotl(alpha, spec.a, n)
          & rotl(alpha, 2 * spec.a - spec.b, n)) & spec.mask
    if (gamma ^ rotl(gamma, spec.a - spec.b, n)) & db:
        return None
    return (va ^ db).bit_count()


def enumerate_transitions(alpha, spec, weight_cap):
    """All transitions from alpha with weight <= weight_cap, sorted by beta."""
    if weight_cap < 0:
        return []
    n = spec.n
    if alpha == spec.mask:
        if weight_cap < n - 1:
            return []
        # gamma ranges over the even-weight subspace
        basis = [1 ^ (1 << i) for i in range(1, n)]
        sc = spec.mask
        betas = sorted(g ^ sc for g in span(basis))
        return [DiffTransition(alpha, b, n - 1) for b in betas]
    ctx = _ctx(spec)
    w, betas = ctx.successors(alpha)
    if w > weight_cap:
        return []
    return [DiffTransition(alpha, b, w) for b in betas]


def best_diff_weights(spec, rounds):
    """Matsui bound table b[0..rounds]: minimal total weight of a
    free-boundary trail over the given number of rounds."""
    ctx = _ctx(spec)
    while len(ctx.bounds) <= rounds:
        j = len(ctx.bounds)
        b = ctx.bounds
        cap = max(b[i] + b[j - i] for i in range(1, j))
        while True:
            best = _search(spec, j, cap, None)
            if best is not None:
                ctx.bounds.append(best.weight)
                break
            cap += 1
    return ctx.bounds[:rounds + 1]


def _search(spec, rounds, cap, delta_in, collect=None, canonical=True):
    """Bounded DFS over trails; returns the best DiffTrail within cap or None.

    With collect set, every leaf with weight <= cap is passed to it (used by
    the trail enumerations) and the return value is None.
    """
    ctx = _ctx(spec)
    if len(ctx.bounds) < rounds:
        best_diff_weights(spec, rounds - 1)
    bounds = ctx.bounds
    state = {"best": None, "bound": cap}

    def leaf(path, acc):
        if collect is not None:
            collect(DiffTrail(tuple(path), acc))
            return
        cur = state["best"]
        if cur is None or acc < cur.weight:
            state["best"] = DiffTrail(tuple(path), acc)
            state["bound"] = acc

    def rec(path, acc, left):
        if left == 0:
            leaf(path, acc)
            return
        cur = path[-1]
        prof = ctx.profile(cur)
        if prof is None:
            return
        w = prof[0]
        limit = state["bound"] if collect is None else cap
        if acc + w + bounds[left - 1] > limit:
            return
        wsucc, betas = ctx.successors(cur)
        prev = path[-2]
        for beta in betas:
            path.append(beta ^ prev)
            rec(path, acc + w, left - 1)
            path.pop()

    if delta_in is not None:
        a1, a0 = delta_in
        if (a1, a0) == (0, 0):
            raise ValueError("input difference must be non-trivial")
        rec([a0, a1], 0, rounds)
        return state["best"]

    # Free input: pick alpha^1 and alpha^2 by ascending Hamming weight
    # (round weight >= popcount admits the cut), then continue the DFS.
    n = spec.n
    for a1 in words_by_weight(n, min(n - 1, cap - bounds[rounds - 1])):
        limit = state["bound"] if collect is None else cap
        if a1.bit_count() + bounds[rounds - 1] > limit:
            break
        prof1 = ctx.profile(a1)
        if prof1 is None or prof1[0] + bounds[rounds - 1] > limit:
            continue
        w1 = prof1[0]
        if rounds == 1:
            # alpha^2 is a free boundary; report the canonical smallest.
            _, betas = ctx.successors(a1)
            beta0 = betas[0]
            a2 = beta0 if a1 else 1  # keep (alpha^1, alpha^0) non-trivial
            a0 = beta0 ^ a2
            leaf([a0, a1, a2], w1)
            continue
        budget2 = limit - w1 - bounds[rounds - 2]
        for a2 in words_by_weight(n, min(n - 1, budget2)):
            limit = state["bound"] if collect is None else cap
            if a1 == 0 and a2 == 0:
                continue
            if w1 + a2.bit_count() + bounds[rounds - 2] > limit:
                break
            if canonical and not is_pair_rotation_minimal(a1, a2, n):
                continue
            prof2 = ctx.profile(a2)
            if prof2 is None or w1 + prof2[0] + bounds[rounds - 2] > limit:
                continue
            # alpha^0 consistent with any beta of round 0; take the smallest.
            _, betas0 = ctx.successors(a1)
            a0 = min(b ^ a2 for b in betas0)
            if a1 == 0 and a0 == 0:
                a0 = a2  # beta must be 0 here, so alpha^0 = alpha^2 != 0
            rec([a0, a1, a2], w1, rounds - 1)
    return state["best"]


def search_best_diff_trail(rounds, spec, weight_cap=None, delta_in=None):
    """Minimal-weight trail over `rounds` rounds within weight_cap, else None.

    Optimality is guaranteed by the exhaustive bound-pruned search; when
    delta_in is given the input difference (left, right) is fixed.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if weight_cap is None:
        weight_cap = spec.n * rounds
    return _search(spec, rounds, weight_cap, delta_in,
                   canonical=delta_in is None)


def iter_diff_trails_from(delta_in, rounds, weight_bound, spec):
    """Yield every trail from the fixed input difference with total weight
    <= weight_bound, one item per trail."""
    if delta_in == (0, 0):
        raise ValueError("input difference must be non-trivial")
    out = []
    _search(spec, rounds, weight_bound, delta_in, collect=out.append)
    return out


def enumerate_diff_trails_from(delta_in, rounds, weight_bound, spec):
    """(output difference, weight) per trail, sorted by (weight, difference)."""
    entries = [(t.weight, t.delta_out) for t in
               iter_diff_trails_from(delta_in, rounds, weight_bound, spec)]
    entries.sort()
    return [(delta, w) for w, delta in entries]


def search_diff_trail_between(delta_in, delta_out, rounds, weight, spec):
    """A trail with the given endpoints and exact total weight, or None."""
    for trail in iter_diff_trails_from(delta_in, rounds, weight, spec):
        if trail.weight == weight and trail.delta_out == delta_out:
            return trail
    return None


def iter_min_weight_differences(rounds, spec, weight_cap):
    """Yield (trail, weight) for free-input trails in ascending weight order,
    visiting each (alpha^R, alpha^(R+1)) end state at its minimal weight.

    A* over collapsed (i, alpha^i, alpha^(i+1)) states with the bound table
    as a consistent heuristic; roots are rotation-canonical and every
    rotation of a goal is yielded, so consumers see each concrete output
    difference at its minimal weight first. Stop consuming to stop the
    search early.
    """
    import heapq

    ctx = _ctx(spec)
    best_diff_weights(spec, max(rounds - 1, 1))
    bounds = ctx.bounds
    n = spec.n

    def heuristic(i, nxt):
        # lower bound on the weights of alpha^(i+1) .. alpha^R
        if i >= rounds:
            return 0
        prof = ctx.profile(nxt)
        if prof is None:
            return None
        return max(bounds[rounds - i], prof[0] + bounds[rounds - i - 1])

    if rounds == 1:
        # Degenerate free boundary: Delta = (x, alpha^1) for every word x.
        firsts = []
        for a1 in words_by_weight(n, min(n - 1, weight_cap)):
            prof1 = ctx.profile(a1)
            if prof1 is not None and prof1[0] <= weight_cap:
                firsts.append((prof1[0], a1))
        firsts.sort()
        for w1, a1 in firsts:
            _, betas0 = ctx.successors(a1)
            for x in range(1 << n):
                if a1 == 0 and x == 0:
                    continue
                a0 = min(b ^ x for b in betas0)
                if a1 == 0 and a0 == 0:
                    a0 = x
                yield DiffTrail((a0, a1, x), w1), w1
        return

    heap = []
    counter = 0
    classes = ctx.weight_classes(weight_cap - bounds[rounds - 2])
    for w1 in sorted(classes):
        if w1 + bounds[rounds - 1] > weight_cap:
            break
        for a1 in classes[w1][0]:  # necklace representatives
            for w2 in sorted(classes):
                if w1 + w2 + bounds[rounds - 2] > weight_cap:
                    break
                for a2 in classes[w2][1]:
                    if a1 == 0 and a2 == 0:
                        continue
                    h = heuristic(1, a2)
                    if h is None or w1 + h > weight_cap:
                        continue
                    counter += 1
                    heapq.heappush(heap, (w1 + h, w1, counter, (1, a1, a2), None))

    dist = {}
    parents = {}
    while heap:
        f, acc, _, node, parent = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = acc
        parents[node] = parent
        i, cur, nxt = node
        if i == rounds:
            chain_nodes = []
            walk = node
            while walk is not None:
                chain_nodes.append(walk)
                walk = parents[walk]
            chain_nodes.reverse()
            alphas = [chain_nodes[0][1], chain_nodes[0][2]]
            alphas += [nd[2] for nd in chain_nodes[1:]]
            _, betas0 = ctx.successors(alphas[0])
            a0 = min(b ^ alphas[1] for b in betas0)
            if alphas[0] == 0 and a0 == 0:
                a0 = alphas[1]
            chain = [a0] + alphas
            for t in range(n):
                yield DiffTrail(tuple(rotl(a, t, n) for a in chain), acc), acc
            continue
        prof = ctx.profile(nxt)
        if prof is None:
            continue
        w = prof[0]
        _, betas = ctx.successors(nxt)
        for beta in betas:
            succ = (i + 1, nxt, beta ^ cur)
            if succ in dist:
                continue
            h = heuristic(i + 1, succ[2])
            if h is None:
                continue
            nf = acc + w + h
            if nf > weight_cap:
                continue
            counter += 1
            heapq.heappush(heap, (nf, acc + w, counter, succ, node))

