"""Bit-level helpers shared by the trail engines: subset streams, rotation
canonicalisation and GF(2) kernel enumeration."""

from itertools import combinations

from .cipher import rotl


def popcount(x):
    return x.bit_count()


def parity(x):
    return x.bit_count() & 1


def bits_of(x):
    """Indices of the set bits of x, ascending."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def words_by_weight(n, max_weight):
    """Yield every n-bit word with popcount <= max_weight, weight-major and
    numerically ascending within one weight class."""
    yield 0
    max_weight = min(max_weight, n)
    for w in range(1, max_weight + 1):
        batch = []
        for positions in combinations(range(n), w):
            v = 0
            for p in positions:
                v |= 1 << p
            batch.append(v)
        batch.sort()
        yield from batch


def min_rotation(x, n):
    """Smallest value among all rotations of x."""
    best = x
    for t in range(1, n):
        r = rotl(x, t, n)
        if r < best:
            best = r
    return best


def is_pair_rotation_minimal(x, y, n):
    """True when (x, y) is the lexicographically least joint rotation."""
    for t in range(1, n):
        if (rotl(x, t, n), rotl(y, t, n)) < (x, y):
            return False
    return True


def gf2_kernel_basis(columns):
    """Kernel of the GF(2) matrix whose columns are the given ints.

    Returns selection masks: bit j of a basis mask selects column j. Every
    XOR-combination of returned masks selects a column subset with zero sum.
    """
    pivots = {}  # leading bit -> (reduced column, selection mask)
    basis = []
    for j, col in enumerate(columns):
        c = col
        sel = 1 << j
        while c:
            top = c.bit_length() - 1
            if top not in pivots:
                pivots[top] = (c, sel)
                break
            pc, ps = pivots[top]
            c ^= pc
            sel ^= ps
        else:
            basis.append(sel)
    return basis


def span(basis_values):
    """All XOR-combinations of the given values (2**len of them), ascending."""
    out = [0]
    for v in basis_values:
        out += [x ^ v for x in out]
    out.sort()
    return out
