"""Simon and Simeck primitives: rotations, round function, encryption, key schedules.

Words are plain Python ints. Bit i of a word is the coefficient of 2**i and
S^t rotates toward higher bit indices, so S^t(x) == rotl(x, t) on integer
values. Branch pairs are always ordered (left, right).
"""

import math
from dataclasses import dataclass

# Constant sequences of the Simon key schedule, read left to right
# (sequence bit i is the i-th character).
SIMON_Z = (
    "11111010001001010110000111001101111101000100101011000011100110",
    "10001110111110010011000010110101000111011111001001100001011010",
    "10101111011100000011010010011000101000010001111110010110110011",
    "11011011101011000110010111100000010010001010011100110100001111",
    "11010001111001101011011000100000010111000011001010010011101111",
)

# (2n, key bits) -> (key words m, z sequence index, rounds)
SIMON_PARAMS = {
    (32, 64): (4, 0, 32),
    (48, 72): (3, 0, 36),
    (48, 96): (4, 1, 36),
    (64, 96): (3, 2, 42),
    (64, 128): (4, 3, 44),
    (96, 96): (2, 2, 52),
    (96, 144): (3, 3, 54),
    (128, 128): (2, 2, 68),
    (128, 192): (3, 3, 69),
    (128, 256): (4, 4, 72),
}

# (2n, key bits) -> rounds; Simeck always uses 4 key words.
SIMECK_PARAMS = {
    (32, 64): 32,
    (48, 96): 36,
    (64, 128): 44,
}


@dataclass(frozen=True)
class CipherSpec:
    """Parameters of one Simon-like variant.

    n is the branch width in bits, (a, b, c) the rotation offsets of the
    round function f(x) = S^a(x) & S^b(x) ^ S^c(x), and key_words the number
    of words in the master key.
    """

    name: str
    variant: str  # "simon" | "simeck"
    n: int
    a: int
    b: int
    c: int
    rounds: int
    key_words: int
    z_index: int = 0

    def __post_init__(self):
        if self.n % 2 != 0:
            raise ValueError("branch width must be even")
        if not (self.a > self.b):
            raise ValueError("offsets must satisfy a > b")
        if math.gcd(self.n, self.a - self.b) != 1:
            raise ValueError("offsets must satisfy gcd(n, a-b) = 1")
        if self.variant not in ("simon", "simeck"):
            raise ValueError("variant must be simon or simeck")

    @property
    def mask(self):
        return (1 << self.n) - 1

    @property
    def offsets(self):
        return (self.a, self.b, self.c)


def simon_spec(block_size, key_size=None):
    if key_size is None:
        key_size = {32: 64, 48: 96, 64: 128, 96: 144, 128: 256}[block_size]
    m, zi, rounds = SIMON_PARAMS[(block_size, key_size)]
    return CipherSpec(
        name="simon%d" % block_size, variant="simon", n=block_size // 2,
        a=8, b=1, c=2, rounds=rounds, key_words=m, z_index=zi)


def simeck_spec(block_size):
    rounds = SIMECK_PARAMS[(block_size, 2 * block_size)]
    return CipherSpec(
        name="simeck%d" % block_size, variant="simeck", n=block_size // 2,
        a=5, b=0, c=1, rounds=rounds, key_words=4)


_REGISTRY = {
    "simon32": lambda: simon_spec(32),
    "simon48": lambda: simon_spec(48),
    "simon64": lambda: simon_spec(64),
    "simon96": lambda: simon_spec(96),
    "simon128": lambda: simon_spec(128),
    "simeck32": lambda: simeck_spec(32),
    "simeck48": lambda: simeck_spec(48),
    "simeck64": lambda: simeck_spec(64),
}


def get_spec(name):
    """Look up a cipher by name, e.g. 'simon32' or 'simeck48'."""
    try:
        return _REGISTRY[name.lower()]()
    except KeyError:
        raise KeyError("unknown cipher %r (choose from %s)"
                       % (name, ", ".join(sorted(_REGISTRY)))) from None


def rotl(x, t, n):
    """Circular left shift of the n-bit word x by t (t reduced mod n)."""
    t %= n
    if t == 0:
        return x
    mask = (1 << n) - 1
    return ((x << t) | (x >> (n - t))) & mask


def rotate(x, t, n):
    """S^t for t >= 0, S^-|t| for t < 0; |t| must be below n."""
    if abs(t) >= n:
        raise ValueError("rotation amount out of range")
    return rotl(x, t, n)


def round_fn(x, spec):
    """f(x) = S^a(x) & S^b(x) ^ S^c(x)."""
    n = spec.n
    return (rotl(x, spec.a, n) & rotl(x, spec.b, n)) ^ rotl(x, spec.c, n)


def encrypt(pt, round_keys, rounds, spec):
    """Run `rounds` Feistel rounds on the (left, right) pair pt."""
    if rounds > len(round_keys):
        raise ValueError("need %d round keys, got %d" % (rounds, len(round_keys)))
    x, y = pt
    for i in range(rounds):
        x, y = round_fn(x, spec) ^ y ^ round_keys[i], x
    return x, y


@dataclass(frozen=True)
class KeyMaterial:
    """Either a master key to be expanded, or explicit round keys."""

    mode: str  # "real" | "independent"
    words: tuple

    @classmethod
    def from_master(cls, master_words):
        return cls("real", tuple(master_words))

    @classmethod
    def from_round_keys(cls, round_keys):
        return cls("independent", tuple(round_keys))


def _simon_schedule(k_words, spec, rounds):
    # k_words most-significant first, i.e. (k[m-1], ..., k[0]).
    m = spec.key_words
    n = spec.n
    mask = spec.mask
    z = SIMON_Z[spec.z_index]
    k = list(reversed(k_words))
    for i in range(m, rounds):
        tmp = rotl(k[i - 1], -3 % n, n)
        if m == 4:
            tmp ^= k[i - 3]
        tmp ^= rotl(tmp, -1 % n, n)
        zbit = int(z[(i - m) % 62])
        k.append((~k[i - m] & mask) ^ tmp ^ zbit ^ 3)
    return k[:rounds]


def _simeck_schedule(k_words, spec, rounds):
    # State (t2, t1, t0, k0); round key i is the k register at step i.
    n = spec.n
    const = spec.mask ^ 3
    # LFSR-generated constant bit sequence.
    if n < 32:
        states = [1] * 5
        for i in range(rounds - 5):
            states.append(states[i + 2] ^ states[i])
    else:
        states = [1] * 6
        for i in range(rounds - 6):
            states.append(states[i + 1] ^ states[i])
    t2, t1, t0, k0 = k_words
    keys = []
    for i in range(rounds):
        keys.append(k0)
        new_t2 = k0 ^ round_fn(t0, spec) ^ const ^ states[i]
        k0, t0, t1, t2 = t0, t1, t2, new_t2
    return keys


def key_schedule(key, spec, rounds=None):
    """Expand KeyMaterial into a round-key list of the requested length.

    In "independent" mode the stored words are returned as-is (they must
    cover `rounds`). In "real" mode the variant's published schedule runs on
    the master key words, given most-significant word first.
    """
    if rounds is None:
        rounds = spec.rounds
    if key.mode == "independent":
        if rounds > len(key.words):
            raise ValueError("not enough explicit round keys")
        return list(key.words[:rounds])
    if len(key.words) != spec.key_words:
        raise ValueError("expected %d key words for %s"
                         % (spec.key_words, spec.name))
    for w in key.words:
        if w >> spec.n:
            raise ValueError("key word exceeds branch width")
    if rounds > spec.rounds:
        raise ValueError("%s has only %d rounds" % (spec.name, spec.rounds))
    if spec.variant == "simon":
        return _simon_schedule(key.words, spec, rounds)
    return _simeck_schedule(key.words, spec, rounds)


def parse_word(text, spec=None):
    """Parse a 0x-prefixed hex word; width-check when a spec is given."""
    value = int(text, 16)
    if spec is not None and value >> spec.n:
        raise ValueError("word %s exceeds %d bits" % (text, spec.n))
    return value


def format_word(value):
    return "0x%x" % value


def parse_pair(text, spec=None):
    """Parse 'left,right' hex pair, e.g. '0x8,0x22'."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("expected 'left,right' pair, got %r" % text)
    return parse_word(parts[0].strip(), spec), parse_word(parts[1].strip(), spec)


def format_pair(pair):
    return "%s,%s" % (format_word(pair[0]), format_word(pair[1]))
