import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dlsimon.cipher import get_spec


@pytest.fixture(scope="session")
def simon32():
    return get_spec("simon32")


@pytest.fixture(scope="session")
def simeck32():
    return get_spec("simeck32")


@pytest.fixture(scope="session")
def simon48():
    return get_spec("simon48")


class RoundTables:
    """Exhaustive n=16 tables shared by the oracle tests."""

    def __init__(self, spec):
        self.spec = spec
        x = np.arange(1 << 16, dtype=np.uint64)
        self.x = x

        def rl(v, t):
            t %= 16
            if t == 0:
                return v
            return ((v << np.uint64(t)) | (v >> np.uint64(16 - t))) \
                & np.uint64(0xFFFF)

        self.fx = ((rl(x, spec.a) & rl(x, spec.b)) ^ rl(x, spec.c))
        self.and_part = rl(x, spec.a) & rl(x, spec.b)

    def diff_count(self, alpha, beta):
        """#{x : f(x) ^ f(x ^ alpha) = beta} over all 2^16 inputs."""
        spec = self.spec
        x = self.x

        def rl(v, t):
            t %= 16
            if t == 0:
                return v
            return ((v << np.uint64(t)) | (v >> np.uint64(16 - t))) \
                & np.uint64(0xFFFF)

        xa = x ^ np.uint64(alpha)
        fa = (rl(xa, spec.a) & rl(xa, spec.b)) ^ rl(xa, spec.c)
        return int(np.count_nonzero((self.fx ^ fa) == np.uint64(beta)))

    def walsh_sum(self, lam_in, lam_out):
        """Sum over x of (-1)^(<lam_in, x> ^ <lam_out, and_part(x)>)."""
        par = np.bitwise_count(
            (self.x & np.uint64(lam_in))
            ^ (self.and_part & np.uint64(lam_out))) & np.uint64(1)
        return int((1 - 2 * par.astype(np.int64)).sum())


@pytest.fixture(scope="session")
def simon32_tables(simon32):
    return RoundTables(simon32)


@pytest.fixture(scope="session")
def simeck32_tables(simeck32):
    return RoundTables(simeck32)
