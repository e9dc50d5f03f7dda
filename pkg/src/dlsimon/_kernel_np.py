"""Pure-numpy fallback for the hot kernels; same call signatures as the
compiled extension."""

import numpy as np


def _rotl(x, t, n, mask):
    t %= n
    if t == 0:
        return x
    return ((x << np.uint64(t)) | (x >> np.uint64(n - t))) & mask


def encrypt_batch(xl, xr, keys, rounds, a, b, c, n):
    mask = np.uint64((1 << n) - 1) if n < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    for r in range(rounds):
        k = np.uint64(keys[r])
        f = (_rotl(xl, a, n, mask) & _rotl(xl, b, n, mask)) \
            ^ _rotl(xl, c, n, mask)
        xl, xr = f ^ xr ^ k, xl
    return xl, xr


def dl_parity_count(xl, xr, keys, rounds, a, b, c, n, dl, dr, ll, lr):
    x0, y0 = xl.copy(), xr.copy()
    x1, y1 = xl ^ np.uint64(dl), xr ^ np.uint64(dr)
    x0, y0 = encrypt_batch(x0, y0, keys, rounds, a, b, c, n)
    x1, y1 = encrypt_batch(x1, y1, keys, rounds, a, b, c, n)
    masked = ((x0 ^ x1) & np.uint64(ll)) ^ ((y0 ^ y1) & np.uint64(lr))
    return int((np.bitwise_count(masked) & np.uint64(1)).sum())
