# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled hot kernels: batched Simon-like encryption and the
differential-linear parity counter used by the Monte Carlo verifier."""

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    static inline int popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int popcount64(unsigned long long x) nogil


cdef inline uint64_t _rotl(uint64_t x, int t, int n, uint64_t mask) nogil:
    if t == 0:
        return x
    return ((x << t) | (x >> (n - t))) & mask


def encrypt_batch(uint64_t[::1] xl, uint64_t[::1] xr, uint64_t[::1] keys,
                  int rounds, int a, int b, int c, int n):
    """In-place Feistel rounds over parallel word arrays."""
    cdef uint64_t mask = (<uint64_t>1 << n) - 1 if n < 64 else <uint64_t>0 - 1
    cdef Py_ssize_t m = xl.shape[0]
    cdef Py_ssize_t i
    cdef int r
    cdef uint64_t x, y, k
    with nogil:
        for r in range(rounds):
            k = keys[r]
            for i in range(m):
                x = xl[i]
                y = xr[i]
                xl[i] = ((_rotl(x, a, n, mask) & _rotl(x, b, n, mask))
                         ^ _rotl(x, c, n, mask) ^ y ^ k)
                xr[i] = x
    return None


import numpy as np


def dl_parity_count(uint64_t[::1] xl, uint64_t[::1] xr, uint64_t[::1] keys,
                    int rounds, int a, int b, int c, int n,
                    uint64_t dl, uint64_t dr, uint64_t ll, uint64_t lr):
    """Number of samples whose DL parity <lambda, E(x) ^ E(x ^ delta)> is odd.

    Encrypts each plaintext and its delta-offset partner through `rounds`
    rounds (round-major over the batch so the compiler can vectorise) and
    accumulates the parity of the masked ciphertext difference.
    """
    cdef uint64_t mask = (<uint64_t>1 << n) - 1 if n < 64 else <uint64_t>0 - 1
    cdef Py_ssize_t m = xl.shape[0]
    cdef Py_ssize_t i
    cdef int r
    cdef int64_t odd = 0
    cdef uint64_t x, k, ra, rb, rc
    x0_arr = np.empty(m, dtype=np.uint64)
    y0_arr = np.empty(m, dtype=np.uint64)
    x1_arr = np.empty(m, dtype=np.uint64)
    y1_arr = np.empty(m, dtype=np.uint64)
    cdef uint64_t[::1] x0 = x0_arr
    cdef uint64_t[::1] y0 = y0_arr
    cdef uint64_t[::1] x1 = x1_arr
    cdef uint64_t[::1] y1 = y1_arr
    cdef int na = n - a, nb = n - b, nc = n - c
    with nogil:
        for i in range(m):
            x0[i] = xl[i]
            y0[i] = xr[i]
            x1[i] = xl[i] ^ dl
            y1[i] = xr[i] ^ dr
        for r in range(rounds):
            k = keys[r]
            for i in range(m):
                x = x0[i]
                ra = (x << a) | (x >> na)
                rb = (x << b) | (x >> nb)
                rc = (x << c) | (x >> nc)
                x0[i] = ((ra & rb) ^ rc ^ y0[i] ^ k) & mask
                y0[i] = x
            for i in range(m):
                x = x1[i]
                ra = (x << a) | (x >> na)
                rb = (x << b) | (x >> nb)
                rc = (x << c) | (x >> nc)
                x1[i] = ((ra & rb) ^ rc ^ y1[i] ^ k) & mask
                y1[i] = x
        for i in range(m):
            odd += popcount64(((x0[i] ^ x1[i]) & ll)
                              ^ ((y0[i] ^ y1[i]) & lr)) & 1
    return odd
