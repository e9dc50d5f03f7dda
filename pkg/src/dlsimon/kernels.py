"""Hot-kernel dispatch: compiled Cython core when available, numpy fallback
otherwise. The two implementations are exchangeable; tests assert equal
outputs and the benchmark script compares their throughput."""

import numpy as np

try:
    from . import _corekernel as _impl
    BACKEND = "cython"
except ImportError:          # pure-python install
    from . import _kernel_np as _impl
    BACKEND = "numpy"

from . import _kernel_np


def backend():
    return BACKEND


def encrypt_batch(xl, xr, keys, rounds, spec, impl=None):
    """Encrypt parallel (left, right) uint64 arrays; returns new arrays."""
    mod = impl or _impl
    keys_arr = np.asarray(keys, dtype=np.uint64)
    if mod is _kernel_np:
        return mod.encrypt_batch(xl.copy(), xr.copy(), keys_arr, rounds,
                                 spec.a, spec.b, spec.c, spec.n)
    out_l, out_r = xl.copy(), xr.copy()
    mod.encrypt_batch(out_l, out_r, keys_arr, rounds, spec.a, spec.b,
                      spec.c, spec.n)
    return out_l, out_r


def dl_parity_count(xl, xr, keys, rounds, spec, delta, lam, impl=None):
    """Count odd DL parities over the sample arrays."""
    mod = impl or _impl
    keys_arr = np.asarray(keys, dtype=np.uint64)
    return int(mod.dl_parity_count(
        xl, xr, keys_arr, rounds, spec.a, spec.b, spec.c, spec.n,
        np.uint64(delta[0]), np.uint64(delta[1]),
        np.uint64(lam[0]), np.uint64(lam[1])))


def implementations():
    """Available kernel backends as (name, module) pairs."""
    out = [("numpy", _kernel_np)]
    if BACKEND == "cython":
        out.insert(0, ("cython", _impl))
    return out
