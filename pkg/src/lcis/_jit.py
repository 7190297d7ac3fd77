"""Backend switch for the compiled kernels.

Set ``LCIS_DISABLE_NUMBA=1`` before import to run every kernel as plain
Python over numpy arrays.  The numba path is the default.
"""
import os

DISABLE_NUMBA = os.environ.get("LCIS_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

if DISABLE_NUMBA:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap

    def jitclass(spec):
        def wrap(cls):
            return cls

        return wrap

else:
    from numba import njit as _njit
    from numba.experimental import jitclass

    def njit(*args, **kwargs):
        # compiled kernels are cached on disk next to the sources
        kwargs.setdefault("cache", True)
        if len(args) == 1 and callable(args[0]):
            return _njit(**kwargs)(args[0])
        return _njit(*args, **kwargs)

BACKEND = "python" if DISABLE_NUMBA else "numba"

__all__ = ["njit", "jitclass", "DISABLE_NUMBA", "BACKEND"]
