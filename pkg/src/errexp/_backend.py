"""Numba/NumPy backend selection.

Hot kernels are compiled with numba by default. Setting the environment
variable ``ERREXP_DISABLE_NUMBA`` to ``1``/``true``/``yes`` (checked once at
import) routes every kernel through its pure-NumPy twin instead, which is
handy for debugging and for the backend benchmark. Both paths produce
bit-identical results because all random numbers are drawn NumPy-side.
"""

import os


def _env_disabled() -> bool:
    return os.environ.get("ERREXP_DISABLE_NUMBA", "").strip().lower() in {
        "1",
        "true",
        "yes",
        "on",
    }


USING_NUMBA = False

if not _env_disabled():
    try:
        from numba import njit  # noqa: F401

        USING_NUMBA = True
    except ImportError:
        pass

if not USING_NUMBA:

    def njit(*args, **kwargs):  # noqa: F811
        """No-op stand-in so @njit functions stay plain Python."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
