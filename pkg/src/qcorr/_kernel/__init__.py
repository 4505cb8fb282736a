"""Backend selection for the measurement kernel.

The compiled Cython module is used when its build artifact is importable;
otherwise the NumPy fallback takes over.  Both expose the same two
functions and agree to near machine precision, so selection only affects
speed.  ``benchmarks/bench_kernel.py`` compares the two.
"""

from contextlib import contextmanager

from . import _fallback

try:
    from . import _measured_info as _compiled
except ImportError:
    _compiled = None

_active = _compiled if _compiled is not None else _fallback

COMPILED_AVAILABLE = _compiled is not None


def backend_name():
    """Name of the backend currently in use: 'cython' or 'numpy'."""
    return "cython" if _active is _compiled else "numpy"


def measured_info(x, y, t, theta, phi):
    return _active.measured_info(x, y, t, theta, phi)


def measured_info_grid(x, y, t, thetas, phis, out):
    return _active.measured_info_grid(x, y, t, thetas, phis, out)


@contextmanager
def force_backend(name):
    """Temporarily pin the backend ('cython' or 'numpy'); for tests and
    benchmarks."""
    global _active
    if name == "numpy":
        chosen = _fallback
    elif name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        chosen = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = _active
    _active = chosen
    try:
        yield
    finally:
        _active = previous
