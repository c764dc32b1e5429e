"""Hot loops behind a backend switch.

``GAMMARING_BACKEND=numpy`` forces the pure-numpy path; otherwise the numba
kernels are used when numba imports cleanly.
"""

import os

from . import _numpy

AXIOM_FAMILIES = _numpy.AXIOM_FAMILIES

_KERNELS = ("axiom_witnesses", "first_violation", "batch_satisfies",
            "enumerate_chain", "repair", "multiset_codes")


def _load(name):
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")


def _default_backend():
    requested = os.environ.get("GAMMARING_BACKEND", "").strip().lower()
    if requested:
        return requested
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _default_backend()
_impl = _load(BACKEND)


def backend_module(name=None):
    """Kernel module for ``name`` (default: the active backend)."""
    return _impl if name is None else _load(name)


def __getattr__(name):
    if name in _KERNELS:
        return getattr(_impl, name)
    raise AttributeError(name)
