"""Backend selection for the multistart solver kernel.

The compiled extension is used when it imports; ``SUTUREKIT_BACKEND=numpy``
forces the pure numpy implementation.
"""

from __future__ import annotations

import os

from . import _lm_fallback


def _load_compiled():
    try:
        from . import _lmcore
    except ImportError:
        return None
    return _lmcore


_compiled = _load_compiled()


def available_backends() -> list[str]:
    out = ["numpy"]
    if _compiled is not None:
        out.insert(0, "cython")
    return out


def get_backend(name: str | None = None):
    """Module exposing ``lm_batch``; ``name`` is 'auto', 'cython' or 'numpy'."""
    name = name or os.environ.get("SUTUREKIT_BACKEND", "auto")
    if name == "numpy":
        return _lm_fallback
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not built; run `pip install -e .`")
        return _compiled
    if name != "auto":
        raise ValueError(f"unknown backend {name!r}")
    return _compiled if _compiled is not None else _lm_fallback


def lm_batch(starts, rel, max_iters: int = 200, tol: float = 1e-10, backend: str | None = None):
    return get_backend(backend).lm_batch(starts, rel, max_iters, tol)
