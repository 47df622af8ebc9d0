"""Bitset kernels for clique enumeration and basis-constrained search.

The compiled extension is used when it was built and the problem fits in 64
positions; otherwise the pure-Python implementation runs. Set
``KSGRAPH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from ksgraph.kernels import _pykernels

try:
    if os.environ.get("KSGRAPH_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from ksgraph.kernels import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
COMPILED_LIMIT = 64

__all__ = ["BACKEND", "available_backends", "maximal_cliques", "ks_search"]


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def _impl(n: int, backend: str | None):
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    if _ckernels is not None and n <= COMPILED_LIMIT:
        return _ckernels
    return _pykernels


def maximal_cliques(adj: list[int], *, backend: str | None = None) -> list[int]:
    return _impl(len(adj), backend).maximal_cliques(list(adj))


def ks_search(
    n: int, bases: list[int], ones: int = 0, zeros: int = 0, *, backend: str | None = None
) -> tuple[bool, int, int, int]:
    return _impl(n, backend).ks_search(n, list(bases), ones, zeros)
