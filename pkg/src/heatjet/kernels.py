"""Backend selection for the truncated product kernel.

The compiled module is used when it was built; otherwise the pure-Python
kernel is used.  ``HEATJET_BACKEND=python`` forces the fallback at import,
and ``use_backend`` switches at runtime (benchmarks, tests).
"""
from __future__ import annotations

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

SLOT_BITS = _pykernels.SLOT_BITS

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels
_requested = os.environ.get("HEATJET_BACKEND")
if _requested:
    if _requested not in _BACKENDS:
        log.warning("HEATJET_BACKEND=%s not available; using %s", _requested, _active.NAME)
    else:
        _active = _BACKENDS[_requested]


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return _active.NAME


def use_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}") from None
    log.debug("kernel backend set to %s", name)


def mul_many(pairs, d: int, maxdeg: int) -> dict:
    return _active.mul_many(pairs, d, maxdeg)
