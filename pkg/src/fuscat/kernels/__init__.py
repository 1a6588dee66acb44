"""Hot loops, compiled when the extension is built.

``BACKEND`` names the implementation in use: ``"compiled"`` when the Cython
extension imports, ``"python"`` otherwise. Setting ``FUSCAT_PURE_PYTHON=1``
forces the numpy fallback. Both backends are importable side by side through
:func:`get_backend` for tests and benchmarks.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available; have {available_backends()}") from None


if _ckernels is not None and os.environ.get("FUSCAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = _BACKENDS[BACKEND]
cocycle_defect = _impl.cocycle_defect
coboundary2 = _impl.coboundary2
smith_diagonal_mod = _impl.smith_diagonal_mod
solve_mod = _impl.solve_mod

__all__ = ["BACKEND", "available_backends", "get_backend",
           "cocycle_defect", "coboundary2", "smith_diagonal_mod", "solve_mod"]
