"""Hot kernels: the compiled extension when it is built, else pure Python.

Set ``SCHMIDT_LAB_PURE_PYTHON=1`` to force the fallback.  Both backends
expose the same five callables; ``BACKEND`` names the one in use.

``as_table``/``as_vector`` convert index arrays into the backend's preferred
form and ``new_map`` allocates a partial map (all -1); both must be used for
arguments to ``closure_extend``.
"""

import os

from . import _pykernels as python

cython = None
if not os.environ.get("SCHMIDT_LAB_PURE_PYTHON"):
    try:
        from . import _ckernels as cython
    except ImportError:  # extension not built
        cython = None

_active = cython if cython is not None else python

BACKEND = _active.NAME
as_table = _active.as_table
as_vector = _active.as_vector
new_map = _active.new_map
closure_extend = _active.closure_extend
compose_table = _active.compose_table


def backends():
    """Available kernel modules, compiled first."""
    return [m for m in (cython, python) if m is not None]
