"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``ZQSPIN_PURE_PYTHON`` is set to a non-empty value, the
numpy fallback is used.  ``BACKEND`` names the active choice.
"""

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("ZQSPIN_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python
BACKEND = "compiled" if compiled is not None else "python"

configuration_sum = _active.configuration_sum
codeword_sum = _active.codeword_sum
contract_node = _active.contract_node


def backends():
    """Available kernel modules by name, compiled first."""
    out = {}
    if compiled is not None:
        out["compiled"] = compiled
    out["python"] = python
    return out
