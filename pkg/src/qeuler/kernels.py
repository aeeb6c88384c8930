"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``QEULER_PURE_PYTHON=1`` to force the fallback (useful for timing and
for verifying that both twins agree).
"""

from __future__ import annotations

import os

from . import _altsum_py

try:
    from . import _altsum_cy
except ImportError:  # extension not built
    _altsum_cy = None

HAVE_COMPILED = _altsum_cy is not None

_FORCE_PURE = os.environ.get("QEULER_PURE_PYTHON", "") not in ("", "0")
_COMPILED_LIMIT = 1 << 63


def active_kernel_name() -> str:
    if HAVE_COMPILED and not _FORCE_PURE:
        return "compiled"
    return "python"


def alt_weighted_power_sum(coeffs, q: int, modulus: int, count: int) -> int:
    """Dispatch to the fastest kernel that can handle this modulus."""
    if HAVE_COMPILED and not _FORCE_PURE and 0 < modulus < _COMPILED_LIMIT:
        return _altsum_cy.alt_weighted_power_sum(coeffs, q, modulus, count)
    return _altsum_py.alt_weighted_power_sum(coeffs, q, modulus, count)
