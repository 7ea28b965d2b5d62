"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set CANTORLAB_PURE=1 to force the pure backend (used by the benchmark and
by tests that compare both implementations).
"""

import os

from . import pure

if os.environ.get("CANTORLAB_PURE") == "1":
    _impl = pure
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND
sections_common_and = _impl.sections_common_and
section_popcount_sum = _impl.section_popcount_sum
shift_orbit_hits = _impl.shift_orbit_hits
odometer_orbit_hits = _impl.odometer_orbit_hits
