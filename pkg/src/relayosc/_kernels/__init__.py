"""Kernel backend selection.

The compiled extension (``_fast``) is preferred when importable; otherwise
the NumPy implementation (``pure``) takes over.  Override with the
RELAYOSC_BACKEND environment variable: ``compiled`` forces the extension
(raising if missing), ``python`` forces the fallback.
"""

import os

_requested = os.environ.get("RELAYOSC_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "compiled", "c"):
    try:
        from . import _fast as _impl
    except ImportError:
        if _requested in ("compiled", "c"):
            raise
        from . import pure as _impl
elif _requested in ("python", "pure"):
    from . import pure as _impl
else:
    raise ValueError(
        f"RELAYOSC_BACKEND={_requested!r}: expected 'auto', 'compiled' or 'python'")

BACKEND = _impl.NAME

sign_changes = _impl.sign_changes
sign_changes_max = _impl.sign_changes_max
cyclic_variation_minus = _impl.cyclic_variation_minus
cyclic_variation_plus = _impl.cyclic_variation_plus
cyclic_convolve = _impl.cyclic_convolve
scan_fixed_points = _impl.scan_fixed_points
count_lemma1_violations = _impl.count_lemma1_violations
