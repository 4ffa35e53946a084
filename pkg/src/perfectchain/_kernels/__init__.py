"""Hot-kernel backend selection.

Prefers the compiled Cython module; falls back to the NumPy implementation
when the extension is absent or PERFECTCHAIN_FORCE_FALLBACK is set.  Both
backends expose identical signatures (see ``_fallback``).
"""

import os

if os.environ.get("PERFECTCHAIN_FORCE_FALLBACK"):
    from perfectchain._kernels import _fallback as _impl
else:
    try:
        from perfectchain._kernels import _native as _impl  # type: ignore
    except ImportError:
        from perfectchain._kernels import _fallback as _impl

BACKEND = _impl.BACKEND
sturm_counts = _impl.sturm_counts
ql_eigenvalues = _impl.ql_eigenvalues
verlet_steps = _impl.verlet_steps


def backend_name() -> str:
    """Which kernel implementation is active: 'native' or 'fallback'."""
    return BACKEND
