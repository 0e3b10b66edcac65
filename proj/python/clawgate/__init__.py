"""clawgate: runtime-security primitives and the adversarial harness."""

try:
    from ._clawgate import *  # noqa: F401,F403
    from . import _clawgate as _impl
except ImportError:  # build-tree layout, module sits next to the package
    from _clawgate import *  # noqa: F401,F403
    import _clawgate as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
