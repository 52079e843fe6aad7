"""Comparator network toolkit: k-sorter networks, 0-1 verification,
minimal-pass search, parallel comparison schedules, and sorting bounds."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # pragma: no cover - in-tree runs load from the build dir
    import os as _os
    import sys as _sys

    _core_dir = _os.environ.get("KNETS_CORE_DIR")
    if not _core_dir:
        raise
    if _core_dir not in _sys.path:
        _sys.path.insert(0, _core_dir)
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
