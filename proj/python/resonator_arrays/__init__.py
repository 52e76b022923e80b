"""Subwavelength resonances of finite arrays of spherical acoustic resonators.

The compiled extension carries the implementation; this package re-exports
its surface. When running against a plain CMake build tree (no installed
wheel), set RESONATOR_BUILD_DIR to the directory containing the built
``_core`` module.
"""

import os
import sys

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # build-tree fallback
    _build_dir = os.environ.get("RESONATOR_BUILD_DIR")
    if not _build_dir:
        raise
    sys.path.insert(0, _build_dir)
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__version__ = "0.1.0"
__doc__ = _core_doc or __doc__
