"""Control invariant sets of linear and switched linear systems via
piecewise semi-ellipsoids."""

try:
    from ._invkit import *  # noqa: F401,F403  (installed wheel layout)
    from ._invkit import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree build: extension sits next to the package
    from _invkit import *  # noqa: F401,F403

__version__ = "0.1.0"
