"""2D rigid motions as anti-commutative dual complex numbers.

The algebra lives in :mod:`dualcomplex.algebra` (re-exported here);
matrix / dual-quaternion / complex-matrix conversions in
:mod:`dualcomplex.interop`; the probe deformer in
:mod:`dualcomplex.deform`; the representation benchmark in
:mod:`dualcomplex.bench`; the command line in :mod:`dualcomplex.cli`.
"""

from .algebra import (
    IDENTITY,
    Dcn,
    DcnTangent,
    UnitDcn,
    act,
    dlb,
    exp,
    from_rotation,
    from_translation,
    log,
    slerp,
)
from .config import TOL, Tolerances, set_tolerances
from .errors import DcnError, DegenerateBlend, LogSingular, NotRigid, SingularDcn

__all__ = [
    "Dcn",
    "UnitDcn",
    "DcnTangent",
    "IDENTITY",
    "act",
    "dlb",
    "exp",
    "log",
    "slerp",
    "from_translation",
    "from_rotation",
    "TOL",
    "Tolerances",
    "set_tolerances",
    "DcnError",
    "SingularDcn",
    "DegenerateBlend",
    "LogSingular",
    "NotRigid",
]

__version__ = "0.1.0"
