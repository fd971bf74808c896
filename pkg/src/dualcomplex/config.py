"""Numeric tolerances, collected and documented in one place.

Every threshold the library consults lives in :class:`Tolerances`.  The
module-level ``TOL`` instance is what the functions read at call time;
replace it with :func:`set_tolerances` to tune a whole process, or swap
``config.TOL`` temporarily in a test.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    #: |p0| at or below this counts as non-invertible (inverse, normalize,
    #: blend denominators).
    singular: float = 1e-12
    #: |sin(theta)| gate below which the principal log is ambiguous
    #: (half-turn rotations with a translation part).
    log_sin: float = 1e-9
    #: |theta| below which sin(theta)/theta and theta/sin(theta) switch to
    #: their series expansions.
    taylor: float = 1e-4
    #: unit constructors renormalize inputs whose norm is within this of 1
    #: and reject anything farther out.
    unit_accept: float = 1e-6
    #: orthogonality/determinant slack accepted for rigid-matrix input
    #: produced by other float pipelines; beyond this is NotRigid.
    rigid: float = 1e-6


TOL = Tolerances()


def set_tolerances(**overrides: float) -> Tolerances:
    """Replace selected global tolerances; returns the new active set."""
    global TOL
    TOL = replace(TOL, **overrides)
    return TOL
