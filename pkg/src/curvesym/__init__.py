"""Exact symmetry detection for rational space curves."""

from .curve import (
    CurveInvariants,
    DegeneracyReport,
    ParamCurve3,
    crunode,
    daisy,
    degeneracy,
    invariants,
    random_central_curve,
    twisted_cubic,
)
from .detect import MobiusCandidate, build_equations, symm
from .errors import (
    CurveParseError,
    CurveSymError,
    DegenerateCurveError,
    DenominatorVanishes,
    InconsistentSymmetry,
)
from .isometry import Isometry, SymmetryRecord, find_symmetries

__version__ = "0.1.0"

__all__ = [
    "CurveInvariants", "CurveParseError", "CurveSymError", "DegeneracyReport",
    "DegenerateCurveError", "DenominatorVanishes", "InconsistentSymmetry", "Isometry",
    "MobiusCandidate", "ParamCurve3", "SymmetryRecord", "build_equations", "crunode", "daisy",
    "degeneracy", "find_symmetries", "invariants", "random_central_curve", "symm",
    "twisted_cubic",
]
