"""Ratios of geometric quantities over self-dual cones.

The classical theory of ratios (iteration, partition, cuts by fractions)
generalized to finite-dimensional self-dual facially homogeneous cones,
where every ratio acts as a self-adjoint derivation of the cone.  Includes
exact rational cut bracketing, face-lattice machinery, the derivation Lie
algebra with its orientability dichotomy, tensor words for dimensioned
quantities, and the commutative function-space reconstruction on lattice
cones.
"""

from eudoxus.exact_rational import (
    CutOracle,
    FractionCutOracle,
    RealCutOracle,
    classify_fraction,
    compare,
    stern_brocot_bracket,
)
from eudoxus.cone_space import ConeSpace, Membership
from eudoxus.face_lattice import Face, face_of, facial_derivative
from eudoxus.derivation_algebra import Derivation, SpectralFaceFamily
from eudoxus.ratio_calculus import Ratio, ratio_from_pair, ratio_equal

__all__ = [
    "CutOracle",
    "FractionCutOracle",
    "RealCutOracle",
    "classify_fraction",
    "compare",
    "stern_brocot_bracket",
    "ConeSpace",
    "Membership",
    "Face",
    "face_of",
    "facial_derivative",
    "Derivation",
    "SpectralFaceFamily",
    "Ratio",
    "ratio_from_pair",
    "ratio_equal",
]
