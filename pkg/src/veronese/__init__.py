"""Betti tables and Hilbert series of Veronese modules S_{n,d,k}.

The module S_{n,d,k} collects the graded pieces of K[x_1..x_n] in degrees
k, k+d, k+2d, ...; its minimal free resolution over the polynomial ring on
the degree-d monomials is governed by the reduced homology of skeletons of
pile simplicial complexes.  This package computes those homology groups
exactly and assembles multigraded and total-degree Betti tables, together
with closed-form Hilbert series data and structural predicates.
"""

from .errors import ConsistencyError, ResourceLimitError
from .homology import (
    DEFAULT_FIELD,
    SECOND_FIELD,
    CoefficientField,
    HomologyProfile,
    SparseFieldMatrix,
    boundary_matrix,
    rank,
    reduced_homology,
)
from .lattice import (
    DegreeOrbit,
    GeneratorSet,
    Multidegree,
    dual_degree,
    enumerate_degrees,
    enumerate_generators,
)
from .pile import FaceTable, build_faces, f_vector, is_connected

__version__ = "0.1.0"
