"""Symbolic geodesics from unimodular Bratteli diagrams and singularity data.

The stages are usable on their own (:mod:`.bratteli`, :mod:`.surface`,
:mod:`.iet`, :mod:`.coding`) or chained by :func:`build_lamination_report`.
"""

from .bratteli import BratteliDiagram, Ergodicity, is_strictly_ergodic, state_vector
from .coding import expand_code, pre_code, symbolic_geodesic
from .errors import LaminationError
from .iet import IET, induce, natural_coding, theta_point
from .pipeline import LaminationReport, RunConfig, build_lamination_report
from .surface import SingularityData, permutation_from_singularity_data, surface_invariants

__all__ = [
    "BratteliDiagram",
    "Ergodicity",
    "IET",
    "LaminationError",
    "LaminationReport",
    "RunConfig",
    "SingularityData",
    "build_lamination_report",
    "expand_code",
    "induce",
    "is_strictly_ergodic",
    "natural_coding",
    "permutation_from_singularity_data",
    "pre_code",
    "state_vector",
    "surface_invariants",
    "symbolic_geodesic",
    "theta_point",
]
__version__ = "0.1.0"
