"""Hölder-continuous maps into the Heisenberg group: numerical toolkit."""

__version__ = "0.1.0"

from .errors import InternalFault, OnCurveError, PreconditionError, YoungConditionError
from .exterior import Covector, hodge_star, wedge
from .heisenberg import HPoint, group_mul, koranyi_dist
from .holder import GridMap, MollifierKernel, SampledPath
from .young import YoungResult, young_integral

__all__ = [
    "Covector", "GridMap", "HPoint", "InternalFault", "MollifierKernel", "OnCurveError",
    "PreconditionError", "SampledPath", "YoungConditionError", "YoungResult", "group_mul",
    "hodge_star", "koranyi_dist", "wedge", "young_integral",
]
