"""Verification toolkit: is the extended volume at ideal points of the
deformation variety bounded away from the hyperbolic volume?

Threefold test per census manifold:
  1. arithmetic screen on k = nu - ceil(V/v0) + 1  (pass iff k <= 2)
  2. tropical prevariety lower bound l on degenerating tetrahedra (pass iff l >= k)
  3. explicit ideal points in (CP^1)^nu and their extended volumes
"""

from .census import ManifoldRecord, gluing_polynomials, load_census, parse_census
from .dilog import CP1Point, Volume, bloch_wigner, rep_volume, v0
from .outcome import TestOutcome
from .pipeline import RunConfig, run_manifold, run_pipeline

__all__ = [
    "ManifoldRecord",
    "gluing_polynomials",
    "load_census",
    "parse_census",
    "CP1Point",
    "Volume",
    "bloch_wigner",
    "rep_volume",
    "v0",
    "TestOutcome",
    "RunConfig",
    "run_manifold",
    "run_pipeline",
]

__version__ = "0.1.0"
