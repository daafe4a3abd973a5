"""Exact computations for the SL2-invariant Hilbert scheme of the zero fibre of the
moment map on six copies of the plane."""

from .exact import Matrix
from .moment import A0, Q, orbit_closure_membership, quotient_map
from .checks import run_suite

__version__ = "0.1.0"
__all__ = ["Matrix", "A0", "Q", "orbit_closure_membership", "quotient_map", "run_suite"]
