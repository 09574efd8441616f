"""Exact local Euler characteristics of symmetric differentials at A_n
surface singularities, and the resulting bigness thresholds for surfaces
in P^3."""

from .euler import (
    ChiReport,
    chi0_direct,
    chi0_polytopes,
    chi0_qpoly,
    chi1,
    chi1_cubic_coefficient,
    chi_loc_closed,
    chi_loc_delta,
    chi_loc_genfun,
    chi_loc_qpoly,
    chi_loc_weighted,
    chi_report,
    validate,
)
from .hyperbolicity import SurfaceProfile, chi_smooth, labs_check, miyaoka_max, r_min, rdn_table

__version__ = "0.1.0"

__all__ = [
    "ChiReport",
    "SurfaceProfile",
    "chi0_direct",
    "chi0_polytopes",
    "chi0_qpoly",
    "chi1",
    "chi1_cubic_coefficient",
    "chi_loc_closed",
    "chi_loc_delta",
    "chi_loc_genfun",
    "chi_loc_qpoly",
    "chi_loc_weighted",
    "chi_report",
    "chi_smooth",
    "labs_check",
    "miyaoka_max",
    "r_min",
    "rdn_table",
    "validate",
]
