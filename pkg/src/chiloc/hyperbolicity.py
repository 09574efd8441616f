"""When does a degree-d surface in P^3 with r singularities of type A_n have
big cotangent bundle?

``chi_smooth`` is Riemann-Roch for ``S^m`` of the cotangent bundle of a smooth
degree-d surface.  Writing the Chern roots of the cotangent bundle as
``alpha, beta`` (so ``alpha + beta = K`` and ``alpha*beta = c2``), ``S^m``
has roots ``x_i = i*alpha + (m-i)*beta`` and the Todd class is
``1 - K/2 + (K^2 + c2)/12``; summing ``x_i^2/2 - x_i K/2 + chi(O)`` over
``i = 0..m`` with ``sum x_i = m(m+1)K/2`` and
``sum x_i^2 = (K^2 - 2c2) m(m+1)(2m+1)/6 + c2 m(m+1)(m-1)/3``
gives the formula below.  On a hypersurface ``K^2 = d(d-4)^2`` and
``c2 = d^3 - 4d^2 + 6d``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import floor

from .euler import chi1, chi1_cubic_coefficient

# Table of r(d, n) for d = 5..10, n = 1..6 as published; None where no value is printed.
PUBLISHED_RDN = {
    5: (57, 27, 18, 13, 11, None),
    6: (95, 46, 30, 22, 18, 15),
    7: (142, 68, 45, 33, 27, 22),
    8: (199, 95, 62, 46, 37, 31),
    9: (264, 126, 83, 61, 49, 41),
    10: (338, 162, 106, 78, 62, 52),
}


class DegreeTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceProfile:
    degree: int
    singularity_index: int
    count: int

    def __post_init__(self):
        if self.degree < 5:
            raise DegreeTooSmallError(f"degree {self.degree} < 5: surface is not of general type")
        if self.singularity_index < 1:
            raise ValueError("singularity index must be positive")
        if self.count < 0:
            raise ValueError("singularity count must be non-negative")


def chern_numbers(d: int) -> tuple[int, int]:
    """``(K^2, c2)`` of a smooth degree-d surface in P^3."""
    return d * (d - 4) ** 2, d**3 - 4 * d**2 + 6 * d


def chi_structure_sheaf(d: int) -> int:
    k2, c2 = chern_numbers(d)
    return (k2 + c2) // 12


def chi_smooth(d: int, m: int) -> int:
    """``chi(Z, S^m Omega_Z)`` for a smooth surface ``Z`` of degree ``d`` in P^3."""
    if d < 1 or m < 0:
        raise ValueError("need d >= 1 and m >= 0")
    k2, c2 = chern_numbers(d)
    chi_o = Fraction(k2 + c2, 12)
    value = (
        Fraction(1, 2)
        * (
            (k2 - 2 * c2) * Fraction(m * (m + 1) * (2 * m + 1), 6)
            + c2 * Fraction(m * (m + 1) * (m - 1), 3)
            - k2 * Fraction(m * (m + 1), 2)
        )
        + (m + 1) * chi_o
    )
    assert value.denominator == 1, value
    return value.numerator


def smooth_cubic_coefficient(d: int) -> Fraction:
    return Fraction(-(2 * d * d - 5 * d), 3)


def h0_lower_bound(p: SurfaceProfile, m: int) -> int:
    """Lower bound for ``h^0(Y, S^m Omega_Y)`` on the minimal resolution; valid for m >= 3."""
    if m < 3:
        raise ValueError("the bound holds only for m >= 3")
    return chi_smooth(p.degree, m) + p.count * chi1(p.singularity_index, m)


def bound_cubic_coefficient(p: SurfaceProfile) -> Fraction:
    return smooth_cubic_coefficient(p.degree) + p.count * chi1_cubic_coefficient(p.singularity_index)


def r_min(d: int, n: int) -> int:
    """Smallest ``r`` making the cubic coefficient of the bound strictly positive."""
    need = -smooth_cubic_coefficient(d)
    return floor(need / chi1_cubic_coefficient(n)) + 1


def miyaoka_bound(d: int, n: int) -> Fraction:
    return Fraction(2, 3) * (d - 1) ** 2 * d * Fraction(n + 1, 2 * n + 1)


def miyaoka_max(d: int, n: int) -> int:
    """Largest number of A_n singularities a degree-d surface can carry."""
    if d < 1:
        raise ValueError("d must be positive")
    return floor(miyaoka_bound(d, n))


@dataclass(frozen=True)
class SurfaceVerdict:
    d: int
    n: int
    r: int
    required: int
    miyaoka_max: int
    cubic_coefficient: Fraction
    big: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["cubic_coefficient"] = str(self.cubic_coefficient)
        return out


def check_surface(p: SurfaceProfile) -> SurfaceVerdict:
    required = r_min(p.degree, p.singularity_index)
    return SurfaceVerdict(
        p.degree,
        p.singularity_index,
        p.count,
        required,
        miyaoka_max(p.degree, p.singularity_index),
        bound_cubic_coefficient(p),
        p.count >= required,
    )


@dataclass(frozen=True)
class LabsVerdict:
    k: int
    d: int
    n: int
    available: int
    required: int
    verdict: bool

    def to_json(self) -> dict:
        return asdict(self)


def labs_check(k: int) -> LabsVerdict:
    """Degree ``2k`` surfaces with ``4k^2`` singularities of type ``A_{k-1}``."""
    if k < 3:
        raise DegreeTooSmallError(f"k={k} gives degree {2 * k} < 5")
    d, n = 2 * k, k - 1
    required = r_min(d, n)
    return LabsVerdict(k, d, n, 4 * k * k, required, 4 * k * k >= required)


@dataclass(frozen=True)
class RdnCell:
    d: int
    n: int
    r: int
    flagged: bool  # no published value for this cell


def rdn_table(d_max: int, n_max: int) -> list[list[RdnCell]]:
    """Rows ``d = 5..d_max``, columns ``n = 1..n_max``."""
    if d_max < 5 or n_max < 1:
        raise ValueError("need d_max >= 5 and n_max >= 1")
    table = []
    for d in range(5, d_max + 1):
        row = []
        for n in range(1, n_max + 1):
            published = PUBLISHED_RDN.get(d)
            flagged = published is not None and n <= len(published) and published[n - 1] is None
            row.append(RdnCell(d, n, r_min(d, n), flagged))
        table.append(row)
    return table
