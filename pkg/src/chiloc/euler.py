"""Local Euler characteristic of ``S^m`` of the cotangent sheaf at an A_n
singularity, its two components, and the cross-validation harness.

``chi_loc`` is computed four ways (closed quasi-polynomial, generating
function, sum of per-ray differences, weighted planar count) and ``chi0``
three ways (direct weight sum, lattice counts of polytope pieces, Ehrhart
quasi-polynomials).  ``chi1`` is their difference.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

from . import klyachko, polytopes
from .exact import (
    Polynomial,
    QuasiPolynomial,
    RationalFunction,
    geometric_sum,
    one_minus_power,
    qpoly_eval,
    series_coefficients,
)

log = logging.getLogger(__name__)


class NegativeChi1Error(ArithmeticError):
    """chi^1 came out negative; one of the two component computations is wrong."""


def _integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return x.numerator


# ---------------------------------------------------------------------------
# chi_loc


def _b(n: int, q: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if q % 2 == 0 else -1


def _c(n: int, q: int) -> int:
    base = 2 * q**3 - 3 * (n - 1) * q**2
    if n % 2 == 0:
        return base + (n * n - 4 * n - 2) * q - (3 * (n + 1) if q % 2 else 0)
    if q % 2 == 0:
        return base + (n * n - 4 * n - 5) * q
    return base + (n * n - 4 * n + 1) * q - 3 * (n + 1)


def _closed_row(n: int, q: int) -> Polynomial:
    lead = Fraction(n * (n + 2), n + 1)
    return Polynomial(
        [
            Fraction(_c(n, q), 12 * (n + 1)),
            lead / 4 + Fraction(_b(n, q), 4 * (n + 1)),
            lead / 2,
            lead / 6,
        ]
    )


def chi_loc_closed(n: int, m: int) -> int:
    if n == 0:
        return 0
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    return _integer(_closed_row(n, m % (n + 1))(m), f"chi_loc({n}, {m})")


def chi_loc_qpoly(n: int) -> QuasiPolynomial:
    """Period ``n + 1``: row ``q`` is the closed form for ``m = q (mod n+1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return QuasiPolynomial.from_polynomials([_closed_row(n, q) for q in range(n + 1)], 3)


def chi_loc_genfun(n: int) -> RationalFunction:
    if n < 1:
        raise ValueError("n must be positive")
    z = Polynomial.monomial(1)
    num = z * ((n + 1) * geometric_sum(n) ** 2 - geometric_sum(n, 2))
    den = one_minus_power(1) ** 2 * one_minus_power(n + 1) ** 2
    return RationalFunction(num, den)


def chi_loc_series(n: int, count: int) -> list[int]:
    return [_integer(c, "series coefficient") for c in series_coefficients(chi_loc_genfun(n), count)]


def chi_loc_genfun_value(n: int, m: int) -> int:
    return chi_loc_series(n, m + 1)[m]


def chi_loc_delta(n: int, m: int) -> int:
    """Sum over the chain of blow-downs ``A_k -> A_{k-1}``, k = 1..n."""
    return sum(klyachko.delta_total(k, m) for k in range(1, n + 1))


def chi_loc_weighted(n: int, m: int) -> int:
    return polytopes.weighted_count_delta(n, m)


# ---------------------------------------------------------------------------
# chi^0 and chi^1


def chi0_direct(n: int, m: int) -> int:
    return klyachko.z_total(n, m)


def chi0_polytopes(n: int, m: int) -> int:
    pieces = polytopes.an_pieces(n)
    t = m + 1
    return polytopes.count_lattice(pieces.C, t) + 2 * sum(polytopes.count_lattice(p, t) for p in pieces.P)


@lru_cache(maxsize=None)
def chi0_qpoly(n: int) -> QuasiPolynomial:
    """Quasi-polynomial in ``m``; its period is the lcm of the piece periods."""
    pieces = polytopes.an_pieces(n)
    q = polytopes.ehrhart(pieces.C)
    for p in pieces.P:
        q = q + polytopes.ehrhart(p).scale(2)
    return q.shift(1)


def chi0_qpoly_value(n: int, m: int) -> int:
    return _integer(qpoly_eval(chi0_qpoly(n), m), f"chi0_qpoly({n})({m})")


def chi1(n: int, m: int) -> int:
    value = chi_loc_closed(n, m) - chi0_direct(n, m)
    if value < 0:
        raise NegativeChi1Error(f"chi1({n}, {m}) = {value} < 0")
    return value


def chi0_cubic_coefficient(n: int) -> Fraction:
    return polytopes.region_volume(n)


def chi_loc_cubic_coefficient(n: int) -> Fraction:
    return Fraction(n * (n + 2), 6 * (n + 1))


def chi1_cubic_coefficient(n: int) -> Fraction:
    return chi_loc_cubic_coefficient(n) - chi0_cubic_coefficient(n)


@dataclass(frozen=True)
class ChiReport:
    n: int
    m: int
    chi_loc: int
    chi0: int
    chi1: int
    methods_agreed: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("methods_agreed")
        return d


def chi_report(n: int, m: int) -> ChiReport:
    loc = chi_loc_closed(n, m)
    c0 = chi0_direct(n, m)
    loc_values = {loc, chi_loc_genfun_value(n, m), chi_loc_delta(n, m)}
    if m >= 1:
        loc_values.add(chi_loc_weighted(n, m))
    agreed = len(loc_values) == 1 and c0 == chi0_polytopes(n, m)
    return ChiReport(n, m, loc, c0, chi1(n, m), agreed)


# ---------------------------------------------------------------------------
# Coefficient identities behind the closed form


def g_numerator_coefficients(n: int) -> list[int]:
    """``a_0 .. a_{4n+3}`` of ``(z + z^3 + ... + z^{2n+1})(1 + ... + z^n)^2``."""
    poly = Polynomial.monomial(1) * geometric_sum(n, 2) * geometric_sum(n) ** 2
    return [_integer(poly[k], "a_k") for k in range(4 * n + 4)]


def coefficient_identities(n: int) -> list[tuple[int, str, Fraction, Fraction]]:
    """Rows ``(q, identity, lhs, rhs)`` for q = 0..n; all must have lhs == rhs."""
    a = g_numerator_coefficients(n)
    p = n + 1
    rows = []
    for q in range(n + 1):
        a0, a1, a2, a3 = a[q], a[p + q], a[2 * p + q], a[3 * p + q]
        rows.append((q, "sum", Fraction(a0 + a1 + a2 + a3), Fraction(p * p)))
        rows.append((q, "weighted", Fraction(2 * a0 + a1 - a3), Fraction(p * (q + 1))))
        third = Fraction(p * p, 2) + 3 * q * (q + 2)
        if n % 2 == 1 and q % 2 == 1:
            third += 3
        elif n % 2 == 0:
            third += Fraction(3, 2)
        rows.append((q, "third", Fraction(11 * a0 + 2 * a1 - a2 + 2 * a3), third))
        aq = Fraction(q * (q + 2), 4) if q % 2 == 0 else Fraction((q + 1) ** 2, 4)
        rows.append((q, "a_q", Fraction(a0), aq))
    return rows


def parallelepiped_count(n: int) -> Polynomial:
    """Lattice points of the half-open parallelepiped of the cone over the
    Delta_n triangle, graded by height: coefficient of ``z^k``.

    Height ``k`` in 1..n holds x = 1..2(n+1)k-1, height n+1 holds
    x = 2..2(n+1)^2-2, and heights above n+1 mirror those below.
    """
    p = n + 1
    par = Polynomial([1]) + Polynomial.monomial(p, len(range(2, 2 * p * p - 1)))
    for k in range(1, n + 1):
        row = len(range(1, 2 * p * k))
        par = par + Polynomial.monomial(k, row) + Polynomial.monomial(2 * p - k, row)
    return par


def cone_transform_identity(n: int) -> tuple[Polynomial, Polynomial]:
    """Both sides of the polynomial identity used to simplify the generating function.

    Left: twice the fundamental-parallelepiped count at (1, 1, z), minus
    ``2(1 - z^{n+1})``, plus ``n(1 - z^{n+1})^2``.  Right:
    ``(1+z)^2 ((n+1)(1 + ... + z^n)^2 - (1 + z^2 + ... + z^{2n}))``.
    """
    p = n + 1
    lhs = 2 * parallelepiped_count(n) - 2 * one_minus_power(p) + n * one_minus_power(p) ** 2
    rhs = Polynomial([1, 1]) ** 2 * (p * geometric_sum(n) ** 2 - geometric_sum(n, 2))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Cross-validation


@dataclass(frozen=True)
class Discrepancy:
    methods: tuple[str, str]
    n: int
    m: int
    values: tuple

    def __str__(self):
        a, b = self.methods
        return f"{a} != {b} at n={self.n}, m={self.m}: {self.values[0]} vs {self.values[1]}"


@dataclass
class ValidationReport:
    n_max: int
    m_max: int
    cells: int = 0
    discrepancy: Discrepancy | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.discrepancy is None and self.error is None

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "m_max": self.m_max,
            "cells": self.cells,
            "ok": self.ok,
            "discrepancy": str(self.discrepancy) if self.discrepancy else None,
            "error": self.error,
        }


def _validate_cells(report: ValidationReport, reference_n_max: int) -> None:
    from .reference import reference_genfun
    from .exact import qpoly_to_genfun, ratfun_equal

    n_max, m_max = report.n_max, report.m_max
    for n in range(1, n_max + 1):
        series = chi_loc_series(n, m_max + 1)
        qp = chi0_qpoly(n)
        for m in range(m_max + 1):
            closed = chi_loc_closed(n, m)
            checks = [
                ("chi_loc_genfun", series[m]),
                ("chi_loc_delta", chi_loc_delta(n, m)),
            ]
            if m >= 1:
                checks.append(("chi_loc_weighted", chi_loc_weighted(n, m)))
            for name, value in checks:
                if value != closed:
                    report.discrepancy = Discrepancy(("chi_loc_closed", name), n, m, (closed, value))
                    return
            direct = chi0_direct(n, m)
            for name, value in (
                ("chi0_polytopes", chi0_polytopes(n, m)),
                ("chi0_qpoly", qpoly_eval(qp, m)),
            ):
                if value != direct:
                    report.discrepancy = Discrepancy(("chi0_direct", name), n, m, (direct, value))
                    return
            if closed < direct:
                report.discrepancy = Discrepancy(("chi_loc_closed", "chi0_direct"), n, m, (closed, direct))
                return
            report.cells += 1
    for n in range(1, min(n_max, reference_n_max) + 1):
        pieces = polytopes.an_pieces(n)
        for kind, piece in (("P", pieces.P[n - 1]), ("C", pieces.C)):
            ours = qpoly_to_genfun(polytopes.ehrhart(piece), 1)
            if not ratfun_equal(ours, reference_genfun(kind, n)):
                report.discrepancy = Discrepancy(("ehrhart_genfun", f"reference_{kind}"), n, -1, (str(ours), "table"))
                return


def validate(n_max: int, m_max: int, reference_n_max: int = 5) -> ValidationReport:
    """Check every method pair on ``1 <= n <= n_max``, ``0 <= m <= m_max``.

    Stops at the first disagreement.  Internal failures (sentinel trips,
    interpolation mismatches) are recorded in ``error``.
    """
    report = ValidationReport(n_max, m_max)
    try:
        _validate_cells(report, reference_n_max)
    except (ArithmeticError, klyachko.SentinelError) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    if not report.ok:
        log.warning("validation failed: %s", report.discrepancy or report.error)
    return report
