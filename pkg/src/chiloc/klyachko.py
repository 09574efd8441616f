"""Filtration dimensions for symmetric powers of the cotangent sheaf on the
toric surfaces around an A_n singularity.

Rays are indexed by their slope ``i`` (the ray through ``(i, 1)``), so the
pairing with a character ``u = (u1, u2)`` is ``i*u1 + u2``.  Enumerations
are vectorised with numpy integer arrays; all values stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

import numpy as np


class Weight(NamedTuple):
    u1: int
    u2: int


class ShiftedWeight(NamedTuple):
    """Coordinates ``(a, b)`` with ``(u1, u2) = (a, b + 1)``."""

    a: int
    b: int

    def to_weight(self) -> Weight:
        return Weight(self.a, self.b + 1)


class SentinelError(RuntimeError):
    """A summand was nonzero on the boundary of its enumeration box."""


class DuplicateRayError(ValueError):
    pass


def pairing(i: int, u: Weight) -> int:
    """``rho_i(u)`` for the ray through ``(i, 1)``."""
    return i * u[0] + u[1]


def lam(m, i):
    """Codimension of the level-``i`` filtration step of ``S^m``: clip(i + m, 0, m + 1).

    Accepts ints or integer numpy arrays.
    """
    return np.minimum(np.maximum(i + m, 0), m + 1)


def lam_shifted(m1, i):
    """``lam(m1 - 1, i + 1)``: 0 below -m1, ``i + m1`` on [-m1, 0], ``m1`` above."""
    return lam(m1 - 1, i + 1)


def lambda_(m: int, i: int) -> int:
    return int(lam(m, i))


def lambda_shifted(m1: int, i: int) -> int:
    if m1 < 1:
        raise ValueError("m1 must be positive")
    return int(lam_shifted(m1, i))


def _check_slopes(levels: Sequence[tuple[int, int]]) -> None:
    slopes = [s for s, _ in levels]
    if len(set(slopes)) != len(slopes):
        raise DuplicateRayError(f"ray slopes must be distinct, got {slopes}")


def filtration_dim(m: int, levels: Sequence[tuple[int, int]]) -> int:
    """Dimension of the intersection of the level-``j`` steps, one per ray slope."""
    _check_slopes(levels)
    return max(0, m + 1 - sum(lambda_(m, j) for _, j in levels))


# ---------------------------------------------------------------------------
# Brute-force oracle: explicit subspaces of binary forms, exact elimination


def _linear_power(slope: int, e: int) -> list[int]:
    """Coefficients of ``(x - slope*y)**e``, indexed by the power of x."""
    return [comb(e, k) * (-slope) ** (e - k) for k in range(e + 1)]


def _step_span(m: int, slope: int, level: int) -> list[list[int]]:
    """Spanning set of the level step inside degree-m forms (index = power of x)."""
    level = min(max(level, -m), 1)
    e = level + m
    if e > m:
        return []
    base = _linear_power(slope, e)
    rows = []
    for s in range(m - e + 1):
        v = [0] * (m + 1)
        for k, c in enumerate(base):
            v[k + s] += c
        rows.append(v)
    return rows


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _orthogonal_complement(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{w : v . w = 0 for every row v}``."""
    reduced, pivots = _row_reduce([[Fraction(x) for x in r] for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        w = [Fraction(0)] * ncols
        w[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            w[p] = -row[f]
        basis.append(w)
    return basis


@lru_cache(maxsize=4096)
def _step_constraints(m: int, slope: int, level: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(map(tuple, _orthogonal_complement(_step_span(m, slope, level), m + 1)))


def filtration_dim_oracle(m: int, levels: Sequence[tuple[int, int]]) -> int:
    """Same quantity as :func:`filtration_dim`, by Gaussian elimination on binary forms."""
    _check_slopes(levels)
    n = m + 1
    constraints: list[list[Fraction]] = []
    for slope, level in levels:
        constraints.extend(map(list, _step_constraints(m, slope, level)))
    if not constraints:
        return n
    _, pivots = _row_reduce(constraints, n)
    return n - len(pivots)


# ---------------------------------------------------------------------------
# Pointwise summands


def _delta_array(n: int, m: int, u1, u2):
    l0 = lam(m, u2)
    l1 = lam(m, u1 + u2)
    ln = lam(m, (n + 1) * u1 + u2)
    z = 0
    return (
        (m + 1)
        - l1
        - np.maximum(m + 1 - l0 - l1, z)
        - np.maximum(m + 1 - l1 - ln, z)
        + np.maximum(m + 1 - l0 - ln, z)
    )


def delta_pointwise(n: int, m: int, u: Weight) -> int:
    """Difference of the weight-``u`` Euler characteristics across the blow-down
    of the ray through ``(1, 1)``."""
    return int(_delta_array(n, m, u[0], u[1]))


def delta_box(m: int) -> tuple[range, range]:
    """Enumeration box for :func:`delta_total`; contains every linearity triangle."""
    return range(-(m + 1), m + 2), range(-2 * (m + 1), m + 3)


def delta_grid(n: int, m: int):
    """(u1 values, u2 values, values) over :func:`delta_box`; values indexed [u1, u2]."""
    r1, r2 = delta_box(m)
    u1 = np.arange(r1.start, r1.stop, dtype=np.int64)
    u2 = np.arange(r2.start, r2.stop, dtype=np.int64)
    vals = _delta_array(n, m, u1[:, None], u2[None, :])
    return u1, u2, vals


def _boundary_nonzero(vals: np.ndarray) -> bool:
    return bool(vals[0, :].any() or vals[-1, :].any() or vals[:, 0].any() or vals[:, -1].any())


def delta_total(n: int, m: int) -> int:
    _, _, vals = delta_grid(n, m)
    if _boundary_nonzero(vals):
        raise SentinelError(f"delta_{n}({m}, u) nonzero on the enumeration box boundary")
    return int(vals.sum())


def _z_array(n: int, m: int, a, b):
    m1 = m + 1
    first = np.maximum(0, m1 - lam_shifted(m1, b) - lam_shifted(m1, (n + 1) * a + b))
    i = np.arange(1, n + 1, dtype=np.int64).reshape((-1,) + (1,) * np.ndim(a + b))
    second = lam_shifted(m1, i * a + b).sum(axis=0)
    return np.minimum(first, second)


def z_value(n: int, m: int, p: ShiftedWeight) -> int:
    """Dimension of weight-``p`` sections away from the exceptional curves,
    modulo those extending across them."""
    return int(_z_array(n, m, np.int64(p[0]), np.int64(p[1])))


def z_box(n: int, m: int) -> tuple[range, range]:
    """Enumeration box for the sum of :func:`z_value`, in shifted coordinates.

    Nonzero ``z`` needs ``b < 0``, ``(n+1)a + b < 0`` and ``ia + b > -(m+1)``
    for some ``1 <= i <= n``; the box pads that region by one on every side.
    """
    m1 = m + 1
    return range(-m1 - 1, m1 + 2), range(-m1 * (n + 1) - 1, 2)


def z_grid(n: int, m: int):
    ra, rb = z_box(n, m)
    a = np.arange(ra.start, ra.stop, dtype=np.int64)
    b = np.arange(rb.start, rb.stop, dtype=np.int64)
    return a, b, _z_array(n, m, a[:, None], b[None, :])


def z_total(n: int, m: int) -> int:
    _, _, vals = z_grid(n, m)
    if _boundary_nonzero(vals):
        raise SentinelError(f"z_{m} nonzero on the enumeration box boundary (n={n})")
    return int(vals.sum())


def tau(n: int, p: ShiftedWeight) -> ShiftedWeight:
    """The involution ``(a, b) -> (-a, (n+1)a + b)``."""
    return ShiftedWeight(-p[0], (n + 1) * p[0] + p[1])
