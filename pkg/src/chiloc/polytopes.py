"""Half-open rational polytopes in R^3 and weighted planar lattice counts.

A :class:`HalfOpenPolytope` is a closed convex hull minus some of its closed
faces.  Facets are found by brute force over vertex triples (the bodies used
here have at most five vertices), and lattice points of dilates are counted
column by column: for each integer ``(x, y)`` the admissible ``z`` form an
interval read off from the facet inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key, lru_cache, reduce
from math import ceil, floor, gcd, lcm
from typing import NamedTuple, Sequence

import numpy as np

from .exact import QuasiPolynomial, format_rational, qpoly_interpolate


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction


def point(x, y, z) -> Point3:
    return Point3(Fraction(x), Fraction(y), Fraction(z))


class DegenerateHullError(ValueError):
    pass


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _primitive(v: Sequence[Fraction]) -> tuple[int, int, int]:
    den = lcm(*(Fraction(c).denominator for c in v))
    ints = [int(c * den) for c in v]
    g = reduce(gcd, (abs(c) for c in ints))
    return tuple(c // g for c in ints)


class Facet(NamedTuple):
    """``normal . x <= offset`` on the hull, with equality on the facet."""

    normal: tuple[int, int, int]
    offset: Fraction
    vertices: frozenset[int]


@dataclass(frozen=True)
class HalfOpenPolytope:
    vertices: tuple[Point3, ...]
    removed_faces: tuple[tuple[int, ...], ...] = ()
    name: str = ""

    @classmethod
    def build(cls, vertices: Sequence[Point3], removed: Sequence[Sequence[Point3]] = (), name: str = "") -> HalfOpenPolytope:
        """Deduplicate vertices and express removed faces as index sets."""
        verts: list[Point3] = []
        for v in vertices:
            v = Point3(*map(Fraction, v))
            if v not in verts:
                verts.append(v)
        faces = []
        for face in removed:
            idx = sorted({verts.index(Point3(*map(Fraction, v))) for v in face})
            faces.append(tuple(idx))
        poly = cls(tuple(verts), tuple(faces), name)
        poly.check()
        return poly

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        vs = self.vertices
        if len(vs) < 4:
            raise DegenerateHullError(f"{self.name or 'polytope'}: fewer than 4 vertices")
        found: dict[tuple, Facet] = {}
        for i, j, k in itertools.combinations(range(len(vs)), 3):
            nrm = _cross(_sub(vs[j], vs[i]), _sub(vs[k], vs[i]))
            if nrm == (0, 0, 0):
                continue
            c = _dot(nrm, vs[i])
            side = [_dot(nrm, v) - c for v in vs]
            if all(s == 0 for s in side):
                raise DegenerateHullError(f"{self.name or 'polytope'}: vertices are coplanar")
            if all(s <= 0 for s in side):
                sign = 1
            elif all(s >= 0 for s in side):
                sign = -1
            else:
                continue
            normal = _primitive([sign * x for x in nrm])
            offset = _dot(normal, vs[i])
            on = frozenset(t for t, s in enumerate(side) if s == 0)
            found[(normal, offset)] = Facet(normal, offset, on)
        return tuple(found.values())

    def _containing_facets(self, face: Sequence[int]) -> list[Facet]:
        return [f for f in self.facets if set(face) <= f.vertices]

    def check(self) -> None:
        """Raise if a removed index set does not span a face of the hull."""
        for face in self.removed_faces:
            fs = self._containing_facets(face)
            common = reduce(frozenset.intersection, (f.vertices for f in fs)) if fs else frozenset()
            if not fs or common != frozenset(face):
                raise ValueError(f"{self.name or 'polytope'}: vertex set {face} is not a face of the hull")

    @cached_property
    def _removed_planes(self) -> tuple[tuple[Facet, ...], ...]:
        return tuple(tuple(self._containing_facets(face)) for face in self.removed_faces)

    def contains(self, pt: Sequence, t: int = 1) -> bool:
        """Is ``pt`` in the dilate ``t * self``?"""
        pt = tuple(Fraction(c) for c in pt)
        if any(_dot(f.normal, pt) > t * f.offset for f in self.facets):
            return False
        for planes in self._removed_planes:
            if all(_dot(f.normal, pt) == t * f.offset for f in planes):
                return False
        return True

    @cached_property
    def period(self) -> int:
        """Smallest positive integer dilating every vertex to a lattice point."""
        return lcm(*(c.denominator for v in self.vertices for c in v))

    def bounding_box(self, t: int) -> list[tuple[int, int]]:
        return [
            (ceil(t * min(v[k] for v in self.vertices)), floor(t * max(v[k] for v in self.vertices)))
            for k in range(3)
        ]

    def to_json(self) -> dict:
        return {
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "removed_faces": [list(f) for f in self.removed_faces],
        }


def contains(P: HalfOpenPolytope, pt: Sequence, t: int = 1) -> bool:
    return P.contains(pt, t)


def count_lattice_bruteforce(P: HalfOpenPolytope, t: int) -> int:
    """Reference count: test every integer point of the bounding box."""
    (x0, x1), (y0, y1), (z0, z1) = P.bounding_box(t)
    return sum(
        P.contains((x, y, z), t)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        for z in range(z0, z1 + 1)
    )


def count_lattice(P: HalfOpenPolytope, t: int) -> int:
    """Number of integer points in ``t * P`` (half-open faces honoured)."""
    if t < 0:
        raise ValueError("dilation must be non-negative")
    removed = P._removed_planes
    if any(len(planes) != 1 for planes in removed):
        return count_lattice_bruteforce(P, t)
    strict = {planes[0] for planes in removed}
    (x0, x1), (y0, y1), (z0, z1) = P.bounding_box(t)
    if x0 > x1 or y0 > y1 or z0 > z1:
        return 0
    X = np.arange(x0, x1 + 1, dtype=np.int64)[:, None]
    Y = np.arange(y0, y1 + 1, dtype=np.int64)[None, :]
    lo = np.full((X.shape[0], Y.shape[1]), z0, dtype=np.int64)
    hi = np.full_like(lo, z1)
    ok = np.ones_like(lo, dtype=bool)
    for f in P.facets:
        bound = t * f.offset
        # normal . p is an integer, so a rational bound rounds down
        rhs = (ceil(bound) - 1) if f in strict else floor(bound)
        nx, ny, nz = f.normal
        rest = rhs - nx * X - ny * Y
        if nz > 0:
            hi = np.minimum(hi, rest // nz)
        elif nz < 0:
            lo = np.maximum(lo, -(rest // -nz))
        else:
            ok &= rest >= 0
    return int(np.where(ok, np.maximum(hi - lo + 1, 0), 0).sum())


@lru_cache(maxsize=None)
def ehrhart(P: HalfOpenPolytope) -> QuasiPolynomial:
    """Ehrhart quasi-polynomial of ``P``, interpolated from counts at t >= 1."""
    return qpoly_interpolate(P.period, 3, lambda t: count_lattice(P, t), start=1)


def _tetra_volume(a, b, c, d) -> Fraction:
    return abs(Fraction(_dot(_sub(b, a), _cross(_sub(c, a), _sub(d, a))))) / 6


def volume(P: HalfOpenPolytope) -> Fraction:
    """Exact volume by fanning each facet polygon to the first vertex."""
    vs = P.vertices
    apex = vs[0]
    total = Fraction(0)
    for f in P.facets:
        if 0 in f.vertices:
            continue
        idx = sorted(f.vertices)
        w0 = vs[idx[0]]
        others = [vs[i] for i in idx[1:]]

        def order(p, q, w0=w0, normal=f.normal):
            s = _dot(_cross(_sub(p, w0), _sub(q, w0)), normal)
            return -1 if s > 0 else (1 if s < 0 else 0)

        others.sort(key=cmp_to_key(order))
        for p, q in zip(others, others[1:]):
            total += _tetra_volume(apex, w0, p, q)
    return total


def tau_apply(n: int, pt: Sequence) -> Point3:
    """The unimodular involution ``(a, b, z) -> (-a, (n+1)a + b, z)``."""
    a, b, z = (Fraction(c) for c in pt)
    return Point3(-a, (n + 1) * a + b, z)


# ---------------------------------------------------------------------------
# The pieces of the region counted by chi^0


def vertex_P(i: int) -> Point3:
    return point(Fraction(-1, i + 1), 0, 0)


def vertex_Q(i: int) -> Point3:
    return point(Fraction(-2, (i + 1) * (i + 2)), Fraction(-i, i + 2), Fraction(i, i + 2))


VERTEX_Z = point(0, -1, 0)


def vertex_P_prime(n: int) -> Point3:
    return point(Fraction(1, n + 1), -1, 0)


def vertex_Q_prime(n: int) -> Point3:
    return point(Fraction(2, (n + 1) * (n + 2)), -1, Fraction(n, n + 2))


def piece_P(i: int) -> HalfOpenPolytope:
    if i < 1:
        raise ValueError("piece index starts at 1")
    Pa, Qa, Pb, Qb, Z = vertex_P(i - 1), vertex_Q(i - 1), vertex_P(i), vertex_Q(i), VERTEX_Z
    return HalfOpenPolytope.build(
        [Pa, Qa, Pb, Qb, Z],
        removed=[(Pb, Qb, Z), (Pa, Pb, Z)],
        name=f"P_{i}",
    )


def piece_C(n: int) -> HalfOpenPolytope:
    if n < 1:
        raise ValueError("n must be positive")
    Pn, Qn, Z = vertex_P(n), vertex_Q(n), VERTEX_Z
    Pp, Qp = vertex_P_prime(n), vertex_Q_prime(n)
    return HalfOpenPolytope.build([Pn, Pp, Qn, Qp, Z], removed=[(Pn, Pp, Z)], name=f"C_{n}")


class AnPieces(NamedTuple):
    C: HalfOpenPolytope
    P: tuple[HalfOpenPolytope, ...]


@lru_cache(maxsize=None)
def an_pieces(n: int) -> AnPieces:
    """``C_n`` and ``P_1 .. P_n``; the region is ``C_n`` plus each ``P_i`` and its tau-mirror."""
    if n < 1:
        raise ValueError("n must be positive")
    return AnPieces(piece_C(n), tuple(piece_P(i) for i in range(1, n + 1)))


def region_volume(n: int) -> Fraction:
    pieces = an_pieces(n)
    return volume(pieces.C) + 2 * sum((volume(p) for p in pieces.P), Fraction(0))


# ---------------------------------------------------------------------------
# Weighted planar counts over triangles with apex gamma = (0, 1/2)

CLOSED, LEFT_OPEN, RIGHT_OPEN, OPEN, SEGMENT, GAMMA = (
    "triangle-closed",
    "triangle-left-open",
    "triangle-right-open",
    "triangle-open",
    "segment-endpoint",
    "gamma-point",
)


@dataclass(frozen=True)
class WeightedAtom:
    """One summand of a formal disjoint union of planar sets.

    Triangles are ``Conv{(a,0), (b,0), gamma}`` minus ``gamma``; the open
    variants also drop the edge(s) from ``(a,0)`` / ``(b,0)`` to ``gamma``.
    A segment is the closed edge from ``(a,0)`` to ``gamma`` minus ``gamma``.
    """

    kind: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity == 0:
            raise ValueError("multiplicity must be nonzero")
        if self.kind not in (CLOSED, LEFT_OPEN, RIGHT_OPEN, OPEN, SEGMENT, GAMMA):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind != GAMMA and self.a > self.b:
            raise ValueError("need a <= b")


def atom_weighted_sum(atom: WeightedAtom, t: int) -> Fraction:
    """Sum of ``y`` over integer points of the ``t``-dilate of one copy of ``atom``."""
    height = Fraction(t, 2)
    if atom.kind == GAMMA:
        return height if height.denominator == 1 else Fraction(0)
    A, B = t * atom.a, t * atom.b
    if atom.kind == SEGMENT:
        B = A
    left_open = atom.kind in (LEFT_OPEN, OPEN)
    right_open = atom.kind in (RIGHT_OPEN, OPEN)
    total = Fraction(0)
    y = 1  # the y = 0 row carries weight 0
    while y < height:
        s = (height - y) / height
        xl, xr = A * s, B * s
        lo = ceil(xl)
        hi = floor(xr)
        if left_open and lo == xl:
            lo += 1
        if right_open and hi == xr:
            hi -= 1
        if hi >= lo:
            total += y * (hi - lo + 1)
        y += 1
    return total


def weighted_sum(atoms: Sequence[WeightedAtom], t: int) -> Fraction:
    return sum((a.multiplicity * atom_weighted_sum(a, t) for a in atoms), Fraction(0))


def box_atoms(n: int) -> list[WeightedAtom]:
    F = Fraction
    return [
        WeightedAtom(OPEN, F(-1, n), F(-1, n + 1), 2),
        WeightedAtom(OPEN, F(-1), F(1, n), 2),
        WeightedAtom(OPEN, F(1, n + 1), F(1), 2),
        WeightedAtom(SEGMENT, F(1, n + 1), F(1, n + 1), 2),
        WeightedAtom(SEGMENT, F(1, n), F(1, n), 2),
        WeightedAtom(SEGMENT, F(1), F(1), 2),
        WeightedAtom(GAMMA, multiplicity=1),
    ]


def delta_atoms(n: int) -> list[WeightedAtom]:
    F = Fraction
    return [
        WeightedAtom(LEFT_OPEN, F(1, n + 1), 2 * (n + 1) - F(1, n + 1), 2),
        WeightedAtom(GAMMA, multiplicity=n),
    ]


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"weighted count {x} is not an integer")
    return x.numerator


def weighted_count_box(n: int, m: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return _as_int(weighted_sum(box_atoms(n), m + 1))


def weighted_count_delta(n: int, m: int) -> int:
    if m == 0:
        return 0
    return _as_int(weighted_sum(delta_atoms(n), m + 1))
