"""Exact arithmetic: dense polynomials, rational functions, power series
and quasi-polynomials over the rationals.

Rationals are :class:`fractions.Fraction`, which already keeps numerator and
denominator in lowest terms with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class PoleAtOriginError(ValueError):
    """The denominator of a rational function vanishes at 0."""


class VerificationError(ArithmeticError):
    """An interpolated or reconstructed object disagrees with its samples."""

    def __init__(self, message: str, residue: int | None = None, argument: int | None = None):
        super().__init__(message)
        self.residue = residue
        self.argument = argument


def as_rational(x: Scalar | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(x: Scalar) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(as_rational(x))


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Immutable dense univariate polynomial; ``coeffs[k]`` multiplies ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar | str] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        rhs = [(j, b) for j, b in enumerate(other.coeffs) if b != 0]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in rhs:
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, n: int) -> Polynomial:
        """Keep only the terms of degree < n."""
        return Polynomial(self.coeffs[:n])

    def substitute_shift(self, k: Scalar) -> Polynomial:
        """Return the polynomial t -> self(t + k)."""
        shift = Polynomial([k, 1])
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * shift + c
        return acc

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + (("*" + mono) if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def one_minus_power(k: int) -> Polynomial:
    """``1 - t**k``."""
    return Polynomial([1]) - Polynomial.monomial(k)


def geometric_sum(k: int, step: int = 1) -> Polynomial:
    """``1 + t**step + ... + t**(k*step)``."""
    return Polynomial([1 if i % step == 0 else 0 for i in range(k * step + 1)])


# ---------------------------------------------------------------------------
# Rational functions


@dataclass(frozen=True)
class RationalFunction:
    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> RationalFunction:
        return cls(p, Polynomial([1]))

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def series(self, count: int) -> list[Fraction]:
        return series_coefficients(self, count)

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def series_coefficients(f: RationalFunction, count: int) -> list[Fraction]:
    """First ``count`` coefficients of the power series of ``f`` at 0."""
    d0 = f.den[0]
    if d0 == 0:
        raise PoleAtOriginError("denominator vanishes at 0; no power series expansion")
    terms = [(j, c) for j, c in enumerate(f.den.coeffs) if j > 0 and c != 0]
    out: list[Fraction] = []
    for k in range(count):
        acc = f.num[k]
        for j, c in terms:
            if j > k:
                break
            acc -= c * out[k - j]
        out.append(acc / d0)
    return out


def ratfun_equal(f: RationalFunction, g: RationalFunction) -> bool:
    return f.num * g.den == g.num * f.den


# ---------------------------------------------------------------------------
# Quasi-polynomials


@dataclass(frozen=True)
class QuasiPolynomial:
    """Row ``r`` holds the coefficients (constant first) used for ``t % period == r``."""

    period: int
    degree: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.rows) != self.period:
            raise ValueError(f"expected {self.period} rows, got {len(self.rows)}")
        padded = tuple(
            tuple(as_rational(c) for c in row) + (Fraction(0),) * (self.degree + 1 - len(row))
            for row in self.rows
        )
        if any(len(row) != self.degree + 1 for row in padded):
            raise ValueError("row longer than degree + 1")
        object.__setattr__(self, "rows", padded)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], degree: int | None = None) -> QuasiPolynomial:
        if degree is None:
            degree = max(0, max(p.degree for p in polys))
        return cls(len(polys), degree, tuple(p.coeffs for p in polys))

    def row_polynomial(self, r: int) -> Polynomial:
        return Polynomial(self.rows[r % self.period])

    def __call__(self, t: int) -> Fraction:
        return qpoly_eval(self, t)

    def __add__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        p = lcm(self.period, other.period)
        polys = [self.row_polynomial(r) + other.row_polynomial(r) for r in range(p)]
        return QuasiPolynomial.from_polynomials(polys, max(self.degree, other.degree))

    def scale(self, c: Scalar) -> QuasiPolynomial:
        return QuasiPolynomial(self.period, self.degree, tuple(tuple(c * x for x in row) for row in self.rows))

    def shift(self, k: int) -> QuasiPolynomial:
        """The quasi-polynomial ``t -> self(t + k)``."""
        polys = [self.row_polynomial(r + k).substitute_shift(k) for r in range(self.period)]
        return QuasiPolynomial.from_polynomials(polys, self.degree)

    def leading_coefficients(self) -> list[Fraction]:
        return [row[self.degree] for row in self.rows]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "rows": [[format_rational(c) for c in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> QuasiPolynomial:
        rows = tuple(tuple(Fraction(c) for c in row) for row in data["rows"])
        return cls(int(data["period"]), int(data["degree"]), rows)


def qpoly_eval(q: QuasiPolynomial, t: int) -> Fraction:
    row = q.rows[t % q.period]
    acc = Fraction(0)
    for c in reversed(row):
        acc = acc * t + c
    return acc


def _lagrange(xs: Sequence[int], ys: Sequence[Fraction]) -> Polynomial:
    result = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Polynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result


def qpoly_interpolate(
    period: int,
    degree: int,
    sampler: Callable[[int], Scalar],
    start: int = 0,
    extra: int = 2,
) -> QuasiPolynomial:
    """Fit a quasi-polynomial to ``sampler`` residue class by residue class.

    For residue ``r`` the fit uses the first ``degree + 1`` arguments
    ``>= start`` congruent to ``r`` and is then checked on ``extra`` more.
    """
    if period < 1 or degree < 0:
        raise ValueError("period must be positive and degree non-negative")
    polys = []
    for r in range(period):
        first = r if r >= start else r + period * (-(-(start - r) // period))
        args = [first + k * period for k in range(degree + 1 + extra)]
        values = [as_rational(sampler(t)) for t in args]
        poly = _lagrange(args[: degree + 1], values[: degree + 1])
        for t, v in zip(args[degree + 1 :], values[degree + 1 :]):
            got = poly(t)
            if got != v:
                raise VerificationError(
                    f"residue {r} (mod {period}): fit gives {got} at t={t}, sampler gives {v}",
                    residue=r,
                    argument=t,
                )
        polys.append(poly)
    return QuasiPolynomial.from_polynomials(polys, degree)


def qpoly_to_genfun(q: QuasiPolynomial, shift: int = 0) -> RationalFunction:
    """Generating function ``sum_m q(m + shift) t^m`` over ``(1 - t^p)^(d+1)``."""
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    p, d = q.period, q.degree
    k = p * (d + 1)
    den = one_minus_power(p) ** (d + 1)
    head = Polynomial(qpoly_eval(q, m + shift) for m in range(k))
    f = RationalFunction((head * den).truncate(k), den)
    check = 3 * (d + 1) * p
    got = series_coefficients(f, k + check)
    for m, c in enumerate(got):
        want = qpoly_eval(q, m + shift)
        if c != want:
            raise VerificationError(
                f"generating function coefficient {m} is {c}, quasi-polynomial gives {want}",
                residue=(m + shift) % p,
                argument=m + shift,
            )
    return f
