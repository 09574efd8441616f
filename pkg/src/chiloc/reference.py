"""Published generating functions ``sum_m L(piece, m+1) t^m`` for the pieces
``P_n`` and ``C_n``, n = 1..5, kept as products of factors exactly as
printed, plus the reference chi^0 series for the A_2 case."""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import Polynomial, RationalFunction

P_ROWS = {
    1: ("t^3", "(t^2 + t + 1)(t + 1)(t - 1)^4"),
    2: ("(t^4 + t^2 - t + 1) t^2", "(t^2 + t + 1)^2 (t^2 - t + 1)(t + 1)(t - 1)^4"),
    3: (
        "(t^11 + t^9 + t^8 + t^7 + t^6 + t^4 + t^2 + 1) t^3",
        "(t^4 + t^3 + t^2 + t + 1)(t^4 - t^3 + t^2 - t + 1)(t^2 + t + 1)(t^2 - t + 1)(t^2 + 1)(t + 1)^2 (t - 1)^4",
    ),
    4: (
        "(t^18 + t^16 + t^14 + t^13 + t^12 + t^11 + t^10 + t^9 + t^7 + t^5 + t^4 + t^2 + 1) t^4",
        "(t^8 - t^7 + t^5 - t^4 + t^3 - t + 1)(t^4 + t^3 + t^2 + t + 1)^2 (t^4 - t^3 + t^2 - t + 1)"
        "(t^2 + t + 1)(t^2 + 1)(t + 1)(t - 1)^4",
    ),
    5: (
        "(t^28 + t^25 + t^23 + t^22 + t^20 + t^19 + t^18 + t^17 + t^16 + t^15 + t^14 + t^12 + t^11"
        " + t^9 + t^8 + t^6 + t^5 + t^3 + 1) t^5",
        "(t^12 - t^11 + t^9 - t^8 + t^6 - t^4 + t^3 - t + 1)(t^8 - t^7 + t^5 - t^4 + t^3 - t + 1)"
        "(t^6 + t^5 + t^4 + t^3 + t^2 + t + 1)(t^4 + t^3 + t^2 + t + 1)(t^2 + t + 1)^2"
        "(t^2 - t + 1)(t + 1)(t - 1)^4",
    ),
}

C_ROWS = {
    1: ("(t^4 + t^3 + 2t^2 + 3t + 3) t^2", "(t^2 + t + 1)^2 (t + 1)^2 (t - 1)^4"),
    2: ("(t^4 - t^2 + 2t + 1) t^2", "(t^2 + t + 1)(t^2 - t + 1)(t + 1)^2 (t - 1)^4"),
    3: (
        "(t^12 + t^10 + 2t^8 + 2t^6 + 2t^5 + 2t^4 + 3t^2 + 1)(t^2 + t + 1) t^2",
        "(t^4 + t^3 + t^2 + t + 1)^2 (t^4 - t^3 + t^2 - t + 1)(t^2 + 1)(t + 1)^2 (t - 1)^4",
    ),
    4: (
        "(t^9 + t^7 - t^6 + t^3 + t^2 + 1)(t^4 - t^3 + t^2 - t + 1)(t + 1) t^2",
        "(t^8 - t^7 + t^5 - t^4 + t^3 - t + 1)(t^4 + t^3 + t^2 + t + 1)(t^2 + t + 1)^2 (t - 1)^4",
    ),
    5: (
        "(t^24 + t^21 + 2t^18 + 2t^15 + 2t^13 + 2t^12 - 2t^11 + 2t^10 + 2t^9 + 2t^7 + 2t^4 + t^3 + 1)"
        "(t^4 + t^3 + t^2 + t + 1) t^2",
        "(t^12 - t^11 + t^9 - t^8 + t^6 - t^4 + t^3 - t + 1)(t^6 + t^5 + t^4 + t^3 + t^2 + t + 1)^2"
        "(t^2 + t + 1)(t^2 - t + 1)(t + 1)^2 (t - 1)^4",
    ),
}

# chi^0(s_2, S^m) for m = 1..5
CHI0_A2_SERIES = {1: 0, 2: 3, 3: 8, 4: 15, 5: 28}

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(t(?:\^(\d+))?)?")
_FACTOR = re.compile(r"\(([^()]*)\)(?:\^(\d+))?|t(?:\^(\d+))?")


def parse_sum(text: str) -> Polynomial:
    """Parse a flat sum of terms such as ``t^4 - t^2 + 2t + 1``."""
    coeffs: dict[int, Fraction] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, num, var, exp = mt.groups()
        if not num and not var:
            raise ValueError(f"empty term in {text!r}")
        c = Fraction(int(num) if num else 1) * (-1 if sign == "-" else 1)
        k = (int(exp) if exp else 1) if var else 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
        pos = mt.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    top = max(coeffs, default=-1)
    return Polynomial(coeffs.get(k, 0) for k in range(top + 1))


def parse_product(text: str) -> Polynomial:
    """Parse a product of parenthesised factors with optional powers, and bare ``t^k``."""
    result = Polynomial([1])
    stripped = text.replace(" ", "")
    pos = 0
    while pos < len(stripped):
        mf = _FACTOR.match(stripped, pos)
        if not mf:
            raise ValueError(f"cannot parse factor at {stripped[pos:]!r}")
        inner, power, tpow = mf.groups()
        if inner is not None:
            result = result * parse_sum(inner) ** (int(power) if power else 1)
        else:
            result = result * Polynomial.monomial(int(tpow) if tpow else 1)
        pos = mf.end()
    return result


def reference_genfun(kind: str, n: int) -> RationalFunction:
    rows = {"P": P_ROWS, "C": C_ROWS}[kind]
    num, den = rows[n]
    return RationalFunction(parse_product(num), parse_product(den))
