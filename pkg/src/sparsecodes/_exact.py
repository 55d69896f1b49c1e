"""Exact rational helpers: scalar parsing, square-root bounds, root comparisons."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Point = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and "p/q" strings to Fraction.

    Floats are accepted and converted exactly (binary value).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, float)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational scalar")


def parse_scalar(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den)
            if d == 0:
                raise ValueError(f"zero denominator in scalar {text!r}")
            return Fraction(int(num), d)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed scalar {text!r}") from exc


def fmt_scalar(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pt(*coords) -> Point:
    return tuple(Q(c) for c in coords)


def to_point(seq: Sequence) -> Point:
    return tuple(Q(c) for c in seq)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Return sqrt(q) if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    """Rational lower bound on sqrt(q), exact when sqrt(q) is rational."""
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    ex = exact_sqrt(q)
    if ex is not None:
        return ex
    scale = 1 << bits
    return Fraction(math.isqrt(q.numerator * scale * scale // q.denominator), scale)


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    ex = exact_sqrt(q)
    if ex is not None:
        return ex
    scale = 1 << bits
    return Fraction(math.isqrt(q.numerator * scale * scale // q.denominator) + 1, scale)


# Comparisons of the form sqrt(x) + sqrt(y) <= sqrt(z), all arguments >= 0.
# Squaring twice keeps everything rational.

def sum_sqrt_le(x: Fraction, y: Fraction, z: Fraction) -> bool:
    r = z - x - y
    return r >= 0 and 4 * x * y <= r * r


def sum_sqrt_lt(x: Fraction, y: Fraction, z: Fraction) -> bool:
    r = z - x - y
    if r < 0:
        return False
    return 4 * x * y < r * r


def dot(a: Point, b: Point):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def scale(a: Point, s) -> Point:
    return tuple(x * s for x in a)


def norm_sq(a: Point):
    return dot(a, a)


def lerp(a: Point, b: Point, t) -> Point:
    return tuple(x + (y - x) * t for x, y in zip(a, b))


def centroid(points: Sequence[Point]) -> Point:
    k = len(points)
    d = len(points[0])
    return tuple(sum((p[i] for p in points), Fraction(0)) / k for i in range(d))


def cross3(a: Point, b: Point) -> Point:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def orient2(a: Point, b: Point, c: Point):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def primitive(v: Sequence[Fraction]) -> tuple:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def rationalize(x: float, max_den: int = 1 << 40) -> Fraction:
    return Fraction(x).limit_denominator(max_den)
