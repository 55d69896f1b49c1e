"""Exact convex bodies in R^1, R^2, R^3 and arrangements of them.

Every body is stored as a closed point set of the form ``core (+) rho*B``:
a polytope ``core`` (given by points whose convex hull is taken) thickened
by a ball of radius ``rho``.  Plain polytopes have ``rho = 0``; a disk is a
point core with ``rho**2 = radius_sq`` (``rho`` may be irrational); an
offset body has a rational ``rho``.  The arrangement's topology flag says
whether predicates treat bodies as open (interiors) or closed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._exact import Q, exact_sqrt, fmt_scalar, orient2, to_point

OPEN = "open"
CLOSED = "closed"


class ArrangementError(ValueError):
    """Malformed body or arrangement input."""


class DimensionMismatch(ArrangementError):
    pass


class Body:
    """Common interface.  Subclasses are frozen dataclasses."""

    kind = "body"

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def core(self) -> tuple:
        raise NotImplementedError

    @property
    def rho_sq(self) -> Fraction:
        return Fraction(0)

    @property
    def rho(self) -> Fraction | None:
        """Rational thickening radius, or None when irrational."""
        return exact_sqrt(self.rho_sq)

    @property
    def is_empty(self) -> bool:
        return False

    @property
    def is_polytopal(self) -> bool:
        return self.rho_sq == 0 and not self.is_empty

    def translate(self, v) -> "Body":
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _jp(p) -> list:
    return [fmt_scalar(c) for c in p]


@dataclass(frozen=True)
class Interval(Body):
    lo: Fraction
    hi: Fraction
    kind = "interval"

    def __post_init__(self):
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.lo > self.hi:
            raise ArrangementError(f"interval lo {self.lo} > hi {self.hi}")

    @property
    def dim(self):
        return 1

    @property
    def core(self):
        return ((self.lo,), (self.hi,)) if self.lo != self.hi else ((self.lo,),)

    def translate(self, v):
        return Interval(self.lo + v[0], self.hi + v[0])

    def to_json(self):
        return {"kind": "interval", "lo": fmt_scalar(self.lo), "hi": fmt_scalar(self.hi)}


@dataclass(frozen=True)
class Segment(Body):
    a: tuple
    b: tuple
    kind = "segment"

    def __post_init__(self):
        object.__setattr__(self, "a", to_point(self.a))
        object.__setattr__(self, "b", to_point(self.b))
        if len(self.a) != len(self.b) or not 1 <= len(self.a) <= 3:
            raise ArrangementError("segment endpoints must share a dimension in 1..3")

    @property
    def dim(self):
        return len(self.a)

    @property
    def core(self):
        return (self.a, self.b) if self.a != self.b else (self.a,)

    def translate(self, v):
        return Segment(tuple(x + y for x, y in zip(self.a, v)), tuple(x + y for x, y in zip(self.b, v)))

    def to_json(self):
        return {"kind": "segment", "a": _jp(self.a), "b": _jp(self.b)}


@dataclass(frozen=True)
class Polygon(Body):
    """Counterclockwise strictly convex polygon."""

    vertices: tuple
    kind = "polygon"

    def __post_init__(self):
        vs = tuple(to_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3 or any(len(v) != 2 for v in vs):
            raise ArrangementError("polygon needs at least 3 planar vertices")
        k = len(vs)
        for i in range(k):
            if orient2(vs[i], vs[(i + 1) % k], vs[(i + 2) % k]) <= 0:
                raise ArrangementError("polygon vertices must be strictly convex and counterclockwise")

    @property
    def dim(self):
        return 2

    @property
    def core(self):
        return self.vertices

    def translate(self, v):
        return Polygon(tuple((p[0] + v[0], p[1] + v[1]) for p in self.vertices))

    def to_json(self):
        return {"kind": "polygon", "vertices": [_jp(p) for p in self.vertices]}


@dataclass(frozen=True)
class Polytope3(Body):
    """Convex hull of the given points in R^3 (may be lower dimensional)."""

    vertices: tuple
    kind = "polytope"

    def __post_init__(self):
        vs = []
        for v in self.vertices:
            p = to_point(v)
            if len(p) != 3:
                raise ArrangementError("polytope vertices must be 3D points")
            if p not in vs:
                vs.append(p)
        if not vs:
            raise ArrangementError("polytope needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(vs))

    @property
    def dim(self):
        return 3

    @property
    def core(self):
        return self.vertices

    def translate(self, v):
        return Polytope3(tuple(tuple(x + y for x, y in zip(p, v)) for p in self.vertices))

    def to_json(self):
        return {"kind": "polytope", "vertices": [_jp(p) for p in self.vertices]}


@dataclass(frozen=True)
class Disk(Body):
    center: tuple
    radius_sq: Fraction
    kind = "disk"

    def __post_init__(self):
        object.__setattr__(self, "center", to_point(self.center))
        object.__setattr__(self, "radius_sq", Q(self.radius_sq))
        if self.radius_sq <= 0:
            raise ArrangementError("disk radius must be positive")

    @property
    def dim(self):
        return len(self.center)

    @property
    def core(self):
        return (self.center,)

    @property
    def rho_sq(self):
        return self.radius_sq

    def translate(self, v):
        return Disk(tuple(x + y for x, y in zip(self.center, v)), self.radius_sq)

    def to_json(self):
        return {"kind": "disk", "center": _jp(self.center), "radius_sq": fmt_scalar(self.radius_sq)}


@dataclass(frozen=True)
class Offset(Body):
    """Minkowski sum of a polytopal body with a closed ball of rational radius."""

    base: Body
    radius: Fraction
    kind = "offset"

    def __post_init__(self):
        object.__setattr__(self, "radius", Q(self.radius))
        if self.radius <= 0:
            raise ArrangementError("offset radius must be positive")
        if not isinstance(self.base, (Interval, Segment, Polygon, Polytope3)):
            raise ArrangementError("offset core must be an interval, segment, polygon or polytope")

    @property
    def dim(self):
        return self.base.dim

    @property
    def core(self):
        return self.base.core

    @property
    def rho_sq(self):
        return self.radius * self.radius

    @property
    def rho(self):
        return self.radius

    def translate(self, v):
        return Offset(self.base.translate(v), self.radius)

    def to_json(self):
        return {"kind": "offset", "radius": fmt_scalar(self.radius), "core": self.base.to_json()}


@dataclass(frozen=True)
class Empty(Body):
    """A neuron that never fires."""

    ambient: int
    kind = "empty"

    @property
    def dim(self):
        return self.ambient

    @property
    def core(self):
        return ()

    @property
    def is_empty(self):
        return True

    def translate(self, v):
        return self

    def to_json(self):
        return {"kind": "empty"}


def point_body(p) -> Body:
    """Closed single-point body in the ambient dimension of ``p``."""
    p = to_point(p)
    if len(p) == 1:
        return Interval(p[0], p[0])
    if len(p) == 3:
        return Polytope3((p,))
    return Segment(p, p)


def ball(center, radius) -> Body:
    """Closed ball with rational radius, as the natural body kind per dimension."""
    c = to_point(center)
    r = Q(radius)
    if len(c) == 1:
        return Interval(c[0] - r, c[0] + r)
    if len(c) == 2:
        return Disk(c, r * r)
    return Offset(point_body(c), r)


def body_from_json(obj: dict, dim: int | None = None) -> Body:
    try:
        kind = obj["kind"]
        if kind == "interval":
            b = Interval(Q(obj["lo"]), Q(obj["hi"]))
        elif kind == "segment":
            b = Segment(obj["a"], obj["b"])
        elif kind == "polygon":
            b = Polygon(obj["vertices"])
        elif kind == "polytope":
            b = Polytope3(obj["vertices"])
        elif kind == "disk":
            b = Disk(obj["center"], Q(obj["radius_sq"]))
        elif kind == "offset":
            b = Offset(body_from_json(obj["core"], dim), Q(obj["radius"]))
        elif kind == "empty":
            if dim is None:
                raise ArrangementError("empty body needs the arrangement dimension")
            b = Empty(dim)
        else:
            raise ArrangementError(f"unknown body kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise ArrangementError(f"malformed body: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, ArrangementError):
            raise
        raise ArrangementError(str(exc)) from exc
    if dim is not None and b.dim != dim:
        raise DimensionMismatch(f"{kind} body has dimension {b.dim}, arrangement has {dim}")
    return b


@dataclass(frozen=True)
class Arrangement:
    """Bodies labelled 1..n (tuple position + 1) in R^dim."""

    dim: int
    topology: str
    bodies: tuple

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ArrangementError("dimension must be 1, 2 or 3")
        if self.topology not in (OPEN, CLOSED):
            raise ArrangementError(f"topology must be {OPEN!r} or {CLOSED!r}")
        bodies = tuple(self.bodies)
        object.__setattr__(self, "bodies", bodies)
        from .geometry import core_info

        for k, b in enumerate(bodies, start=1):
            if b.dim != self.dim:
                raise DimensionMismatch(f"body {k} has dimension {b.dim}, arrangement has {self.dim}")
            if self.topology == OPEN and b.is_polytopal and core_info(b.core).affine_dim < self.dim:
                raise ArrangementError(
                    f"body {k} is lower dimensional; open arrangements need full-dimensional bodies"
                )

    @property
    def n(self) -> int:
        return len(self.bodies)

    def body(self, label: int) -> Body:
        return self.bodies[label - 1]

    def replace(self, label: int, body: Body) -> "Arrangement":
        bs = list(self.bodies)
        bs[label - 1] = body
        return Arrangement(self.dim, self.topology, tuple(bs))

    def with_topology(self, topology: str) -> "Arrangement":
        return Arrangement(self.dim, topology, self.bodies)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "topology": self.topology,
            "bodies": [dict(label=k, **b.to_json()) for k, b in enumerate(self.bodies, start=1)],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, obj: dict) -> "Arrangement":
        try:
            dim = int(obj["dim"])
            topology = obj.get("topology", CLOSED)
            raw = list(obj["bodies"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ArrangementError(f"malformed arrangement: {exc}") from exc
        labelled = []
        for pos, item in enumerate(raw, start=1):
            label = int(item.get("label", pos))
            labelled.append((label, body_from_json(item, dim)))
        labels = sorted(lb for lb, _ in labelled)
        if labels != list(range(1, len(labelled) + 1)):
            raise ArrangementError("body labels must be exactly 1..n")
        labelled.sort(key=lambda t: t[0])
        return cls(dim, topology, tuple(b for _, b in labelled))

    @classmethod
    def loads(cls, text: str) -> "Arrangement":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArrangementError(f"invalid JSON: {exc}") from exc
        return cls.from_json(obj)


def arrangement(dim: int, topology: str, bodies: Sequence[Body]) -> Arrangement:
    return Arrangement(dim, topology, tuple(bodies))
