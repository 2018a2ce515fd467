"""Exact lattice-polytope geometry.

Polytopes are stored with explicit vertex lists, facet inequalities
``<normal, x> >= offset`` and, when the hull is not full-dimensional,
affine-hull equations.  Facet enumeration is an exhaustive search over
vertex subsets, which is exact and fast at the scale this package targets
(ambient dimension <= 8, a few dozen points).

Lower-dimensional polytopes are kept in their ambient coordinates rather
than being projected; the affine hull is recorded as equations.

File format: one vertex per line as space-separated integers (rational
entries written ``p/q``); ``#`` starts a comment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    EmptyInput,
    NotFullDim,
    NotInteriorOrigin,
    ParseError,
)
from .linalg import (
    dot,
    gcd_vector,
    primitive,
    rank_rational,
    rational_kernel_basis,
    vector_sub,
)

Coord = Union[int, Fraction]
Point = tuple[Coord, ...]


@dataclass(frozen=True)
class Facet:
    """Supporting inequality <normal, x> >= offset with gcd-reduced normal."""

    normal: tuple[int, ...]
    offset: Coord


@dataclass(frozen=True)
class Equation:
    """Affine-hull equation <normal, x> == value."""

    normal: tuple[int, ...]
    value: Coord


@dataclass(frozen=True)
class LatticePolytope:
    dim_ambient: int
    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]
    equations: tuple[Equation, ...]

    @property
    def is_full_dim(self) -> bool:
        return self.dim == self.dim_ambient

    def contains(self, point: Sequence[Coord], strict: bool = False) -> bool:
        """Membership test; ``strict`` demands strict facet inequalities."""
        if len(point) != self.dim_ambient:
            raise DimensionMismatch("point dimension does not match polytope")
        for eq in self.equations:
            if dot(eq.normal, point) != eq.value:
                return False
        for f in self.facets:
            val = dot(f.normal, point)
            if val < f.offset or (strict and val == f.offset):
                return False
        return True


class RationalPolytope(LatticePolytope):
    """Polytope with exact rational vertices (same layout as LatticePolytope)."""


def _dedupe(points: Sequence[Sequence[Coord]]) -> list[Point]:
    seen = set()
    out = []
    for p in points:
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _scale_to_int(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    """Clear denominators; returns integer points and the common scale."""
    lcm = 1
    for p in points:
        for x in p:
            if isinstance(x, Fraction):
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    scaled = [tuple(int(x * lcm) for x in p) for p in points]
    return scaled, lcm


def _drop_midpoints(pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Discard points that are exact averages of two others (never vertices)."""
    index = set(pts)
    core = []
    for p in pts:
        doubled = tuple(2 * x for x in p)
        is_mid = False
        for a in pts:
            if a == p:
                continue
            b = tuple(d - x for d, x in zip(doubled, a))
            if b != a and b in index and b != p:
                is_mid = True
                break
        if not is_mid:
            core.append(p)
    return core


def _int_hull_data(pts: list[tuple[int, ...]]):
    """Facets, equations and vertex flags for the hull of integer points."""
    n = len(pts[0])
    base = pts[0]
    diffs = [vector_sub(p, base) for p in pts[1:]]
    dim = rank_rational(diffs) if diffs else 0

    eq_normals = rational_kernel_basis(diffs, width=n) if dim < n else []
    equations = [Equation(tuple(nv), dot(nv, base)) for nv in eq_normals]

    facets: list[Facet] = []
    seen_supports: set[frozenset] = set()
    eq_rank = rank_rational(eq_normals) if eq_normals else 0
    core = _drop_midpoints(pts)
    if dim >= 1:
        for subset in itertools.combinations(range(len(core)), dim):
            s0 = core[subset[0]]
            sub_diffs = [vector_sub(core[i], s0) for i in subset[1:]]
            if sub_diffs and rank_rational(sub_diffs) != dim - 1:
                continue
            kernel = rational_kernel_basis(sub_diffs, width=n)
            normal = None
            for cand in kernel:
                if rank_rational(eq_normals + [cand]) > eq_rank:
                    normal = cand
                    break
            if normal is None:
                continue
            pivot = dot(normal, s0)
            values = [dot(normal, p) for p in core]
            if all(v >= pivot for v in values):
                pass
            elif all(v <= pivot for v in values):
                normal = tuple(-x for x in normal)
                pivot = -pivot
                values = [-v for v in values]
            else:
                continue
            support = frozenset(i for i, v in enumerate(values) if v == pivot)
            if support in seen_supports:
                continue
            seen_supports.add(support)
            g = gcd_vector(normal)
            if g > 1:
                normal = tuple(x // g for x in normal)
                pivot = pivot // g
            facets.append(Facet(normal, pivot))

    vertex_flags = []
    for p in pts:
        tight = [f.normal for f in facets if dot(f.normal, p) == f.offset]
        tight += [eq.normal for eq in equations]
        vertex_flags.append(bool(tight) and rank_rational(tight) == n)
    return dim, facets, equations, vertex_flags


def hull(points: Sequence[Sequence[Coord]]) -> LatticePolytope:
    """Convex hull of integer points with exact facet data.

    The returned vertex list is minimal: no vertex lies in the hull of the
    others.  Works in any ambient dimension; lower-dimensional hulls carry
    their affine-hull equations.
    """
    pts = _dedupe(points)
    if not pts:
        raise EmptyInput("hull of an empty point set")
    widths = {len(p) for p in pts}
    if len(widths) != 1:
        raise DimensionMismatch("points of unequal dimension")
    if any(isinstance(x, Fraction) and x.denominator != 1 for p in pts for x in p):
        raise ValueError("hull expects integer points; use rational_hull")
    pts = [tuple(int(x) for x in p) for p in pts]
    n = len(pts[0])
    dim, facets, equations, flags = _int_hull_data(pts)
    vertices = tuple(p for p, keep in zip(pts, flags) if keep)
    return LatticePolytope(n, dim, vertices, tuple(facets), tuple(equations))


def rational_hull(points: Sequence[Sequence[Coord]]) -> RationalPolytope:
    """Convex hull of rational points (facet offsets become Fractions)."""
    pts = _dedupe([tuple(Fraction(x) for x in p) for p in points])
    if not pts:
        raise EmptyInput("hull of an empty point set")
    widths = {len(p) for p in pts}
    if len(widths) != 1:
        raise DimensionMismatch("points of unequal dimension")
    n = len(pts[0])
    scaled, scale = _scale_to_int(pts)
    dim, facets, equations, flags = _int_hull_data(scaled)
    facets = tuple(Facet(f.normal, Fraction(f.offset, scale)) for f in facets)
    equations = tuple(Equation(e.normal, Fraction(e.value, scale)) for e in equations)
    vertices = tuple(p for p, keep in zip(pts, flags) if keep)
    return RationalPolytope(n, dim, vertices, facets, equations)


def _bounding_box(p: LatticePolytope) -> list[range]:
    ranges = []
    for j in range(p.dim_ambient):
        coords = [Fraction(v[j]) for v in p.vertices]
        ranges.append(range(ceil(min(coords)), floor(max(coords)) + 1))
    return ranges


def lattice_points(p: LatticePolytope) -> list[tuple[int, ...]]:
    """All integer points of a (lattice or rational) bounded polytope.

    Found by scanning the bounding box of the vertices; order is
    lexicographic, so output is deterministic.
    """
    out = []
    for cand in itertools.product(*_bounding_box(p)):
        if p.contains(cand):
            out.append(cand)
    return out


def interior_lattice_points(p: LatticePolytope) -> list[tuple[int, ...]]:
    """Integer points strictly inside a full-dimensional polytope."""
    if not p.is_full_dim:
        raise NotFullDim("interior of a lower-dimensional polytope is empty")
    out = []
    for cand in itertools.product(*_bounding_box(p)):
        if p.contains(cand, strict=True):
            out.append(cand)
    return out


def is_canonical(p: LatticePolytope) -> bool:
    """True iff the origin is the unique interior lattice point."""
    if not p.is_full_dim:
        raise NotFullDim("canonicality needs a full-dimensional polytope")
    if any(isinstance(x, Fraction) and x.denominator != 1 for v in p.vertices for x in v):
        raise ValueError("canonicality is defined for lattice polytopes")
    origin = tuple(0 for _ in range(p.dim_ambient))
    return interior_lattice_points(p) == [origin]


def polar_dual(p: LatticePolytope) -> RationalPolytope:
    """Polar {n : <m, n> >= -1 for all m in P}; origin must be interior."""
    if not p.is_full_dim:
        raise NotFullDim("polar dual needs a full-dimensional polytope")
    if any(f.offset >= 0 for f in p.facets):
        raise NotInteriorOrigin("origin is not strictly interior")
    verts = [
        tuple(Fraction(x, 1) / (-f.offset) for x in f.normal) for f in p.facets
    ]
    return rational_hull(verts)


def as_lattice(p: RationalPolytope) -> LatticePolytope:
    """Reinterpret a rational polytope with integral vertices as a lattice one."""
    if any(Fraction(x).denominator != 1 for v in p.vertices for x in v):
        raise ValueError("polytope has non-integral vertices")
    vertices = tuple(tuple(int(x) for x in v) for v in p.vertices)
    facets = tuple(
        Facet(f.normal, int(f.offset)) if Fraction(f.offset).denominator == 1 else f
        for f in p.facets
    )
    equations = tuple(
        Equation(e.normal, int(e.value)) if Fraction(e.value).denominator == 1 else e
        for e in p.equations
    )
    return LatticePolytope(p.dim_ambient, p.dim, vertices, facets, equations)


def has_integral_vertices(p: LatticePolytope) -> bool:
    return all(Fraction(x).denominator == 1 for v in p.vertices for x in v)


def normal_fan(p: LatticePolytope):
    """Complete fan with rays the primitive inner facet normals.

    Maximal cones are indexed by vertices: the cone of a vertex is spanned
    by the normals of the facets through it.
    """
    from .toric import Fan  # local import: toric builds on polytope

    if not p.is_full_dim:
        raise NotFullDim("normal fan needs a full-dimensional polytope")
    rays = [primitive(f.normal) for f in p.facets]
    cones = []
    for v in p.vertices:
        tight = frozenset(
            i for i, f in enumerate(p.facets) if dot(f.normal, v) == f.offset
        )
        cones.append(tight)
    return Fan(lattice_rank=p.dim_ambient, rays=tuple(rays), max_cones=tuple(cones))


# ---------------------------------------------------------------------------
# text format


def _parse_entry(token: str, path: str, line_no: int) -> Coord:
    try:
        if "/" in token:
            num, den = token.split("/")
            return Fraction(int(num), int(den))
        return int(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate {token!r}", path, line_no) from exc


def parse_polytope_text(text: str, path: str = "<string>") -> LatticePolytope:
    points: list[Point] = []
    rational = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entries = tuple(_parse_entry(tok, path, line_no) for tok in line.split())
        if any(isinstance(x, Fraction) for x in entries):
            rational = True
        points.append(entries)
    if not points:
        raise ParseError("no vertices found", path)
    widths = {len(p) for p in points}
    if len(widths) != 1:
        raise ParseError("vertex lines of unequal length", path)
    return rational_hull(points) if rational else hull(points)


def load_polytope(path: str) -> LatticePolytope:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polytope_text(fh.read(), path)


def _format_coord(x: Coord) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def format_polytope(p: LatticePolytope) -> str:
    return "\n".join(" ".join(_format_coord(x) for x in v) for v in p.vertices) + "\n"
