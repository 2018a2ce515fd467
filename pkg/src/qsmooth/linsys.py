"""Monomial linear systems and their base-locus combinatorics.

A system is an ambient plus a matrix of nonnegative exponents, one row per
monomial.  All stratum data (hitting sets, face supports, coordinate-sum
slices) is read off the rows that are vertices of the Newton polytope;
non-vertex rows change neither the base locus nor any downstream verdict,
and computing supports on vertex rows keeps the full matrix and its
vertex-row submatrix literally interchangeable.

Monomial file format: one monomial per line, either ``r`` space-separated
nonnegative integers or a symbolic product like ``x1^3*x2`` (variables
``x<k>`` or ``y<k>``, 1-based; the letter is cosmetic and both address the
k-th variable).  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import polytope as _poly
from . import toric as _toric
from .errors import (
    DimensionMismatch,
    DuplicateMonomial,
    EmptyGamma,
    EmptyInput,
    NotBaseStratum,
    NotHomogeneous,
    ParseError,
)
from .linalg import vector_sub

Row = tuple[int, ...]


@dataclass(frozen=True)
class MonomialSystem:
    """Immutable monomial linear system over a toric ambient."""

    ambient: _toric.ToricAmbient
    exponents: tuple[Row, ...]
    vertex_rows: tuple[int, ...]

    @property
    def num_vars(self) -> int:
        return self.ambient.num_vars

    @property
    def num_monomials(self) -> int:
        return len(self.exponents)

    @property
    def degree(self):
        return self.ambient.grading.degree_of(self.exponents[0])

    def vertex_exponents(self) -> list[Row]:
        return [self.exponents[i] for i in self.vertex_rows]


def monomial_system(
    ambient: _toric.ToricAmbient, rows: Sequence[Sequence[int]]
) -> MonomialSystem:
    """Validated constructor; computes the Newton-polytope vertex rows once."""
    exps = tuple(tuple(int(x) for x in r) for r in rows)
    if not exps:
        raise EmptyInput("a monomial system needs at least one monomial")
    for r in exps:
        if len(r) != ambient.num_vars:
            raise DimensionMismatch(
                f"monomial has {len(r)} exponents, ambient has {ambient.num_vars} variables"
            )
        if any(x < 0 for x in r):
            raise ValueError(f"negative exponent in {r}")
    seen: dict[Row, int] = {}
    for i, r in enumerate(exps):
        if r in seen:
            raise DuplicateMonomial(
                f"monomials {seen[r] + 1} and {i + 1} are identical"
            )
        seen[r] = i
    base = exps[0]
    grading = ambient.grading
    for i, other in enumerate(exps[1:], start=1):
        diff = vector_sub(other, base)
        free = tuple(sum(a * b for a, b in zip(row, diff)) for row in grading.free_part.entries)
        tors = tuple(sum(a * b for a, b in zip(w, diff)) % q for q, w in grading.torsion)
        if any(free) or any(tors):
            raise NotHomogeneous(0, i, free + tors)
    hull = _poly.hull(exps)
    vertex_set = set(hull.vertices)
    vertex_rows = tuple(i for i, r in enumerate(exps) if r in vertex_set)
    return MonomialSystem(ambient=ambient, exponents=exps, vertex_rows=vertex_rows)


def newton_vertices(sys: MonomialSystem) -> tuple[int, ...]:
    """Indices of the rows that are vertices of the Newton polytope."""
    return sys.vertex_rows


def newton_polytope(sys: MonomialSystem) -> _poly.LatticePolytope:
    return _poly.hull(sys.exponents)


@dataclass(frozen=True)
class BaseStratum:
    """A relevant zero pattern contained in the base locus.

    ``face_supports`` maps each variable of the stratum to the vertex rows
    whose exponent is 1 there and 0 on the rest of the stratum; ``k`` counts
    the variables with nonempty support.
    """

    variables: tuple[int, ...]
    face_supports: tuple[tuple[int, tuple[int, ...]], ...]
    k: int

    def support(self, var: int) -> tuple[int, ...]:
        for v, rows in self.face_supports:
            if v == var:
                return rows
        raise KeyError(var)

    def supports(self) -> Mapping[int, tuple[int, ...]]:
        return dict(self.face_supports)


def _hits(row: Row, c: Iterable[int]) -> bool:
    return any(row[j] > 0 for j in c)


def _face_supports_for(sys: MonomialSystem, c: tuple[int, ...]):
    supports = []
    for rho in c:
        rows = tuple(
            i
            for i in sys.vertex_rows
            if sys.exponents[i][rho] == 1
            and all(sys.exponents[i][g] == 0 for g in c if g != rho)
        )
        supports.append((rho, rows))
    return tuple(supports)


def base_locus_strata(sys: MonomialSystem) -> list[BaseStratum]:
    """All relevant zero patterns on which every vertex monomial vanishes.

    Ordered by size, then lexicographically; the list includes every
    relevant subset and superset of a hitting pattern that itself hits,
    since non-maximal strata inside the base locus must be checked too.
    """
    vertex_exps = sys.vertex_exponents()
    strata = []
    for c in _toric.relevant_subsets(sys.ambient):
        if not c:
            continue
        if all(_hits(row, c) for row in vertex_exps):
            supports = _face_supports_for(sys, c)
            k = sum(1 for _, rows in supports if rows)
            strata.append(BaseStratum(variables=c, face_supports=supports, k=k))
    return strata


def is_base_stratum(sys: MonomialSystem, c: Iterable[int]) -> bool:
    cs = tuple(sorted(set(c)))
    if not cs or not sys.ambient.is_relevant(cs):
        return False
    return all(_hits(row, cs) for row in sys.vertex_exponents())


def face_supports(sys: MonomialSystem, c: Iterable[int]) -> dict[int, tuple[int, ...]]:
    """Vertex rows supporting each face polytope of a base stratum.

    The face polytope at rho is the hull of these rows shifted by -e_rho;
    it is a face of the Newton polytope, so vertex rows suffice.
    """
    cs = tuple(sorted(set(c)))
    if not is_base_stratum(sys, cs):
        raise NotBaseStratum(f"{cs} is not a base-locus stratum")
    return dict(_face_supports_for(sys, cs))


def m_gamma(
    sys: MonomialSystem, c: Iterable[int], gamma: Iterable[int]
) -> tuple[int, ...]:
    """Vertex rows with coordinate sum 1 on gamma, vanishing on C minus gamma.

    Equals the disjoint union of the face supports over gamma.
    """
    cs = tuple(sorted(set(c)))
    gs = tuple(sorted(set(gamma)))
    if not gs:
        raise EmptyGamma("gamma must be nonempty")
    if not set(gs) <= set(cs):
        raise ValueError("gamma must be a subset of the stratum")
    if not is_base_stratum(sys, cs):
        raise NotBaseStratum(f"{cs} is not a base-locus stratum")
    rest = [j for j in cs if j not in gs]
    return tuple(
        i
        for i in sys.vertex_rows
        if sum(sys.exponents[i][j] for j in gs) == 1
        and all(sys.exponents[i][j] == 0 for j in rest)
    )


def m_gamma_unrestricted(sys: MonomialSystem, gamma: Iterable[int]) -> list[Row]:
    """Literal reading: all Newton-polytope lattice points with gamma-sum 1.

    No vanishing condition outside gamma is imposed and interior lattice
    points count; exposed for comparing the two readings.  Enumerates the
    lattice points of the Newton polytope, so keep inputs small.
    """
    gs = tuple(sorted(set(gamma)))
    if not gs:
        raise EmptyGamma("gamma must be nonempty")
    delta = newton_polytope(sys)
    return [p for p in _poly.lattice_points(delta) if sum(p[j] for j in gs) == 1]


# ---------------------------------------------------------------------------
# text format

_SYMBOLIC = re.compile(r"^[xy]\d+(\^\d+)?(\*[xy]\d+(\^\d+)?)*$")
_FACTOR = re.compile(r"([xy])(\d+)(?:\^(\d+))?")


def _parse_symbolic(line: str, num_vars: int, path: str, line_no: int) -> Row:
    if not _SYMBOLIC.match(line):
        raise ParseError(f"bad monomial {line!r}", path, line_no)
    exps = [0] * num_vars
    for _, idx_str, exp_str in _FACTOR.findall(line):
        idx = int(idx_str)
        if idx < 1 or idx > num_vars:
            raise ParseError(
                f"variable index {idx} out of range 1..{num_vars}", path, line_no
            )
        exps[idx - 1] += int(exp_str) if exp_str else 1
    return tuple(exps)


def parse_monomials_text(
    text: str, num_vars: int, path: str = "<string>"
) -> list[Row]:
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line[0] in "xy":
            rows.append(_parse_symbolic(line, num_vars, path, line_no))
            continue
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise ParseError(f"bad exponent line {line!r}", path, line_no) from exc
        if len(row) != num_vars:
            raise ParseError(
                f"expected {num_vars} exponents, got {len(row)}", path, line_no
            )
        if any(x < 0 for x in row):
            raise ParseError("negative exponent", path, line_no)
        rows.append(row)
    if not rows:
        raise ParseError("no monomials found", path)
    return rows


def load_system(ambient_path: str, monomials_path: str) -> MonomialSystem:
    ambient = _toric.load_ambient(ambient_path)
    with open(monomials_path, "r", encoding="utf-8") as fh:
        rows = parse_monomials_text(fh.read(), ambient.num_vars, monomials_path)
    return monomial_system(ambient, rows)


def format_monomials(rows: Sequence[Row]) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in rows) + "\n"
