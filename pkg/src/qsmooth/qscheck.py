"""Quasismoothness decision procedures with combinatorial certificates.

Two independent per-stratum tests are implemented and can be cross-run:

* the rank test, which looks for a nonempty subset gamma of the stratum
  with ``2 rk(A_{M_gamma, gamma}) > rk(A_{M_gamma, all})``;
* the polytope test, which looks for a subcollection of nonempty face
  polytopes that fits, after translation, into a subspace of dimension
  strictly below its size.

Both enumerate gamma by increasing size and then lexicographically, so
certificates are deterministic and diffable.  A disagreement between the
two is raised as an error, never resolved silently.

Strata are quantified over relevant zero patterns; on non-simplicial fans
this is a conservative superset of the per-cone strata.  Specialized
closed-form checkers for curves on surfaces and surfaces on simplicial
threefolds decide without the generic machinery, so they can serve as an
independent oracle for it (and vice versa).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from . import linsys as _linsys
from . import toric as _toric
from .errors import (
    DimensionMismatch,
    GeneratorInBasis,
    MethodDisagreement,
    NotBaseStratum,
)
from .linalg import affine_span_dim, rank_rational, vector_sub


class Method(str, Enum):
    RANK = "rank"
    POLYTOPE = "polytope"
    BOTH = "both"
    WPS = "wps"
    CURVE = "curve"
    SURFACE = "surface"


class FailureReason(str, Enum):
    ALL_FACES_EMPTY = "all_faces_empty"
    NO_DEGENERATE_SUBCOLLECTION = "no_degenerate_subcollection"


@dataclass(frozen=True)
class StratumWitness:
    """Certificate that a stratum passes: gamma with 2*rank_small > rank_big."""

    stratum: tuple[int, ...]
    gamma: tuple[int, ...]
    k: int
    rank_small: int
    rank_big: int


@dataclass(frozen=True)
class StratumFailure:
    stratum: tuple[int, ...]
    reason: FailureReason


@dataclass(frozen=True)
class QSVerdict:
    """Outcome of a quasismoothness check.

    ``witnesses`` carries one entry per base stratum for the generic
    methods; the specialized closed-form checkers leave it empty.
    ``shortcut`` records an unconditional early verdict, if any.
    """

    quasismooth: bool
    method: Method
    witnesses: tuple[StratumWitness, ...] = ()
    failure: StratumFailure | None = None
    shortcut: str | None = None


def _gamma_ranks(sys: _linsys.MonomialSystem, rows: Sequence[int], gamma: Sequence[int]):
    small = rank_rational([
        tuple(sys.exponents[i][j] for j in gamma) for i in rows
    ])
    big = rank_rational([sys.exponents[i] for i in rows])
    return small, big


def _nonempty_support_vars(sys, c: tuple[int, ...]) -> list[int]:
    return [rho for rho, rows in _linsys._face_supports_for(sys, c) if rows]


def _require_stratum(sys, c) -> tuple[int, ...]:
    cs = tuple(sorted(set(c)))
    if not _linsys.is_base_stratum(sys, cs):
        raise NotBaseStratum(f"{cs} is not a base-locus stratum")
    return cs


def check_stratum_rank(
    sys: _linsys.MonomialSystem,
    c: Iterable[int],
    restricted: bool = True,
) -> StratumWitness | StratumFailure:
    """Rank test for one stratum.

    With ``restricted=False`` the coordinate-sum slice is taken over all
    lattice points of the Newton polytope with no vanishing condition
    outside gamma (the literal reading, exposed for comparison).
    """
    cs = _require_stratum(sys, c)
    if restricted:
        candidates = _nonempty_support_vars(sys, cs)
    else:
        # literal reading: any nonempty subset of the stratum may carry a
        # nonempty lattice-point slice, with no vanishing condition outside
        candidates = list(cs)
    if restricted and not candidates:
        return StratumFailure(cs, FailureReason.ALL_FACES_EMPTY)
    some_slice_nonempty = False
    for size in range(1, len(candidates) + 1):
        for gamma in itertools.combinations(candidates, size):
            if restricted:
                rows = _linsys.m_gamma(sys, cs, gamma)
                if not rows:
                    continue
                small, big = _gamma_ranks(sys, rows, gamma)
            else:
                points = _linsys.m_gamma_unrestricted(sys, gamma)
                if not points:
                    continue
                small = rank_rational([tuple(p[j] for j in gamma) for p in points])
                big = rank_rational(points)
            some_slice_nonempty = True
            if 2 * small > big:
                return StratumWitness(cs, gamma, len(gamma), small, big)
    if not some_slice_nonempty:
        return StratumFailure(cs, FailureReason.ALL_FACES_EMPTY)
    return StratumFailure(cs, FailureReason.NO_DEGENERATE_SUBCOLLECTION)


def check_stratum_polytope(
    sys: _linsys.MonomialSystem, c: Iterable[int]
) -> StratumWitness | StratumFailure:
    """Degeneracy test for one stratum.

    A subcollection gamma of nonempty face polytopes is degenerate when the
    union of their translates through the origin spans fewer than ``|gamma|``
    dimensions.  Base points are the lexicographically smallest supporting
    rows; the span dimension does not depend on that choice.
    """
    cs = _require_stratum(sys, c)
    supports = dict(_linsys._face_supports_for(sys, cs))
    support_vars = [rho for rho in cs if supports[rho]]
    if not support_vars:
        return StratumFailure(cs, FailureReason.ALL_FACES_EMPTY)
    for size in range(1, len(support_vars) + 1):
        for gamma in itertools.combinations(support_vars, size):
            translated = []
            for rho in gamma:
                pts = [sys.exponents[i] for i in supports[rho]]
                base = min(pts)
                translated.extend(vector_sub(p, base) for p in pts)
            span = affine_span_dim(translated)
            if len(gamma) > span:
                rows = _linsys.m_gamma(sys, cs, gamma)
                small, big = _gamma_ranks(sys, rows, gamma)
                return StratumWitness(cs, gamma, len(gamma), small, big)
    return StratumFailure(cs, FailureReason.NO_DEGENERATE_SUBCOLLECTION)


def has_generator_row(sys: _linsys.MonomialSystem) -> bool:
    """True iff some monomial is a single variable (a Cox-ring generator)."""
    return any(sum(row) == 1 for row in sys.exponents)


def _check_one(sys, method: Method, c) -> StratumWitness | StratumFailure:
    if method == Method.RANK:
        return check_stratum_rank(sys, c)
    if method == Method.POLYTOPE:
        return check_stratum_polytope(sys, c)
    rank_res = check_stratum_rank(sys, c)
    poly_res = check_stratum_polytope(sys, c)
    if type(rank_res) is not type(poly_res) or (
        isinstance(rank_res, StratumWitness)
        and rank_res.gamma != poly_res.gamma
    ) or (
        isinstance(rank_res, StratumFailure)
        and rank_res.reason != poly_res.reason
    ):
        raise MethodDisagreement(c, rank_res, poly_res)
    return rank_res


def is_quasismooth(
    sys: _linsys.MonomialSystem,
    method: Method | str = Method.BOTH,
    max_workers: int = 0,
) -> QSVerdict:
    """Decide quasismoothness of the general member of the system.

    A system with empty base locus is quasismooth, as is any system whose
    basis contains a coordinate variable (decided before stratum analysis).
    Otherwise every base stratum must pass; the first failing stratum in
    the deterministic order is reported.  ``max_workers > 1`` evaluates
    strata concurrently with identical output.
    """
    method = Method(method)
    if method not in (Method.RANK, Method.POLYTOPE, Method.BOTH):
        raise ValueError(f"unsupported method {method}")
    if has_generator_row(sys):
        return QSVerdict(True, method, shortcut="generator_in_basis")
    strata = _linsys.base_locus_strata(sys)
    if not strata:
        return QSVerdict(True, method)
    check: Callable = lambda st: _check_one(sys, method, st.variables)
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(check, strata))
    else:
        results = [check(st) for st in strata]
    witnesses = []
    for res in results:
        if isinstance(res, StratumFailure):
            return QSVerdict(False, method, failure=res)
        witnesses.append(res)
    return QSVerdict(True, method, witnesses=tuple(witnesses))


def sufficient_screen(sys: _linsys.MonomialSystem, c: Iterable[int]) -> bool:
    """Fast sufficient test: more nonempty faces than the slice dimension.

    True on every base stratum implies quasismooth; the converse fails, so
    a False here decides nothing on its own.
    """
    cs = _require_stratum(sys, c)
    supports = _linsys.face_supports(sys, cs)
    k = sum(1 for rows in supports.values() if rows)
    return k > _toric.stratum_image_dim(sys.ambient, cs, sys.degree[0])


def necessary_screen(sys: _linsys.MonomialSystem, c: Iterable[int]) -> bool:
    """Fast necessary test comparing stratum dimension against the irrelevant locus.

    Requires that no basis monomial is a coordinate variable.  False on any
    base stratum implies the system is not quasismooth.
    """
    if has_generator_row(sys):
        raise GeneratorInBasis("necessary screen assumes no generator in the basis")
    cs = _require_stratum(sys, c)
    supports = _linsys.face_supports(sys, cs)
    k = sum(1 for rows in supports.values() if rows)
    dim_stratum = sys.num_vars - len(cs)
    return dim_stratum - k <= _toric.irrelevant_dim_in_stratum(sys.ambient, cs)


# ---------------------------------------------------------------------------
# closed-form checkers in low dimension


def _require_fan(sys: _linsys.MonomialSystem, rank: int, simplicial: bool) -> None:
    fan = sys.ambient.fan
    if fan is None:
        raise DimensionMismatch("closed-form checkers need a fan presentation")
    if fan.lattice_rank != rank:
        raise DimensionMismatch(
            f"expected a rank-{rank} fan, got rank {fan.lattice_rank}"
        )
    if not _toric.is_complete(fan):
        raise DimensionMismatch("fan is not complete")
    if simplicial and not _toric.is_simplicial(fan):
        raise DimensionMismatch("fan is not simplicial")


def check_curve_on_surface(sys: _linsys.MonomialSystem) -> QSVerdict:
    """Closed-form verdict for curves on a complete toric surface.

    Base-point-free systems pass.  A one-variable stratum needs exactly one
    monomial with exponent 1 in that variable; a two-variable stratum needs
    a monomial whose two exponents there sum to 1.
    """
    _require_fan(sys, rank=2, simplicial=False)
    vertex_exps = sys.vertex_exponents()
    for st in _linsys.base_locus_strata(sys):
        c = st.variables
        if len(c) == 1:
            (i,) = c
            count = sum(1 for row in vertex_exps if row[i] == 1)
            if count == 1:
                continue
            reason = (
                FailureReason.ALL_FACES_EMPTY
                if count == 0
                else FailureReason.NO_DEGENERATE_SUBCOLLECTION
            )
            return QSVerdict(False, Method.CURVE, failure=StratumFailure(c, reason))
        i, j = c
        if any(row[i] + row[j] == 1 for row in vertex_exps):
            continue
        return QSVerdict(
            False,
            Method.CURVE,
            failure=StratumFailure(c, FailureReason.ALL_FACES_EMPTY),
        )
    return QSVerdict(True, Method.CURVE)


def check_surface_on_threefold(sys: _linsys.MonomialSystem) -> QSVerdict:
    """Closed-form verdict for surfaces on a simplicial projective threefold.

    One-variable strata behave as on surfaces.  A two-variable stratum
    {i, j} passes when either both patterns (1 on one variable, 0 on the
    other) occur, or only one occurs and exactly one monomial realizes it.
    A three-variable stratum needs a monomial with exponent sum 1 there.
    """
    _require_fan(sys, rank=3, simplicial=True)
    vertex_exps = sys.vertex_exponents()
    for st in _linsys.base_locus_strata(sys):
        c = st.variables
        if len(c) == 1:
            (i,) = c
            count = sum(1 for row in vertex_exps if row[i] == 1)
            if count == 1:
                continue
            reason = (
                FailureReason.ALL_FACES_EMPTY
                if count == 0
                else FailureReason.NO_DEGENERATE_SUBCOLLECTION
            )
            return QSVerdict(False, Method.SURFACE, failure=StratumFailure(c, reason))
        if len(c) == 2:
            i, j = c
            side_i = [row for row in vertex_exps if row[i] == 1 and row[j] == 0]
            side_j = [row for row in vertex_exps if row[j] == 1 and row[i] == 0]
            if side_i and side_j:
                continue
            lone = side_i or side_j
            if len(lone) == 1:
                continue
            reason = (
                FailureReason.ALL_FACES_EMPTY
                if not lone
                else FailureReason.NO_DEGENERATE_SUBCOLLECTION
            )
            return QSVerdict(False, Method.SURFACE, failure=StratumFailure(c, reason))
        if any(sum(row[v] for v in c) == 1 for row in vertex_exps):
            continue
        return QSVerdict(
            False,
            Method.SURFACE,
            failure=StratumFailure(c, FailureReason.ALL_FACES_EMPTY),
        )
    return QSVerdict(True, Method.SURFACE)


# ---------------------------------------------------------------------------
# certificate rendering (machine-parseable key-value lines)


def certificate_lines(verdict: QSVerdict) -> list[str]:
    lines = [
        "[verdict]",
        f"status = {'quasismooth' if verdict.quasismooth else 'not_quasismooth'}",
        f"method = {verdict.method.value}",
    ]
    if verdict.shortcut:
        lines.append(f"shortcut = {verdict.shortcut}")
    if verdict.failure is not None:
        f = verdict.failure
        lines.append("[failing_stratum]")
        lines.append("vars = " + " ".join(f"x{i + 1}" for i in f.stratum))
        lines.append(f"reason = {f.reason.value}")
    for idx, w in enumerate(verdict.witnesses, start=1):
        lines.append(f"[stratum {idx}]")
        lines.append("vars = " + " ".join(f"x{i + 1}" for i in w.stratum))
        lines.append("gamma = " + " ".join(f"x{i + 1}" for i in w.gamma))
        lines.append(f"k = {w.k}")
        lines.append(f"rank_small = {w.rank_small}")
        lines.append(f"rank_big = {w.rank_big}")
    return lines
