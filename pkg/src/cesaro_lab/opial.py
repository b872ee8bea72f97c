"""Opial moduli for the supported space models.

The moduli measure the uniform gap in the Opial inequality:

    eta(eps, R) = inf { liminf ||x_n - x|| - liminf ||x_n|| }

over weakly null sequences with limsup ||x_n|| <= R and ||x|| >= eps,
and r(c) is the classical variant normalized to liminf ||x_n|| >= 1.

Weak nullity is never detected numerically: it is guaranteed
structurally by shift families (disjointly supported, norm-bounded
translates are weakly null in lp for p > 1).  For those witnesses the
disjoint-support splitting identity

    ||u + v||**p = ||u||**p + ||v||**p

makes every liminf/limsup exactly computable past a stabilization
index.

Adopted model: for lp (p > 1) the moduli are taken to equal their
disjoint-support values, (R**p + eps**p)**(1/p) - R.  The witness
estimator certifies the upper-bound direction (attainment); the
lower-bound direction is a modelling assumption, recorded here and not
tested.  Schur spaces get a distinguished flag for eta (the constraint
set degenerates) and the conventional value 1 for r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .model import (
    CheckReport,
    DomainError,
    CesaroLabError,
    LimitEstimate,
    SpaceSpec,
    TaggedVector,
    UnsupportedSpace,
    as_exponent,
)
from .numerics import fsum_array
from .vector import SumElement, cesaro_sum_norm


class EmptyWitnessSet(CesaroLabError):
    """No witness satisfies the modulus constraints."""


class SchurFlag:
    """Marker for spaces where weakly null implies norm null.

    The eta constraint set degenerates there (every weakly null sequence
    has liminf 0), so no number is returned.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SCHUR"


SCHUR = SchurFlag()

DEFAULT_WINDOW = (100, 200)


@dataclass(frozen=True)
class ModulusQuery:
    """Inputs of a modulus evaluation: the space, the lower bound eps on
    ||x||, the upper bound R on limsup ||x_n||, and optionally c."""

    space: SpaceSpec
    eps: float
    R: float
    c: float | None = None

    def __post_init__(self) -> None:
        if not (self.eps > 0.0 and math.isfinite(self.eps)):
            raise DomainError(f"eps must be positive, got {self.eps!r}")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise DomainError(f"R must be positive, got {self.R!r}")
        if self.c is not None and not (self.c > 0.0 and math.isfinite(self.c)):
            raise DomainError(f"c must be positive, got {self.c!r}")


@dataclass(frozen=True)
class VectorShiftFamily:
    """Disjointly supported translates of a base block.

    Term n is the base shifted by start_offset + n*stride; stride at
    least the base width keeps the supports pairwise disjoint, and the
    supports eventually clear any fixed finitely supported vector.
    """

    base: TaggedVector
    stride: int
    start_offset: int = 0

    def __post_init__(self) -> None:
        if self.base.is_zero:
            raise ValueError("shift family needs a nonzero base block")
        if self.stride < self.base.width:
            raise ValueError("stride must be at least the base width")
        if self.base.min_index + self.start_offset + self.stride < 1:
            raise ValueError("first term would leave the index range")

    def term(self, n: int) -> TaggedVector:
        return self.base.shift(self.start_offset + n * self.stride)

    def stabilization_index(self, x: TaggedVector) -> int:
        """First n after which term(n) has support disjoint from x."""
        if x.is_zero:
            return 1
        gap = x.max_index - self.base.min_index - self.start_offset
        return max(1, gap // self.stride + 1)


def lp_power_sum(v: TaggedVector, p: float) -> float:
    """Sum of |coefficient|**p (exact reduction)."""
    if v.is_zero:
        return 0.0
    return fsum_array([abs(c) ** p for _, c in v.entries])


def splitting_check(x: TaggedVector, fam: VectorShiftFamily, p) -> CheckReport:
    """Verify ||x_n - x||**p = ||x_n||**p + ||x||**p past stabilization.

    Exact for disjoint supports; the report carries the stabilization
    index and the worst relative deviation over two witnesses indices.
    """
    p = as_exponent(p).p
    n0 = fam.stabilization_index(x)
    worst = 0.0
    lhs = rhs = 0.0
    for n in (n0, n0 + 1):
        term = fam.term(n)
        lhs = lp_power_sum(term.sub(x), p)
        rhs = lp_power_sum(term, p) + lp_power_sum(x, p)
        worst = max(worst, abs(lhs - rhs) / (1.0 + rhs))
    holds = worst <= 1e-14
    return CheckReport(
        check="splitting_identity",
        holds=holds,
        quantities={
            "p": p,
            "lhs_power": lhs,
            "rhs_power": rhs,
            "rel_dev": worst,
            "stabilization_index": float(n0),
        },
        mode="exact",
    )


def _lp_eta_value(p: float, eps: float, R: float) -> float:
    # (R**p + eps**p)**(1/p) - R without cancellation for eps << R
    x = (eps / R) ** p
    return R * math.expm1(math.log1p(x) / p)


def eta_closed_form(query: ModulusQuery) -> float | SchurFlag:
    """Modulus eta for the lp model: (R**p + eps**p)**(1/p) - R.

    Returns SCHUR for the Schur variants, where the weakly-null
    constraint set degenerates; no numeric convention is invented for
    eta there.
    """
    space = query.space
    if space.schur_flag:
        return SCHUR
    if space.kind != "lp":
        raise UnsupportedSpace(f"no closed form for space kind {space.kind!r}")
    return _lp_eta_value(space.p, query.eps, query.R)


def r_closed_form(space: SpaceSpec, c: float) -> float:
    """Modulus r(c) = (1 + c**p)**(1/p) - 1 for lp (p > 1); Schur spaces
    take the conventional value 1."""
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"c must be positive, got {c!r}")
    if space.schur_flag:
        return 1.0
    if space.kind != "lp":
        raise UnsupportedSpace(f"no closed form for space kind {space.kind!r}")
    return _lp_eta_value(space.p, c, 1.0)


def lp_eta_modulus(space: SpaceSpec) -> Callable[[float, float], float]:
    """Closed-form modulus of an lp space as a (eps, R) callable."""
    if space.kind != "lp" or space.p <= 1.0:
        raise UnsupportedSpace("closed-form modulus callable needs lp with p > 1")
    return lambda eps, R: _lp_eta_value(space.p, eps, R)


@dataclass(frozen=True)
class EstimateReport:
    """Empirical modulus estimate: an attained upper bound of the
    infimum over the supplied witnesses."""

    estimate: float
    per_witness: tuple[float, ...]
    exact: bool
    upper_bound: bool
    diff_limit: LimitEstimate
    norm_limit: LimitEstimate
    closed_form_gap: float | None = None
    window: tuple[int, int] | None = None


def canonical_lp_witnesses(query: ModulusQuery, grid: int):
    """Grid of disjoint-support witnesses: x = eps*e_1 against shifted
    blocks of norm L for L on a grid ending at R."""
    out = []
    for j in range(1, grid + 1):
        level = query.R * j / grid
        fam = VectorShiftFamily(
            base=TaggedVector.basis(1, level), stride=1, start_offset=1
        )
        out.append((TaggedVector.basis(1, query.eps), fam))
    return out


def estimate_eta_empirical(
    query: ModulusQuery,
    witnesses,
    window: tuple[int, int] = DEFAULT_WINDOW,
) -> EstimateReport:
    """Minimum of liminf||x_n - x|| - liminf||x_n|| over witnesses.

    lp witnesses are (TaggedVector, VectorShiftFamily) pairs and are
    evaluated exactly via stabilization.  Cesaro-sum witnesses are
    (SumElement, SlotShiftFamily) pairs; slot-shifted norms decay but
    never stabilize, so those are windowed estimates with the drift
    reported and the exact flag cleared.  Either way the result is an
    upper bound of the modulus.
    """
    space = query.space
    if isinstance(witnesses, int):
        if space.kind != "lp" or space.p <= 1.0:
            raise UnsupportedSpace("grid witnesses are generated for lp (p > 1) only")
        witnesses = canonical_lp_witnesses(query, witnesses)

    values: list[float] = []
    best = None  # (value, diff limit, norm limit, exact)

    for x, fam in witnesses:
        if isinstance(x, TaggedVector):
            if space.kind != "lp" or space.p <= 1.0:
                raise UnsupportedSpace("sequence witnesses need an lp space with p > 1")
            p = space.p
            x_norm = space.vector_norm(x)
            if x_norm < query.eps:
                continue
            base_norm = space.vector_norm(fam.base)
            if base_norm > query.R * (1.0 + 1e-12):
                continue
            n0 = fam.stabilization_index(x)
            diff_norm = lp_power_sum(fam.term(n0).sub(x), p) ** (1.0 / p)
            norm_lim = LimitEstimate("liminf", base_norm, True, stabilization_index=1)
            diff_lim = LimitEstimate("liminf", diff_norm, True, stabilization_index=n0)
            value = diff_norm - base_norm
            exact = True
        elif isinstance(x, SumElement):
            if space.kind != "cesaro_sum":
                raise UnsupportedSpace("sum witnesses need a cesaro_sum space")
            x_norm = cesaro_sum_norm(x).value
            if x_norm < query.eps:
                continue
            lo, hi = window
            norms = [cesaro_sum_norm(fam.term(k)).value for k in range(lo, hi + 1)]
            diffs = [cesaro_sum_norm(fam.term(k).sub(x)).value for k in range(lo, hi + 1)]
            if max(norms) > query.R * (1.0 + 1e-12):
                continue
            norm_lim = LimitEstimate(
                "liminf", min(norms), False, window=window, drift=max(norms) - min(norms)
            )
            diff_lim = LimitEstimate(
                "liminf", min(diffs), False, window=window, drift=max(diffs) - min(diffs)
            )
            value = diff_lim.value - norm_lim.value
            exact = False
        else:
            raise UnsupportedSpace("witness must pair a TaggedVector or SumElement with a family")

        values.append(value)
        if best is None or value < best[0]:
            best = (value, diff_lim, norm_lim, exact)

    if best is None:
        raise EmptyWitnessSet("every witness violates the modulus constraints")

    estimate, diff_lim, norm_lim, exact = best
    gap = None
    if space.kind == "lp" and space.p > 1.0:
        gap = estimate - _lp_eta_value(space.p, query.eps, query.R)
    return EstimateReport(
        estimate=estimate,
        per_witness=tuple(values),
        exact=exact,
        upper_bound=True,
        diff_limit=diff_lim,
        norm_limit=norm_lim,
        closed_form_gap=gap,
        window=None if exact else window,
    )
