"""Shared data model: partitions, step functions, finitely supported
vectors, space descriptions, and certified numeric results.

Everything is an immutable value and every operation is pure, so the
types are safe to share across threads without coordination.  Sequence
indices start at 1 throughout.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .numerics import RunningSum, fsum_array

_EPS = 2.220446049250313e-16


class CesaroLabError(Exception):
    """Base class for all workbench errors."""


class UnsupportedSpace(CesaroLabError):
    """The space description has no norm rule for the given object."""


class SpaceMismatch(CesaroLabError):
    """Operands live in incompatible spaces or modes."""


class InvalidExponent(CesaroLabError):
    """Exponent outside the admissible range for the operation."""


class InvalidTolerance(CesaroLabError):
    """Nonpositive or otherwise unusable tolerance."""


class DomainError(CesaroLabError):
    """Parameter outside its mathematical domain (e.g. eps <= 0)."""


class SchemaError(CesaroLabError):
    """Malformed serialized input."""


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Exponent:
    """An exponent p in [1, infinity) with its conjugate available as q."""

    p: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if not math.isfinite(p) or p < 1.0:
            raise InvalidExponent(f"exponent must satisfy 1 <= p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        """Conjugate exponent with 1/p + 1/q = 1; infinite at p = 1."""
        if self.p == 1.0:
            return math.inf
        return self.p / (self.p - 1.0)

    @property
    def is_one(self) -> bool:
        return self.p == 1.0


def as_exponent(p) -> Exponent:
    if isinstance(p, Exponent):
        return p
    return Exponent(float(p))


# ---------------------------------------------------------------------------
# finitely supported vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaggedVector:
    """Finitely supported sequence element as (index, coefficient) pairs.

    Indices are strictly increasing positive integers and no zero
    coefficient is stored; the empty tuple is the zero vector.
    """

    entries: tuple[tuple[int, float], ...] = ()

    def __post_init__(self) -> None:
        prev = 0
        clean = []
        for idx, coeff in self.entries:
            if not isinstance(idx, int) or isinstance(idx, bool):
                raise ValueError(f"index must be an int, got {idx!r}")
            if idx <= prev:
                raise ValueError("indices must be strictly increasing and >= 1")
            c = float(coeff)
            if not math.isfinite(c):
                raise ValueError(f"coefficient at index {idx} is not finite")
            if c == 0.0:
                raise ValueError(f"zero coefficient stored at index {idx}")
            clean.append((idx, c))
            prev = idx
        object.__setattr__(self, "entries", tuple(clean))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "TaggedVector":
        return cls(())

    @classmethod
    def basis(cls, index: int, coeff: float = 1.0) -> "TaggedVector":
        if coeff == 0.0:
            return cls(())
        return cls(((index, float(coeff)),))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "TaggedVector":
        """Build from unsorted pairs; duplicate indices are summed."""
        acc: dict[int, float] = {}
        for idx, coeff in pairs:
            acc[idx] = acc.get(idx, 0.0) + float(coeff)
        entries = tuple((i, c) for i, c in sorted(acc.items()) if c != 0.0)
        return cls(entries)

    @classmethod
    def from_dense(cls, coeffs: Sequence[float], start: int = 1) -> "TaggedVector":
        return cls.from_pairs((start + k, c) for k, c in enumerate(coeffs))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def min_index(self) -> int:
        if self.is_zero:
            raise ValueError("zero vector has no support")
        return self.entries[0][0]

    @property
    def max_index(self) -> int:
        if self.is_zero:
            raise ValueError("zero vector has no support")
        return self.entries[-1][0]

    @property
    def width(self) -> int:
        """Span of the support, max_index - min_index + 1 (0 for zero)."""
        if self.is_zero:
            return 0
        return self.max_index - self.min_index + 1

    def coefficient(self, index: int) -> float:
        pos = bisect.bisect_left(self.support, index)
        if pos < len(self.entries) and self.entries[pos][0] == index:
            return self.entries[pos][1]
        return 0.0

    # -- algebra (exact on stored floats) -----------------------------------

    def shift(self, k: int) -> "TaggedVector":
        if self.is_zero:
            return self
        if self.min_index + k < 1:
            raise ValueError("shift would push indices below 1")
        return TaggedVector(tuple((i + k, c) for i, c in self.entries))

    def scale(self, lam: float) -> "TaggedVector":
        lam = float(lam)
        if lam == 0.0:
            return TaggedVector(())
        return TaggedVector(tuple((i, c * lam) for i, c in self.entries))

    def add(self, other: "TaggedVector") -> "TaggedVector":
        merged: list[tuple[int, float]] = []
        a, b = self.entries, other.entries
        i = j = 0
        while i < len(a) and j < len(b):
            if a[i][0] < b[j][0]:
                merged.append(a[i]); i += 1
            elif a[i][0] > b[j][0]:
                merged.append(b[j]); j += 1
            else:
                s = a[i][1] + b[j][1]
                if s != 0.0:
                    merged.append((a[i][0], s))
                i += 1; j += 1
        merged.extend(a[i:])
        merged.extend(b[j:])
        return TaggedVector(tuple(merged))

    def sub(self, other: "TaggedVector") -> "TaggedVector":
        return self.add(other.scale(-1.0))

    def restrict(self, max_index: int) -> "TaggedVector":
        """Entries with index <= max_index (coefficients bit-preserved)."""
        return TaggedVector(tuple((i, c) for i, c in self.entries if i <= max_index))

    def disjoint_from(self, other: "TaggedVector") -> bool:
        return not set(self.support) & set(other.support)


def abs_prefix_sums(v: TaggedVector) -> tuple[tuple[int, float], ...]:
    """Running sums of |coefficients| at each support index.

    The shared primitive behind the sequence norm and the embedding
    block norms: both consume exactly these prefix values, which is why
    the two routes agree at rounding level.
    """
    acc = RunningSum()
    return tuple((i, acc.add(abs(c))) for i, c in v.entries)


# ---------------------------------------------------------------------------
# space descriptions
# ---------------------------------------------------------------------------

LP = "lp"
FINITE_L1 = "finite_l1"
C_SPACE = "c"
CESARO_SUM = "cesaro_sum"


@dataclass(frozen=True)
class SpaceSpec:
    """Description of the ambient sequence-space model.

    Variants: lp(p) for 1 <= p < inf, finite_l1(n), the space c of
    convergent sequences, and a Cesaro sum of component spaces.
    """

    kind: str
    p: float | None = None
    n: int | None = None
    components: tuple["SpaceSpec", ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == LP:
            if self.p is None or not (math.isfinite(self.p) and self.p >= 1.0):
                raise UnsupportedSpace("lp space requires 1 <= p < inf")
            object.__setattr__(self, "p", float(self.p))
        elif self.kind == FINITE_L1:
            if self.n is None or self.n < 1:
                raise UnsupportedSpace("finite_l1 requires dimension n >= 1")
        elif self.kind == C_SPACE:
            pass
        elif self.kind == CESARO_SUM:
            if self.p is None or not (math.isfinite(self.p) and self.p > 1.0):
                raise UnsupportedSpace("cesaro_sum requires p > 1")
            object.__setattr__(self, "p", float(self.p))
        else:
            raise UnsupportedSpace(f"unknown space kind {self.kind!r}")

    @classmethod
    def lp(cls, p: float) -> "SpaceSpec":
        return cls(LP, p=float(p))

    @classmethod
    def finite_l1(cls, n: int) -> "SpaceSpec":
        return cls(FINITE_L1, n=int(n))

    @classmethod
    def c_space(cls) -> "SpaceSpec":
        return cls(C_SPACE)

    @classmethod
    def cesaro_sum(cls, p: float, components: Sequence["SpaceSpec"] = ()) -> "SpaceSpec":
        return cls(CESARO_SUM, p=float(p), components=tuple(components))

    @property
    def schur_flag(self) -> bool:
        """True exactly for the finite-dimensional and l1 variants, where
        weak and norm sequential convergence coincide."""
        return self.kind == FINITE_L1 or (self.kind == LP and self.p == 1.0)

    def vector_norm(self, v: TaggedVector) -> float:
        """Norm of a finitely supported vector in this space (exact
        closed-form sum)."""
        if self.kind == LP:
            if v.is_zero:
                return 0.0
            if self.p == 1.0:
                return abs_prefix_sums(v)[-1][1]
            return fsum_array([abs(c) ** self.p for _, c in v.entries]) ** (1.0 / self.p)
        if self.kind == FINITE_L1:
            if v.is_zero:
                return 0.0
            if v.max_index > self.n:
                raise SpaceMismatch(
                    f"support index {v.max_index} exceeds finite_l1 dimension {self.n}"
                )
            return abs_prefix_sums(v)[-1][1]
        raise UnsupportedSpace(f"no vector norm rule for space kind {self.kind!r}")

    def vector_norm_power(self, v: TaggedVector, p: float | None = None) -> float:
        """Sum of |coefficient|**p (the p-th power of the lp norm)."""
        if self.kind not in (LP, FINITE_L1):
            raise UnsupportedSpace(f"no power-sum rule for space kind {self.kind!r}")
        exponent = self.p if (p is None and self.kind == LP) else (p if p is not None else 1.0)
        if v.is_zero:
            return 0.0
        return fsum_array([abs(c) ** exponent for _, c in v.entries])


# ---------------------------------------------------------------------------
# elements of c (used by the sharpness check only)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CElement:
    """Convergent sequence with finitely many deviations from its limit.

    The value at index i is ``tail_limit + adjustments[i]`` (adjustment
    zero off the support), so the sup-norm is attained either on the
    support or in the constant tail.
    """

    adjustments: TaggedVector = TaggedVector()
    tail_limit: float = 0.0

    def sup_norm(self) -> float:
        peak = abs(self.tail_limit)
        for _, c in self.adjustments.entries:
            peak = max(peak, abs(self.tail_limit + c))
        return peak

    def scale(self, lam: float) -> "CElement":
        return CElement(self.adjustments.scale(lam), self.tail_limit * lam)

    def add(self, other: "CElement") -> "CElement":
        return CElement(
            self.adjustments.add(other.adjustments),
            self.tail_limit + other.tail_limit,
        )

    def sub(self, other: "CElement") -> "CElement":
        return self.add(other.scale(-1.0))


# ---------------------------------------------------------------------------
# partitions and step functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Strictly increasing breakpoints 0 = t_0 < t_1 < ... < t_K = 1."""

    breakpoints: tuple[float, ...]

    def __post_init__(self) -> None:
        bps = tuple(float(t) for t in self.breakpoints)
        if len(bps) < 2:
            raise ValueError("partition needs at least breakpoints 0 and 1")
        if bps[0] != 0.0 or bps[-1] != 1.0:
            raise ValueError("partition must start at exactly 0 and end at exactly 1")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)

    @classmethod
    def unit(cls) -> "Partition":
        return cls((0.0, 1.0))

    @classmethod
    def uniform(cls, cells: int) -> "Partition":
        if cells < 1:
            raise ValueError("need at least one cell")
        return cls(tuple(k / cells for k in range(cells + 1)))

    @property
    def cell_count(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def cells(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.breakpoints, self.breakpoints[1:]))

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in self.cells)

    def merge(self, other: "Partition") -> "Partition":
        return Partition(tuple(sorted(set(self.breakpoints) | set(other.breakpoints))))

    def refine_uniform(self, m: int) -> "Partition":
        """Split each cell into m equal pieces."""
        if m < 1:
            raise ValueError("m must be >= 1")
        pts = [0.0]
        for a, b in self.cells:
            for j in range(1, m):
                pts.append(a + (b - a) * j / m)
            pts.append(b)
        return Partition(tuple(pts))

    def cell_of(self, t: float) -> int:
        """Index of the cell (t_k, t_{k+1}] containing t in (0, 1]."""
        if not 0.0 < t <= 1.0:
            raise ValueError("t must lie in (0, 1]")
        return bisect.bisect_left(self.breakpoints, t) - 1


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on a partition of [0, 1].

    ``values[k]`` is the value on the half-open cell (t_k, t_{k+1}];
    scalar mode stores floats, vector mode stores TaggedVectors that all
    live in the single attached SpaceSpec.
    """

    partition: Partition
    values: tuple
    space: SpaceSpec | None = None

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        if len(vals) != self.partition.cell_count:
            raise ValueError("one value per cell required")
        if self.space is None:
            vals = tuple(float(v) for v in vals)
            for v in vals:
                if not math.isfinite(v):
                    raise ValueError("cell values must be finite")
        else:
            for v in vals:
                if not isinstance(v, TaggedVector):
                    raise SpaceMismatch("vector mode requires TaggedVector cell values")
        object.__setattr__(self, "values", vals)

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, space: SpaceSpec | None = None) -> "StepFunction":
        return cls(Partition.unit(), (value,), space)

    @classmethod
    def scalar(cls, breakpoints: Sequence[float], values: Sequence[float]) -> "StepFunction":
        return cls(Partition(tuple(breakpoints)), tuple(values))

    @classmethod
    def vector(
        cls,
        breakpoints: Sequence[float],
        values: Sequence[TaggedVector],
        space: SpaceSpec,
    ) -> "StepFunction":
        return cls(Partition(tuple(breakpoints)), tuple(values), space)

    @classmethod
    def indicator(cls, a: float, b: float, value: float = 1.0) -> "StepFunction":
        """Scalar step equal to ``value`` on (a, b] and 0 elsewhere."""
        if not 0.0 <= a < b <= 1.0:
            raise ValueError("need 0 <= a < b <= 1")
        pts = sorted({0.0, a, b, 1.0})
        part = Partition(tuple(pts))
        vals = tuple(value if (lo >= a and hi <= b) else 0.0 for lo, hi in part.cells)
        return cls(part, vals)

    # -- structure ---------------------------------------------------------

    @property
    def is_scalar(self) -> bool:
        return self.space is None

    def value_at(self, t: float):
        return self.values[self.partition.cell_of(t)]

    def abs(self) -> "StepFunction":
        if not self.is_scalar:
            raise SpaceMismatch("abs is defined for scalar step functions")
        return StepFunction(self.partition, tuple(abs(v) for v in self.values))

    def is_zero(self) -> bool:
        if self.is_scalar:
            return all(v == 0.0 for v in self.values)
        return all(v.is_zero for v in self.values)

    def max_support_index(self) -> int:
        """Largest sequence index used by any cell (0 if identically zero)."""
        if self.is_scalar:
            raise SpaceMismatch("support index applies to vector mode")
        return max((v.max_index for v in self.values if not v.is_zero), default=0)

    def on_partition(self, refined: Partition) -> "StepFunction":
        """Re-express on a refinement (values repeated per sub-cell)."""
        own = set(self.partition.breakpoints)
        if not own <= set(refined.breakpoints):
            raise ValueError("target partition must refine the current one")
        vals = tuple(
            self.values[self.partition.cell_of(0.5 * (a + b))] for a, b in refined.cells
        )
        return StepFunction(refined, vals, self.space)


def common_refinement(f: StepFunction, g: StepFunction) -> tuple[StepFunction, StepFunction]:
    part = f.partition.merge(g.partition)
    return f.on_partition(part), g.on_partition(part)


def scale(f: StepFunction, lam: float) -> StepFunction:
    """Pointwise scaling; exact, partition preserved."""
    lam = float(lam)
    if f.is_scalar:
        return StepFunction(f.partition, tuple(v * lam for v in f.values))
    return StepFunction(f.partition, tuple(v.scale(lam) for v in f.values), f.space)


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise sum on the common refinement; exact."""
    if f.is_scalar != g.is_scalar:
        raise SpaceMismatch("cannot add scalar and vector step functions")
    if not f.is_scalar and f.space != g.space:
        raise SpaceMismatch("vector step functions live in different spaces")
    fr, gr = common_refinement(f, g)
    if f.is_scalar:
        vals = tuple(a + b for a, b in zip(fr.values, gr.values))
        return StepFunction(fr.partition, vals)
    vals = tuple(a.add(b) for a, b in zip(fr.values, gr.values))
    return StepFunction(fr.partition, vals, f.space)


def pointwise_norm(f: StepFunction) -> StepFunction:
    """Scalar step function t -> ||f(t)|| on the same partition; exact."""
    if f.is_scalar:
        raise SpaceMismatch("pointwise_norm expects a vector-mode step function")
    norms = tuple(f.space.vector_norm(v) for v in f.values)
    return StepFunction(f.partition, norms)


# ---------------------------------------------------------------------------
# certified results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormResult:
    """A computed norm with a certified absolute error bound.

    The true value lies in [value - error_bound, value + error_bound].
    ``exact`` marks closed-form evaluations whose only error is
    floating-point rounding.
    """

    value: float
    error_bound: float
    exact: bool = False
    warning: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "error_bound", float(self.error_bound))
        if self.value < 0.0 or not math.isfinite(self.value):
            raise ValueError("norm value must be finite and nonnegative")
        if self.error_bound < 0.0 or not math.isfinite(self.error_bound):
            raise ValueError("error bound must be finite and nonnegative")

    @classmethod
    def closed_form(cls, value: float, magnitude: float | None = None) -> "NormResult":
        scale_ = abs(value) if magnitude is None else max(abs(value), abs(magnitude))
        return cls(value, 8.0 * _EPS * scale_, exact=True)

    @property
    def lower(self) -> float:
        return max(self.value - self.error_bound, 0.0)

    @property
    def upper(self) -> float:
        return self.value + self.error_bound


@dataclass(frozen=True)
class LimitEstimate:
    """limsup/liminf of a norm sequence.

    ``exact`` is set only for structurally eventually-constant sequences
    (shift families), with the stabilization index recorded; otherwise
    the value is a windowed estimate and the spread across the window is
    reported as ``drift``.
    """

    kind: str  # "limsup" | "liminf"
    value: float
    exact: bool
    stabilization_index: int | None = None
    window: tuple[int, int] | None = None
    drift: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("limsup", "liminf"):
            raise ValueError("kind must be 'limsup' or 'liminf'")
        if self.exact and self.stabilization_index is None:
            raise ValueError("exact estimates must record the stabilization index")


@dataclass
class CheckReport:
    """Structured pass/fail record carrying every named intermediate."""

    check: str
    holds: bool
    quantities: dict[str, float] = field(default_factory=dict)
    mode: str = "exact"  # "exact" | "quadrature" | "windowed"
    notes: str = ""

    def __post_init__(self) -> None:
        # normalize away numpy scalar types so reports render cleanly
        self.holds = bool(self.holds)
        self.quantities = {k: float(v) for k, v in self.quantities.items()}

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "holds": self.holds,
            "mode": self.mode,
            "notes": self.notes,
            "quantities": dict(self.quantities),
        }
