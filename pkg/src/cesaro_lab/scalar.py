"""Scalar Cesaro norms with certified error bounds.

Sequence norm
    ||a|| = ( sum_{n>=1} ((1/n) sum_{i<=n} |a_i|)**p )**(1/p),  p > 1.
    Terms up to a virtual cutoff are summed exactly (compensated); the
    remaining tail has the constant numerator S = sum |a_i| and is
    bracketed two-sidedly by the integral comparison, so the returned
    error bound is certified.

Function norm
    ||h|| = ( int_0^1 ((1/t) int_0^t |h|)**p dt )**(1/p).
    The inner integral of a step function is piecewise linear and exact.
    On the first cell the integrand is the constant |h_1|**p (this is
    what removes the t -> 0 singularity); later cells are smooth and are
    handled by adaptive Gauss-Legendre with interval-doubling error
    estimates.  At p = 1 the norm collapses to the exact weighted
    integral with weight log(1/s) and is evaluated in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    CheckReport,
    InvalidExponent,
    InvalidTolerance,
    NormResult,
    SpaceMismatch,
    StepFunction,
    abs_prefix_sums,
    as_exponent,
)
from .numerics import (
    EPS,
    RunningSum,
    adaptive_integral,
    fsum_array,
    p_series_tail_bracket,
    power_bracket_to_norm,
)

DEFAULT_SEQ_TOL = 1e-10

# hard cap on virtually extended exact terms; reaching it returns an
# honest (larger) error bound instead of looping forever
_MAX_VIRTUAL_TERMS = 1 << 26


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    max_subdivisions: int = 60
    nodes_per_cell: int = 16

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise InvalidTolerance("rel_tol must be positive")
        if self.nodes_per_cell < 2:
            raise InvalidTolerance("nodes_per_cell must be at least 2")
        if self.max_subdivisions < 0:
            raise InvalidTolerance("max_subdivisions must be nonnegative")


DEFAULT_QUADRATURE = QuadratureConfig()


# ---------------------------------------------------------------------------
# sequence norm
# ---------------------------------------------------------------------------

# bound on the arange blocks generated per run, keeps memory flat for
# very sparse vectors with large support indices
_RANGE_CHUNK = 1 << 20


def _run_power_sum(pref: float, start: int, stop: int, p: float) -> list[float]:
    """Chunk sums of (pref/n)**p for n in [start, stop)."""
    parts: list[float] = []
    lo = start
    while lo < stop:
        hi = min(lo + _RANGE_CHUNK, stop)
        ns = np.arange(lo, hi, dtype=float)
        parts.append(fsum_array((pref / ns) ** p))
        lo = hi
    return parts


def _exact_term_parts(prefixes, p: float, upto: int) -> list[float]:
    """Chunk sums of ((prefix(n)/n))**p for n = 1 .. upto.

    ``prefixes`` are the (support index, running |a| prefix) pairs; the
    prefix is constant between support indices, so terms are generated
    run by run.
    """
    parts: list[float] = []
    for k, (idx, pref) in enumerate(prefixes):
        run_end = prefixes[k + 1][0] if k + 1 < len(prefixes) else upto + 1
        run_end = min(run_end, upto + 1)
        if run_end <= idx:
            continue
        parts.extend(_run_power_sum(pref, idx, run_end, p))
    return parts


def _norm_from_power_terms(parts: list[float], scale: float, n_exact: int,
                           p: float, tol: float) -> NormResult:
    """Combine exact term parts with the certified tail bracket.

    Virtually extends the exact region (terms are (scale/n)**p there)
    until both the tail bracket and the induced norm bracket are within
    tol, then returns the midpoint with half-width as error bound.
    """
    if scale == 0.0:
        return NormResult(0.0, 0.0, exact=True)
    n_virtual = n_exact
    # analytic first guess: bracket width ~ scale**p * n**(-p)
    guess = int(math.ceil(abs(scale) * tol ** (-1.0 / p))) + 1
    target = min(max(n_exact, guess), _MAX_VIRTUAL_TERMS)
    parts = list(parts)
    while True:
        if target > n_virtual:
            parts.extend(_run_power_sum(scale, n_virtual + 1, target + 1, p))
            n_virtual = target
        lo_tail, hi_tail = p_series_tail_bracket(scale, p, n_virtual)
        exact_part = math.fsum(parts)
        value, err, half = power_bracket_to_norm(
            exact_part + lo_tail, exact_part + hi_tail, p
        )
        if (hi_tail - lo_tail) <= tol and 2.0 * half <= tol:
            return NormResult(value, err, exact=False)
        if n_virtual >= _MAX_VIRTUAL_TERMS:
            return NormResult(
                value,
                err,
                exact=False,
                warning="virtual term budget exhausted before reaching tol",
            )
        target = min(n_virtual * 4, _MAX_VIRTUAL_TERMS)


def ces_seq_norm(a, p, tol: float = DEFAULT_SEQ_TOL) -> NormResult:
    """Cesaro sequence norm of a finitely supported vector, p > 1.

    Raises InvalidExponent at p = 1, where only the zero sequence has a
    finite norm.  The reported error bound is at most tol.
    """
    p = as_exponent(p)
    if p.is_one:
        raise InvalidExponent("sequence norm requires p > 1 (the p = 1 space is trivial)")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise InvalidTolerance(f"tol must be a positive finite number, got {tol!r}")
    if a.is_zero:
        return NormResult(0.0, 0.0, exact=True)
    prefixes = abs_prefix_sums(a)
    n_support = prefixes[-1][0]
    total_mass = prefixes[-1][1]
    parts = _exact_term_parts(prefixes, p.p, n_support)
    return _norm_from_power_terms(parts, total_mass, n_support, p.p, tol)


# ---------------------------------------------------------------------------
# function norms
# ---------------------------------------------------------------------------

def _abs_values(h: StepFunction) -> list[float]:
    if not h.is_scalar:
        raise SpaceMismatch("expected a scalar step function")
    return [abs(v) for v in h.values]


def _inner_prefix(h: StepFunction) -> list[float]:
    """F(t_k) = int_0^{t_k} |h| at every breakpoint (exact, compensated)."""
    mags = _abs_values(h)
    acc = RunningSum()
    out = [0.0]
    for m, (a, b) in zip(mags, h.partition.cells):
        out.append(acc.add(m * (b - a)))
    return out


def weighted_l1_norm(h: StepFunction) -> NormResult:
    """Integral of |h(s)| log(1/s) via the antiderivative s - s log s.

    Exact up to rounding; this is the p = 1 Cesaro function norm.
    """
    mags = _abs_values(h)

    def anti(s: float) -> float:
        if s == 0.0:
            return 0.0
        return s - s * math.log(s)

    terms = [m * (anti(b) - anti(a)) for m, (a, b) in zip(mags, h.partition.cells)]
    total = math.fsum(terms)
    spread = math.fsum(abs(t) for t in terms)
    return NormResult(total, 8.0 * EPS * (spread + abs(total)), exact=True)


def _ces_fun_norm_quadrature(h: StepFunction, p: float, cfg: QuadratureConfig) -> NormResult:
    """Quadrature route of the function norm for any p >= 1.

    Exposed separately so the p = 1 closed form can be cross-checked
    against an actual integration of the same integrand.
    """
    mags = _abs_values(h)
    bps = h.partition.breakpoints
    prefix = _inner_prefix(h)

    # first cell: (F(t)/t)**p == |h_1|**p, integrate exactly
    first = (mags[0] ** p) * bps[1]

    cells = list(range(1, len(mags)))

    def integrand_for(k: int):
        fk, mk, tk = prefix[k], mags[k], bps[k]

        def fn(t: np.ndarray) -> np.ndarray:
            return ((fk + mk * (t - tk)) / t) ** p

        return fn

    outcomes = []
    for k in cells:
        outcome = adaptive_integral(
            integrand_for(k),
            [(bps[k], bps[k + 1])],
            cfg.rel_tol,
            cfg.nodes_per_cell,
            cfg.max_subdivisions,
        )
        outcomes.append(outcome)

    tail_value = math.fsum(o.value for o in outcomes)
    tail_err = math.fsum(o.error_bound for o in outcomes)
    converged = all(o.converged for o in outcomes)

    total = first + tail_value
    value, err, _ = power_bracket_to_norm(total - tail_err, total + tail_err, p)
    warning = None if converged else "quadrature subdivision budget exhausted"
    exact = not cells  # single-cell input integrates in closed form
    return NormResult(value, err, exact=exact, warning=warning)


def ces_fun_norm(h: StepFunction, p, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> NormResult:
    """Cesaro function norm of a scalar step function, p >= 1.

    The p = 1 case routes to the exact weighted closed form (and is
    flagged exact); otherwise the outer integral is evaluated cell by
    cell with adaptive Gauss-Legendre.
    """
    p = as_exponent(p)
    if p.is_one:
        return weighted_l1_norm(h)
    return _ces_fun_norm_quadrature(h, p.p, cfg)


def lr_fun_norm(h: StepFunction, r: float) -> NormResult:
    """Lebesgue norm of a scalar step function for r in [1, inf]; exact."""
    mags = _abs_values(h)
    if r == math.inf:
        return NormResult(max(mags), 0.0, exact=True)
    if r < 1.0:
        raise InvalidExponent(f"Lebesgue norm requires r >= 1, got {r!r}")
    widths = h.partition.widths
    total = fsum_array([m ** r * w for m, w in zip(mags, widths)])
    return NormResult.closed_form(total ** (1.0 / r))


def lp_fun_norm(h: StepFunction, p) -> NormResult:
    return lr_fun_norm(h, as_exponent(p).p)


def ces_fun_integrand_samples(h: StepFunction, p, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """(t, inner average, integrand) triples on per-cell Gauss nodes.

    Plot-ready sampling of t -> (1/t) int_0^t |h| and its p-th power on
    the same node layout the quadrature uses.
    """
    from .numerics import _gl_rule  # fixed node layout

    p = as_exponent(p).p
    mags = _abs_values(h)
    prefix = _inner_prefix(h)
    bps = h.partition.breakpoints
    nodes, _ = _gl_rule(cfg.nodes_per_cell)
    rows = []
    for k in range(len(mags)):
        a, b = bps[k], bps[k + 1]
        ts = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        for t in ts:
            avg = (prefix[k] + mags[k] * (t - a)) / t
            rows.append((float(t), float(avg), float(avg ** p)))
    return rows


def check_embedding_inequality(
    h: StepFunction, p, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> CheckReport:
    """Verify the Hardy-type comparison ||h||_Ces <= q * ||h||_p (p > 1)."""
    p = as_exponent(p)
    if p.is_one:
        raise InvalidExponent("the comparison needs p > 1 (q is the conjugate exponent)")
    lhs = ces_fun_norm(h, p, cfg)
    lp = lp_fun_norm(h, p)
    rhs = p.q * lp.value
    rhs_err = p.q * lp.error_bound
    slack = rhs - lhs.value
    holds = lhs.value <= rhs + rhs_err + lhs.error_bound
    return CheckReport(
        check="embedding_inequality",
        holds=holds,
        quantities={
            "p": p.p,
            "q": p.q,
            "lhs": lhs.value,
            "lhs_error": lhs.error_bound,
            "lp_norm": lp.value,
            "rhs": rhs,
            "rhs_error": rhs_err,
            "slack": slack,
        },
        mode="quadrature",
    )
