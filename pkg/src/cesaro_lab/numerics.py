"""Low-level numeric kernels shared by the norm computations.

Three concerns live here, all with deterministic results independent of
run count or platform thread settings:

* compensated summation (running accumulator for prefix sums, exactly
  rounded reductions for whole arrays),
* the two-sided integral bracket for tails of p-series, which is what
  certifies the sequence-norm error bounds,
* adaptive Gauss-Legendre quadrature with interval-doubling error
  estimates for the outer integral of the function norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

# fsum chunk size: keeps the intermediate Python lists small while the
# outer fsum over chunk partials stays exactly rounded.
_FSUM_CHUNK = 1 << 16

# double-precision machine epsilon as a plain Python float (numpy scalar
# types must not leak into reports)
EPS = 2.220446049250313e-16


def fsum_array(values) -> float:
    """Sum a 1-D array with math.fsum, chunked for large inputs.

    Each chunk partial is exactly rounded and the partials are combined
    with fsum again, so the result is within one rounding of the true
    sum regardless of length.  Order-insensitive by exactness, hence
    safe as the shared reduction for dual-route comparisons.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return 0.0
    if arr.size <= _FSUM_CHUNK:
        return math.fsum(arr.tolist())
    partials = [
        math.fsum(arr[i : i + _FSUM_CHUNK].tolist())
        for i in range(0, arr.size, _FSUM_CHUNK)
    ]
    return math.fsum(partials)


class RunningSum:
    """Neumaier-compensated accumulator for streaming prefix sums.

    The state after adding k terms equals the state of a fresh
    accumulator fed the same k terms in the same order, which is what
    makes prefix values bit-reproducible across call sites.
    """

    __slots__ = ("_s", "_c")

    def __init__(self) -> None:
        self._s = 0.0
        self._c = 0.0

    def add(self, term: float) -> float:
        t = self._s + term
        if abs(self._s) >= abs(term):
            self._c += (self._s - t) + term
        else:
            self._c += (term - t) + self._s
        self._s = t
        return self._s + self._c

    @property
    def value(self) -> float:
        return self._s + self._c


def p_series_tail_bracket(scale: float, p: float, n: int) -> tuple[float, float]:
    """Certified bounds on ``scale**p * sum_{m>n} m**(-p)`` for p > 1.

    Integral comparison with x**(-p), monotone decreasing:

        (n+1)**(1-p)/(p-1)  <=  sum_{m>n} m**(-p)  <=  n**(1-p)/(p-1)

    Returns (lower, upper).  Widening n strictly shrinks the bracket.
    """
    if p <= 1.0:
        raise ValueError("tail bracket requires p > 1")
    if n < 1:
        raise ValueError("bracket index must be >= 1")
    if scale == 0.0:
        return (0.0, 0.0)
    sp = abs(scale) ** p
    lo = sp * (n + 1.0) ** (1.0 - p) / (p - 1.0)
    hi = sp * float(n) ** (1.0 - p) / (p - 1.0)
    return lo, hi


@lru_cache(maxsize=64)
def _gl_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> float:
    """n-point Gauss-Legendre estimate of the integral of fn over [a, b].

    The weighted node values are reduced with fsum so the result does
    not depend on accumulation order.
    """
    nodes, weights = _gl_rule(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = np.asarray(fn(mid + half * nodes), dtype=float)
    return half * math.fsum((weights * vals).tolist())


@dataclass(frozen=True)
class QuadratureOutcome:
    """Result of an adaptive integration pass."""

    value: float
    error_bound: float   # sum of per-interval doubling estimates
    converged: bool      # False when the split budget ran out
    subdivisions: int    # splits actually performed


def adaptive_integral(
    fn: Callable[[np.ndarray], np.ndarray],
    intervals: Sequence[tuple[float, float]],
    rel_tol: float,
    nodes: int,
    max_subdivisions: int,
) -> QuadratureOutcome:
    """Integrate fn over a union of intervals with certified estimates.

    Every interval is evaluated at ``nodes`` and ``2*nodes`` points; the
    difference of the two estimates is taken as that interval's error.
    An interval is accepted once its error is at most rel_tol times the
    current estimate of the whole integral, otherwise it is bisected.
    When the split budget is exhausted the remaining intervals are
    accepted as-is and their estimates are folded into the reported
    error bound, with ``converged=False``.
    """
    if not intervals:
        return QuadratureOutcome(0.0, 0.0, True, 0)

    # work items carry their coarse estimate so the running total is
    # available before the fine pass
    work = [(a, b, gauss_legendre(fn, a, b, nodes)) for a, b in intervals]
    pending_estimate = math.fsum(est for _, _, est in work)

    accepted_vals: list[float] = []
    accepted_errs: list[float] = []
    accepted_total = 0.0
    splits = 0
    converged = True

    while work:
        a, b, coarse = work.pop()
        pending_estimate -= coarse
        fine = gauss_legendre(fn, a, b, 2 * nodes)
        err = abs(fine - coarse)
        current_total = abs(accepted_total + pending_estimate + fine)
        if err <= rel_tol * current_total or err == 0.0:
            accepted_vals.append(fine)
            accepted_errs.append(err)
            accepted_total += fine
        elif splits >= max_subdivisions:
            converged = False
            accepted_vals.append(fine)
            accepted_errs.append(err)
            accepted_total += fine
        else:
            splits += 1
            m = 0.5 * (a + b)
            left = (a, m, gauss_legendre(fn, a, m, nodes))
            right = (m, b, gauss_legendre(fn, m, b, nodes))
            work.append(left)
            work.append(right)
            pending_estimate += left[2] + right[2]

    value = math.fsum(accepted_vals)
    error = math.fsum(accepted_errs) + 4.0 * EPS * abs(value)
    return QuadratureOutcome(value, error, converged, splits)


def power_bracket_to_norm(lo_pow: float, hi_pow: float, p: float) -> tuple[float, float, float]:
    """Map a bracket on a p-th power sum to (value, error_bound, half_width).

    Returns the midpoint of the corresponding norm bracket, a bound that
    covers both the half-width and representation rounding, and the raw
    half-width (useful for convergence checks).
    """
    lo = max(lo_pow, 0.0) ** (1.0 / p)
    hi = max(hi_pow, 0.0) ** (1.0 / p)
    value = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    error = half + 4.0 * EPS * (1.0 + hi)
    return value, error, half


def stable_pth_root_shift(c: float, nu: float, p: float) -> float:
    """Evaluate ``c - (c**p - nu**p)**(1/p)`` without cancellation.

    For 0 <= nu <= c the expression equals ``-c*expm1(log1p(-x)/p)``
    with ``x = (nu/c)**p``, which keeps full relative accuracy even when
    the difference is many orders below c.
    """
    if c == 0.0:
        return 0.0
    if not 0.0 <= nu <= c:
        raise ValueError("requires 0 <= nu <= c")
    if nu == c:
        return c
    x = (nu / c) ** p
    return -c * math.expm1(math.log1p(-x) / p)


def theta_integral(t0: float, p: float, one_minus_t0: float | None = None) -> float:
    """Closed form of the integral of t**(-p) over [t0, 1].

    ``one_minus_t0`` may be supplied when 1 - t0 is known exactly (t0
    close to 1), which avoids cancellation in t0**(1-p) - 1.
    """
    if not 0.0 < t0 < 1.0:
        raise ValueError("t0 must lie in (0, 1)")
    if one_minus_t0 is None:
        log_t0 = math.log(t0)
    else:
        log_t0 = math.log1p(-one_minus_t0)
    if p == 1.0:
        return -log_t0
    return math.expm1((1.0 - p) * log_t0) / (p - 1.0)
