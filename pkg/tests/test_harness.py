"""Inequality harness against extended-precision recipe oracles.

The eta-chain oracles below recompute the full constructive chains with
mpmath at 50 digits, straight from their defining formulas; the
implementation must match them to well below the acceptance tolerances.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest

from cesaro_lab import (
    DegenerateInput,
    DomainError,
    ExponentOrder,
    FunctionShiftFamily,
    HypothesisViolation,
    InvalidExponent,
    SpaceMismatch,
    SpaceSpec,
    StepFunction,
    SumElement,
    SlotShiftFamily,
    TaggedVector,
    TauOutOfRange,
    TauTooLarge,
    UnsupportedSpace,
    check_cor32,
    check_prop21,
    check_sharpness_footnote,
    check_thm31,
    compute_eta_thm33,
    compute_eta_thm34,
    eval_phi,
    scale,
    verify_thm33,
    verify_thm34,
    weighted_l1_norm,
)
from cesaro_lab.opial import lp_eta_modulus
from cesaro_lab.scalar import ces_fun_norm

mp.mp.dps = 50

L2 = SpaceSpec.lp(2.0)


def worked_family() -> FunctionShiftFamily:
    return FunctionShiftFamily(
        profile=StepFunction.constant(1.0),
        space=L2,
        block=TaggedVector.basis(1),
        offset=1,
        stride=1,
    )


def worked_f() -> StepFunction:
    return StepFunction.constant(TaggedVector.basis(1), L2)


def chain_tail_oracle(w, measure, theta, p, R):
    cap = mp.mpf(2) ** (1 - 1 / mp.mpf(p)) * (3 * R + 1)
    nu = min((mp.mpf(w) ** p * mp.mpf(measure) ** p * mp.mpf(theta) / 2) ** (1 / mp.mpf(p)), cap)
    omega = cap - (cap ** p - nu ** p) ** (1 / mp.mpf(p))
    return nu, omega, min(omega, mp.mpf(1))


def eta33_oracle(p, px, tau, M, R, lam_A, t0):
    p, tau, M, R = map(mp.mpf, (p, tau, M, R))
    w = (M ** px + tau ** px) ** (1 / mp.mpf(px)) - M
    theta = (mp.mpf(t0) ** (1 - p) - 1) / (p - 1) if p != 1 else -mp.log(t0)
    return chain_tail_oracle(w, lam_A, theta, p, R)


def eta34_oracle(p, px, r, eps, M, K, R, tau):
    p, r, eps, M, K, R, tau = map(mp.mpf, (p, r, eps, M, K, R, tau))
    q = p / (p - 1)
    s = r / p
    sp = mp.mpf(1) if mp.isinf(s) else s / (s - 1)
    Q = min((eps ** p / q ** p - tau ** p) ** sp * K ** (-p * sp), mp.mpf(1))
    t0 = 1 - Q / 2
    theta = (t0 ** (1 - p) - 1) / (p - 1)
    w = (M ** px + tau ** px) ** (1 / mp.mpf(px)) - M
    nu, omega, eta = chain_tail_oracle(w, Q, theta, p, R)
    return Q, t0, theta, w, eta


# ---------------------------------------------------------------------------
# families and phi
# ---------------------------------------------------------------------------

def test_family_validation():
    good = worked_family()
    assert good.term(1).values[0].support == (3,)  # e_1 shifted by offset 1 + stride
    with pytest.raises(UnsupportedSpace):
        FunctionShiftFamily(StepFunction.constant(1.0), SpaceSpec.lp(1.0), TaggedVector.basis(1))
    with pytest.raises(ValueError):
        FunctionShiftFamily(StepFunction.constant(1.0), L2, TaggedVector.basis(1, 2.0))
    with pytest.raises(ValueError):
        FunctionShiftFamily(StepFunction.constant(-1.0), L2, TaggedVector.basis(1))
    with pytest.raises(SpaceMismatch):
        FunctionShiftFamily(
            StepFunction.constant(TaggedVector.basis(1), L2), L2, TaggedVector.basis(1)
        )


def test_eval_phi_constant_case():
    phi = eval_phi(worked_family(), worked_f())
    assert phi.values == (math.sqrt(2.0),)


def test_eval_phi_zero_f():
    f0 = StepFunction.constant(TaggedVector.zero(), L2)
    phi = eval_phi(worked_family(), f0)
    assert phi.values == (1.0,)  # phi collapses to the profile


def test_eval_phi_half_support():
    f = StepFunction.vector((0.0, 0.5, 1.0), (TaggedVector.basis(1), TaggedVector.zero()), L2)
    phi = eval_phi(worked_family(), f)
    assert phi.values == (math.sqrt(2.0), 1.0)


def test_eval_phi_space_mismatch():
    f = StepFunction.constant(TaggedVector.basis(1), SpaceSpec.lp(3.0))
    with pytest.raises(SpaceMismatch):
        eval_phi(worked_family(), f)


def test_phi_dominates_profile_cellwise():
    # the splitting profile never drops below g, exactly, cell by cell
    rng = np.random.default_rng(41)
    for _ in range(20):
        px = float(rng.choice([1.5, 2.0, 3.0]))
        space = SpaceSpec.lp(px)
        raw = TaggedVector.from_pairs([(int(i), float(rng.uniform(0.2, 2.0))) for i in range(1, 4)])
        block = raw.scale(1.0 / space.vector_norm(raw))
        fam = FunctionShiftFamily(
            profile=StepFunction.scalar((0.0, 0.4, 1.0), tuple(rng.uniform(0.0, 2.0, size=2))),
            space=space,
            block=block,
            stride=block.width,
        )
        cells = tuple(
            TaggedVector.basis(1, float(rng.uniform(-1.0, 1.0))) if rng.uniform() < 0.7 else TaggedVector.zero()
            for _ in range(2)
        )
        f = StepFunction.vector((0.0, 0.5, 1.0), cells, space)
        phi = eval_phi(fam, f)
        g = fam.profile.on_partition(phi.partition)
        assert all(pv >= gv for pv, gv in zip(phi.values, g.values))


# ---------------------------------------------------------------------------
# thm31 / cor32
# ---------------------------------------------------------------------------

def test_thm31_worked_example():
    rpt = check_thm31(worked_family(), worked_f(), 2.0)
    assert abs(rpt.a - 1.0) <= 1e-10
    assert abs(rpt.lhs1 - 2.0) <= 1e-8
    assert abs(rpt.rhs1 - 3.0) <= 1e-8
    assert abs(rpt.lhs2 - 1.0) <= 1e-10
    assert abs(rpt.rhs2 - 2.0) <= 1e-8
    assert rpt.holds1 and rpt.holds2
    assert rpt.limsup_fn.exact and rpt.limsup_fn_minus_f.exact


def test_thm31_zero_f():
    f0 = StepFunction.constant(TaggedVector.zero(), L2)
    rpt = check_thm31(worked_family(), f0, 2.0)
    assert abs(rpt.a) <= 1e-12
    assert abs(rpt.lhs1) <= 1e-12
    # rhs1 = (2**(p-1) - 1) ||g||**p for f = 0
    assert abs(rpt.rhs1 - 1.0) <= 1e-10


def test_thm31_half_indicator_oracle():
    # phi = sqrt(2) on (0, 1/2], 1 on (1/2, 1]; with c = (sqrt2 - 1)/2 the
    # closed-form norm power is 1 + 1/2 + 2 c ln 2 + c**2
    c = (mp.sqrt(2) - 1) / 2
    phi_power = 1 + mp.mpf(1) / 2 + 2 * c * mp.log(2) + c ** 2
    a_oracle = float(phi_power - 1)
    f = StepFunction.vector((0.0, 0.5, 1.0), (TaggedVector.basis(1), TaggedVector.zero()), L2)
    rpt = check_thm31(worked_family(), f, 2.0)
    assert abs(rpt.a - a_oracle) <= 1e-9
    assert abs(rpt.phi_norm.value ** 2 - float(phi_power)) <= 1e-9
    assert rpt.holds1 and rpt.holds2


def test_thm31_p1_agrees_with_weighted_route():
    f = StepFunction.vector((0.0, 0.5, 1.0), (TaggedVector.basis(1), TaggedVector.zero()), L2)
    fam = worked_family()
    rpt = check_thm31(fam, f, 1.0)
    phi = eval_phi(fam, f)
    a_weighted = weighted_l1_norm(phi).value - weighted_l1_norm(fam.profile).value
    assert abs(rpt.a - a_weighted) <= 1e-8 * (1.0 + abs(a_weighted))
    assert rpt.holds1 and rpt.holds2


def test_cor32_strict_margins():
    rpt = check_cor32(worked_family(), worked_f(), 2.0)
    assert rpt.holds
    # margin = 2 - 1 = 1 for the unit example
    assert abs(rpt.quantities["margin"] - 1.0) <= 1e-8


def test_cor32_tiny_scaling_still_strict():
    f = StepFunction.vector((0.0, 0.5, 1.0), (TaggedVector.basis(1), TaggedVector.zero()), L2)
    for factor in (1e-4, 1e-6):
        rpt = check_cor32(worked_family(), scale(f, factor), 2.0)
        assert rpt.holds, rpt.quantities
        assert rpt.quantities["a"] > rpt.quantities["a_error"]


def test_cor32_rejects_zero_f():
    with pytest.raises(DegenerateInput):
        check_cor32(worked_family(), StepFunction.constant(TaggedVector.zero(), L2), 2.0)


def test_thm31_battery_cross_refinement():
    # the report is partition-refinement stable within error bounds
    f = StepFunction.vector((0.0, 0.5, 1.0), (TaggedVector.basis(1), TaggedVector.zero()), L2)
    r1 = check_thm31(worked_family(), f, 2.0)
    f_ref = f.on_partition(f.partition.refine_uniform(4))
    r2 = check_thm31(worked_family(), f_ref, 2.0)
    assert abs(r1.a - r2.a) <= r1.a_error + r2.a_error + 1e-12


# ---------------------------------------------------------------------------
# eta recipes
# ---------------------------------------------------------------------------

def test_eta33_worked_chain():
    recipe = compute_eta_thm33(worked_f(), 2.0, M=1.0, R=1.0, tau=0.5)
    assert recipe.A == ((0.0, 1.0),)
    assert recipe.lambda_A == 1.0
    assert recipe.t0 == 0.5
    assert abs(recipe.theta - 1.0) <= 1e-15
    nu_o, omega_o, eta_o = eta33_oracle(2.0, 2.0, 0.5, 1.0, 1.0, 1.0, 0.5)
    assert abs(recipe.w - float(mp.sqrt(mp.mpf(5)) / 2 - 1)) <= 1e-15
    assert abs(recipe.nu - float(nu_o)) <= 1e-15
    assert abs(recipe.eta - float(eta_o)) <= 1e-12
    # frozen decimal from the oracle
    assert abs(recipe.eta - 6.157477361207266e-4) <= 1e-9
    assert recipe.eta > 0.0


def test_eta33_level_set_depends_only_on_tau():
    # any constant profile above tau yields the full-interval level set
    for c in (0.6, 1.0, 5.0):
        f = StepFunction.constant(TaggedVector.basis(1, c), L2)
        recipe = compute_eta_thm33(f, 2.0, M=1.0, R=1.0, tau=0.5)
        assert recipe.A == ((0.0, 1.0),)
        assert recipe.t0 == 0.5


def test_eta33_partial_level_set():
    f = StepFunction.vector(
        (0.0, 0.25, 0.75, 1.0),
        (TaggedVector.basis(1, 2.0), TaggedVector.basis(1, 0.1), TaggedVector.basis(1, 2.0)),
        L2,
    )
    recipe = compute_eta_thm33(f, 2.0, M=1.0, R=1.0, tau=1.0)
    assert recipe.A == ((0.0, 0.25), (0.75, 1.0))
    assert recipe.lambda_A == 0.5
    # cumulative measure reaches 1/4 exactly at t = 0.25
    assert recipe.t0 == 0.25
    assert recipe.eta > 0.0


def test_eta33_tau_out_of_range():
    with pytest.raises(TauOutOfRange):
        compute_eta_thm33(worked_f(), 2.0, M=1.0, R=1.0, tau=1.5)
    with pytest.raises(TauOutOfRange):
        compute_eta_thm33(worked_f(), 2.0, M=1.0, R=1.0, tau=0.0)
    with pytest.raises(DomainError):
        compute_eta_thm33(worked_f(), 2.0, M=-1.0, R=1.0, tau=0.5)


def test_eta34_worked_chain_rationals():
    modulus = lp_eta_modulus(L2)
    recipe = compute_eta_thm34(2.0, 4.0, 1.0, 1.0, 1.0, 1.0, 0.25, modulus)
    assert recipe.s == 2.0 and recipe.s_prime == 2.0 and recipe.q == 2.0
    assert recipe.Q == 9.0 / 256.0      # exactly dyadic in doubles
    assert recipe.t0 == 503.0 / 512.0   # exactly dyadic in doubles
    Q_o, t0_o, theta_o, w_o, eta_o = eta34_oracle(2.0, 2.0, 4.0, 1.0, 1.0, 1.0, 1.0, 0.25)
    assert abs(recipe.theta - float(theta_o)) <= 1e-12 * recipe.theta
    assert abs(recipe.theta - 9.0 / 503.0) <= 1e-12
    assert abs(recipe.w - float(w_o)) <= 1e-15
    assert abs(recipe.eta - float(eta_o)) <= 1e-9 * max(1.0, recipe.eta)
    assert recipe.eta > 0.0
    assert abs(recipe.eta - 9.2572170940555016e-10) <= 1e-15


def test_eta34_infinite_r():
    modulus = lp_eta_modulus(L2)
    recipe = compute_eta_thm34(2.0, math.inf, 1.0, 1.0, 1.0, 1.0, 0.25, modulus)
    assert recipe.s == math.inf
    assert recipe.s_prime == 1.0  # conjugate of an infinite exponent
    # Q = (eps**p/q**p - tau**p) * K**(-p)
    assert recipe.Q == 0.25 - 0.0625
    assert recipe.eta > 0.0


def test_eta34_monotone_in_K():
    modulus = lp_eta_modulus(L2)
    etas = []
    for K in (1.0, 2.0, 8.0, 64.0):
        etas.append(compute_eta_thm34(2.0, 4.0, 1.0, 1.0, K, 1.0, 0.25, modulus).eta)
    assert all(a > b for a, b in zip(etas, etas[1:]))
    assert etas[-1] > 0.0


def test_eta34_guards():
    modulus = lp_eta_modulus(L2)
    with pytest.raises(TauTooLarge):
        compute_eta_thm34(2.0, 4.0, 1.0, 1.0, 1.0, 1.0, 0.5, modulus)  # q p tau hits eps
    with pytest.raises(ExponentOrder):
        compute_eta_thm34(2.0, 1.5, 1.0, 1.0, 1.0, 1.0, 0.1, modulus)
    with pytest.raises(InvalidExponent):
        compute_eta_thm34(1.0, 4.0, 1.0, 1.0, 1.0, 1.0, 0.1, modulus)
    with pytest.raises(DomainError):
        compute_eta_thm34(2.0, 4.0, -1.0, 1.0, 1.0, 1.0, 0.1, modulus)


# ---------------------------------------------------------------------------
# full verifications
# ---------------------------------------------------------------------------

def test_verify_thm33_worked():
    rpt = verify_thm33(worked_family(), worked_f(), 2.0, M=1.0, R=1.0, tau=0.5)
    assert rpt.holds
    assert abs(rpt.quantities["lhs"] - (1.0 + 6.157477361207266e-4)) <= 1e-8
    assert abs(rpt.quantities["rhs"] - 2.0) <= 1e-8


def test_verify_thm33_default_tau():
    rpt = verify_thm33(worked_family(), worked_f(), 2.0, M=1.0, R=1.0)
    assert rpt.holds
    assert abs(rpt.quantities["tau"] - 0.5) <= 1e-10  # half of ||f|| = 1


def test_verify_thm33_randomized_conclusions():
    # hypothesis-satisfying instances: M covers max g, R covers ||g||
    rng = np.random.default_rng(47)
    for k in range(15):
        px = float(rng.choice([1.5, 2.0, 3.0]))
        space = SpaceSpec.lp(px)
        raw = TaggedVector.from_pairs([(int(i), float(rng.uniform(0.2, 1.5))) for i in (1, 2)])
        block = raw.scale(1.0 / space.vector_norm(raw))
        fam = FunctionShiftFamily(
            profile=StepFunction.scalar((0.0, 0.6, 1.0), tuple(rng.uniform(0.1, 1.5, size=2))),
            space=space,
            block=block,
            offset=int(rng.integers(0, 3)),
            stride=block.width,
        )
        f = StepFunction.vector(
            (0.0, 0.5, 1.0),
            (TaggedVector.basis(1, float(rng.uniform(0.3, 1.5))), TaggedVector.basis(2, float(rng.uniform(0.1, 0.8)))),
            space,
        )
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        M = max(fam.profile.values) + float(rng.uniform(0.1, 1.0))
        R = ces_fun_norm(fam.profile, p).value + float(rng.uniform(0.1, 1.0))
        rpt = verify_thm33(fam, f, p, M=M, R=R)
        assert rpt.holds, rpt.quantities
        assert rpt.quantities["eta"] > 0.0


def test_verify_thm33_hypothesis_violations():
    fam = worked_family()
    with pytest.raises(HypothesisViolation, match="R"):
        verify_thm33(fam, worked_f(), 2.0, M=1.0, R=0.5, tau=0.25)
    with pytest.raises(HypothesisViolation, match="M"):
        verify_thm33(fam, worked_f(), 2.0, M=0.5, R=1.0, tau=0.25)


def test_verify_thm34_worked():
    rpt = verify_thm34(worked_family(), worked_f(), 2.0, r=4.0, eps=1.0, M=1.0, K=1.0, R=1.0, tau=0.25)
    assert rpt.holds
    assert rpt.quantities["eta"] > 0.0
    assert abs(rpt.quantities["f_r_norm"] - 1.0) <= 1e-12


def test_verify_thm34_default_tau_and_guards():
    rpt = verify_thm34(worked_family(), worked_f(), 2.0, r=4.0, eps=1.0, M=1.0, K=1.0, R=1.0)
    assert rpt.holds
    assert abs(rpt.quantities["tau"] - 0.25) <= 1e-15  # eps / (2q)
    with pytest.raises(HypothesisViolation, match="K"):
        verify_thm34(worked_family(), worked_f(), 2.0, r=4.0, eps=1.0, M=1.0, K=0.5, R=1.0)
    with pytest.raises(HypothesisViolation, match="eps"):
        verify_thm34(worked_family(), worked_f(), 2.0, r=4.0, eps=2.0, M=1.0, K=1.0, R=1.0)


# ---------------------------------------------------------------------------
# prop21 and the sharpness example
# ---------------------------------------------------------------------------

def test_prop21_unit_vector():
    x = SumElement(2.0, ((1, TaggedVector.basis(1)),), L2)
    fam = SlotShiftFamily(TaggedVector.basis(1), L2, 2.0, offset=1, stride=1)
    rpt = check_prop21(fam, x, window=(60, 120))
    assert rpt.holds
    assert rpt.mode == "windowed"
    assert rpt.quantities["margin"] > rpt.quantities["window_drift"]


def test_prop21_zero_center_nonstrict():
    x = SumElement.zero(2.0, L2)
    fam = SlotShiftFamily(TaggedVector.basis(1), L2, 2.0, offset=1, stride=1)
    rpt = check_prop21(fam, x, window=(60, 90))
    assert rpt.holds
    assert abs(rpt.quantities["margin"]) <= 1e-9


def test_prop21_zero_family():
    x = SumElement(2.0, ((1, TaggedVector.basis(1)),), L2)
    fam = SlotShiftFamily(TaggedVector.zero(), L2, 2.0, offset=1, stride=1)
    rpt = check_prop21(fam, x, window=(10, 20))
    assert rpt.holds
    assert rpt.quantities["limsup_norm_estimate"] == 0.0


def test_prop21_space_mismatch():
    x = SumElement(2.0, ((1, TaggedVector.basis(1)),), SpaceSpec.lp(3.0))
    fam = SlotShiftFamily(TaggedVector.basis(1), L2, 2.0, offset=1, stride=1)
    with pytest.raises(SpaceMismatch):
        check_prop21(fam, x)


def test_sharpness_footnote():
    rpt = check_sharpness_footnote()
    assert rpt.holds
    assert rpt.quantities["limsup_norm"] == 2.0
    assert rpt.quantities["limsup_diff"] == 1.0
    assert rpt.quantities["ratio"] == 2.0


def test_sharpness_scales_homogeneously():
    for lam in (0.5, 3.0, -2.0):
        rpt = check_sharpness_footnote(lam=lam)
        assert rpt.quantities["ratio"] == 2.0
        assert rpt.quantities["limsup_norm"] == 2.0 * abs(lam)


def test_sharpness_zero_center():
    rpt = check_sharpness_footnote(center_tail=0.0)
    assert rpt.quantities["ratio"] == 1.0
    assert rpt.holds
