"""
Opial moduli and the splitting identity
=======================================

Disjointly supported translates of a block are weakly null in lp for
p > 1 by construction, and against any fixed vector the norms satisfy
the exact splitting identity ||x_n - x||^p = ||x_n||^p + ||x||^p past a
computable stabilization index.  That identity is what makes the
moduli computable: the infimum of

    liminf ||x_n - x|| - liminf ||x_n||

over such witnesses is (R^p + eps^p)^(1/p) - R.
"""

from cesaro_lab import (
    ModulusQuery,
    SlotShiftFamily,
    SpaceSpec,
    SumElement,
    TaggedVector,
    VectorShiftFamily,
    estimate_eta_empirical,
    eta_closed_form,
    r_closed_form,
    splitting_check,
)

l2 = SpaceSpec.lp(2.0)

# -- splitting identity --------------------------------------------------------

x = TaggedVector.from_pairs([(1, 2.0), (2, 1.0)])
family = VectorShiftFamily(base=TaggedVector.basis(1, 3.0), stride=1, start_offset=2)
rpt = splitting_check(x, family, 3.0)
print("splitting ||x_n - x||^3 =", rpt.quantities["lhs_power"],
      " vs ||x_n||^3 + ||x||^3 =", rpt.quantities["rhs_power"])
print("stabilizes at n =", int(rpt.quantities["stabilization_index"]), " holds:", rpt.holds)

# -- closed forms --------------------------------------------------------------

print()
for eps, R in ((1.0, 1.0), (0.5, 1.0), (1.0, 2.0)):
    val = eta_closed_form(ModulusQuery(l2, eps, R))
    print(f"eta_l2(eps={eps}, R={R}) = {val:.12f}")

print("eta_l1(1, 1)        =", eta_closed_form(ModulusQuery(SpaceSpec.lp(1.0), 1.0, 1.0)),
      " (weak null => norm null)")
print("r_l1(c)             =", r_closed_form(SpaceSpec.lp(1.0), 0.7), " (conventional value)")
print("r_l2(1)             =", f"{r_closed_form(l2, 1.0):.12f}", " = sqrt(2) - 1")

# -- empirical witnesses -------------------------------------------------------

print()
query = ModulusQuery(l2, eps=1.0, R=1.0)
est = estimate_eta_empirical(query, 8)  # canonical grid of 8 witness levels
print(f"witness-grid estimate = {est.estimate:.12f}  (upper bound: {est.upper_bound})")
print(f"gap to closed form    = {est.closed_form_gap:.2e}")
print("per witness:", [round(v, 6) for v in est.per_witness])

# slot shifts inside a Cesaro sum decay without stabilizing, so the
# estimate there is windowed and flagged as such
print()
sum_space = SpaceSpec.cesaro_sum(2.0)
center = SumElement(2.0, ((1, TaggedVector.basis(1)),), l2)
slots = SlotShiftFamily(TaggedVector.basis(1), l2, 2.0, offset=1, stride=1)
est = estimate_eta_empirical(ModulusQuery(sum_space, eps=0.5, R=2.0), [(center, slots)],
                             window=(50, 100))
print(f"Cesaro-sum estimate  = {est.estimate:.6f}  exact={est.exact}  window={est.window}")
print(f"window drift         = {est.norm_limit.drift:.2e} (norms), {est.diff_limit.drift:.2e} (differences)")
