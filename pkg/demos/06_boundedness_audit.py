"""The mechanized boundedness audit.

Feed in a homology profile {degree: dimension} of a connected algebra over
a field of characteristic p, plus a finite bound D > p on its homotopy
series values.  The envelope tower turns the profile into a chain of
series inequalities whose two sides, after the logarithmic change of
variables, grow like polynomials of degree n-1 (left) and at most n-2
(right).  For top degree n > 1 that is impossible for large t: the audit
returns a contradiction with an exact integer witness and a re-checkable
trace.  Top degree 1 is the consistent case.  Rationally the argument
fails, and the rational check covers what survives: an even-concentrated
bounded profile with finite homotopy forces the trivial algebra.
"""

import json

from scalg import EnvelopeProfile, rational_check, serre_audit

print("Top degree 2, one class, p = 2, bound D = 3:")
v = serre_audit(EnvelopeProfile(2, {2: 1}, pi_bound=3))
print("  outcome:", v.outcome, " witness t* =", v.witness)
print("  exact comparison:", v.trace["verification"]["comparison"])
print("  re-verified:", v.verify())

print()
print("A fatter profile, p = 3, D = 100:")
v = serre_audit(EnvelopeProfile(3, {1: 2, 2: 1, 4: 2}, pi_bound=100))
print("  outcome:", v.outcome, " witness t* =", v.witness)
print("  left polynomial :", v.trace["lhs_poly"])
print("  right polynomial:", v.trace["rhs_poly"], "+", v.trace["rhs_constant"])

print()
print("Top degree 1 never contradicts:")
v = serre_audit(EnvelopeProfile(2, {1: 5}, pi_bound=100))
print("  outcome:", v.outcome, "-", v.trace["reason"])

print()
print("Empirical mode works from certified truncated series and may be")
print("honestly inconclusive:")
v = serre_audit(EnvelopeProfile(2, {1: 1, 2: 1}, pi_bound=3),
                mode="empirical", t_samples=[1, 2, 4, 8], M=6)
print("  {1:1, 2:1}, D=3 :", v.outcome, " witness", v.witness)
v = serre_audit(EnvelopeProfile(2, {2: 1}, pi_bound=2**30),
                mode="empirical", t_samples=[1, 2], M=4)
print("  {2:1}, D=2^30   :", v.outcome)

print()
print("Rationally:")
for dims, finite in [({}, True), ({2: 1}, True), ({2: 1, 5: 1}, True)]:
    v = rational_check(EnvelopeProfile(0, dims), finite)
    print("  profile %-12s ->" % (dims,), v.outcome)
print()
print("The odd class at degree 5 is the power-cofiber family: finite")
print("homotopy, finite homology, and no contradiction to draw.")
