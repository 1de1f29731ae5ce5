"""Poincare series arithmetic and the logarithmic transform.

Series are exact integer coefficient lists up to a stated truncation,
ordered coefficientwise; products truncate to the common range.  The
transform phi(t) = log_p(series at 1 - p^{-t}) is evaluated from partial
sums, hence always a certified lower bound, with a stabilization flag for
the discarded tail; nothing is asserted past the truncation.  For spheres
in characteristic p the growth law predicts phi ~ q t^(n-1)/(n-1)!, and
the comparison table shows the ratio crawling toward 1 until truncation
cuts the view off.
"""

import math

from scalg import (
    asymptotic_check,
    leq,
    mul,
    phi_eval,
    sphere_series_char0,
    sphere_series_charp,
)

even = sphere_series_char0(1, 2, 8)
odd = sphere_series_char0(1, 3, 8)
print("theta(S(2)) =", even.coeffs, " closed form", even.closed_form)
print("theta(S(3)) =", odd.coeffs, " (bounded: the rational counterexample)")
prod = mul(even, odd)
print("product     =", prod.coeffs)
print("1 <= product coefficientwise:", leq(sphere_series_char0(1, 2, 8), prod))

print()
print("char 2 sphere series, degree-2 generator, brute force:")
s = sphere_series_charp(1, 2, 2, 6)
print("  certified coefficients:", s.coeffs,
      "(truncation %d; shorter than asked is a signal, not an error)"
      % s.truncation)

print()
print("phi against the closed form at p=2, t=1:")
t = 1.0
x = 1 - 2**-t
exact = math.log(1 / (1 - x * x), 2)
for M in (4, 8, 16):
    pv = phi_eval(sphere_series_char0(1, 2, M), 2, t)
    print("  truncation %2d: phi = %.6f (lower bound; exact %.6f)"
          % (M, pv.value, exact))

print()
print("Growth-law table for one degree-2 class at p = 2:")
rep = asymptotic_check(1, 2, 2, [0.25, 0.5, 1, 2, 4], M=6)
print(rep.to_csv())
print("monotone toward 1 on the stabilized prefix:", rep.monotone_toward_one())
print("first truncation-limited sample:", rep.inconclusive_from())
