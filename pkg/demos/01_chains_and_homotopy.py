"""Simplicial vector spaces and their homotopy.

Builds Eilenberg-MacLane objects and random objects through the inverse
Dold-Kan construction, then computes homotopy two independent ways: from
the normalized chains (quotient by degenerate vectors) and from the full
Moore complex.  The two must agree in every certified degree; that
agreement is the workhorse cross-check used throughout the test suite.
"""

import random

from scalg import QQ, GF2, Mat, eilenberg_maclane, gamma

print("K(V, n): the simplicial vector space with homotopy V in degree n")
for q, n in [(1, 1), (1, 2), (2, 3)]:
    k = eilenberg_maclane(QQ, q, n, n + 3)
    h = k.homotopy_dims()
    print("  q=%d n=%d  level dims %s" % (q, n, k.level_dims))
    print("           homotopy   %s  (certified through %d)"
          % (h.to_list(n + 2), h.certified_degree))

print()
print("Level dimensions are C(m, n) * q: the basis is indexed by")
print("order-preserving surjections [m] ->> [n], one copy of V each.")
print()

print("The same homotopy drops out of the unnormalized Moore complex:")
k = eilenberg_maclane(GF2, 1, 2, 5)
hn = k.normalized_chains().homology_dims()
hu = k.unnormalized_chains().homology_dims()
print("  normalized   ", hn.to_list(4))
print("  unnormalized ", hu.to_list(4))
print()

print("A random valid object: feed a random chain complex to the inverse")
print("Dold-Kan construction; its homotopy is the homology we started from.")
rng = random.Random(7)
dims = [2, 3, 2, 1]
d1 = Mat.from_rows(QQ, [[1, 0, 1], [0, 0, 0]])
from scalg.exactfield import kernel_basis

k1 = kernel_basis(d1)
mix = Mat.from_rows(QQ, [[1, 0], [0, 1]][: k1.ncols], ncols=2)
d2 = k1 @ mix
k2 = kernel_basis(d2)
d3 = k2 @ Mat.from_rows(QQ, [[1]] * k2.ncols, ncols=1)
v = gamma(QQ, dims, [None, d1, d2, d3], 3)
print("  level dims of the realization:", v.level_dims)
print("  homotopy:", v.homotopy_dims().to_list(2), "(certified through",
      v.homotopy_dims().certified_degree, ")")
print()
print("Tensor products multiply levelwise and convolve homotopy (Kunneth):")
a = eilenberg_maclane(QQ, 1, 1, 4)
t = a.tensor(a)
print("  K(l,1) (x) K(l,1) level dims:", t.level_dims)
print("  homotopy:", t.homotopy_dims().to_list(3))
