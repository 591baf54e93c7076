"""Cohomology of two small dg algebras and of a dg smash product with kZ/2."""

from hopfsmash.dg import cohomology_algebra, dg_algebra, dg_smash_cohomology_check
from hopfsmash.io import load_bundle

mult = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]]]
A = dg_algebra(["1", "a", "a2"], [0, 1, 2], mult, [[0, 0, 0], [0, 0, 0], [0, 1, 0]])
print("k[a]/(a^3), d(a) = a^2:  dims H(A) =", cohomology_algebra(A).dims)

b = load_bundle("dg_small")
rep = dg_smash_cohomology_check(b.dg, b.hopf, b.dg_action)
print(rep.text())
