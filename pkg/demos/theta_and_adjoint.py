"""theta on the degree <= 2 truncation of k[x,y,z] with H = k(Z/3)*, and the
adjunction map on pieces of the equivariant resolution of R_0."""

from hopfsmash.actions import action_from_grading
from hopfsmash.fdalgebra import truncated_algebra
from hopfsmash.groups import cyclic
from hopfsmash.modules import adjoint_phi, regular_module, resolution_piece, theta
from hopfsmash.quiver import commutative_polynomial
from hopfsmash.resolution import minimal_resolution

R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
act = action_from_grading(R3)
H = act.hopf
A = truncated_algebra(R3, 2)

th = theta(regular_module(A, H, act.truncate(A)), random_pairs=100, seed=0)
print(th.report.text())

res = minimal_resolution(R3, N=4, D=6, equivariant=(H, act))
for n, t in [(0, 2), (1, 2), (2, 3)]:
    M = resolution_piece(res, n, truncated_algebra(R3, t), t)
    rep = adjoint_phi(H.left_regular, M, M).report
    print(f"P^-{n}: {rep.status}, dim {rep.details['dim_source']}, "
          f"{rep.details['equivariance_checks']} equivariance checks")
