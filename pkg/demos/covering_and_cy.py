"""k[x,y,z] graded by Z/n with x, y, z in degree g: the covering quiver of
R#k(Z/n)* and the Calabi-Yau test for n = 1, 2, 3."""

from hopfsmash import cy_check
from hopfsmash.actions import covering_presentation
from hopfsmash.groups import cyclic
from hopfsmash.quiver import commutative_polynomial, hilbert_function

for n in (1, 2, 3):
    G = cyclic(n)
    R = commutative_polynomial(3, G, [G.labels[1 % n]] * 3)
    S, _ = covering_presentation(R)
    print(f"n = {n}: {len(S.quiver.vertices)} vertices, {len(S.quiver.arrows)} arrows")
    print("  relations:", ", ".join(str(r) for r in S.relations[:3]), "...")
    print("  dims R#H:", hilbert_function(S, 5))
    rep = cy_check(S)
    print(f"  cy: {rep.status} ({rep.details.get('verdict') or rep.first_failure})")
