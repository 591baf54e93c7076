"""Lift W = xyz - yxz to the covering quiver and compare Jacobian algebras."""

from hopfsmash.actions import covering_presentation
from hopfsmash.groups import cyclic
from hopfsmash.quiver import commutative_polynomial, hilbert_function
from hopfsmash.superpotential import (Superpotential, SuperpotentialError, cyclic_derivative,
                                      jacobian_presentation, lift_superpotential)

R3 = commutative_polynomial(3, cyclic(3), ["g", "g", "g"])
W = Superpotential.from_words(R3.quiver, [(1, "xyz"), (-1, "yxz")])
for a in "xyz":
    print(f"d_{a} W =", cyclic_derivative(W, a))

Wl, _ = lift_superpotential(W)
print("lift:", Wl)
S, _ = covering_presentation(R3)
print("J(Q', W')  dims:", hilbert_function(jacobian_presentation(Wl), 5))
print("covering   dims:", hilbert_function(S, 5))

R2 = commutative_polynomial(3, cyclic(2), ["g", "g", "g"])
try:
    lift_superpotential(Superpotential.from_words(R2.quiver, [(1, "xyz"), (-1, "yxz")]))
except SuperpotentialError as exc:
    print("Z/2:", exc)
