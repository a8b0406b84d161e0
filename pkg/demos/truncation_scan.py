"""Homology of weight truncations of the necklace complex, and why it oscillates.

The homology of a single truncation F_w does not settle as w grows: a loop
that runs through an inverse edge becomes a boundary only in F_{w+2}, where
the marked point can be moved across that edge. The rank of the map
H(F_w) -> H(F_w') between truncations, on the other hand, settles quickly.

Run:  python demos/truncation_scan.py
"""
from loopchains.exactalg import QQ
from loopchains.homology import format_scan, persistent_betti, stabilization_scan
from loopchains.simplicial import boundary_of_simplex, standard_simplex

sphere = boundary_of_simplex(3)
print("H_0 of the truncations of the necklace complex of ∂Δ3:")
print(format_scan(stabilization_scan(sphere, 0, 0, 6, QQ)))
print()
print("rank H_0(F_w) -> H_0(F_w+2):", [persistent_betti(sphere, 0, w, w + 2) for w in range(0, 6)])

tri = standard_simplex(2)
print()
print("H_1 of the truncations for Δ2:", [r.betti for r in stabilization_scan(tri, 1, 2, 5, QQ)])
print("rank H_1(F_w) -> H_1(F_w+3):", [persistent_betti(tri, 1, w, w + 3) for w in range(2, 6)])
