"""From the fundamental cycle of the 2-sphere to the coHochschild complex.

The sphere is the boundary of the 3-simplex. Collapsing the three faces that
contain vertex 3 leaves a one-vertex, edge-free quotient with a single
2-dimensional class. The image of rho(c) under theta_pi is the closed element
(id)σ + (σ|σ)ε.

Run:  python demos/sphere_pipeline.py
"""
from loopchains.constloops import rho
from loopchains.homology import coch_homology, format_coch, simplicial_cycles, theta_pi
from loopchains.necklace import D_sum
from loopchains.simplicial import boundary_of_simplex, collapse_subcomplex, fmt_simplex, quotient_chains

X = boundary_of_simplex(3)
A = collapse_subcomplex(X, [(0, 1, 3), (0, 2, 3), (1, 2, 3)])
q = quotient_chains(X, A, require_reduced=True)

(c,) = simplicial_cycles(X, 2)
print("fundamental cycle:", c.to_text(fmt_simplex))

a = rho(c)
print(f"rho(c) has {len(a)} necklaces; D rho(c) has {len(D_sum(a.raw()))} terms")

print("theta_pi(rho(c)) =")
print(format_coch(theta_pi(a, q)))

for n in range(4):
    betti, torsion = coch_homology(q, n)
    print(f"coHochschild H_{n}: betti {betti}" + (f", torsion {torsion}" if torsion else ""))
