"""A chain homotopy between rho and chi, solved over the integers.

h is found on the standard simplex by an integer linear solve over a weight
truncation of the necklace complex, and transported to other simplices by
relabelling vertices, so it is natural by construction.

Run:  python demos/homotopy.py [k]     (default k = 2)
"""
import sys
import time

from loopchains.constloops import homotopy_defect, synthesize_homotopy
from loopchains.exactalg import format_coefficient

k = int(sys.argv[1]) if len(sys.argv) > 1 else 2
sigma = tuple(range(k + 1))
t = time.time()
h = synthesize_homotopy(sigma)
print(f"h(Δ{k}) has {len(h)} terms ({time.time() - t:.1f}s)")
for n, c in list(h.items())[:20]:
    print(f"  {format_coefficient(c)}·{n}")
if len(h) > 20:
    print("  ...")
print("D h + h ∂ - (chi - rho) =", homotopy_defect(sigma) or 0)
