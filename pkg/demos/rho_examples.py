"""The constant-loop map rho on small simplices, and a check that it is a chain map.

Run:  python demos/rho_examples.py
"""
from loopchains.constloops import chi_simplex, rho_simplex
from loopchains.exactalg import format_coefficient
from loopchains.simplicial import standard_simplex
from loopchains.verify import VerifyConfig, run_suite


def show(title, terms):
    print(title)
    for n, c in terms.items():
        print(f"  {format_coefficient(c)}·{n}")


for k in range(3):
    show(f"rho(Δ{k}):", rho_simplex(tuple(range(k + 1))))

# For simplices of dimension <= 1 the two constructions agree; from dimension 2
# on they differ, and are only chain homotopic.
show("chi(Δ2):", chi_simplex((0, 1, 2)))

print()
print(run_suite("chainmap-rho", standard_simplex(5), VerifyConfig(max_dim=5)).to_text())
print(run_suite("chainmap-chi", standard_simplex(3), VerifyConfig(max_dim=3)).to_text())
