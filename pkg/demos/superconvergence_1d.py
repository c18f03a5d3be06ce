"""Eigenvalue superconvergence on the unit interval.

A fully integrated Galerkin discretisation approximates Laplace
eigenvalues at rate h^(2p).  The blended quadrature plus the endpoint
penalty lifts that to h^(2p+2) without changing the space or the cost.
This script prints the error tables and fitted rates for both schemes.

    python3 demos/superconvergence_1d.py
"""
from igaspectra import convergence_table

MESHES = {3: (5, 10, 20, 40), 4: (5, 10, 20), 5: (5, 10, 20)}


def show(degree, quadrature, penalty, label):
    rows, rates = convergence_table(1, degree, MESHES[degree],
                                    quadrature=quadrature, penalty=penalty)
    print(f"  {label}")
    print("    n     lambda_1 err   lambda_6 err   H1 err (mode 1)  L2 err")
    for r in rows:
        print(f"    {r['n_elements']:<4d}  {r['lambda_rel_error_mode1']:>12.3e} "
              f"{r['lambda_rel_error_mode6']:>14.3e} "
              f"{r['h1_error_mode1']:>16.3e} {r['l2_error_mode1']:>9.3e}")

    def fmt(key):
        v = rates[key]
        return "saturated" if v is None else f"{v:.2f}"

    print(f"    rates: lambda_1 {fmt('lambda_rel_error_mode1')}, "
          f"lambda_6 {fmt('lambda_rel_error_mode6')}, "
          f"H1 {fmt('h1_error_mode1')}, L2 {fmt('l2_error_mode1')}")


for p in (3, 4, 5):
    print(f"\ndegree p = {p}  (standard rate 2p = {2 * p}, "
          f"superconvergent rate 2p+2 = {2 * p + 2})")
    show(p, "gauss", False, "full Gauss, no penalty:")
    show(p, "blended", True, "blended + penalty:")

print("""
Reading the tables: the eigenvalue columns of the treated scheme drop
two extra orders per refinement until they hit machine noise near 1e-15
(the p = 5 mode-1 column saturates after one refinement, hence no rate).
The eigenfunction columns keep the standard rates p (H1) and p+1 (L2):
the gain is specific to the spectrum.""")
