"""Condition numbers of the discrete pencils, before and after treatment.

The outlier layer inflates lambda_max and with it the stiffness-to-mass
condition number gamma = lambda_max / lambda_min, which drives iteration
counts and explicit time-step limits.  Removing the layer shrinks gamma
by a degree-dependent factor that this script tabulates in 1D, 2D and 3D.

    python3 demos/conditioning.py
"""
from igaspectra import condition_summary

CASES = [(1, 100), (2, 48), (3, 16)]

print("dim  p   n    lambda_min  lambda_max   treated_max   gamma"
      "      treated    reduction")
for dim, n in CASES:
    for p in (3, 4, 5):
        r = condition_summary(dim, p, n)
        print(f"  {dim}  {p}  {n:>3d}   {r.lambda_min:>9.3e} "
              f"{r.lambda_max:>11.3e}  {r.lambda_max_treated:>11.3e} "
              f"{r.gamma:>10.3e} {r.gamma_treated:>10.3e}   {r.reduction_percent:6.2f}%")
    print()

print("""lambda_min is untouched (the smallest modes are already accurate),
so the whole reduction comes from pruning lambda_max.  The percentage
grows with degree, about 32% / 60% / 75% for p = 3 / 4 / 5, and is
nearly dimension independent because the pencil separates per axis.""")
