"""Walk through the once-punctured torus bundle with monodromy RLL.

Run with ``python3 demos/torus_rll.py``.
"""

from __future__ import annotations

from clustervol.report import torus_report
from clustervol.torus import solve_torus, torus_complex_volume

pat = solve_torus("RLL")

print("Periodic y-pattern solution (upper half plane moduli):")
for k, z in enumerate(pat.z_y, 1):
    print(f"  z[{k}] = {z:.6f}")

print("\nInitial cluster variables x[1]:", [f"{v:.6f}" for v in pat.x[0]])
print("Flattenings (p, q):", [(f.p, f.q) for f in pat.flats])

for mode in ("oriented", "unoriented"):
    cv = torus_complex_volume(pat, mode)
    print(f"{mode:>10}: Vol = {cv.volume:.10f}  CS = {cv.cs:.10f} (mod {cv.modulus})")

print()
print(torus_report(pat).to_text())
