"""The two-bridge knot K(2/9), continued fraction [4, 2].

Shows the y-level solution, the x-level constant and both complex volume
presentations: the general one modulo pi^2/6 and the signed double-twist
one modulo pi^2.
"""

from __future__ import annotations

from clustervol.twobridge import (
    bridge_complex_volume,
    continued_fraction,
    double_twist_oriented,
    double_twist_tetrahedra,
    solve_two_bridge,
)

spec = continued_fraction(9, 2)
print(f"continued fraction {list(spec.cf)}, flips {spec.word}, boundary case {spec.case}")

pat = solve_two_bridge(spec)
print(f"y = {pat.y_value:.6f}   x = {pat.x_value:.6f}   coefficient case {pat.eps_case}")

print("\n k  sign  z                      p   q")
for t in double_twist_tetrahedra(pat):
    print(f" {t.k}  {t.sign:+d}   {t.flat.z:.6f}  {t.flat.p:>3} {t.flat.q:>3}")

gen = bridge_complex_volume(pat)
ori = double_twist_oriented(spec, pat=pat)
print(f"\ngeneral : Vol = {gen.volume:.10f}  CS = {gen.cs:.10f} (mod {gen.modulus})")
print(f"oriented: Vol = {ori.volume:.10f}  CS = {ori.cs:.10f} (mod {ori.modulus})")
