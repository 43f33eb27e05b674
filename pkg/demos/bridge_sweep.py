"""Volumes and Chern-Simons invariants of all two-bridge links K(q/p), p <= 15."""

from __future__ import annotations

import math
import time

from clustervol.twobridge import bridge_complex_volume, continued_fraction, solve_two_bridge

print(f"{'q/p':>6} {'cf':<12} {'Vol':>12} {'CS mod pi^2/6':>14} {'ms':>6}")
for p in range(5, 16):
    for q in range(2, (p + 1) // 2):
        if math.gcd(p, q) != 1:
            continue
        t0 = time.perf_counter()
        spec = continued_fraction(p, q)
        cv = bridge_complex_volume(solve_two_bridge(spec))
        ms = 1000 * (time.perf_counter() - t0)
        cf = ",".join(map(str, spec.cf))
        print(f"{q:>3}/{p:<2} [{cf}]{'':<{10 - len(cf)}} {cv.volume:12.8f} {round(cv.cs, 8) + 0.0:14.8f} {ms:6.0f}")
