from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np
import pytest

from clustervol.angles import lobachevsky, max_volume_angles, shapes_from_angles
from clustervol.cluster import B_TORUS
from clustervol.dilog import bloch_wigner
from clustervol.gluing import EdgeTracker, Layer, class_products
from clustervol.torus import torus_edge_matrix


def test_lobachevsky_is_half_clausen():
    for t in (0.3, math.pi / 6, 1.0, 2.0):
        cl = float(mpmath.clsin(2, 2 * t))
        assert lobachevsky(t)[0] == pytest.approx(0.5 * cl, abs=1e-13)
    assert lobachevsky(0.0)[0] == 0.0


def test_figure_eight_angle_structure():
    # two regular ideal tetrahedra maximize the volume
    theta = max_volume_angles(torus_edge_matrix("RL"), 2)
    assert theta == pytest.approx(np.full((2, 3), math.pi / 3), abs=1e-9)
    zs = shapes_from_angles(theta)
    assert sum(bloch_wigner(z) for z in zs) == pytest.approx(2.029883212819307, abs=1e-9)


def test_tracker_single_flip():
    # one mutation at slot 0 with modulus w: the dead edge gets w, the born edge starts at w,
    # and every other edge picks up w'' or w' according to the sign of b_0e
    w = 0.3 + 0.7j
    tr = EdgeTracker(B_TORUS).run([Layer(((0, w, "t"),), ())])
    bottom = tr.edges[:3]
    born = tr.edges[3]
    assert bottom[0].product == pytest.approx(w)
    assert bottom[1].product == pytest.approx((1 - 1 / w) ** 2)  # b_01 = -2
    assert bottom[2].product == pytest.approx((1 / (1 - w)) ** 2)  # b_02 = 2
    assert born.product == pytest.approx(w)
    assert [e is s for e, s in zip(tr.alive(), [born, bottom[1], bottom[2]])] == [True] * 3
    assert class_products([[bottom[0], born]]) == [pytest.approx(w * w)]
