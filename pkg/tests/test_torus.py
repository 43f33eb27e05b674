from __future__ import annotations

import math

import pytest

from clustervol.cluster import B_TORUS, Seed, YTuple, mutate, mutate_y, permute, y_from_seed
from clustervol.dilog import PI2, PI2_6, plog
from clustervol.errors import BadSymbol, InvalidInput, NonHyperbolic
from clustervol.semifield import ONE
from clustervol.torus import (
    flip_torus_seed,
    flip_torus_y,
    parse_torus_word,
    torus_complex_volume,
    torus_volume,
    torus_x_level,
)

from conftest import TORUS_WORDS, torus_pattern
from test_dilog import clausen

FIGURE_EIGHT = 2 * clausen(math.pi / 3)


def mod_distance(a, b, m):
    d = (a - b) / m
    return abs(d - round(d)) * m


def test_parse():
    assert parse_torus_word("rll").letters == "RLL"
    assert parse_torus_word(" RL ").c == 2
    with pytest.raises(InvalidInput):
        parse_torus_word("")
    with pytest.raises(BadSymbol, match="position 2"):
        parse_torus_word("RXL")
    with pytest.raises(NonHyperbolic, match="monodromy must contain both R and L"):
        parse_torus_word("RRRR")


@pytest.mark.parametrize("letter,slot,swap", [("R", 0, (0, 2)), ("L", 1, (1, 2))])
def test_flips_are_mutation_then_transposition(letter, slot, swap):
    y = YTuple((0.3 + 0.4j, -1.2 + 0.5j, 2.0 - 0.7j))
    m, b = mutate_y(y, B_TORUS, slot)
    assert flip_torus_y(y, letter).y == pytest.approx(permute(m, *swap).y, abs=1e-14)
    assert permute(b, *swap) == B_TORUS
    seed = Seed((1.1 + 0.2j, 0.7 - 0.3j, -0.4 + 1.0j), (ONE,) * 3, B_TORUS)
    want = permute(mutate(seed, slot), *swap)
    got = flip_torus_seed(seed, letter)
    assert got.x == pytest.approx(want.x, abs=1e-14)
    assert got.eps == want.eps and got.b == B_TORUS
    # the flip on seeds induces the flip on y-variables
    assert y_from_seed(got).y == pytest.approx(flip_torus_y(y_from_seed(seed), letter).y, abs=1e-13)


def test_rll_golden():
    pat = torus_pattern("RLL")
    cv = torus_complex_volume(pat)
    assert cv.volume == pytest.approx(2.6667, abs=5e-4)
    assert cv.cs == pytest.approx(-0.4112, abs=5e-4)
    assert cv.modulus == "pi^2"
    x2 = pat.x[0][1] / pat.x[0][0]
    assert min(abs(x2 - s * (0.6760 + 0.9783j)) for s in (1, -1)) < 5e-4
    assert [(f.p, f.q) for f in pat.flats] == [(0, -1), (0, 1), (0, 1)]
    assert pat.signs == [1, -1, -1]


def test_rll_second_sign_choice():
    pat = torus_pattern("RLL")
    assert len(pat.x_solutions) == 2
    other = torus_x_level("RLL", pat.x_solutions[1])
    assert [(f.p, f.q) for f in other.flats] == [(0, 1), (-2, 1), (2, -1)]


def test_figure_eight_torus():
    pat = torus_pattern("RL")
    assert torus_volume(pat) == pytest.approx(FIGURE_EIGHT, abs=1e-9)
    assert abs(torus_complex_volume(pat).cs) < 1e-8
    assert abs(torus_complex_volume(pat, "unoriented").cs) < 1e-8


@pytest.mark.parametrize("word,rotated", [("RLL", "LLR"), ("RRLL", "LRRL"), ("RLRLL", "LLRLR")])
def test_conjugate_words_agree(word, rotated):
    a, b = torus_pattern(word), torus_pattern(rotated)
    assert torus_volume(a) == pytest.approx(torus_volume(b), abs=1e-9)
    assert mod_distance(torus_complex_volume(a).cs, torus_complex_volume(b).cs, PI2) < 1e-8


@pytest.mark.parametrize("word,mirror", [("RLRLL", "RRLRL"), ("RRRL", "RLLL"), ("RLL", "RRL")])
def test_mirror_words_negate_cs(word, mirror):
    # exchanging R and L reverses orientation
    a, b = torus_pattern(word), torus_pattern(mirror)
    assert torus_volume(a) == pytest.approx(torus_volume(b), abs=1e-9)
    assert mod_distance(torus_complex_volume(a).cs, -torus_complex_volume(b).cs, PI2) < 1e-8


def test_invariants(torus_pat):
    pat = torus_pat
    assert pat.residuals["periodicity"] < 1e-9
    assert pat.residuals["gluing_max"] < 1e-9
    assert pat.residuals["completeness_max"] < 1e-9
    assert all(e == (ONE, ONE, ONE) for e in pat.eps)
    assert all(z.imag > 0 for z in pat.z_y)
    cv = torus_complex_volume(pat)
    assert cv.volume == pytest.approx(torus_volume(pat), abs=1e-9)
    un = torus_complex_volume(pat, "unoriented")
    assert un.volume == pytest.approx(torus_volume(pat), abs=1e-9)
    # the two presentations agree modulo pi^2/6
    assert mod_distance(cv.cs, un.cs, PI2_6) < 1e-8


def raw_parameters(word, x):
    """Unrounded (p, q) of the oriented flattenings, recomputed from the cluster variables."""
    out = []
    for k, ch in enumerate(word):
        x1, x2, x3 = x[k]
        n3 = x[k + 1][2]
        a, other = (x1, x2) if ch == "R" else (x2, x1)
        z = a * n3 / x3**2
        p = (plog(a) + plog(n3) - 2 * plog(x3) - plog(z)) / (math.pi * 1j)
        q = (2 * plog(x3) - 2 * plog(other) + plog(1 - z)) / (math.pi * 1j)
        out.append((p, q))
    return out


def test_flattenings_integral(torus_pat):
    raw = raw_parameters(torus_pat.word.letters, torus_pat.x)
    for (p, q), f in zip(raw, torus_pat.flats):
        assert abs(p - f.p) < 1e-6 and abs(q - f.q) < 1e-6


def test_scaling_invariance(torus_pat):
    word = torus_pat.word.letters
    base = torus_x_level(word, torus_pat.x[0])
    scaled = torus_x_level(word, [(2 + 1j) * v for v in torus_pat.x[0]])
    for f, g in zip(base.flats, scaled.flats):
        assert abs(f.z - g.z) < 1e-9
        assert (f.p, f.q) == (g.p, g.q)


def test_word_list_is_large_enough():
    assert len(TORUS_WORDS) >= 10


@pytest.mark.parametrize("word", ["RRLL", "RRRL", "RLRLL", "RRRRRRRL"])
def test_volume_is_angle_structure_maximum(word):
    # the maximum of the volume functional over angle structures equals the solved volume
    from clustervol.angles import lobachevsky, max_volume_angles
    from clustervol.torus import torus_edge_matrix

    theta = max_volume_angles(torus_edge_matrix(word), len(word))
    assert float(lobachevsky(theta.ravel()).sum()) == pytest.approx(torus_volume(torus_pattern(word)), abs=1e-9)
