import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hexspine.errors import OutOfRange
from hexspine.hexagon import (
    BLUE,
    RED,
    build_hexagon,
    colour_of,
    cosh_side_length,
    saccheri_diagonal,
    side_length,
    side_midpoints,
)
from hexspine.hplane import angle_at, distance

eps_st = st.floats(0.02, math.pi - 0.02)


@given(eps_st)
def test_hexagon_invariants(eps):
    hx = build_hexagon(eps)
    L = side_length(eps)
    assert max(abs(s - L) for s in hx.measured_side_lengths()) < 1e-10 * max(1.0, L)
    inner = hx.measured_inner_angles()
    for m, a in enumerate(inner, start=1):
        assert a == pytest.approx(eps if m % 2 == 1 else math.pi - eps, abs=1e-10)
    assert math.cosh(L) == pytest.approx(1 + 1 / math.sin(eps), rel=1e-12)


@given(eps_st)
def test_red_then_blue_angle_is_eps(eps):
    hx = build_hexagon(eps)
    for i in range(1, 7, 2):
        red, blue = hx.side(i), hx.side(i + 1)
        assert colour_of(i) == RED and colour_of(i + 1) == BLUE
        assert float(angle_at(red, blue, hx.vertex(i + 1))) == pytest.approx(eps, abs=1e-10)


def test_right_angled_values():
    hx = build_hexagon(math.pi / 2)
    assert hx.side_length == pytest.approx(math.acosh(2.0), abs=1e-12)
    assert hx.side_length == pytest.approx(1.316958, abs=1e-6)
    assert all(a == pytest.approx(math.pi / 2, abs=1e-12) for a in hx.measured_inner_angles())


def test_measured_against_closed_form_at_03():
    # coordinate construction vs closed form
    hx = build_hexagon(0.3)
    closed = math.acosh(1 + 1 / math.sin(0.3))
    assert max(abs(s - closed) for s in hx.measured_side_lengths()) <= 1e-10


@pytest.mark.parametrize("eps", [0.0, -0.1, math.pi, 4.0])
def test_out_of_range(eps):
    with pytest.raises(OutOfRange):
        build_hexagon(eps)
    with pytest.raises(OutOfRange):
        cosh_side_length(eps)


def test_colours_alternate():
    assert all(colour_of(i) != colour_of(i + 1) for i in range(1, 7))


def test_side_length_monotone():
    xs = np.linspace(0.05, math.pi / 2, 50)
    ls = [side_length(x) for x in xs]
    assert all(b < a for a, b in zip(ls, ls[1:]))
    xs = np.linspace(math.pi / 2, math.pi - 0.05, 50)
    ls = [side_length(x) for x in xs]
    assert all(b > a for a, b in zip(ls, ls[1:]))


@pytest.mark.parametrize("eps", [0.4, 1.0, math.pi / 2, 2.6])
def test_midpoints(eps):
    hx = build_hexagon(eps)
    mids = side_midpoints(hx)
    for i, mp in enumerate(mids, start=1):
        assert distance(mp, hx.vertex(i)) == pytest.approx(hx.side_length / 2, abs=1e-10)
        assert hx.side(i).contains(mp, tol=1e-10)
    rot = hx.rotation()
    for i in range(6):
        assert distance(rot(mids[i]), mids[(i + 2) % 6]) < 1e-9


def test_midpoints_equidistant_in_regular_case():
    hx = build_hexagon(math.pi / 2)
    ds = [distance(hx.center, m) for m in side_midpoints(hx)]
    assert max(ds) - min(ds) < 1e-10


def test_saccheri():
    Lp = saccheri_diagonal()
    L = side_length(math.pi / 2)
    assert math.cosh(Lp) == pytest.approx(5.0, abs=1e-12)
    assert math.cosh(2 * L) == pytest.approx(7.0, abs=1e-12)
    assert Lp < 2 * L
    with pytest.raises(OutOfRange):
        saccheri_diagonal(1.0)


def test_saccheri_is_opposite_vertex_distance():
    # independent oracle: distance between opposite vertices of the regular hexagon
    hx = build_hexagon(math.pi / 2)
    assert distance(hx.vertex(1), hx.vertex(4)) == pytest.approx(saccheri_diagonal(), abs=1e-12)
