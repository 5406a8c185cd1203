import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexspine.errors import Infeasible, NoIntersection, NotDisjoint, NotIncident, TangentDegenerate
from hexspine.hplane import (
    ORIGIN,
    Angle,
    Geodesic,
    Isometry,
    Point,
    angle_at,
    bar,
    common_perpendicular,
    distance,
    epsilon_edge,
    get_tolerance,
    intersection,
    midpoint,
    omega_at,
    pencil_band,
    pencil_line,
    set_tolerance,
    solve_right_triangle,
    solve_triangle,
)

coords = st.floats(-3, 3)
eps_st = st.floats(0.05, math.pi - 0.05)


def random_isometry(seed):
    rng = np.random.default_rng(seed)
    p = Point.polar(rng.uniform(0, 2), rng.uniform(0, 2 * math.pi))
    g = Isometry.translation(Geodesic.from_point_direction(ORIGIN, [1.0, 0.0, 0.0]), rng.uniform(-2, 2))
    return Isometry.rotation(p, rng.uniform(0, 2 * math.pi)) @ g


def imag_axis():
    return Geodesic.from_halfplane_endpoints(0.0, math.inf)


# -- points and charts -------------------------------------------------------


@given(st.floats(-5, 5), st.floats(0.05, 5))
def test_halfplane_round_trip(x, y):
    p = Point.from_halfplane(complex(x, y))
    assert p.constraint_residual() <= 1e-12 * max(1.0, p.vec[2] ** 2)
    z = p.to_halfplane()
    assert abs(z - complex(x, y)) <= 1e-12 * max(1.0, abs(z)) * 10


def test_disc_chart_origin():
    assert abs(ORIGIN.to_disc()) < 1e-15
    assert abs(ORIGIN.to_halfplane() - 1j) < 1e-15


def test_distance_halfplane_vertical():
    a, b = Point.from_halfplane(1j), Point.from_halfplane(math.e * 1j)
    assert distance(a, b) == pytest.approx(1.0, abs=1e-12)


def test_midpoint_equidistant():
    a, b = Point.polar(1.0, 0.3), Point.polar(2.0, 2.0)
    m = midpoint(a, b)
    assert distance(a, m) == pytest.approx(distance(a, b) / 2, abs=1e-10)
    assert distance(b, m) == pytest.approx(distance(a, b) / 2, abs=1e-10)


# -- geodesics ---------------------------------------------------------------


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_geodesic_parametrisation_is_arclength(s, t):
    g = Geodesic.through(Point.polar(0.7, 1.0), Point.polar(1.5, -2.0))
    assert distance(g.point_at(s), g.point_at(t)) == pytest.approx(abs(s - t), abs=1e-9)
    assert g.contains(g.point_at(0.0))


def test_halfplane_endpoints_round_trip():
    g = Geodesic.from_halfplane_endpoints(-1.0, 3.0)
    a, b = g.halfplane_endpoints()
    assert sorted([a, b]) == pytest.approx([-1.0, 3.0], abs=1e-9)


# -- angles ------------------------------------------------------------------


def test_perpendicular_lines_through_i():
    g1 = imag_axis()
    g2 = Geodesic.from_halfplane_endpoints(-1.0, 1.0)
    p = Point.from_halfplane(1j)
    assert float(angle_at(g1, g2, p)) == pytest.approx(math.pi / 2, abs=1e-12)


@given(st.floats(0.1, math.pi - 0.1), st.floats(-2, 2))
def test_angle_swap_rule(theta, s):
    g1 = Geodesic.through(Point.polar(0.4, 0.2), Point.polar(1.1, 2.9))
    p = g1.point_at(s)
    g2 = pencil_line(g1, s, theta)
    assert float(angle_at(g1, g2, p)) + float(angle_at(g2, g1, p)) == pytest.approx(math.pi, abs=1e-9)


def test_angle_errors():
    g1 = imag_axis()
    far = Point.polar(2.0, 0.3)
    g2 = Geodesic.from_halfplane_endpoints(-1.0, 1.0)
    with pytest.raises(NotIncident):
        angle_at(g1, g2, far)
    with pytest.raises(TangentDegenerate):
        angle_at(g1, g1.reversed(), g1.point_at(0.0))


def test_angle_bar_round_trip_exact():
    for x in (0.1, 0.3, 1.0, 2.0, math.pi / 2, 3.0):
        a = Angle(x)
        assert a.bar().bar() == a
        assert float(bar(bar(x))) == x


@given(eps_st, st.integers(0, 10_000))
@settings(max_examples=30)
def test_angles_invariant_under_isometry(theta, seed):
    g = random_isometry(seed)
    g1 = Geodesic.through(Point.polar(0.4, 0.2), Point.polar(1.1, 2.9))
    g2 = pencil_line(g1, 0.3, theta)
    p = g1.point_at(0.3)
    assert float(angle_at(g(g1), g(g2), g(p))) == pytest.approx(theta, abs=1e-9)


# -- pencils, omega, eps-edges -----------------------------------------------


@given(eps_st, st.floats(-3, 3))
def test_pencil_line_angle(eps, s):
    d = imag_axis()
    f = pencil_line(d, s, eps)
    assert float(angle_at(d, f, d.point_at(s))) == pytest.approx(eps, abs=1e-10)


def test_pencil_right_angle_is_perpendicular():
    d = imag_axis()
    f = pencil_line(d, 0.0, math.pi / 2)
    assert f.same_line(Geodesic.from_halfplane_endpoints(-1.0, 1.0))


@given(eps_st, st.floats(-3, 3), st.floats(0.01, 3))
@settings(max_examples=40)
def test_pencil_lines_disjoint(eps, s, gap):
    d = imag_axis()
    assert intersection(pencil_line(d, s, eps), pencil_line(d, s + gap, eps)) is None


def _disjoint_pair(h=1.0):
    delta = Geodesic(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    deltap = Geodesic(np.array([0.0, -math.sinh(h), math.cosh(h)]), np.array([1.0, 0.0, 0.0]))
    return delta, deltap


@pytest.mark.parametrize("eps", [0.3, 1.0, math.pi / 2, 2.2])
def test_omega_increasing_over_band(eps):
    delta, deltap = _disjoint_pair(0.8)
    lo, hi = pencil_band(delta, deltap, eps)
    xs = np.linspace(lo, hi, 42)[1:-1]
    om = [float(omega_at(delta, deltap, x, eps)) for x in xs]
    assert all(b > a for a, b in zip(om, om[1:]))
    # the band edges are where omega reaches 0 and pi
    w = hi - lo
    assert 0 < float(omega_at(delta, deltap, lo + 1e-6 * w, eps)) < 0.05
    assert math.pi - 0.05 < float(omega_at(delta, deltap, hi - 1e-6 * w, eps)) < math.pi


def test_omega_outside_band():
    delta, deltap = _disjoint_pair(0.8)
    lo, hi = pencil_band(delta, deltap, 1.0)
    with pytest.raises(NoIntersection):
        omega_at(delta, deltap, hi + 1.0, 1.0)
    with pytest.raises(NoIntersection):
        omega_at(delta, deltap, lo - 1.0, 1.0)


@pytest.mark.parametrize("h", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("eps", [0.2, math.pi / 3, 1.0, 2.0, 2.9])
def test_epsilon_edge_midpoint_property(h, eps):
    delta, deltap = _disjoint_pair(h)
    P, Om, length = epsilon_edge(delta, deltap, eps)
    s = delta.parameter_of(P)
    assert float(omega_at(delta, deltap, s, eps)) == pytest.approx(eps, abs=1e-10)
    S, Sp, H = common_perpendicular(delta, deltap)
    assert distance(midpoint(P, Om), midpoint(S, Sp)) < 1e-9
    assert distance(P, S) == pytest.approx(distance(Om, Sp), abs=1e-9)
    assert distance(P, S) < length / 2


def test_epsilon_edge_right_angle_is_perpendicular():
    delta, deltap = _disjoint_pair(1.1)
    P, Om, length = epsilon_edge(delta, deltap, math.pi / 2)
    S, Sp, H = common_perpendicular(delta, deltap)
    assert length == pytest.approx(H, abs=1e-10)
    assert distance(P, S) < 1e-9 and distance(Om, Sp) < 1e-9


def test_epsilon_edge_rejects_meeting_lines():
    g1 = imag_axis()
    g2 = Geodesic.from_halfplane_endpoints(-1.0, 1.0)
    with pytest.raises(NotDisjoint):
        epsilon_edge(g1, g2, 1.0)


def test_common_perpendicular_concentric():
    t = 0.9
    g1 = Geodesic.from_halfplane_endpoints(-1.0, 1.0)
    g2 = Geodesic.from_halfplane_endpoints(-math.exp(t), math.exp(t))
    S, Sp, L = common_perpendicular(g1, g2)
    assert L == pytest.approx(t, abs=1e-10)
    assert g1.contains(S, tol=1e-10) and g2.contains(Sp, tol=1e-10)


@given(st.integers(0, 10_000))
@settings(max_examples=25)
def test_common_perpendicular_isometry_invariant(seed):
    g = random_isometry(seed)
    delta, deltap = _disjoint_pair(0.7)
    L0 = common_perpendicular(delta, deltap)[2]
    assert common_perpendicular(g(delta), g(deltap))[2] == pytest.approx(L0, abs=1e-10)


# -- isometries --------------------------------------------------------------


@given(st.integers(0, 10_000), st.integers(0, 10_000))
@settings(max_examples=30)
def test_isometry_group_closure(a, b):
    g = random_isometry(a) @ random_isometry(b).inverse()
    # rounding grows with the squared entry size of the product
    scale = max(1.0, float(np.max(np.abs(g.matrix)))) ** 2
    assert g.renormalized().orthogonality_residual() < 1e-10 * max(1.0, scale / 100)
    assert (g @ g.inverse()).orthogonality_residual() < 1e-10 * max(1.0, scale / 100)


@given(st.floats(0.1, 5))
def test_translation_trace(ell):
    g = Isometry.translation(imag_axis(), ell)
    assert g.classify()[0] == "hyperbolic"
    assert g.trace == pytest.approx(1 + 2 * math.cosh(ell), rel=1e-9)
    assert g.translation_length() == pytest.approx(ell, abs=1e-9)
    assert g.axis().same_line(imag_axis())


def test_classification():
    assert Isometry.identity().classify()[0] == "identity"
    assert Isometry.rotation(ORIGIN, 1.0).classify()[0] == "elliptic"
    assert Isometry.reflection(imag_axis()).classify()[0] == "reflection"
    assert not Isometry.reflection(imag_axis()).orientation_preserving


# -- triangles ---------------------------------------------------------------


def test_triangle_for_hexagon_at_right_angle():
    eps = math.pi / 2
    tri = solve_triangle(alpha=eps / 2, beta=(math.pi - eps) / 2, gamma=math.pi / 3)
    assert math.cosh(tri.c) == pytest.approx(2.0, abs=1e-12)
    assert tri.cosine_residual() < 1e-10 and tri.sine_residual() < 1e-10


def test_equilateral_triangle():
    tri = solve_triangle(alpha=math.pi / 4, beta=math.pi / 4, gamma=math.pi / 4)
    assert max(tri.a, tri.b, tri.c) - min(tri.a, tri.b, tri.c) < 1e-12


@given(st.floats(0.2, 3), st.floats(0.2, 3), st.floats(0.2, 2.8))
def test_sas_consistent(b, c, alpha):
    tri = solve_triangle(b=b, c=c, alpha=alpha)
    assert tri.cosine_residual() < 1e-9
    assert tri.alpha + tri.beta + tri.gamma < math.pi


def test_triangle_infeasible():
    with pytest.raises(Infeasible):
        solve_triangle(alpha=1.0, beta=1.0, gamma=1.2)
    with pytest.raises(Infeasible):
        solve_triangle(a=1.0, b=1.0, c=3.0)


@pytest.mark.parametrize("eps", [0.3, 1.0, math.pi / 2, 2.5])
def test_right_triangle_foot_offset(eps):
    L = math.acosh(1 + 1 / math.sin(eps))
    adj, opp, _ = solve_right_triangle(L / 2, eps)
    assert math.tanh(adj) == pytest.approx(math.cos(eps) * math.tanh(L / 2), abs=1e-12)
    if eps == math.pi / 2:
        assert adj == pytest.approx(0.0, abs=1e-12)


def test_tolerance_setting():
    old = set_tolerance(1e-8)
    try:
        assert get_tolerance() == 1e-8
        with pytest.raises(ValueError):
            set_tolerance(1.0)
    finally:
        set_tolerance(old)
