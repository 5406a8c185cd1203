"""Numeric kernel for the hyperbolic plane.

Everything lives on the upper sheet of the hyperboloid
``X^2 + Y^2 - Z^2 = -1`` with the Minkowski form ``J = diag(1, 1, -1)``.
The upper half-plane chart is available for construction and plotting.

Orientation: a tangent pair ``(u, v)`` at ``p`` is positive when
``det[p, u, v] > 0``.  This agrees with the standard orientation of the
Poincare disc ``(X + iY) / (1 + Z)`` and, through the Cayley map, with the
upper half-plane.  Angles between lines are measured anticlockwise from the
first line to the second and live in ``(0, pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import Infeasible, NoIntersection, NotDisjoint, NotIncident, TangentDegenerate

J = np.diag([1.0, 1.0, -1.0])

DEFAULT_TOL = 1e-9
_tol = DEFAULT_TOL


def get_tolerance() -> float:
    return _tol


def set_tolerance(tol: float) -> float:
    """Set the global residual tolerance; returns the previous value."""
    global _tol
    if not 1e-14 <= tol <= 1e-3:
        raise ValueError(f"tolerance {tol} outside [1e-14, 1e-3]")
    old, _tol = _tol, tol
    return old


def _tol_or_default(tol):
    return _tol if tol is None else tol


# ---------------------------------------------------------------------------
# Minkowski algebra


def mdot(u, v) -> float:
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def lcross(u, v) -> np.ndarray:
    """Lorentz cross product: Minkowski-orthogonal to both arguments."""
    return J @ np.cross(u, v)


def _normalize_timelike(v) -> np.ndarray:
    q = mdot(v, v)
    if q >= 0:
        raise NoIntersection("vector is not timelike")
    v = np.asarray(v, dtype=float) / math.sqrt(-q)
    return v if v[2] > 0 else -v


def _normalize_spacelike(v) -> np.ndarray:
    q = mdot(v, v)
    if q <= 0:
        raise ValueError("vector is not spacelike")
    return np.asarray(v, dtype=float) / math.sqrt(q)


def _acosh_clamped(x: float) -> float:
    return math.acosh(x) if x > 1.0 else 0.0


# ---------------------------------------------------------------------------
# Angles


class Angle(float):
    """A value in ``(0, pi)`` whose complement round-trips exactly.

    ``a.bar()`` is ``pi - a`` numerically, and ``a.bar().bar()`` returns the
    original float bit for bit.
    """

    def __new__(cls, value, _source=None):
        obj = super().__new__(cls, value)
        obj._source = _source
        return obj

    def bar(self) -> "Angle":
        if self._source is not None:
            return self._source
        return Angle(math.pi - float(self), _source=self)


def bar(alpha: float) -> Angle:
    if not isinstance(alpha, Angle):
        alpha = Angle(alpha)
    return alpha.bar()


# ---------------------------------------------------------------------------
# Points


@dataclass(frozen=True, eq=False)
class Point:
    vec: np.ndarray

    @classmethod
    def from_hyperboloid(cls, X: float, Y: float, Z: float) -> "Point":
        return cls(_normalize_timelike(np.array([X, Y, Z], dtype=float)))

    @classmethod
    def from_halfplane(cls, z: complex) -> "Point":
        z = complex(z)
        if z.imag <= 0:
            raise ValueError("half-plane point needs Im z > 0")
        return cls.from_disc((z - 1j) / (z + 1j))

    @classmethod
    def from_disc(cls, w: complex) -> "Point":
        w = complex(w)
        r2 = abs(w) ** 2
        if r2 >= 1.0:
            raise ValueError("disc point needs |w| < 1")
        v = np.array([2 * w.real, 2 * w.imag, 1 + r2]) / (1 - r2)
        return cls(_normalize_timelike(v))

    @classmethod
    def polar(cls, r: float, theta: float) -> "Point":
        """Point at distance ``r`` from the origin in direction ``theta``."""
        s = math.sinh(r)
        return cls(np.array([s * math.cos(theta), s * math.sin(theta), math.cosh(r)]))

    def to_disc(self) -> complex:
        X, Y, Z = self.vec
        return complex(X, Y) / (1 + Z)

    def to_halfplane(self) -> complex:
        w = self.to_disc()
        return 1j * (1 + w) / (1 - w)

    def constraint_residual(self) -> float:
        return abs(mdot(self.vec, self.vec) + 1.0)

    def distance(self, other: "Point") -> float:
        return distance(self, other)

    def __repr__(self):
        return f"Point({self.vec[0]:.6g}, {self.vec[1]:.6g}, {self.vec[2]:.6g})"


ORIGIN = Point(np.array([0.0, 0.0, 1.0]))


def distance(p: Point, q: Point) -> float:
    # sinh form keeps precision for nearby points
    c = -mdot(p.vec, q.vec)
    if c < 1.5:
        diff = p.vec - q.vec
        chord = math.sqrt(max(mdot(diff, diff), 0.0))
        return 2.0 * math.asinh(chord / 2.0)
    return math.acosh(c)


def midpoint(p: Point, q: Point) -> Point:
    return Point(_normalize_timelike(p.vec + q.vec))


def _ideal_to_halfplane(nu) -> float:
    w = complex(nu[0], nu[1]) / nu[2]
    if abs(1 - w) < 1e-15:
        return math.inf
    return (1j * (1 + w) / (1 - w)).real


def _halfplane_to_ideal(a: float) -> np.ndarray:
    if math.isinf(a):
        return np.array([1.0, 0.0, 1.0])
    w = (a - 1j) / (a + 1j)
    return np.array([w.real, w.imag, 1.0])


# ---------------------------------------------------------------------------
# Geodesics


@dataclass(frozen=True, eq=False)
class Geodesic:
    """Oriented complete geodesic with an arclength origin.

    ``point_at(s) = cosh(s) base + sinh(s) tangent``.  The unit normal
    ``J (base x tangent)`` points to the left of the direction of travel.
    """

    base: np.ndarray
    tangent: np.ndarray

    @classmethod
    def through(cls, p: Point, q: Point) -> "Geodesic":
        d = distance(p, q)
        if d == 0:
            raise ValueError("need two distinct points")
        t = (q.vec - math.cosh(d) * p.vec) / math.sinh(d)
        return cls(p.vec.copy(), _normalize_spacelike(t))

    @classmethod
    def from_point_direction(cls, p: Point, direction) -> "Geodesic":
        v = np.asarray(direction, dtype=float)
        v = v + mdot(v, p.vec) * p.vec  # project to the tangent plane
        return cls(p.vec.copy(), _normalize_spacelike(v))

    @classmethod
    def from_normal(cls, n, base_near: Point = ORIGIN) -> "Geodesic":
        n = _normalize_spacelike(n)
        o = base_near.vec
        p = _normalize_timelike(o - mdot(o, n) * n)
        t = lcross(n, p)
        return cls(p, _normalize_spacelike(t))

    @classmethod
    def from_halfplane_endpoints(cls, a: float, b: float) -> "Geodesic":
        """Geodesic running from ideal point ``a`` to ``b`` (reals or inf)."""
        na, nb = _halfplane_to_ideal(a), _halfplane_to_ideal(b)
        n = _normalize_spacelike(lcross(na, nb))
        g = cls.from_normal(n)
        if mdot(g.tangent, nb) < 0:
            g = g.reversed()
        return g

    @property
    def normal(self) -> np.ndarray:
        return lcross(self.base, self.tangent)

    def point_at(self, s: float) -> Point:
        return Point(math.cosh(s) * self.base + math.sinh(s) * self.tangent)

    def tangent_at(self, s: float) -> np.ndarray:
        return math.sinh(s) * self.base + math.cosh(s) * self.tangent

    def reversed(self) -> "Geodesic":
        return Geodesic(self.base, -self.tangent)

    def rebased(self, s: float) -> "Geodesic":
        return Geodesic(self.point_at(s).vec, self.tangent_at(s))

    def contains(self, p: Point, tol=None) -> bool:
        return abs(mdot(p.vec, self.normal)) <= _tol_or_default(tol)

    def parameter_of(self, p: Point) -> float:
        """Signed arclength of the orthogonal projection of ``p``."""
        return math.atanh(max(-1.0, min(1.0, mdot(p.vec, self.tangent) / -mdot(p.vec, self.base))))

    def ideal_endpoints(self):
        """Null vectors at ``s -> -inf`` and ``s -> +inf``."""
        return self.base - self.tangent, self.base + self.tangent

    def halfplane_endpoints(self):
        lo, hi = self.ideal_endpoints()
        return _ideal_to_halfplane(lo), _ideal_to_halfplane(hi)

    def same_line(self, other: "Geodesic", tol=None) -> bool:
        tol = _tol_or_default(tol)
        n1, n2 = self.normal, other.normal
        return min(np.max(np.abs(n1 - n2)), np.max(np.abs(n1 + n2))) <= tol * max(1.0, np.max(np.abs(n1)))


def intersection(g1: Geodesic, g2: Geodesic) -> Optional[Point]:
    """Intersection point of two lines, or ``None`` if they are disjoint."""
    x = lcross(g1.normal, g2.normal)
    q = mdot(x, x)
    scale = float(np.dot(x, x))
    if scale == 0 or q >= -1e-14 * scale:
        return None
    return Point(_normalize_timelike(x))


def line_distance(g1: Geodesic, g2: Geodesic) -> float:
    """Distance between two lines (0 when they meet or are asymptotic)."""
    c = abs(mdot(g1.normal, g2.normal))
    return math.acosh(c) if c > 1 else 0.0


# ---------------------------------------------------------------------------
# Angles and pencils


def angle_at(g1: Geodesic, g2: Geodesic, p: Point, tol=None) -> Angle:
    """Anticlockwise angle at ``p`` from line ``g1`` to line ``g2``."""
    tol = _tol_or_default(tol)
    if not (g1.contains(p, tol) and g2.contains(p, tol)):
        raise NotIncident("point is not on both geodesics")
    t1 = lcross(g1.normal, p.vec)
    t2 = lcross(g2.normal, p.vec)
    sin_t = float(np.linalg.det(np.column_stack([p.vec, t1, t2])))
    cos_t = mdot(t1, t2)
    if abs(sin_t) <= 1e-14 * max(1.0, abs(cos_t)):
        raise TangentDegenerate("geodesics coincide")
    theta = math.atan2(sin_t, cos_t) % math.pi
    return Angle(theta)


def rotate_tangent(p: Point, t, theta: float) -> np.ndarray:
    """Rotate tangent vector ``t`` at ``p`` anticlockwise by ``theta``."""
    return math.cos(theta) * t + math.sin(theta) * lcross(p.vec, t)


def pencil_line(delta: Geodesic, s: float, eps: float) -> Geodesic:
    """The line through ``delta.point_at(s)`` making angle ``eps`` with it."""
    p = delta.point_at(s)
    t = delta.tangent_at(s)
    return Geodesic(p.vec, rotate_tangent(p, t, eps))


def omega_at(delta: Geodesic, deltap: Geodesic, s: float, eps: float) -> Angle:
    """Angle from ``deltap`` to the pencil line at parameter ``s``."""
    f = pencil_line(delta, s, eps)
    x = intersection(deltap, f)
    if x is None:
        raise NoIntersection(f"pencil line at s={s} misses the second line")
    return angle_at(deltap, f, x, tol=1e-7)


def _standard_frame(g: Geodesic) -> np.ndarray:
    """Isometry taking the x-axis (base at origin) onto ``g``."""
    return np.column_stack([g.tangent, g.normal, g.base])


def pencil_band(delta: Geodesic, deltap: Geodesic, eps: float):
    """Open parameter interval on ``delta`` whose pencil lines meet ``deltap``."""
    if line_distance(delta, deltap) <= 0:
        raise NotDisjoint("lines meet or are asymptotic")
    frame = _standard_frame(delta)
    to_std = J @ frame.T @ J
    n_std = to_std @ deltap.normal
    g_std = Geodesic.from_normal(n_std)
    a, b = sorted(g_std.halfplane_endpoints())
    if math.isinf(a) or math.isinf(b) or a * b <= 0:
        raise NotDisjoint("lines share an endpoint or cross")
    kappa = math.tan(eps / 2.0)
    if a > 0:
        return math.log(a / kappa), math.log(b / kappa)
    return math.log(-b * kappa), math.log(-a * kappa)


def epsilon_edge(delta: Geodesic, deltap: Geodesic, eps: float, tol: float = 1e-12, max_iter: int = 200):
    """The pencil arc from ``delta`` meeting ``deltap`` at angle ``eps``.

    Returns ``(P, Omega, length)``.  ``omega_at`` is monotone on the pencil
    band, so plain bisection is enough.
    """
    lo, hi = pencil_band(delta, deltap, eps)
    w = hi - lo

    def f(s):
        return float(omega_at(delta, deltap, s, eps)) - eps

    increasing = f(lo + 0.75 * w) > f(lo + 0.25 * w)
    a, b = lo, hi
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        try:
            v = f(m)
        except NoIntersection:
            # rounding at the band edge; move inward
            v = -1.0 if (m - lo) < (hi - m) else 1.0
            if not increasing:
                v = -v
        if (v < 0) == increasing:
            a = m
        else:
            b = m
    s = 0.5 * (a + b)
    p = delta.point_at(s)
    omega = intersection(deltap, pencil_line(delta, s, eps))
    if omega is None:
        raise NoIntersection("epsilon-edge bisection left the band")
    return p, omega, distance(p, omega)


def common_perpendicular(delta: Geodesic, deltap: Geodesic):
    """Feet ``S``, ``S'`` and length of the common perpendicular."""
    n1, n2 = delta.normal, deltap.normal
    c = abs(mdot(n1, n2))
    if c <= 1.0 + 1e-14:
        raise NotDisjoint("lines meet or are asymptotic")
    m = lcross(n1, n2)
    s = Point(_normalize_timelike(lcross(n1, m)))
    sp = Point(_normalize_timelike(lcross(n2, m)))
    return s, sp, math.acosh(c)


# ---------------------------------------------------------------------------
# Isometries


@dataclass(frozen=True, eq=False)
class Isometry:
    matrix: np.ndarray

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))

    @classmethod
    def reflection(cls, g: Geodesic) -> "Isometry":
        n = g.normal
        return cls(np.eye(3) - 2.0 * np.outer(n, J @ n))

    @classmethod
    def rotation(cls, center: Point, theta: float) -> "Isometry":
        """Anticlockwise rotation by ``theta`` about ``center``."""
        frame = _frame_at(center.vec, _any_tangent(center.vec))
        c, s = math.cos(theta), math.sin(theta)
        r = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        return cls(frame @ r @ J @ frame.T @ J)

    @classmethod
    def translation(cls, g: Geodesic, s: float) -> "Isometry":
        """Translate by ``s`` along ``g`` in its direction of travel."""
        frame = _standard_frame(g)
        c, sh = math.cosh(s), math.sinh(s)
        t = np.array([[c, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, c]])
        return cls(frame @ t @ J @ frame.T @ J)

    @classmethod
    def segment_map(cls, a: Point, b: Point, a2: Point, b2: Point, tol=None) -> "Isometry":
        """Orientation-preserving isometry with ``a -> a2`` and ``b -> b2``."""
        tol = _tol_or_default(tol)
        if abs(distance(a, b) - distance(a2, b2)) > tol:
            raise ValueError("segments have different lengths")
        u = Geodesic.through(a, b).tangent
        u2 = Geodesic.through(a2, b2).tangent
        f1 = _frame_at(a.vec, u)
        f2 = _frame_at(a2.vec, u2)
        return cls(f2 @ J @ f1.T @ J)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def orientation_preserving(self) -> bool:
        return self.det > 0

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix)

    def inverse(self) -> "Isometry":
        return Isometry(J @ self.matrix.T @ J)

    def __call__(self, x):
        if isinstance(x, Point):
            return Point(self.matrix @ x.vec)
        if isinstance(x, Geodesic):
            return Geodesic(self.matrix @ x.base, self.matrix @ x.tangent)
        return self.matrix @ np.asarray(x)

    def conjugate_by(self, g: "Isometry") -> "Isometry":
        return g @ self @ g.inverse()

    def orthogonality_residual(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.T @ J @ m - J)))

    def renormalized(self) -> "Isometry":
        """Re-orthonormalize columns (Minkowski Gram-Schmidt from the timelike one)."""
        m = self.matrix
        z = _normalize_timelike(m[:, 2])
        x = m[:, 0] + mdot(m[:, 0], z) * z
        x = _normalize_spacelike(x)
        y = m[:, 1] + mdot(m[:, 1], z) * z - mdot(m[:, 1], x) * x
        y = _normalize_spacelike(y)
        return Isometry(np.column_stack([x, y, z]))

    def classify(self, tol=None):
        """Return ``(kind, translation_length)``.

        ``kind`` is one of identity, elliptic, parabolic, hyperbolic,
        or reflection / glide for orientation-reversing elements.
        """
        tol = _tol_or_default(tol)
        if not self.orientation_preserving:
            tr = self.trace
            # reflections have trace 1; glide reflections trace 1 - 2 cosh(l)
            if tr > -1 + tol:
                return "reflection", 0.0
            return "glide", _acosh_clamped((1 - tr) / 2)
        if np.max(np.abs(self.matrix - np.eye(3))) <= tol * 10:
            return "identity", 0.0
        tr = self.trace
        if tr > 3 + tol:
            return "hyperbolic", _acosh_clamped((tr - 1) / 2)
        if tr < 3 - tol:
            return "elliptic", 0.0
        return "parabolic", 0.0

    def translation_length(self, tol=None) -> float:
        return self.classify(tol)[1]

    def axis(self) -> Geodesic:
        """Axis of a hyperbolic element, oriented along the translation."""
        kind, ell = self.classify()
        if kind != "hyperbolic":
            raise ValueError(f"{kind} isometry has no axis")
        m = self.matrix
        # fixed spacelike vector spans the kernel of (M - I)
        _, _, vt = np.linalg.svd(m - np.eye(3))
        n = _normalize_spacelike(vt[-1])
        g = Geodesic.from_normal(n)
        # orient so that M moves the base forward
        if mdot(self(Point(g.base)).vec, g.tangent) < 0:
            g = g.reversed()
        return g


def _any_tangent(p) -> np.ndarray:
    for e in (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])):
        v = e + mdot(e, p) * p
        if mdot(v, v) > 1e-6:
            return _normalize_spacelike(v)
    raise ValueError("degenerate point")


def _frame_at(p, u) -> np.ndarray:
    """Positively oriented Minkowski-orthonormal frame ``[u, n, p]``."""
    return np.column_stack([u, lcross(p, u), p])


# ---------------------------------------------------------------------------
# Triangles


@dataclass(frozen=True)
class Triangle:
    """Side ``a`` is opposite angle ``alpha``, and so on."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    def cosine_residual(self) -> float:
        res = 0.0
        for x, y, z, ang in (
            (self.a, self.b, self.c, self.alpha),
            (self.b, self.c, self.a, self.beta),
            (self.c, self.a, self.b, self.gamma),
        ):
            lhs = math.cosh(x)
            rhs = math.cosh(y) * math.cosh(z) - math.sinh(y) * math.sinh(z) * math.cos(ang)
            res = max(res, abs(lhs - rhs) / lhs)
        return res

    def sine_residual(self) -> float:
        r = [math.sinh(self.a) / math.sin(self.alpha),
             math.sinh(self.b) / math.sin(self.beta),
             math.sinh(self.c) / math.sin(self.gamma)]
        return (max(r) - min(r)) / max(r)


def _acos_checked(x: float) -> float:
    if x > 1 + 1e-12 or x < -1 - 1e-12:
        raise Infeasible(f"cosine {x} outside [-1, 1]")
    return math.acos(max(-1.0, min(1.0, x)))


def _angle_from_sides(opp, s1, s2):
    return _acos_checked((math.cosh(s1) * math.cosh(s2) - math.cosh(opp)) / (math.sinh(s1) * math.sinh(s2)))


def _side_from_angles(opp, a1, a2):
    c = (math.cos(opp) + math.cos(a1) * math.cos(a2)) / (math.sin(a1) * math.sin(a2))
    if c < 1:
        raise Infeasible("angles do not form a hyperbolic triangle")
    return math.acosh(c)


def _sss(a, b, c):
    if a <= 0 or b <= 0 or c <= 0 or a >= b + c or b >= a + c or c >= a + b:
        raise Infeasible("sides violate the triangle inequality")
    return Triangle(a, b, c, _angle_from_sides(a, b, c), _angle_from_sides(b, c, a), _angle_from_sides(c, a, b))


def _aaa(alpha, beta, gamma):
    if min(alpha, beta, gamma) <= 0 or alpha + beta + gamma >= math.pi:
        raise Infeasible("angle sum must be below pi")
    return Triangle(
        _side_from_angles(alpha, beta, gamma),
        _side_from_angles(beta, gamma, alpha),
        _side_from_angles(gamma, alpha, beta),
        alpha, beta, gamma,
    )


def solve_triangle(a=None, b=None, c=None, alpha=None, beta=None, gamma=None) -> Triangle:
    """Complete a hyperbolic triangle from three of its elements.

    Supported: SSS, SAS, ASA, AAS and AAA.  SSA is ambiguous and rejected.
    """
    sides = [a, b, c]
    angles = [alpha, beta, gamma]
    ns = sum(x is not None for x in sides)
    na = sum(x is not None for x in angles)
    if ns + na != 3:
        raise Infeasible("give exactly three elements")
    if any(x is not None and x <= 0 for x in sides + angles):
        raise Infeasible("elements must be positive")
    if any(x is not None and x >= math.pi for x in angles):
        raise Infeasible("angles must be below pi")

    if ns == 3:
        return _sss(a, b, c)
    if na == 3:
        return _aaa(alpha, beta, gamma)

    # rotate labels so the computation can assume a fixed layout
    def rot(seq, k):
        return seq[k:] + seq[:k]

    for k in range(3):
        s = rot(sides, k)
        t = rot(angles, k)
        tri = None
        if ns == 2 and s[1] is not None and s[2] is not None and t[0] is not None:
            # SAS: sides b, c with included angle alpha
            a_ = math.acosh(math.cosh(s[1]) * math.cosh(s[2]) - math.sinh(s[1]) * math.sinh(s[2]) * math.cos(t[0]))
            tri = _sss(a_, s[1], s[2])
        elif ns == 1 and s[0] is not None and t[1] is not None and t[2] is not None:
            # ASA: side a with adjacent angles beta, gamma
            al = _acos_checked(-math.cos(t[1]) * math.cos(t[2]) + math.sin(t[1]) * math.sin(t[2]) * math.cosh(s[0]))
            tri = _aaa(al, t[1], t[2])
        elif ns == 1 and s[0] is not None and t[0] is not None and (t[1] is not None or t[2] is not None):
            # AAS: side a, its opposite angle alpha, and one more angle
            other = 1 if t[1] is not None else 2
            sh = math.sinh(s[0]) * math.sin(t[other]) / math.sin(t[0])
            side_o = math.asinh(sh)
            # remaining angle from alpha = -cos(o) cos(x) + sin(o) sin(x) cosh(a)
            A = -math.cos(t[other])
            B = math.sin(t[other]) * math.cosh(s[0])
            R = math.hypot(A, B)
            phi = math.atan2(B, A)
            cands = []
            for sign in (1, -1):
                x = phi + sign * _acos_checked(math.cos(t[0]) / R)
                if 0 < x < math.pi - t[0] - t[other]:
                    cands.append(x)
            for x in cands:
                ang = [t[0], None, None]
                ang[other] = t[other]
                ang[3 - other] = x
                cand = _aaa(*ang)
                side_idx = cand.b if other == 1 else cand.c
                if abs(side_idx - side_o) <= 1e-9 * max(1, side_o):
                    tri = cand
                    break
            if tri is None:
                raise Infeasible("no hyperbolic triangle with these data")
        if tri is not None:
            # undo the rotation
            ss = [tri.a, tri.b, tri.c]
            aa = [tri.alpha, tri.beta, tri.gamma]
            ss = rot(ss, -k % 3)
            aa = rot(aa, -k % 3)
            return Triangle(*ss, *aa)
    raise Infeasible("unsupported combination (SSA is ambiguous)")


def solve_right_triangle(hypotenuse: float, angle: float):
    """Right triangle from its hypotenuse and one acute angle.

    Returns ``(adjacent, opposite, other_angle)`` with
    ``cos(angle) = tanh(adjacent) / tanh(hypotenuse)``.
    """
    adjacent = math.atanh(math.cos(angle) * math.tanh(hypotenuse))
    opposite = math.asinh(math.sinh(hypotenuse) * math.sin(angle))
    other = math.atan(1.0 / (math.cosh(hypotenuse) * math.tan(angle))) if angle != math.pi / 2 else 0.0
    if other < 0:
        other += math.pi
    return adjacent, opposite, other
