"""The deformed hexagon with equal sides and alternating angles eps, pi - eps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List

from .errors import OutOfRange
from .hplane import Angle, Geodesic, Isometry, Point, angle_at, distance, midpoint, solve_triangle

RED = "red"
BLUE = "blue"


def colour_of(index: int) -> str:
    """Side colour by parity: odd indices red, even blue."""
    return RED if index % 2 == 1 else BLUE


def _check_eps(eps: float) -> None:
    if not (0.0 < eps < math.pi):
        raise OutOfRange(f"eps={eps} outside (0, pi)")


def cosh_side_length(eps: float) -> float:
    _check_eps(eps)
    return 1.0 + 1.0 / math.sin(eps)


def side_length(eps: float) -> float:
    return math.acosh(cosh_side_length(eps))


@dataclass(frozen=True, eq=False)
class HexagonGeometry:
    """Realization centred at the origin.

    Vertex ``V_m`` sits at polar angle ``(m - 1) pi / 3``; side ``S_i`` runs
    from ``V_i`` to ``V_{i+1}``.  Odd vertices carry inner angle ``eps`` and
    even ones ``pi - eps``, so that the anticlockwise angle from a red side
    line to the following blue side line is ``eps`` at every vertex.
    """

    eps: Angle
    side_length: float
    vertices: List[Point]
    side_lines: List[Geodesic]
    center: Point
    colour: Dict[int, str] = field(default_factory=dict)
    angle_at_vertex: Dict[int, float] = field(default_factory=dict)

    def vertex(self, m: int) -> Point:
        return self.vertices[(m - 1) % 6]

    def side(self, i: int) -> Geodesic:
        return self.side_lines[(i - 1) % 6]

    def measured_side_lengths(self) -> List[float]:
        return [distance(self.vertex(i), self.vertex(i + 1)) for i in range(1, 7)]

    def measured_inner_angles(self) -> List[float]:
        """Inner angle at each vertex, from the incident side lines."""
        out = []
        for m in range(1, 7):
            incoming = self.side(m - 1)
            outgoing = self.side(m)
            turn = float(angle_at(incoming, outgoing, self.vertex(m)))
            out.append(math.pi - turn)
        return out

    def rotation(self, steps: int = 1) -> Isometry:
        """Symmetry turning side ``i`` into side ``i + 2 * steps``."""
        return Isometry.rotation(self.center, 2 * math.pi * steps / 3)


def build_hexagon(eps: float) -> HexagonGeometry:
    """Glue six triangles with angles (eps/2, (pi-eps)/2, pi/3) around the centre."""
    _check_eps(eps)
    eps = Angle(eps)
    ebar = eps.bar()
    tri = solve_triangle(alpha=eps / 2, beta=ebar / 2, gamma=math.pi / 3)
    # alpha sits at an odd vertex, so the centre-to-odd-vertex side is opposite beta
    r_odd, r_even = tri.b, tri.a
    vertices = []
    for m in range(1, 7):
        r = r_odd if m % 2 == 1 else r_even
        vertices.append(Point.polar(r, (m - 1) * math.pi / 3))
    lines = [Geodesic.through(vertices[i], vertices[(i + 1) % 6]) for i in range(6)]
    return HexagonGeometry(
        eps=eps,
        side_length=side_length(float(eps)),
        vertices=vertices,
        side_lines=lines,
        center=Point.polar(0.0, 0.0),
        colour={i: colour_of(i) for i in range(1, 7)},
        angle_at_vertex={m: float(eps) if m % 2 == 1 else float(ebar) for m in range(1, 7)},
    )


def side_midpoints(h: HexagonGeometry) -> List[Point]:
    return [midpoint(h.vertex(i), h.vertex(i + 1)) for i in range(1, 7)]


def saccheri_diagonal(eps: float = math.pi / 2) -> float:
    """Summit of the Saccheri quadrilateral with base and legs ``L``.

    Only defined for the right-angled hexagon; the value equals the distance
    between opposite vertices, with ``cosh = 5``.
    """
    if abs(eps - math.pi / 2) > 1e-12:
        raise OutOfRange("the diagonal formula holds for the right-angled hexagon only")
    L = side_length(math.pi / 2)
    return 2.0 * math.asinh(math.cosh(L) * math.sinh(L / 2))
