"""Developing a tessellated surface with deformed hexagons and measuring loops.

Each face is a copy of the prototype hexagon of ``hexagon.build_hexagon``.
For a half-edge ``h`` of face ``f`` glued to ``h'`` of face ``f'``, the
crossing isometry ``T_h`` carries the prototype (as ``f'``) to the position
of ``f'`` next to ``f``: it sends the endpoints of side ``h'`` to those of
side ``h`` in reverse order.  A dual loop ``h_1 .. h_n`` based at ``f`` has
holonomy ``T_{h_1} T_{h_2} ... T_{h_n}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ClosureFailure, NotIncident, OrientationReversing
from .hexagon import build_hexagon
from .hplane import Geodesic, Isometry, Point, distance, intersection, mdot
from .tess import CombMap, Curve

CLOSURE_TOL = 1e-9
MAX_ENTRY = 50.0


@dataclass(frozen=True)
class LoopClass:
    word: Tuple[int, ...]
    holonomy: Isometry
    length: float
    kind: str

    @property
    def base_face(self) -> int:
        return self.word[0] // 6


class DevelopedSurface:
    def __init__(self, m: CombMap, eps: float, check: bool = True, _conj: Optional[Isometry] = None):
        self.map = m
        self.eps = float(eps)
        self.hexagon = build_hexagon(eps)
        self._conj = _conj
        cache: Dict[Tuple[int, int], np.ndarray] = {}
        self.crossing: List[np.ndarray] = []
        for h in range(m.n_halfedges):
            t = m.twin[h]
            key = (h % 6, t % 6)
            if key not in cache:
                cache[key] = self._crossing_matrix(h % 6 + 1, t % 6 + 1)
            mat = cache[key]
            if _conj is not None:
                mat = _conj.matrix @ mat @ _conj.inverse().matrix
            self.crossing.append(mat)
        self.closure_residual = None
        if check:
            self.closure_residual = self.check_closure()

    def _crossing_matrix(self, p: int, q: int) -> np.ndarray:
        hx = self.hexagon
        iso = Isometry.segment_map(hx.vertex(q), hx.vertex(q + 1), hx.vertex(p + 1), hx.vertex(p))
        if not iso.orientation_preserving:
            raise OrientationReversing("crossing map reverses orientation")
        return iso.matrix

    def conjugated(self, g: Isometry) -> "DevelopedSurface":
        """Same surface with every crossing conjugated by ``g`` (a change of marking frame)."""
        return DevelopedSurface(self.map, self.eps, check=False, _conj=g)

    def vertex_word(self, h: int) -> Tuple[int, ...]:
        """Dual loop around the origin of ``h``, based at the face of ``h``."""
        m = self.map
        c = m.prev(h)
        word = [c]
        while True:
            c = m.prev(m.twin[c])
            if c == word[0]:
                break
            word.append(c)
            if len(word) > 64:
                raise ClosureFailure("vertex cycle does not close")
        return tuple(word)

    def check_closure(self) -> float:
        """Worst deviation from the identity of the product around each vertex."""
        worst = 0.0
        for v, hs in sorted(self.map.vertex_corners().items()):
            hol = self.holonomy(self.vertex_word(hs[0]))
            res = float(np.max(np.abs(hol.matrix - np.eye(3))))
            if res > CLOSURE_TOL:
                raise ClosureFailure(f"holonomy around vertex {v} is not the identity (residual {res:.3g})")
            worst = max(worst, res)
        return worst

    def arc_residual(self) -> float:
        """How far each crossing is from matching the shared side endpoints."""
        hx = self.hexagon
        worst = 0.0
        for h in range(self.map.n_halfedges):
            t = self.map.twin[h]
            T = Isometry(self.crossing[h])
            p, q = h % 6 + 1, t % 6 + 1
            if self._conj is not None:
                continue
            worst = max(worst, distance(T(hx.vertex(q)), hx.vertex(p + 1)), distance(T(hx.vertex(q + 1)), hx.vertex(p)))
        return worst

    # -- loops --------------------------------------------------------------

    def check_word(self, word: Sequence[int]) -> None:
        m = self.map
        if not word:
            raise NotIncident("empty loop")
        for a, b in zip(word, list(word[1:]) + [word[0]]):
            if m.twin[a] // 6 != b // 6:
                raise NotIncident(f"crossing {a} does not lead into the face of {b}")

    def holonomy(self, word: Sequence[int]) -> Isometry:
        mat = np.eye(3)
        for h in word:
            mat = mat @ self.crossing[h]
        return Isometry(mat)

    def loop(self, word: Sequence[int]) -> LoopClass:
        self.check_word(word)
        hol = self.holonomy(word)
        if not hol.orientation_preserving:
            raise OrientationReversing("holonomy reverses orientation")
        kind, ell = hol.classify()
        return LoopClass(tuple(word), hol, ell, kind)

    # -- geometry in face coordinates ----------------------------------------

    def side_line(self, p: int) -> Geodesic:
        return self.hexagon.side(p)

    def trace_signature(self, word: Sequence[int], max_steps: int = 400):
        """Canonical description of the closed geodesic of a hyperbolic loop.

        Returns ``("curve", id)`` when the geodesic runs along a tessellation
        curve; otherwise a sorted tuple of 1-skeleton hits over one period,
        each ``("e", edge, t)`` or ``("v", vertex, 0.0)``.
        """
        if self._conj is not None:
            raise ValueError("tracing needs the unconjugated prototype frame")
        lc = self.loop(word)
        if lc.kind != "hyperbolic":
            return None
        axis = lc.holonomy.axis()
        ell = lc.length
        hx = self.hexagon
        m = self.map
        normals = [hx.side(p).normal for p in range(1, 7)]

        tile = [word[0] // 6, np.eye(3)]
        s0 = axis.parameter_of(Point(np.array([0.0, 0.0, 1.0])))
        x0 = axis.point_at(s0)
        self._locate(tile, x0.vec)

        # geodesic along a side line: a tessellation curve
        for p in range(1, 7):
            n = tile[1] @ normals[p - 1]
            if abs(abs(mdot(n, axis.normal)) - 1.0) < 1e-7 and abs(mdot(x0.vec, n)) < 1e-7:
                h = m.halfedge(tile[0], p)
                return ("curve", m.curve_of_edge(m.edge_of(h)).id)

        records = []
        s = s0
        ignore: Tuple[int, ...] = ()
        for _ in range(max_steps):
            f, M = tile
            inv = Isometry(M).inverse()
            local_axis = inv(axis)
            best = None
            for p in range(1, 7):
                if p in ignore:
                    continue
                x = intersection(local_axis, hx.side(p))
                if x is None:
                    continue
                sp = local_axis.parameter_of(x)
                if sp > s + 1e-9 and (best is None or sp < best[0]):
                    best = (sp, p, x)
            if best is None:
                raise ClosureFailure("geodesic trace left the tile without exiting")
            sp, p, x = best
            if sp >= s0 + ell - 1e-9:
                break
            h = m.halfedge(f, p)
            corner = None
            if distance(x, hx.vertex(p)) < 1e-7:
                corner = h
            elif distance(x, hx.vertex(p + 1)) < 1e-7:
                corner = m.nxt(h)
            if corner is None:
                e = m.edge_of(h)
                t = distance(hx.vertex(p), x) / hx.side_length
                if h != m.edge_halfedge(e):
                    t = 1.0 - t
                records.append(("e", e, t))
                tile[0] = m.twin[h] // 6
                tile[1] = M @ self.crossing[h]
                ignore = (m.twin[h] % 6 + 1,)
            else:
                records.append(("v", m.origin(corner), 0.0))
                probe = local_axis.point_at(sp + 1e-5).vec
                options = []
                out, mat = corner, np.eye(3)
                for _ in range(8):
                    sides = (out % 6 + 1, m.prev(out) % 6 + 1)
                    loc = np.linalg.solve(mat, probe)
                    score = min(mdot(loc, hx.side(q).normal) for q in sides)
                    options.append((score, out, mat))
                    c = m.prev(out)
                    mat = mat @ self.crossing[c]
                    out = m.twin[c]
                    if out == corner:
                        break
                _, out, mat = max(options, key=lambda o: o[0])
                tile[0] = out // 6
                tile[1] = M @ mat
                ignore = (out % 6 + 1, m.prev(out) % 6 + 1)
            s = sp
        return tuple(sorted(records))

    def _locate(self, tile, x, max_steps: int = 500) -> None:
        """Walk ``tile = [face, matrix]`` until it contains point ``x``."""
        hx = self.hexagon
        m = self.map
        normals = [hx.side(p).normal for p in range(1, 7)]
        for _ in range(max_steps):
            f, M = tile
            local = np.linalg.solve(M, x) if not np.array_equal(M, np.eye(3)) else x
            vals = [mdot(local, n) for n in normals]
            worst = min(range(6), key=lambda i: vals[i])
            if vals[worst] >= -1e-12:
                return
            h = m.halfedge(f, worst + 1)
            tile[0] = m.twin[h] // 6
            tile[1] = M @ self.crossing[h]
        raise ClosureFailure("point location did not converge")


def develop(m: CombMap, eps: float) -> DevelopedSurface:
    return DevelopedSurface(m, eps)


def loop_length(s: DevelopedSurface, word: Sequence[int]) -> float:
    return s.loop(word).length


def word_from_indices(m: CombMap, base_face: int, indices: Sequence[int]) -> Tuple[int, ...]:
    """Dual loop crossing sides with the given indices in turn."""
    f = base_face
    word = []
    for j in indices:
        h = m.halfedge_with_index(f, j)
        word.append(h)
        f = m.twin[h] // 6
    if f != base_face:
        raise NotIncident("index word does not close up in the dual graph")
    return tuple(word)


def curve_word(m: CombMap, curve: Curve) -> Tuple[int, ...]:
    """Dual loop running along ``curve`` through the faces on its left."""
    return tuple(m.nxt(r) for r in curve.halfedges)


def signatures_match(a, b, tol: float = 1e-6) -> bool:
    if a is None or b is None:
        return False
    if a[0] == "curve" or b[0] == "curve":
        return a == b
    if len(a) != len(b):
        return False
    return all(x[0] == y[0] and x[1] == y[1] and abs(x[2] - y[2]) <= tol for x, y in zip(a, b))


@dataclass
class SystoleCensus:
    radius: int
    eps: float
    min_length: float
    classes: List[dict] = field(default_factory=list)
    words_examined: int = 0

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def curve_ids(self) -> List[int]:
        return sorted(c["signature"][1] for c in self.classes if c["signature"][0] == "curve")

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "eps": self.eps,
            "min_length": self.min_length,
            "minimal_classes": self.count,
            "tessellation_curves": len(self.curve_ids),
            "words_examined": self.words_examined,
            "caveat": f"verified up to radius {self.radius}",
            "classes": [
                {"word": list(c["word"]), "length": c["length"], "tessellation_curve": c["signature"][1]
                 if c["signature"][0] == "curve" else None}
                for c in self.classes
            ],
        }


def _base_faces(m: CombMap) -> List[int]:
    if not m.symmetries:
        return list(range(m.n_faces))
    seen = set()
    reps = []
    for f in range(m.n_faces):
        if f in seen:
            continue
        reps.append(f)
        seen.add(f)
        for sym in m.symmetries:
            seen.add(sym[6 * f] // 6)
    return reps


def closed_words(s: DevelopedSurface, base: int, radius: int):
    """Yield ``(word, trace, size)`` for dual loops at ``base``.

    Words never backtrack and never turn the same way twice in a row around
    a vertex: three crossings around a vertex equal a single crossing, so
    such words have shorter equivalents that are enumerated anyway.
    """
    m = s.map
    twin = m.twin
    cross = s.crossing
    # stack entries: (half-edge, word, matrix, last turn)
    stack = [(h, (h,), cross[h], 0) for h in range(6 * base + 5, 6 * base - 1, -1)]
    while stack:
        h, word, mat, turn = stack.pop()
        back = twin[h]
        f = back // 6
        if f == base and word[0] != back:
            yield word, float(mat[0, 0] + mat[1, 1] + mat[2, 2]), float(np.abs(mat).max())
        if len(word) >= radius:
            continue
        left = 6 * f + (back - 1) % 6  # prev(back): turn around the origin of h
        right = 6 * f + (back + 1) % 6  # nxt(back): turn around the target of h
        for nh in range(6 * f + 5, 6 * f - 1, -1):
            if nh == back:
                continue
            t = -1 if nh == left else (1 if nh == right else 0)
            if t and t == turn:
                continue
            stack.append((nh, word + (nh,), mat @ cross[nh], t))


def enumerate_systoles(s: DevelopedSurface, radius: int = 8, tol: float = 1e-7) -> SystoleCensus:
    """Shortest closed geodesics among dual loops of at most ``radius`` crossings."""
    if radius < 4:
        from .errors import OutOfRange

        raise OutOfRange("radius must be at least 4")
    m = s.map
    best_trace = math.inf
    cands: List[Tuple[float, Tuple[int, ...]]] = []
    examined = 0
    for base in _base_faces(m):
        for word, tr, size in closed_words(s, base, radius):
            examined += 1
            # lifts whose axis lies far from the base tile lose precision;
            # the same class always has a nearby lift among the candidates
            if tr <= 3 + 1e-9 or size > MAX_ENTRY * tr:
                continue
            if tr < best_trace * (1 + 1e-6):
                cands.append((tr, word, size))
                if tr < best_trace:
                    best_trace = tr
                    cands = [c for c in cands if c[0] <= best_trace * (1 + 1e-6)]
    min_len = math.acosh((best_trace - 1) / 2)
    cands.sort(key=lambda c: c[2])
    words = [w for tr, w, _ in cands if math.acosh((tr - 1) / 2) <= min_len + tol]

    classes: List[dict] = []

    def add(word):
        sig = s.trace_signature(word)
        for c in classes:
            if signatures_match(c["signature"], sig):
                return False
        classes.append({"word": word, "signature": sig, "length": s.loop(word).length})
        return True

    # one lift per axis per base face, then spread along the symmetries
    seen_axes = set()
    for w in words:
        ax = s.holonomy(w).axis().normal
        ax = ax if (ax[0], ax[1], ax[2]) > (0, 0, 0) else -ax
        key = (w[0] // 6,) + tuple(np.round(ax, 6))
        if key in seen_axes:
            continue
        seen_axes.add(key)
        add(w)
    for c in list(classes):
        for sym in m.symmetries:
            add(tuple(sym[h] for h in c["word"]))
    classes.sort(key=lambda c: (c["signature"][0] != "curve", str(c["signature"][:1]), c["word"]))
    return SystoleCensus(radius, s.eps, min_len, classes, examined)


def length_track(m: CombMap, words: Sequence[Sequence[int]], grid: Sequence[float]) -> List[List[float]]:
    """Lengths of fixed dual loops along a grid of eps values (rows follow the grid)."""
    out = []
    for eps in grid:
        s = DevelopedSurface(m, eps, check=False)
        out.append([s.loop(w).length for w in words])
    return out


def bolza_crossing(m: CombMap, tess_word, competitor_word, lo: float = 0.5, hi: float = 1.2, tol: float = 1e-12):
    """eps where the competing class becomes as short as the tessellation curve."""

    def gap(e):
        s = DevelopedSurface(m, e, check=False)
        return s.loop(tess_word).length - s.loop(competitor_word).length

    glo, ghi = gap(lo), gap(hi)
    if glo * ghi > 0:
        raise ClosureFailure("length difference does not change sign on the bracket")
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        g = gap(mid)
        if (g > 0) == (glo > 0):
            lo, glo = mid, g
        else:
            hi = mid
    return 0.5 * (lo + hi)
