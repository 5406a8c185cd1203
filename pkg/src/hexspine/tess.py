"""Combinatorial hexagonal tessellations of closed oriented surfaces.

Half-edge conventions
---------------------
Face ``f`` has six half-edges ``6 f + (p - 1)`` for positions ``p = 1..6``;
half-edge ``(f, p)`` runs from corner ``V_p`` to ``V_{p+1}`` of the
prototype hexagon with the face on its left.  Positions are geometric
(odd positions red, even blue); the optional index decoration says which
side index sits at each position.  For type ``H`` faces index ``j`` sits at
position ``j``; for type ``Hbar`` faces the cyclic order is reversed and
index ``j`` sits at position ``2 - j`` (mod 6).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import AxiomViolation, Disconnected, InvalidHomomorphism, MalformedMap
from .hexagon import BLUE, RED, colour_of

TYPE_H = "H"
TYPE_HBAR = "Hbar"


def position_of_index(face_type: str, index: int) -> int:
    if face_type == TYPE_H:
        return (index - 1) % 6 + 1
    return (2 - index - 1) % 6 + 1


def index_at_position(face_type: str, position: int) -> int:
    if face_type == TYPE_H:
        return position
    return (2 - position - 1) % 6 + 1


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Curve:
    id: int
    colour: str
    index: Optional[int]
    halfedges: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


class CombMap:
    """Oriented combinatorial map of hexagons.

    ``twin[h]`` is the half-edge glued to ``h``.  ``colours`` defaults to
    position parity; ``indices[f]`` lists the index at each position (or
    ``None`` for undecorated maps).
    """

    def __init__(
        self,
        twin: Sequence[int],
        face_types: Optional[Sequence[str]] = None,
        indices: Optional[Sequence[Sequence[int]]] = None,
        colours: Optional[Sequence[str]] = None,
        labels: Optional[Sequence] = None,
        symmetries: Optional[List[List[int]]] = None,
        name: str = "",
    ):
        n = len(twin)
        if n == 0 or n % 6:
            raise MalformedMap("half-edge count must be a positive multiple of 6")
        self.twin = [int(t) for t in twin]
        for h, t in enumerate(self.twin):
            if not 0 <= t < n:
                raise MalformedMap(f"half-edge {h} glued to missing half-edge {t}")
            if t == h or self.twin[t] != h:
                raise MalformedMap(f"gluing is not an involution at half-edge {h}")
        self.n_faces = n // 6
        self.face_types = list(face_types) if face_types is not None else [TYPE_H] * self.n_faces
        self.indices = [list(r) for r in indices] if indices is not None else None
        if colours is None:
            colours = [colour_of(h % 6 + 1) for h in range(n)]
        self.colours = list(colours)
        self.labels = list(labels) if labels is not None else list(range(self.n_faces))
        self.symmetries = symmetries or []
        self.name = name
        self._vertices = None
        self._edges = None
        self._curves = None

    # -- basic navigation -------------------------------------------------

    @property
    def n_halfedges(self) -> int:
        return 6 * self.n_faces

    @staticmethod
    def face(h: int) -> int:
        return h // 6

    @staticmethod
    def position(h: int) -> int:
        return h % 6 + 1

    @staticmethod
    def halfedge(f: int, p: int) -> int:
        return 6 * f + (p - 1) % 6

    @staticmethod
    def nxt(h: int) -> int:
        return 6 * (h // 6) + (h + 1) % 6

    @staticmethod
    def prev(h: int) -> int:
        return 6 * (h // 6) + (h - 1) % 6

    def rot_ccw(self, h: int) -> int:
        """Next outgoing half-edge anticlockwise around the origin of ``h``."""
        return self.twin[self.prev(h)]

    def rot_cw(self, h: int) -> int:
        return self.nxt(self.twin[h])

    def continue_straight(self, h: int) -> int:
        """The half-edge opposite to ``h`` at its endpoint (valence four)."""
        return self.nxt(self.twin[self.nxt(h)])

    def index_of(self, h: int) -> Optional[int]:
        if self.indices is None:
            return None
        return self.indices[h // 6][h % 6]

    def halfedge_with_index(self, f: int, index: int) -> int:
        if self.indices is None:
            raise MalformedMap("map carries no index decoration")
        return 6 * f + self.indices[f].index(index)

    # -- derived cells ----------------------------------------------------

    def _build_vertices(self):
        n = self.n_halfedges
        uf = _UnionFind(n)  # corner h = vertex V_p of face(h) = origin of h
        for h in range(n):
            t = self.twin[h]
            uf.union(self.nxt(h), t)
            uf.union(h, self.nxt(t))
        roots = {}
        origin = [0] * n
        for h in range(n):
            r = uf.find(h)
            if r not in roots:
                roots[r] = len(roots)
            origin[h] = roots[r]
        self._vertices = origin

    def origin(self, h: int) -> int:
        if self._vertices is None:
            self._build_vertices()
        return self._vertices[h]

    def target(self, h: int) -> int:
        return self.origin(self.nxt(h))

    @property
    def n_vertices(self) -> int:
        if self._vertices is None:
            self._build_vertices()
        return max(self._vertices) + 1

    def vertex_corners(self) -> Dict[int, List[int]]:
        """Outgoing half-edges at each vertex."""
        if self._vertices is None:
            self._build_vertices()
        out: Dict[int, List[int]] = {}
        for h, v in enumerate(self._vertices):
            out.setdefault(v, []).append(h)
        return out

    def edge_of(self, h: int) -> int:
        if self._edges is None:
            reps = sorted({min(h, t) for h, t in enumerate(self.twin)})
            lookup = {r: i for i, r in enumerate(reps)}
            self._edges = [lookup[min(h, self.twin[h])] for h in range(self.n_halfedges)]
        return self._edges[h]

    @property
    def n_edges(self) -> int:
        return self.n_halfedges // 2

    def edge_halfedge(self, e: int) -> int:
        """The smaller half-edge of edge ``e``."""
        self.edge_of(0)
        if not hasattr(self, "_edge_rep"):
            self._edge_rep = sorted({min(h, t) for h, t in enumerate(self.twin)})
        return self._edge_rep[e]

    def edge_colour(self, e: int) -> str:
        return self.colours[self.edge_halfedge(e)]

    def is_connected(self) -> bool:
        uf = _UnionFind(self.n_faces)
        for h, t in enumerate(self.twin):
            uf.union(h // 6, t // 6)
        return len({uf.find(f) for f in range(self.n_faces)}) == 1

    # -- curves -----------------------------------------------------------

    def curves(self) -> List[Curve]:
        if self._curves is None:
            self._curves = _extract(self)
        return self._curves

    def curve_of_edge(self, e: int) -> Curve:
        for c in self.curves():
            if e in c.edges:
                return c
        raise KeyError(e)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        faces = []
        for f in range(self.n_faces):
            sides = []
            for p in range(1, 7):
                h = self.halfedge(f, p)
                t = self.twin[h]
                side = {
                    "position": p,
                    "colour": self.colours[h],
                    "glued_to": [t // 6, t % 6 + 1],
                }
                if self.indices is not None:
                    side["index"] = self.indices[f][p - 1]
                sides.append(side)
            faces.append({"id": f, "type": self.face_types[f], "label": self.labels[f], "sides": sides})
        return {"format": "hexspine-map/1", "name": self.name, "faces": faces}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CombMap":
        try:
            faces = sorted(data["faces"], key=lambda f: f["id"])
            n = len(faces)
            if [f["id"] for f in faces] != list(range(n)):
                raise MalformedMap("face ids must be 0..n-1")
            twin = [0] * (6 * n)
            colours = [""] * (6 * n)
            types = []
            indices = []
            has_index = True
            for f in faces:
                types.append(f.get("type", TYPE_H))
                row = [0] * 6
                sides = sorted(f["sides"], key=lambda s: s["position"])
                if [s["position"] for s in sides] != [1, 2, 3, 4, 5, 6]:
                    raise MalformedMap(f"face {f['id']} needs positions 1..6")
                for s in sides:
                    h = 6 * f["id"] + s["position"] - 1
                    g, q = s["glued_to"]
                    twin[h] = 6 * int(g) + int(q) - 1
                    colours[h] = s.get("colour", colour_of(s["position"]))
                    if "index" in s:
                        row[s["position"] - 1] = int(s["index"])
                    else:
                        has_index = False
                indices.append(row)
            labels = [f.get("label", f["id"]) for f in faces]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedMap):
                raise
            raise MalformedMap(f"bad map document: {exc}") from exc
        return cls(twin, types, indices if has_index else None, colours, labels, name=data.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "CombMap":
        return cls.from_dict(json.loads(text))

    def counts(self) -> dict:
        return {"faces": self.n_faces, "edges": self.n_edges, "vertices": self.n_vertices}


# ---------------------------------------------------------------------------
# Curves


def _extract(m: CombMap) -> List[Curve]:
    for v, hs in m.vertex_corners().items():
        if len(hs) != 4:
            raise AxiomViolation(f"vertex {v} has valence {len(hs)}; curves need valence four")
    seen = [False] * m.n_halfedges
    raw = []
    for start in range(m.n_halfedges):
        if seen[start]:
            continue
        cyc = []
        h = start
        while not seen[h]:
            seen[h] = True
            cyc.append(h)
            h = m.continue_straight(h)
        if h != start:
            raise AxiomViolation("curve traversal did not close up")
        # mark the reverse traversal as well
        for x in cyc:
            seen[m.twin[x]] = True
        raw.append(cyc)
    curves = []
    for cyc in raw:
        colours = {m.colours[h] for h in cyc}
        if len(colours) != 1:
            raise AxiomViolation("curve mixes colours")
        edges = tuple(m.edge_of(h) for h in cyc)
        if len(set(edges)) != len(edges):
            raise AxiomViolation("curve traverses an edge twice")
        idx = {m.index_of(h) for h in cyc}
        curves.append((min(edges), cyc, colours.pop(), idx.pop() if len(idx) == 1 else None, edges))
    curves.sort()
    return [Curve(i, col, idx, tuple(cyc), edges) for i, (_, cyc, col, idx, edges) in enumerate(curves)]


def extract_curves(m: CombMap) -> "CurveSet":
    return CurveSet(m, tuple(c.id for c in m.curves()))


class CurveSet:
    """A subset of the curves of a map, with a cached filling flag."""

    def __init__(self, m: CombMap, ids: Iterable[int]):
        self.map = m
        self.ids = tuple(sorted(set(ids)))
        self._filling = None

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        curves = self.map.curves()
        return iter([curves[i] for i in self.ids])

    @property
    def filling(self) -> bool:
        if self._filling is None:
            self._filling = filling_check(self.map, self)
        return self._filling

    def by_index(self, indices: Iterable[int]) -> "CurveSet":
        want = set(indices)
        return CurveSet(self.map, [c.id for c in self if c.index in want])

    def by_colour(self, colour: str) -> "CurveSet":
        return CurveSet(self.map, [c.id for c in self if c.colour == colour])


def genus(m: CombMap) -> int:
    if not m.is_connected():
        raise Disconnected("map has several components")
    chi = m.n_vertices - m.n_edges + m.n_faces
    if chi % 2:
        raise MalformedMap(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


def complement_components(m: CombMap, curves) -> List[dict]:
    """Components of the surface cut along ``curves`` with their Euler characteristics."""
    cut = set()
    curve_of = {}
    for c in curves:
        cut.update(c.edges)
        curve_of.update({e: c.id for e in c.edges})
    on_cut = set()
    for h in range(m.n_halfedges):
        if m.edge_of(h) in cut:
            on_cut.add(m.origin(h))
    uf = _UnionFind(m.n_faces)
    for h in range(m.n_halfedges):
        if m.edge_of(h) not in cut:
            uf.union(h // 6, m.twin[h] // 6)
    comps: Dict[int, dict] = {}
    for f in range(m.n_faces):
        comps.setdefault(uf.find(f), {"faces": [], "edges": set(), "vertices": set()})["faces"].append(f)
    for h in range(m.n_halfedges):
        r = uf.find(h // 6)
        if m.edge_of(h) not in cut:
            comps[r]["edges"].add(m.edge_of(h))
        v = m.origin(h)
        if v not in on_cut:
            comps[r]["vertices"].add(v)
    out = []
    for r in sorted(comps):
        c = comps[r]
        chi = len(c["faces"]) - len(c["edges"]) + len(c["vertices"])
        # boundary length counts cut half-edges seen from inside
        sides = 0
        corners = 0
        for f in c["faces"]:
            for p in range(6):
                h = 6 * f + p
                if m.edge_of(h) not in cut:
                    continue
                sides += 1
                x = m.nxt(h)
                while m.edge_of(x) not in cut:
                    x = m.nxt(m.twin[x])
                if curve_of[m.edge_of(x)] != curve_of[m.edge_of(h)]:
                    corners += 1
        out.append({"faces": c["faces"], "euler": chi, "boundary_edges": sides, "corners": corners})
    return out


def filling_check(m: CombMap, curves) -> bool:
    """True iff every complementary component of ``curves`` is a disc.

    A connected open surface has Euler characteristic at most 1, with
    equality only for the disc, so it suffices to compare the total Euler
    characteristic of the complement with its number of components.
    """
    cut = set()
    on_cut = set()
    for c in curves:
        cut.update(c.edges)
        on_cut.update(m.origin(h) for h in c.halfedges)
    uf = _UnionFind(m.n_faces)
    for h in range(m.n_halfedges):
        t = m.twin[h]
        if h < t and m.edge_of(h) not in cut:
            uf.union(h // 6, t // 6)
    n_comp = len({uf.find(f) for f in range(m.n_faces)})
    chi = m.n_faces - (m.n_edges - len(cut)) + (m.n_vertices - len(on_cut))
    return chi == n_comp


def filling_subset_search(m: CombMap, budget: int = 20, start: Optional[CurveSet] = None, seed: int = 0) -> CurveSet:
    """Greedy removal from several random orders, then 2-for-1 swaps.

    Returns the smallest filling subset found; not guaranteed minimal.
    """
    base = start if start is not None else extract_curves(m)
    if not filling_check(m, base):
        return base
    rng = random.Random(seed)
    curves = m.curves()

    def fills(ids):
        return filling_check(m, [curves[i] for i in ids])

    def descend(ids, order):
        ids = set(ids)
        for c in order:
            if c in ids and fills(ids - {c}):
                ids.discard(c)
        return ids

    best = set(base.ids)
    for attempt in range(max(1, budget)):
        order = list(base.ids)
        if attempt:
            rng.shuffle(order)
        cand = descend(base.ids, order)
        # local improvement: drop two, add back one outside curve
        improved = True
        while improved:
            improved = False
            outside = [c for c in base.ids if c not in cand]
            for a, b in itertools.combinations(sorted(cand), 2):
                trial = cand - {a, b}
                for c in outside:
                    if fills(trial | {c}):
                        cand = descend(trial | {c}, order)
                        improved = True
                        break
                if improved:
                    break
        if len(cand) < len(best):
            best = cand
    return CurveSet(m, best)


# ---------------------------------------------------------------------------
# Axioms


@dataclass
class AxiomReport:
    results: Dict[str, dict] = field(default_factory=dict)
    k: Optional[int] = None

    def passed(self, *names: str) -> bool:
        names = names or tuple(self.results)
        return all(self.results[n]["pass"] for n in names)

    def to_dict(self) -> dict:
        return {"k": self.k, **self.results}


def _blue_sides(m: CombMap, red: Curve) -> Tuple[List[int], List[int]]:
    """Blue edges leaving ``red`` on its left and on its right."""
    left, right = [], []
    for r in red.halfedges:
        left.append(m.edge_of(m.rot_ccw(r)))
        right.append(m.edge_of(m.rot_cw(r)))
    return left, right


def validate_axioms(m: CombMap) -> AxiomReport:
    rep = AxiomReport()
    # AX1: colour (and index) compatible gluing between distinct faces
    bad = []
    for h, t in enumerate(m.twin):
        if h > t:
            continue
        if m.colours[h] != m.colours[t] or h // 6 == t // 6:
            bad.append([h, t])
        elif m.indices is not None and m.index_of(h) != m.index_of(t):
            bad.append([h, t])
        elif m.colours[h] not in (RED, BLUE):
            bad.append([h, t])
    for f in range(m.n_faces):
        cols = [m.colours[6 * f + p] for p in range(6)]
        if any(cols[p] == cols[(p + 1) % 6] for p in range(6)):
            bad.append(["face", f])
    rep.results["ax1"] = {"pass": not bad, "witnesses": bad[:10]}

    bad = []
    for v, hs in sorted(m.vertex_corners().items()):
        if len(hs) != 4:
            bad.append({"vertex": v, "valence": len(hs)})
            continue
        h = hs[0]
        ring = [h]
        for _ in range(3):
            ring.append(m.rot_ccw(ring[-1]))
        if any(m.colours[ring[i]] == m.colours[ring[(i + 1) % 4]] for i in range(4)):
            bad.append({"vertex": v, "colours": [m.colours[x] for x in ring]})
    rep.results["ax2"] = {"pass": not bad, "witnesses": bad[:10]}

    if not (rep.results["ax1"]["pass"] and rep.results["ax2"]["pass"]):
        for name in ("ax3", "ax4", "ax5"):
            rep.results[name] = {"pass": False, "witnesses": ["requires ax1 and ax2"]}
        return rep

    curves = m.curves()
    lengths = sorted({c.edge_count for c in curves})
    rep.k = lengths[0] if len(lengths) == 1 else None
    rep.results["ax3"] = {
        "pass": len(lengths) == 1,
        "witnesses": [] if len(lengths) == 1 else [{"edge_counts": lengths}],
    }

    red_of_vertex = {}
    for c in curves:
        if c.colour == RED:
            for h in c.halfedges:
                red_of_vertex[m.origin(h)] = c.id
    bad = []
    for c in curves:
        if c.colour != BLUE:
            continue
        for h in c.halfedges:
            a, b = red_of_vertex[m.origin(h)], red_of_vertex[m.target(h)]
            if a == b:
                bad.append({"blue_edge": m.edge_of(h), "red_curve": a})
    rep.results["ax4"] = {"pass": not bad, "witnesses": bad[:10]}

    shared: Dict[Tuple[int, int], set] = {}
    for c in curves:
        if c.colour != RED:
            continue
        for side in _blue_sides(m, c):
            for a, b in itertools.combinations(sorted(set(side)), 2):
                shared.setdefault((a, b), set()).add(c.id)
    bad = [{"blue_edges": list(k), "red_curves": sorted(v)} for k, v in sorted(shared.items()) if len(v) > 1]
    rep.results["ax5"] = {"pass": not bad, "witnesses": bad[:10]}
    return rep


# ---------------------------------------------------------------------------
# Coxeter quotients of the right-angled hexagon group


def _gf2_rank_basis(vectors: Sequence[int]):
    """Row-reduce bitmasks; returns a dict pivot_bit -> reduced vector."""
    basis: Dict[int, int] = {}
    for v in vectors:
        for bit, b in sorted(basis.items(), reverse=True):
            if v >> bit & 1:
                v ^= b
        if v:
            basis[v.bit_length() - 1] = v
    return basis


def _span(gens: Sequence[int]) -> List[int]:
    elems = {0}
    for g in gens:
        elems |= {e ^ g for e in elems}
    return sorted(elems)


def _parity_functional(gens: Sequence[int]):
    """A map ``span -> {0, 1}`` sending every generator to 1, or ``None``."""
    # express the span through generator subsets and check consistency
    parity = {0: 0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x ^ g
            p = parity[x] ^ 1
            if y in parity:
                if parity[y] != p:
                    return None
            else:
                parity[y] = p
                frontier.append(y)
    return parity


def _as_mask(v) -> int:
    if isinstance(v, int):
        return v
    return sum(int(b) << i for i, b in enumerate(v))


def coxeter_map(hom: Sequence, name: str = "") -> CombMap:
    """Tessellated surface from a homomorphism ``s_i -> (Z/2)^n`` (bitmasks)."""
    gens = [_as_mask(v) for v in hom]
    if len(gens) != 6:
        raise InvalidHomomorphism("need images of the six generators")
    for i, a in enumerate(gens):
        if a == 0:
            raise InvalidHomomorphism(f"s_{i + 1} maps to the identity (side glued to itself)")
        if a == gens[(i + 1) % 6]:
            raise InvalidHomomorphism(
                f"s_{i + 1} and s_{(i + 1) % 6 + 1} have equal images (vertex of valence two)"
            )
    parity = _parity_functional(gens)
    if parity is None:
        raise InvalidHomomorphism("some relation has odd length (quotient not orientable)")
    elems = _span(gens)
    pos = {g: i for i, g in enumerate(elems)}
    types = [TYPE_H if parity[g] == 0 else TYPE_HBAR for g in elems]
    indices = [[index_at_position(t, p) for p in range(1, 7)] for t in types]
    twin = [0] * (6 * len(elems))
    for g in elems:
        f = pos[g]
        for j in range(1, 7):
            g2 = g ^ gens[j - 1]
            f2 = pos[g2]
            twin[6 * f + position_of_index(types[f], j) - 1] = 6 * f2 + position_of_index(types[f2], j) - 1
    symmetries = []
    for t in elems:
        if t and parity[t] == 0:
            symmetries.append([6 * pos[g ^ t] + p for g in elems for p in range(6)])
    m = CombMap(twin, types, indices, labels=elems, symmetries=symmetries, name=name)
    m.homomorphism = tuple(gens)
    return m


def search_gen2():
    """All homomorphisms onto ``(Z/2)^2`` giving a 2-regular genus-2 surface.

    Returns ``(homomorphisms, distinct_kernel_count)``.
    """
    found = []
    kernels = set()
    for hom in itertools.product((1, 2, 3), repeat=6):
        try:
            m = coxeter_map(hom)
        except InvalidHomomorphism:
            continue
        if m.n_faces != 4:
            continue
        rep = validate_axioms(m)
        if not rep.passed("ax1", "ax2", "ax3") or rep.k != 2 or genus(m) != 2:
            continue
        found.append(hom)
        relations = frozenset(
            s for s in range(64) if not _xor_all(hom[i] for i in range(6) if s >> i & 1)
        )
        kernels.add(relations)
    return found, len(kernels)


def _xor_all(vals) -> int:
    out = 0
    for v in vals:
        out ^= v
    return out


GEN17_HOM = tuple(1 << i for i in range(6))


def coxeter_preset(name_or_hom) -> CombMap:
    if isinstance(name_or_hom, str):
        if name_or_hom == "gen17":
            return coxeter_map(GEN17_HOM, name="gen17")
        if name_or_hom == "gen2":
            homs, _ = search_gen2()
            return coxeter_map(homs[0], name="gen2")
        raise MalformedMap(f"unknown preset {name_or_hom!r}")
    return coxeter_map(name_or_hom)
