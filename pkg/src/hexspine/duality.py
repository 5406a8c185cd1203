"""Dual length functions of blue curves and the bracket matrix.

For a blue curve ``B`` with chosen edge ``b`` joining red curves ``R`` and
``R'``, a pair of pants is embedded around ``R + b + R'``.  Its third
boundary ``D_b`` crosses the blue edges ``b_1 .. b_{k-1}`` next to ``R`` and
``b'_1 .. b'_{k-1}`` next to ``R'``.  The bracket of ``L(A)`` with the dual
function ``(L(R) + L(R') - L(D_b)) / 2`` follows from the cosine formula for
brackets of length functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import AxiomViolation, KTooSmall, NoWitness, NotFilling, OutOfDomain
from .hexagon import BLUE, RED
from .hplane import Isometry, angle_at, intersection
from .pants import pants_metrics
from .tess import CombMap, Curve, CurveSet, filling_check, genus, validate_axioms


@dataclass(frozen=True)
class PantsAttachment:
    blue: int  # curve id of B
    b: int  # chosen half-edge (origin Q on R)
    red: int
    red_prime: int
    crossings: Tuple[int, ...]  # c_1 .. c_{k-1} along R
    crossings_prime: Tuple[int, ...]  # c'_1 .. c'_{k-1} along R'
    edges: Tuple[int, ...]  # b_1 .. b_{k-1}
    edges_prime: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.edges) + 1

    @property
    def boundary_word(self) -> Tuple[int, ...]:
        """Dual loop freely homotopic to ``D_b``, based at the face of ``b``."""
        return self.crossings + self.crossings_prime


def _axioms_ok(m: CombMap):
    rep = getattr(m, "_axiom_report", None)
    if rep is None:
        rep = validate_axioms(m)
        m._axiom_report = rep
    return rep


def _walk(m: CombMap, start_face_half: int, steps: int) -> List[int]:
    out = []
    c = m.prev(m.prev(start_face_half))
    for i in range(steps):
        out.append(c)
        if i + 1 < steps:
            c = m.prev(m.prev(m.twin[c]))
    return out


def attach_pants(m: CombMap, B: Curve, b: Optional[int] = None) -> PantsAttachment:
    rep = _axioms_ok(m)
    if rep.k is not None and rep.k < 3:
        raise KTooSmall(f"k = {rep.k}; pants need k >= 3")
    if not rep.passed():
        failed = [n for n, r in rep.results.items() if not r["pass"]]
        raise AxiomViolation(f"axioms {failed} fail")
    if B.colour != BLUE:
        raise AxiomViolation("dual functions are attached to blue curves")
    k = B.edge_count
    if b is None:
        b = min(min(h, m.twin[h]) for h in B.halfedges)
    if m.edge_of(b) not in B.edges:
        raise AxiomViolation("chosen edge is not on the curve")
    red_of = {}
    for c in m.curves():
        if c.colour == RED:
            for h in c.halfedges:
                red_of[m.origin(h)] = c.id
    R, Rp = red_of[m.origin(b)], red_of[m.target(b)]
    if R == Rp:
        raise AxiomViolation("both ends of the chosen edge lie on one red curve")
    f1, f2 = m.twin[b] // 6, b // 6
    cs = _walk(m, b, k - 1)
    if m.twin[cs[-1]] // 6 != f1:
        raise AxiomViolation("walk along R does not close on the other face of b")
    cps = _walk(m, m.twin[b], k - 1)
    if m.twin[cps[-1]] // 6 != f2:
        raise AxiomViolation("walk along R' does not close on the face of b")
    edges = tuple(m.edge_of(c) for c in cs)
    edges_p = tuple(m.edge_of(c) for c in cps)
    all_edges = (m.edge_of(b),) + edges + edges_p
    if len(set(all_edges)) != len(all_edges):
        raise AxiomViolation("pants edges are not distinct")
    return PantsAttachment(B.id, b, R, Rp, tuple(cs), tuple(cps), edges, edges_p)


def _first_half_angles(surface, word: Sequence[int], n: int):
    lc = surface.loop(word)
    axis = lc.holonomy.axis()
    hx = surface.hexagon
    mat = np.eye(3)
    angles = []
    for h in word[:n]:
        line = Isometry(mat)(hx.side(h % 6 + 1))
        x = intersection(axis, line)
        angles.append(float("nan") if x is None else float(angle_at(axis, line, x, tol=1e-7)))
        mat = mat @ surface.crossing[h]
    return angles, lc.length


def crossing_angles(surface, att: PantsAttachment) -> Tuple[List[float], List[float], float]:
    """Angles from the geodesic ``D_b`` to the lines of ``b_i`` and ``b'_i``.

    Each half is measured from a lift based at its own starting face, which
    keeps the developed coordinates small.  Returns both angle lists and the
    length of ``D_b``.
    """
    n = len(att.edges)
    first, ell = _first_half_angles(surface, att.crossings + att.crossings_prime, n)
    second, _ = _first_half_angles(surface, att.crossings_prime + att.crossings, n)
    return first, second, ell


def omega_for_edges(k: int, eps: float) -> List[float]:
    """``omega`` values in the order of the crossings ``c_1 .. c_{k-1}``."""
    return list(pants_metrics(k, eps).omega)


@dataclass
class BracketData:
    eps: float
    blue_ids: List[int]
    matrix: np.ndarray
    attachments: List[PantsAttachment] = field(default_factory=list)


def bracket_matrix(m: CombMap, eps: float, attachments: Optional[Sequence[PantsAttachment]] = None) -> BracketData:
    """``M[A][B] = {L(A), L(B*)}`` over the blue curves."""
    blues = [c for c in m.curves() if c.colour == BLUE]
    if attachments is None:
        attachments = [attach_pants(m, B) for B in blues]
    k = attachments[0].k if attachments else 0
    omega = omega_for_edges(k, eps)
    ce = math.cos(eps)
    terms = [ce - math.cos(w) for w in omega]
    col_of = {B.id: j for j, B in enumerate(blues)}
    curve_of_edge = {}
    for A in blues:
        for e in A.edges:
            curve_of_edge[e] = A.id
    n = len(blues)
    M = np.zeros((n, n))
    for att in attachments:
        j = col_of[att.blue]
        for edges in (att.edges, att.edges_prime):
            for i, e in enumerate(edges):
                M[col_of[curve_of_edge[e]], j] += 0.5 * terms[i]
        M[j, j] += ce
    return BracketData(float(eps), [B.id for B in blues], M, list(attachments))


def determinant(M: np.ndarray) -> float:
    sign, logdet = np.linalg.slogdet(M)
    return float(sign * math.exp(logdet)) if sign != 0 else 0.0


@dataclass
class BracketReport:
    grid: List[float]
    deltas: List[float]
    max_offdiag: List[float]
    witnesses: List[float]
    choice: Dict[int, int]
    dimension: int
    min_singular: List[float] = field(default_factory=list)
    threshold: float = 1e-8

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "delta": self.deltas,
            "max_abs_M_minus_I": self.max_offdiag,
            "nonvanishing_witnesses": self.witnesses,
            "chosen_edges": {str(k): v for k, v in sorted(self.choice.items())},
            "dimension": self.dimension,
            "min_singular_value": self.min_singular,
            "witness_threshold": self.threshold,
        }


WITNESS_THRESHOLD = 1e-8


def delta_scan(
    m: CombMap,
    grid: Sequence[float],
    witness_window: float = 0.2,
    threshold: float = WITNESS_THRESHOLD,
) -> BracketReport:
    """Determinant of the bracket matrix along ``grid``.

    Grid points within ``witness_window`` of pi/2 where ``|delta|`` exceeds
    ``threshold`` are listed as nonvanishing witnesses.  The smallest
    singular value is recorded too; for large matrices it is the more
    honest measure of how far the matrix is from singular.
    """
    blues = [c for c in m.curves() if c.colour == BLUE]
    atts = [attach_pants(m, B) for B in blues]
    deltas, dev, wit, smin = [], [], [], []
    for eps in grid:
        data = bracket_matrix(m, eps, atts)
        d = determinant(data.matrix)
        deltas.append(d)
        dev.append(float(np.max(np.abs(data.matrix - np.eye(len(blues))))))
        smin.append(float(np.linalg.svd(data.matrix, compute_uv=False)[-1]))
        if abs(eps - math.pi / 2) <= witness_window and abs(d) > threshold:
            wit.append(float(eps))
    return BracketReport(
        [float(e) for e in grid], deltas, dev, wit, {a.blue: a.b for a in atts}, len(blues), smin, float(threshold)
    )


def codim_report(m: CombMap, c: CurveSet, report: BracketReport) -> dict:
    if not filling_check(m, c):
        raise NotFilling("the chosen curves do not fill the surface")
    below = [w for w in report.witnesses if w < math.pi / 2]
    above = [w for w in report.witnesses if w > math.pi / 2]
    if not report.witnesses:
        raise NoWitness("no eps near pi/2 with a nonvanishing determinant")
    g = genus(m)
    return {
        "genus": g,
        "curves": len(m.curves()),
        "filling_size": len(c),
        "codim_bound": len(c) - 1,
        "two_g_minus_1": 2 * g - 1,
        "below_two_g_minus_1": len(c) - 1 < 2 * g - 1,
        "witnesses_below_half_pi": below,
        "witnesses_above_half_pi": above,
        "status": "conditional on nonvanishing witnesses",
        "witness_threshold": report.threshold,
        "notes": "bound is |C| - 1, i.e. codim < |C|",
    }


def _loglogloglog(g: int):
    if int(g) != g or g <= 15:
        raise OutOfDomain(f"g = {g}: the bound needs g >= 16")
    return math.log(math.log(math.log(g))), math.log(g)


def bound_theorem1(g: int) -> float:
    lll, lg = _loglogloglog(g)
    return 38.0 / math.sqrt(lll) * g / math.sqrt(lg)


def bound_im1(g: int) -> float:
    lll, lg = _loglogloglog(g)
    return 57.0 / math.sqrt(lll) * g / math.sqrt(lg)
