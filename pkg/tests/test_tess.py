import json
from collections import Counter

import pytest

from hexspine.errors import Disconnected, InvalidHomomorphism, MalformedMap
from hexspine.tess import (
    CombMap,
    CurveSet,
    complement_components,
    coxeter_map,
    coxeter_preset,
    extract_curves,
    filling_check,
    filling_subset_search,
    genus,
    search_gen2,
    validate_axioms,
)


def _euler_counts_ok(m):
    c = m.counts()
    return 6 * c["faces"] == 2 * c["edges"] and 4 * c["vertices"] == 2 * c["edges"]


def test_gen17_census(gen17):
    assert gen17.counts() == {"faces": 64, "edges": 192, "vertices": 96}
    assert genus(gen17) == 17
    curves = gen17.curves()
    assert len(curves) == 48
    assert all(c.edge_count == 4 for c in curves)
    assert Counter(c.index for c in curves) == {i: 8 for i in range(1, 7)}
    assert _euler_counts_ok(gen17)


def test_gen17_axioms(gen17):
    rep = validate_axioms(gen17)
    assert rep.passed()
    assert rep.k == 4


def test_gen2_census(gen2):
    assert gen2.counts() == {"faces": 4, "edges": 12, "vertices": 6}
    assert genus(gen2) == 2
    curves = gen2.curves()
    assert len(curves) == 6 and all(c.edge_count == 2 for c in curves)
    rep = validate_axioms(gen2)
    assert rep.passed("ax1", "ax2", "ax3") and rep.k == 2
    assert set(rep.results) == {"ax1", "ax2", "ax3", "ax4", "ax5"}


def test_gen2_search_reports_count():
    homs, kernels = search_gen2()
    assert len(homs) == 6
    assert kernels == 1


def test_curves_partition_edges(gen17, gen2):
    for m in (gen17, gen2):
        seen = Counter(e for c in m.curves() for e in c.edges)
        assert sorted(seen) == list(range(m.n_edges))
        assert set(seen.values()) == {1}
        for c in m.curves():
            assert len({m.edge_colour(e) for e in c.edges}) == 1


def test_red_curves_pairwise_disjoint(gen17):
    verts = {}
    for c in gen17.curves():
        if c.colour != "red":
            continue
        vs = {gen17.origin(h) for h in c.halfedges} | {gen17.target(h) for h in c.halfedges}
        for other, ovs in verts.items():
            assert not (vs & ovs), (c.id, other)
        verts[c.id] = vs


def test_consecutive_curve_edges_are_opposite(gen17):
    for c in gen17.curves():
        hs = c.halfedges
        for a, b in zip(hs, hs[1:] + hs[:1]):
            assert gen17.target(a) == gen17.origin(b)
            assert b == gen17.continue_straight(a)


def test_valence_six_fixture(valence6_map):
    rep = validate_axioms(valence6_map)
    assert not rep.results["ax2"]["pass"]
    assert {"vertex": 1, "valence": 6} in rep.results["ax2"]["witnesses"]


def test_ax5_fixture(ax5_failing_map):
    rep = validate_axioms(ax5_failing_map)
    assert rep.passed("ax1", "ax2", "ax4")
    assert not rep.results["ax5"]["pass"]
    assert rep.results["ax5"]["witnesses"]


def test_single_hexagon_genus(one_hexagon_torus):
    m = one_hexagon_torus
    c = m.counts()
    assert c == {"faces": 1, "edges": 3, "vertices": 2}
    assert genus(m) == (2 - (c["vertices"] - c["edges"] + c["faces"])) // 2 == 1


def test_disconnected():
    tw = [6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4, 5]
    m = CombMap(tw + [t + 12 for t in tw])
    with pytest.raises(Disconnected):
        genus(m)


def test_malformed():
    with pytest.raises(MalformedMap):
        CombMap([1, 0, 3])
    with pytest.raises(MalformedMap):
        CombMap([1, 2, 0, 4, 5, 3])
    with pytest.raises(MalformedMap):
        CombMap.from_dict({"faces": [{"id": 1, "sides": []}]})


def test_filling(gen17):
    allc = extract_curves(gen17)
    assert allc.filling
    sub = allc.by_index([3, 4, 5, 6])
    assert len(sub) == 32
    assert filling_check(gen17, sub)
    comps = complement_components(gen17, sub)
    assert all(c["euler"] == 1 and c["corners"] == 12 for c in comps)
    single = CurveSet(gen17, [0])
    assert not filling_check(gen17, single)


def test_filling_subset_search(gen17):
    best = filling_subset_search(gen17, budget=3)
    assert len(best) <= 32
    assert filling_check(gen17, best)
    assert set(best.ids) <= set(range(48))
    # informational: whether the search gets to 25 or below
    print(f"filling subset search: {len(best)} curves")


def _independent_filling(m, ids):
    """Cut the surface along the curves and count Euler characteristics directly."""
    cut = {e for c in m.curves() if c.id in ids for e in c.edges}
    # faces glued along uncut edges
    parent = list(range(m.n_faces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(m.n_halfedges):
        if m.edge_of(h) not in cut:
            parent[find(h // 6)] = find(m.twin[h] // 6)
    comps = {find(f) for f in range(m.n_faces)}
    # vertices of the cut surface: corners joined across uncut edges only
    vparent = list(range(m.n_halfedges))

    def vfind(x):
        while vparent[x] != x:
            vparent[x] = vparent[vparent[x]]
            x = vparent[x]
        return x

    for h in range(m.n_halfedges):
        if m.edge_of(h) not in cut:
            # corner at origin of h is the same as the corner at target of twin
            vparent[vfind(h)] = vfind(m.nxt(m.twin[h]))
    chi = {r: 0 for r in comps}
    for f in range(m.n_faces):
        chi[find(f)] += 1
    for h in range(m.n_halfedges):
        e = m.edge_of(h)
        if e not in cut and h < m.twin[h]:
            chi[find(h // 6)] -= 1
        elif e in cut:
            chi[find(h // 6)] -= 1  # each side of a cut edge is a boundary edge
    for r in {vfind(h) for h in range(m.n_halfedges)}:
        chi[find(r // 6)] += 1
    return all(v == 1 for v in chi.values())


def test_filling_against_cut_surface_oracle(gen17):
    allc = extract_curves(gen17)
    for ids in (allc.ids, allc.by_index([3, 4, 5, 6]).ids, allc.by_index([1, 2]).ids, (0, 1, 2)):
        assert _independent_filling(gen17, set(ids)) == filling_check(gen17, CurveSet(gen17, ids))
    best = filling_subset_search(gen17, budget=1)
    assert _independent_filling(gen17, set(best.ids))


def test_invalid_homomorphisms():
    with pytest.raises(InvalidHomomorphism):
        coxeter_map((1, 1, 1, 1, 1, 1))
    with pytest.raises(InvalidHomomorphism):
        coxeter_map((0, 1, 2, 4, 8, 16))
    with pytest.raises(MalformedMap):
        coxeter_preset("gen3")


def test_json_round_trip(gen17):
    text = gen17.to_json()
    doc = json.loads(text)
    assert doc["format"] == "hexspine-map/1"
    back = CombMap.from_json(text)
    assert back.twin == gen17.twin
    assert back.counts() == gen17.counts()
    assert validate_axioms(back).passed()


def test_navigation_identities(gen2):
    m = gen2
    for h in range(m.n_halfedges):
        assert m.prev(m.nxt(h)) == h
        assert m.rot_cw(m.rot_ccw(h)) == h
        assert len(m.vertex_corners()[m.origin(h)]) == 4
