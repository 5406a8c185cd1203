import pytest

from hexspine.tess import CombMap, coxeter_map, coxeter_preset


@pytest.fixture(scope="session")
def gen17():
    return coxeter_preset("gen17")


@pytest.fixture(scope="session")
def gen2():
    return coxeter_preset("gen2")


@pytest.fixture
def valence6_map():
    # two hexagons; one vertex collects six corners
    return CombMap([10, 7, 6, 9, 8, 11, 2, 1, 4, 3, 0, 5], name="valence6")


@pytest.fixture
def mismatched_gen2(gen2):
    """gen2 with two red gluings exchanged: colours still match, closure does not."""
    tw = list(gen2.twin)
    a, b = 0, 18
    ta, tb = tw[a], tw[b]
    tw[a], tw[tb], tw[b], tw[ta] = tb, a, ta, b
    return CombMap(tw, gen2.face_types, gen2.indices, name="mismatched")


@pytest.fixture
def ax5_failing_map():
    """Small quotient where AX1, AX2, AX4 hold but AX3 and AX5 fail."""
    return coxeter_map((1, 2, 1, 2, 1, 4), name="ax5-fixture")


@pytest.fixture
def one_hexagon_torus():
    # opposite sides glued: 1-4, 2-5, 3-6 (colours are ignored here)
    return CombMap([3, 4, 5, 0, 1, 2], colours=["red"] * 6, name="one-hexagon")
