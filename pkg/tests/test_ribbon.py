import pytest

from mcgsym import intlin
from mcgsym.ribbon import (
    Cycle,
    GraphAutomorphism,
    MalformedGraphError,
    NotACycleError,
    OrientationReversingError,
    RibbonGraph,
    check_cycle,
    compose,
    cycle_class,
    face_boundary,
    genus,
    homology_basis,
    induced_map,
    reverse_cycle,
)


def torus():
    return RibbonGraph.from_faces([[(0, 1), (1, 1), (0, -1), (1, -1)]])


def octagon():
    """Genus 2 from a b a^-1 b^-1 c d c^-1 d^-1."""
    word = [(0, 1), (1, 1), (0, -1), (1, -1), (2, 1), (3, 1), (2, -1), (3, -1)]
    return RibbonGraph.from_faces([word])


def sphere():
    return RibbonGraph.from_faces([[(0, 1)], [(0, -1)]])


@pytest.mark.parametrize("build,g", [(sphere, 0), (torus, 1), (octagon, 2)])
def test_genus_of_small_surfaces(build, g):
    assert genus(build()) == g


def test_json_round_trip_preserves_graph():
    rg = octagon()
    again = RibbonGraph.from_json(rg.to_json())
    assert again == rg
    assert again.to_json() == rg.to_json()


def test_malformed_pairing_rejected():
    with pytest.raises(MalformedGraphError):
        RibbonGraph(2, (0, 1), (1, 0))
    with pytest.raises(MalformedGraphError):
        RibbonGraph.from_faces([[(0, 1)], [(0, 1)]])


def test_torus_classes_form_symplectic_pair():
    rg = torus()
    hb = homology_basis(rg)
    a = cycle_class(rg, hb, Cycle((0,)))
    b = cycle_class(rg, hb, Cycle((2,)))
    assert abs(intlin.form(a, b)) == 1


def test_face_boundaries_are_null_homologous():
    for rg in (torus(), octagon()):
        hb = homology_basis(rg)
        for face in rg.faces():
            assert cycle_class(rg, hb, face_boundary(rg, face)) == (0,) * (2 * genus(rg))


def test_reversal_negates_class():
    rg = octagon()
    hb = homology_basis(rg)
    c = Cycle((0, 2))
    assert cycle_class(rg, hb, reverse_cycle(rg, c)) == tuple(-x for x in cycle_class(rg, hb, c))


def test_broken_path_rejected():
    rg = RibbonGraph.from_faces([[(0, 1), (1, 1), (2, 1)], [(2, -1), (1, -1), (0, -1)]])
    with pytest.raises(NotACycleError):
        check_cycle(rg, Cycle((0,)))


def test_quarter_turn_on_torus():
    rg = torus()
    hb = homology_basis(rg)
    quarter = GraphAutomorphism((2, 3, 1, 0))  # a -> b, b -> a^-1
    m = induced_map(rg, hb, quarter)
    assert intlin.det(m) == 1
    assert intlin.matpow(m, 4) == intlin.identity(2)
    assert intlin.matpow(m, 2) == intlin.scale(intlin.identity(2), -1)
    # functoriality: (phi phi)_* = phi_* phi_*
    assert induced_map(rg, hb, compose(quarter, quarter)) == intlin.matmul(m, m)


def test_reflection_rejected():
    rg = torus()
    swap = GraphAutomorphism((2, 3, 0, 1))
    with pytest.raises(OrientationReversingError):
        induced_map(rg, homology_basis(rg), swap)
