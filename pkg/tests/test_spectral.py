import pytest

from bggkit.bgg_reduction import bgg_reduce, seam_map
from bggkit.complexes import ChainMap, ComplexError, cohomology, shift, zero_map
from bggkit.exactfield import Matrix
from bggkit.generators import (
    TwoRowDiagram,
    fixture,
    mixed_diagram,
    phi_probe,
    probe_value,
    random_nullhomotopy_diagram,
    random_pattern_diagram,
    shift_identity_diagram,
)
from bggkit.spectral import (
    analyze,
    cone_Y_phi,
    knight_move_phi,
    pages_horizontal_first,
    rows_from_diagram,
    verify_convergence,
)


def test_zero_S_gives_zero_knight_moves():
    A, B = fixture("CIRCLE3"), fixture("SPHERE_TETRA")
    d = TwoRowDiagram(A, B, zero_map(A, B, 1))
    K, C = rows_from_diagram(d)
    hK, hC, hA, hB = cohomology(K), cohomology(C), cohomology(A), cohomology(B)
    assert all(hK.betti(i) == hA.betti(i) for i in A.degrees)
    assert all(hC.betti(i) == hB.betti(i) for i in B.degrees)
    assert knight_move_phi(d).is_zero()
    assert verify_convergence(d).ok


@pytest.mark.parametrize("seed", range(4))
def test_pattern_without_probe_has_zero_knight_moves(seed):
    d = random_pattern_diagram(seed, with_probe=False)
    assert knight_move_phi(d).is_zero()
    assert knight_move_phi(d, lift="shifted").is_zero()


@pytest.mark.parametrize("seed", range(6))
def test_probe_knight_move_is_the_designed_scalar(seed):
    d = phi_probe(seed)
    phi = knight_move_phi(d)
    (i, m), = phi.maps.items()
    assert m == Matrix([[probe_value(d)]])
    assert knight_move_phi(d, lift="shifted").maps == phi.maps


def test_probe_cone_of_seam_loses_the_two_classes():
    d = phi_probe(1)
    a = analyze(d)
    K, C = rows_from_diagram(d)
    unglued = cone_Y_phi(K, C, zero_map(C, K, 1))
    assert sum(cohomology(unglued).betti_numbers()) - sum(cohomology(a.Y).betti_numbers()) == 2
    assert a.certificate.y_ok and a.certificate.phi_matches_seam


def test_cone_Y_phi_rejects_non_commuting_seam():
    K = fixture("INTERVAL")
    C = shift(K, 1)
    # d_K Φ^-1 = [-1, 0] while Φ^0 d_C = 0
    bad = ChainMap(C, K, 1, {-1: Matrix([[1, 0], [0, 0]])})
    assert not bad.is_chain_map()
    with pytest.raises(ComplexError):
        cone_Y_phi(K, C, bad)
    with pytest.raises(ComplexError):
        cone_Y_phi(K, C, zero_map(K, C, 1))


def test_horizontal_pages_on_shift_identity():
    d = shift_identity_diagram(fixture("CIRCLE3", 2))
    pages = pages_horizontal_first(d)
    assert pages.e_infinity_totals() == tuple(0 for _ in pages.degrees)
    p1 = pages.pages[0]
    assert all(m == Matrix.identity(m.rows) for m in p1.maps.values() if m.rows)


@pytest.mark.parametrize("policy", ["first", "last"])
@pytest.mark.parametrize("maker", [
    lambda: mixed_diagram(0),
    lambda: mixed_diagram(7),
    lambda: random_nullhomotopy_diagram(fixture("CIRCLE3", 2), fixture("SPHERE_TETRA"), 6),
    lambda: random_pattern_diagram(3),
    lambda: phi_probe(2),
])
def test_convergence(maker, policy):
    cert = verify_convergence(maker(), policy)
    assert cert.ok, cert.as_dict()
    assert cert.vertical == cert.horizontal == cert.cone_betti


def test_split_holds_when_induced_S_vanishes():
    c = fixture("SPHERE_TETRA", 2)
    cert = verify_convergence(random_nullhomotopy_diagram(c, c, 8))
    assert cert.s_tilde_zero and cert.split_ok
