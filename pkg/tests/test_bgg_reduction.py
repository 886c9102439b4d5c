import pytest

from bggkit.bgg_pattern import build_output_complex, detect_pattern
from bggkit.bgg_reduction import (
    bgg_reduce,
    identities,
    middle_term,
    printed_block_form,
    reduced_block_form,
    reduced_complex,
    seam_map,
    verify_quasi_iso,
)
from bggkit.complexes import cohomology, direct_sum, induced_on_cohomology, zero_map
from bggkit.exactfield import Matrix
from bggkit.generators import (
    TwoRowDiagram,
    fixture,
    mixed_diagram,
    phi_probe,
    random_nullhomotopy_diagram,
    random_pattern_diagram,
    shift_identity_diagram,
)
from bggkit.spectral import knight_move_phi


def test_zero_S_is_already_reduced():
    A, B = fixture("CIRCLE3"), fixture("SPHERE_TETRA")
    r = bgg_reduce(TwoRowDiagram(A, B, zero_map(A, B, 1)))
    assert all(t.is_zero() for t in r.T.values())
    assert all(m == Matrix.identity(m.rows) for m in r.L.values())
    red = reduced_complex(r)
    assert red.dims == r.cone.Z.dims
    assert cohomology(red).betti_numbers() == cohomology(direct_sum(B, A)).betti_numbers()
    assert not any(middle_term(r).complex.dims)


def test_shift_identity_reduces_to_zero():
    r = bgg_reduce(shift_identity_diagram(fixture("SPHERE_TETRA")))
    assert not any(reduced_complex(r).dims)
    assert verify_quasi_iso(r).ok


@pytest.mark.parametrize("policy", ["first", "last"])
def test_identities_on_tensored_circle(policy):
    c = fixture("CIRCLE3", 2)
    r = bgg_reduce(random_nullhomotopy_diagram(c, c, 3), policy)
    checks = identities(r)
    assert all(checks.values()), checks
    for i in r.conj:
        assert r.conj[i] == printed_block_form(r, i)


@pytest.mark.parametrize("policy", ["first", "last"])
@pytest.mark.parametrize("maker", [
    lambda: mixed_diagram(1),
    lambda: random_nullhomotopy_diagram(fixture("SPHERE_TETRA"), fixture("SPHERE_TETRA"), 4),
    lambda: random_pattern_diagram(2),
    lambda: phi_probe(0),
])
def test_quasi_isomorphism(maker, policy):
    r = bgg_reduce(maker(), policy)
    cert = verify_quasi_iso(r)
    assert cert.ok, cert.as_dict()
    red = reduced_complex(r)
    for i in red.degrees[:-1]:
        assert red.d(i) == reduced_block_form(r, i)


def test_policies_agree_on_the_verdict():
    d = mixed_diagram(5)
    a, b = verify_quasi_iso(bgg_reduce(d, "first")), verify_quasi_iso(bgg_reduce(d, "last"))
    assert a.ok and b.ok and a.reduced_betti == b.reduced_betti


@pytest.mark.parametrize("seed", range(4))
def test_seam_map_is_minus_pattern_seam(seed):
    d = random_pattern_diagram(seed)
    cert = detect_pattern(d)
    out = build_output_complex(d, cert)
    phi = seam_map(bgg_reduce(d))
    assert phi.is_chain_map()
    assert phi.comp(cert.j) == -out.D


@pytest.mark.parametrize("seed", range(3))
def test_seam_map_induces_minus_knight_move(seed):
    d = phi_probe(seed)
    r = bgg_reduce(d)
    phi = knight_move_phi(d, r.rows)
    ind = induced_on_cohomology(seam_map(r), phi.hC, phi.hK)
    assert any(not m.is_zero() for m in phi.maps.values())
    for i in phi.maps:
        assert ind.matrix(i) == -phi.matrix(i)
