import pytest

from bggkit.bggx import emit_bggx
from bggkit.bgg_pattern import detect_pattern
from bggkit.complexes import ComplexError, cohomology, induced_on_cohomology, validate_complex
from bggkit.exactfield import rank
from bggkit.generators import (
    FIXTURES,
    SimplicialFixture,
    bggx_kinds,
    fixture,
    generate,
    mixed_diagram,
    pattern_diagram,
    phi_probe,
    probe_value,
    random_complex,
    random_homotopy,
    random_nullhomotopy_diagram,
    random_pattern_diagram,
    shift_identity_diagram,
    simplicial_cochain,
)
from bggkit.complexes import CochainComplex
from bggkit.exactfield import Matrix


def test_fixture_shapes():
    assert fixture("CIRCLE3").dims == (3, 3)
    assert fixture("SPHERE_TETRA").dims == (4, 6, 4)
    assert fixture("BALL3").dims == (4, 6, 4, 1)
    assert fixture("INTERVAL").d(0) == Matrix([[-1, 1]])


def test_invalid_fixture_rejected():
    bad = SimplicialFixture("BAD", 3, (((0,), (1,), (2,)), ((0, 1), (1, 2), (0, 3))))
    with pytest.raises(ComplexError):
        simplicial_cochain(bad)


@pytest.mark.parametrize("kind", bggx_kinds())
def test_generation_is_deterministic(kind):
    for seed in (0, 5):
        assert emit_bggx(generate(kind, seed)) == emit_bggx(generate(kind, seed))


def test_seeds_differ():
    assert emit_bggx(generate("mixed", 0)) != emit_bggx(generate("mixed", 1))


def test_nullhomotopy_diagrams():
    c = fixture("CIRCLE3", 2)
    for seed in range(5):
        d = random_nullhomotopy_diagram(c, c, seed)
        assert d.S.is_chain_map()
        assert induced_on_cohomology(d.S, cohomology(d.A), cohomology(d.B)).is_zero()
    K = random_homotopy(c, c, 0)
    assert all(abs(x) <= 2 for m in K.values() for row in m.tolist() for x in row)


def test_shift_identity_examples():
    d = shift_identity_diagram(fixture("SPHERE_TETRA"))
    assert d.S.is_chain_map()
    cert = detect_pattern(d)
    assert cert.accepted and set(cert.kinds.values()) == {"bijective"}


def test_pattern_diagram_spec_instance():
    W = fixture("CIRCLE3")
    Kpart = CochainComplex(2, (1,), ())
    Cpart = CochainComplex(0, (1,), ())
    d = pattern_diagram(W, Kpart, Cpart, 1)
    assert d.S.is_chain_map()
    cert = detect_pattern(d)
    assert cert.accepted and cert.j == 1


def test_pattern_support_violation():
    W = fixture("CIRCLE3")
    with pytest.raises(ComplexError):
        pattern_diagram(W, CochainComplex(1, (1,), ()), CochainComplex(0, (1,), ()), 1)
    with pytest.raises(ComplexError):
        pattern_diagram(W, CochainComplex(2, (1,), ()), CochainComplex(2, (1,), ()), 1)


def test_random_complexes_are_valid():
    for seed in range(10):
        assert validate_complex(random_complex(seed, -1, 3)).ok


def test_coverage_of_induced_ranks():
    """The families reach zero, full and intermediate rank of the induced map."""
    ranks = set()
    for d in (random_nullhomotopy_diagram(fixture("CIRCLE3"), fixture("CIRCLE3"), 0),
              shift_identity_diagram(fixture("CIRCLE3")), mixed_diagram(3)):
        hA, hB = cohomology(d.A), cohomology(d.B)
        ind = induced_on_cohomology(d.S, hA, hB)
        total = sum(hA.betti_numbers())
        r = sum(ind.rank(i) for i in d.A.degrees)
        ranks.add("zero" if r == 0 else "full" if r == total else "partial")
    assert ranks == {"zero", "full", "partial"}


@pytest.mark.parametrize("seed", range(6))
def test_phi_probe_shape(seed):
    d = phi_probe(seed)
    assert d.A.dims == d.B.dims == (0, 1, 1, 0)
    assert d.S.is_chain_map()
    assert probe_value(d) != 0
    assert rank(d.S.comp(1)) == 1


def test_random_pattern_diagrams_are_accepted():
    for seed in range(8):
        d = random_pattern_diagram(seed)
        assert d.S.is_chain_map()
        assert detect_pattern(d).accepted
