import pytest

from bggkit.complexes import (
    ChainMap,
    CochainComplex,
    ComplexError,
    cohomology,
    identity_map,
    induced_on_cohomology,
    shift,
    zero_map,
)
from bggkit.cones import (
    ShortExactSequenceOfComplexes,
    cone_ses,
    connecting_morphism,
    determinant,
    flatness,
    gauge_equivalence,
    long_exact_sequence,
    mapping_cone,
)
from bggkit.exactfield import Matrix, rank
from bggkit.generators import (
    TwoRowDiagram,
    fixture,
    mixed_diagram,
    random_homotopy,
    random_nullhomotopy_diagram,
    shift_identity_diagram,
)


def test_zero_S_cone_is_a_direct_sum():
    A, B = fixture("SPHERE_TETRA"), fixture("CIRCLE3", 2)
    Z = mapping_cone(TwoRowDiagram(A, B, zero_map(A, B, 1))).Z
    hZ, hA, hB = cohomology(Z), cohomology(A), cohomology(B)
    assert all(hZ.betti(i) == hA.betti(i) + hB.betti(i) for i in Z.degrees)


def test_shift_identity_cone_is_acyclic():
    Z = mapping_cone(shift_identity_diagram(fixture("SPHERE_TETRA"))).Z
    assert not any(cohomology(Z).betti_numbers())


def test_nullhomotopy_cone_on_circle():
    c = fixture("CIRCLE3")
    Z = mapping_cone(random_nullhomotopy_diagram(c, c, 0)).Z
    assert cohomology(Z).betti_numbers() == (2, 2)
    assert Z.dims == (6, 6)


def test_cone_rejects_a_non_commuting_S():
    A = fixture("INTERVAL")
    B = shift(A, -1)
    # d_B S^0 = [-1, 0] while S^1 d_A = 0
    S = ChainMap(A, B, 1, {0: Matrix([[1, 0], [0, 0]])})
    d = TwoRowDiagram(A, B, S)
    with pytest.raises(ComplexError):
        mapping_cone(d)
    rep = flatness(d)
    assert not rep.flat and not rep.commuting


def test_flatness_square_is_the_residual_in_the_corner():
    d = mixed_diagram(2)
    A, B = d.A, d.B
    arr = d.S.comp(1).array()
    arr[0, 0] += 1
    comps = dict(d.S.comps)
    comps[1] = Matrix(arr)
    broken = TwoRowDiagram(A, B, ChainMap(A, B, 1, comps))
    rep = flatness(broken)
    for i, sq in rep.square.items():
        corner = sq.select_rows(range(B.dim(i + 2))).select_columns(range(B.dim(i), sq.cols))
        assert corner == rep.residual[i]


def test_cone_ses_checks():
    c = fixture("CIRCLE3")
    ses = cone_ses(mapping_cone(random_nullhomotopy_diagram(c, c, 1)))
    assert ses.verify() == []
    for i in ses.middle.degrees:
        assert ses.middle.dim(i) == ses.left.dim(i) + ses.right.dim(i)
        assert (ses.surj.comp(i) @ ses.inj.comp(i)).is_zero()
        assert rank(ses.inj.comp(i)) + rank(ses.surj.comp(i)) == ses.middle.dim(i)


@pytest.mark.parametrize("diag,expect", [
    (TwoRowDiagram(fixture("CIRCLE3"), fixture("CIRCLE3"), zero_map(fixture("CIRCLE3"), fixture("CIRCLE3"), 1)), "zero"),
    (shift_identity_diagram(fixture("SPHERE_TETRA")), "identity"),
    (random_nullhomotopy_diagram(fixture("CIRCLE3", 2), fixture("CIRCLE3", 2), 3), "zero"),
    (mixed_diagram(3), "induced"),
])
def test_connecting_morphism(diag, expect):
    ses = cone_ses(mapping_cone(diag))
    hA, hB = cohomology(diag.A), cohomology(diag.B)
    delta = connecting_morphism(ses, hB, cohomology(ses.right))
    induced = induced_on_cohomology(diag.S, hA, hB)
    assert delta == induced
    if expect == "zero":
        assert delta.is_zero()
    if expect == "identity":
        assert delta.is_identity()
    assert connecting_morphism(ses, hB, cohomology(ses.right), policy="shifted") == delta
    assert long_exact_sequence(ses).exact


def test_les_with_zero_right_term():
    c = fixture("SPHERE_TETRA")
    zero = CochainComplex(0, (0, 0, 0), (Matrix.zeros(0, 0), Matrix.zeros(0, 0)))
    ses = ShortExactSequenceOfComplexes(c, c, zero, identity_map(c), zero_map(c, zero, 0))
    assert ses.verify() == []
    rep = long_exact_sequence(ses)
    assert rep.exact


def test_split_short_exact_sequences_under_zero_induced_map():
    c = fixture("CIRCLE3", 2)
    d = random_nullhomotopy_diagram(c, c, 9)
    rep = long_exact_sequence(cone_ses(mapping_cone(d)))
    # every third map is a connecting map, all zero here
    assert all(m.is_zero() for m in rep.maps[2::3])
    assert rep.exact


def test_gauge_examples():
    A = B = fixture("INTERVAL")
    g = gauge_equivalence(A, B, {})
    assert all(q == Matrix.identity(q.rows) for q in g.Q.values())
    g = gauge_equivalence(A, B, random_homotopy(A, B, 2))
    assert g.ok and g.betti_0 == g.betti_S
    assert all(determinant(q) == 1 for q in g.Q.values())
    assert g.sign == -1


def test_determinant():
    assert determinant(Matrix([[2, 1], [1, 1]])) == 1
    assert determinant(Matrix([[1, 2], [2, 4]])) == 0
    assert determinant(Matrix([[0, 1], [1, 0]])) == -1
