import pytest

from bggkit.bgg_pattern import (
    _seam,
    build_output_complex,
    corollary_check,
    detect_pattern,
    merged_les,
    rigid_motion_analogue,
)
from bggkit.complexes import (
    ChainMap,
    CochainComplex,
    ComplexError,
    cohomology,
    validate_complex,
)
from bggkit.exactfield import rank
from bggkit.generators import (
    TwoRowDiagram,
    fixture,
    pattern_diagram,
    phi_probe,
    probe_value,
    random_pattern_diagram,
    shift_identity_diagram,
    tensor_constant,
)


def _spec_instance(mult=1):
    return pattern_diagram(fixture("CIRCLE3", mult), CochainComplex(2, (1,), ()),
                           CochainComplex(0, (1,), ()), 1)


def test_rejects_S_equal_to_d():
    c = fixture("BALL3")
    d = TwoRowDiagram(c, c, ChainMap(c, c, 1, {i: c.d(i) for i in c.degrees}))
    cert = detect_pattern(d)
    assert not cert.accepted and cert.violations
    assert all(defect > 0 for _, _, defect in cert.violations)


def test_rejects_zero_S():
    c = fixture("CIRCLE3")
    cert = detect_pattern(TwoRowDiagram(c, c, ChainMap(c, c, 1, {})))
    assert not cert.accepted


def test_accepts_designed_seam():
    cert = detect_pattern(_spec_instance())
    assert cert.accepted and cert.j == 1
    # the seam is not unique in general: degree 0 fits the pattern as well
    assert cert.candidates == [0, 1]
    assert detect_pattern(_spec_instance(), prefer=0).j == 0


def test_all_bijective_output_is_zero():
    d = shift_identity_diagram(fixture("SPHERE_TETRA"))
    cert = detect_pattern(d)
    out = build_output_complex(d, cert)
    assert not any(out.C.dims)
    les = merged_les(d, cert, out)
    assert les.report.exact
    # with C = 0 the sequence says S~ is an isomorphism in each degree
    for i, m in les.S_tilde.maps.items():
        assert rank(m) == m.rows == m.cols


def test_output_dims_match_designed_parts():
    d = _spec_instance()
    cert = detect_pattern(d)
    out = build_output_complex(d, cert)
    assert validate_complex(out.C).ok
    assert {i: out.C.dim(i) for i in out.C.degrees if out.C.dim(i)} == {0: 1, 2: 1}
    assert cohomology(out.C).betti(0) == 1 and cohomology(out.C).betti(2) == 1
    S = d.S
    for i in out.C.degrees:
        want = (d.B.dim(i) - rank(S.comp(i - 1))) if i <= cert.j else (d.A.dim(i) - rank(S.comp(i)))
        assert out.C.dim(i) == want


@pytest.mark.parametrize("seed", range(10))
def test_seam_is_a_differential_and_lift_free(seed):
    d = random_pattern_diagram(seed)
    cert = detect_pattern(d)
    out = build_output_complex(d, cert)
    j = cert.j
    assert (out.D @ out.C.d(j - 1)).is_zero()
    assert (out.C.d(j + 1) @ out.D).is_zero()
    assert _seam(d, out.rows, j, "shifted") == out.D


def test_merged_sequence_on_tensored_circle():
    d = _spec_instance(2)
    cert = detect_pattern(d)
    les = merged_les(d, cert, build_output_complex(d, cert))
    assert les.report.exact


def test_output_betti_splits_under_identity_on_W():
    d = _spec_instance(2)
    cert = detect_pattern(d)
    out = build_output_complex(d, cert)
    verdicts = corollary_check(d, cert, out)
    assert all(v.ok for v in verdicts)
    hC = cohomology(out.C)
    # S~ is the identity on the W block, so only the designed parts survive
    assert {i: hC.betti(i) for i in out.C.degrees if hC.betti(i)} == {0: 1, 2: 1}


def test_probe_seam_value():
    for seed in range(6):
        d = phi_probe(seed)
        cert = detect_pattern(d)
        assert cert.accepted
        out = build_output_complex(d, cert)
        assert out.D.shape == (1, 1) and out.D[0, 0] == probe_value(d)


def test_rejected_pattern_cannot_build():
    c = fixture("CIRCLE3")
    d = TwoRowDiagram(c, c, ChainMap(c, c, 1, {}))
    with pytest.raises(ComplexError):
        build_output_complex(d, detect_pattern(d))


def test_rigid_motion_counts():
    assert rigid_motion_analogue("BALL3", 3, 3)["betti"] == [6, 0, 0, 0]
    rep = rigid_motion_analogue("CIRCLE3", 3, 3)
    assert rep["betti"] == [6, 6] and rep["ok"]
    assert rigid_motion_analogue("BALL3", 0, 0)["betti"] == [0, 0, 0, 0]
    assert rigid_motion_analogue(tensor_constant(fixture("POINT"), 1), 2, 1)["betti"] == [3]
