"""Acceptance criteria as functions returning ``(name, passed, detail)``.

Shared by ``bggkit selftest`` and ``tests/test_acceptance.py``.  Suites are
seeded and cached so that criteria sharing instances do not rebuild them.
Every comparison is exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, NamedTuple

from .bgg_pattern import (
    build_output_complex,
    corollary_check,
    detect_pattern,
    merged_les,
    rigid_motion_analogue,
)
from .bgg_reduction import (
    bgg_reduce,
    identities,
    reduced_block_form,
    reduced_complex,
    seam_map,
    verify_quasi_iso,
)
from .bggx import emit_bggx, parse_bggx
from .complexes import (
    ChainMap,
    betti_mod_p,
    cohomology,
    degree_span,
    induced_on_cohomology,
    validate_complex,
)
from .cones import (
    cone_ses,
    connecting_morphism,
    determinant,
    flatness,
    gauge_equivalence,
    long_exact_sequence,
    mapping_cone,
)
from .exactfield import Matrix
from .generators import (
    FIXTURE_BETTI,
    FIXTURES,
    TwoRowDiagram,
    conjugate_diagram,
    direct_sum_diagram,
    fixture,
    generate,
    bggx_kinds,
    mixed_diagram,
    phi_probe,
    probe_value,
    random_complex,
    random_homotopy,
    random_nullhomotopy_diagram,
    random_pattern_diagram,
    shift_identity_diagram,
)
from .reports import build_report, render
from .spectral import analyze, knight_move_phi

FIXTURE_NAMES = tuple(FIXTURES)


class Verdict(NamedTuple):
    name: str
    passed: bool
    detail: str


# suites -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def nullhomotopy_suite(n: int = 100) -> tuple[TwoRowDiagram, ...]:
    """Fixture pairs, random complexes and mixtures, with S = dK + Kd."""
    out = []
    for s in range(n):
        name_a = FIXTURE_NAMES[s % len(FIXTURE_NAMES)]
        name_b = FIXTURE_NAMES[(s // len(FIXTURE_NAMES)) % len(FIXTURE_NAMES)]
        kind = s % 3
        if kind == 0:
            A, B = fixture(name_a, 1 + s % 2), fixture(name_b, 1 + (s // 2) % 2)
        elif kind == 1:
            A, B = random_complex(s, 0, 3), random_complex(10_000 + s, -1, 2)
        else:
            A, B = fixture(name_a), random_complex(20_000 + s, 0, 3)
        out.append(random_nullhomotopy_diagram(A, B, s))
    return tuple(out)


@lru_cache(maxsize=None)
def fixture_diagrams() -> tuple[TwoRowDiagram, ...]:
    """Every fixture with a nullhomotopy S onto itself and with the shift identity."""
    out = []
    for k, name in enumerate(FIXTURE_NAMES):
        c = fixture(name, 2)
        out.append(random_nullhomotopy_diagram(c, c, 500 + k))
        out.append(shift_identity_diagram(fixture(name)))
    return tuple(out)


@lru_cache(maxsize=None)
def shift_identity_suite(n: int = 20) -> tuple[TwoRowDiagram, ...]:
    out = [shift_identity_diagram(fixture(name, 2)) for name in FIXTURE_NAMES]
    out += [shift_identity_diagram(random_complex(30_000 + s, -1, 2)) for s in range(n - len(out))]
    return tuple(out)


@lru_cache(maxsize=None)
def pattern_suite(n: int = 50) -> tuple[TwoRowDiagram, ...]:
    return tuple(random_pattern_diagram(s, with_probe=s % 5 != 4) for s in range(n))


@lru_cache(maxsize=None)
def reduction_suite() -> tuple[tuple[str, TwoRowDiagram], ...]:
    """100 diagrams with no rank hypotheses, 20 from each family."""
    out = [("mixed", mixed_diagram(s)) for s in range(20)]
    out += [("nullhomotopy", d) for d in nullhomotopy_suite()[:20]]
    out += [("pattern", d) for d in pattern_suite()[:20]]
    out += [("shift-identity", d) for d in shift_identity_suite()]
    out += [("probe", phi_probe(s) if s < 8 else
             conjugate_diagram(direct_sum_diagram(phi_probe(s), mixed_diagram(40_000 + s)), s))
            for s in range(20)]
    return tuple(out)


@lru_cache(maxsize=None)
def reduction(k: int, policy: str):
    return bgg_reduce(reduction_suite()[k][1], policy)


def _fail(name: str, bad: list, total: int) -> Verdict:
    if bad:
        return Verdict(name, False, f"{len(bad)}/{total} failed, first: {bad[0]}")
    return Verdict(name, True, f"{total} instances")


# criteria -----------------------------------------------------------------------

def criterion_1_validity() -> Verdict:
    name = "1 complex validity and corruption localization"
    bad, total = [], 0
    complexes = [fixture(n) for n in FIXTURE_NAMES]
    for d in nullhomotopy_suite():
        complexes += [d.A, d.B, mapping_cone(d).Z]
    for c in complexes:
        total += 1
        rep = validate_complex(c)
        if not rep.ok:
            bad.append((c.name, rep.failures))
    # corrupting one entry of the top differential d^k breaks only d^k d^(k-1)
    for fx, k in (("SPHERE_TETRA", 1), ("BALL3", 2), ("INTERVAL", 0)):
        c = fixture(fx)
        arr = c.d(k).array()
        arr[0, 0] += 1
        diffs = list(c.diffs)
        diffs[k - c.lo] = Matrix(arr)
        broken = type(c)(c.lo, c.dims, tuple(diffs), fx)
        want = [k - 1] if k - 1 >= c.lo else []
        got = validate_complex(broken).degrees()
        total += 1
        if got != want:
            bad.append((fx, "corruption", got, want))
    return _fail(name, bad, total)


def criterion_2_betti() -> Verdict:
    name = "2 Betti numbers of the fixtures"
    bad = []
    for n in FIXTURE_NAMES:
        c = fixture(n)
        got = cohomology(c).betti_numbers()
        want = FIXTURE_BETTI[n]
        chi = sum((-1) ** (c.lo + k) * b for k, b in enumerate(want))
        if got != want or chi != c.euler_characteristic() or betti_mod_p(c) != want:
            bad.append((n, got, want))
    return _fail(name, bad, len(FIXTURE_NAMES))


def _les_check(d: TwoRowDiagram):
    cone = mapping_cone(d)
    ses = cone_ses(cone)
    if ses.verify():
        return ("ses", ses.verify())
    les = long_exact_sequence(ses)
    if not les.exact:
        return ("les", les.failures())
    hA, hB = cohomology(d.A), cohomology(d.B)
    delta = connecting_morphism(ses, hB, cohomology(ses.right))
    induced = induced_on_cohomology(d.S, hA, hB)
    if delta != induced:
        return ("connecting", "differs from the induced map")
    shifted = connecting_morphism(ses, hB, cohomology(ses.right), policy="shifted")
    if shifted != delta:
        return ("connecting", "depends on the lift")
    return None


def criterion_3_cone_les() -> Verdict:
    name = "3 cone short/long exact sequences"
    suite = list(nullhomotopy_suite()) + list(fixture_diagrams()) + [mixed_diagram(s) for s in range(5)]
    bad = [(k, r) for k, d in enumerate(suite) if (r := _les_check(d))]
    return _fail(name, bad, len(suite))


def criterion_4_split() -> Verdict:
    name = "4 zero induced map splits the cone cohomology"
    bad = []
    suite = nullhomotopy_suite()
    for k, d in enumerate(suite):
        hA, hB = cohomology(d.A), cohomology(d.B)
        if not induced_on_cohomology(d.S, hA, hB).is_zero():
            bad.append((k, "induced map nonzero"))
            continue
        Z = mapping_cone(d).Z
        hZ = cohomology(Z)
        span = degree_span(d.A, d.B, Z)
        if any(hZ.betti(i) != hA.betti(i) + hB.betti(i) for i in span):
            bad.append((k, hZ.betti_numbers()))
    return _fail(name, bad, len(suite))


def criterion_5_iso() -> Verdict:
    name = "5 shift-identity cones are acyclic"
    suite = shift_identity_suite()
    bad = [k for k, d in enumerate(suite) if any(cohomology(mapping_cone(d).Z).betti_numbers())]
    return _fail(name, bad, len(suite))


def criterion_6_pattern() -> Verdict:
    name = "6 pattern instances: merged sequence and Betti formula"
    bad = []
    suite = pattern_suite()
    for k, d in enumerate(suite):
        cert = detect_pattern(d)
        if not cert.accepted:
            bad.append((k, "rejected", cert.violations))
            continue
        out = build_output_complex(d, cert)
        les = merged_les(d, cert, out)
        if not les.report.exact:
            bad.append((k, "not exact", les.report.failures()))
            continue
        verdicts = corollary_check(d, cert, out, les)
        St = les.S_tilde
        for i in degree_span(d.A, d.B, out.C, pad=1):
            want = les.hB.betti(i) - St.rank(i - 1) + les.hA.betti(i) - St.rank(i)
            if les.hC.betti(i) != want:
                bad.append((k, "betti", i))
        if not all(v.ok for v in verdicts):
            bad.append((k, "short exact pieces"))
    return _fail(name, bad, len(suite))


def criterion_7_rigid_motion() -> Verdict:
    name = "7 rigid-motion dimension count"
    ball = rigid_motion_analogue("BALL3", 3, 3, seed=7)
    circle = rigid_motion_analogue("CIRCLE3", 3, 3, seed=7)
    ok = ball["betti"] == [6, 0, 0, 0] and circle["betti"] == [6, 6]
    return Verdict(name, ok, f"BALL3 {ball['betti']}, CIRCLE3 {circle['betti']}")


def _reduction_verdict(k: int, policy: str) -> tuple:
    r = reduction(k, policy)
    ids = identities(r)
    red = reduced_complex(r)
    block = all(red.d(i) == reduced_block_form(r, i) for i in red.degrees[:-1])
    q = verify_quasi_iso(r)
    return (all(ids.values()), block, validate_complex(red).ok, q.middle_exact,
            q.degreewise_exact, q.invertible, q.lift_is_chain_map, q.quot_is_chain_map,
            q.reduced_betti == q.cone_betti)


def criterion_8_reduction() -> Verdict:
    name = "8 pseudoinverse reduction is a quasi-isomorphism"
    suite = reduction_suite()
    bad = []
    for k, (family, _) in enumerate(suite):
        first = _reduction_verdict(k, "first")
        if not all(first):
            bad.append((k, family, first))
        elif _reduction_verdict(k, "last") != first:
            bad.append((k, family, "policy changes the verdict"))
    return _fail(name, bad, len(suite))


def criterion_9_spectral() -> Verdict:
    name = "9 spectral sequences converge"
    suite = reduction_suite()
    bad = []
    for k, (family, d) in enumerate(suite):
        c = analyze(d, red=reduction(k, "first")).certificate
        if not c.ok:
            bad.append((k, family, c.as_dict()))
    for k, d in enumerate(nullhomotopy_suite()):
        c = analyze(d).certificate
        if not (c.ok and c.s_tilde_zero and c.split_ok):
            bad.append((k, "nullhomotopy", c.as_dict()))
    total = len(suite) + len(nullhomotopy_suite())
    probes = []
    for s in range(8):
        p = phi_probe(s)
        phi = knight_move_phi(p)
        got = phi.matrix(1)
        again = knight_move_phi(p, lift="shifted").matrix(1)
        if got.shape != (1, 1) or got[0, 0] == 0 or got[0, 0] != probe_value(p) or again != got:
            bad.append(("probe", s, got.tolist(), probe_value(p)))
        probes.append(str(got[0, 0]))
    v = _fail(name, bad, total)
    return Verdict(v.name, v.passed, v.detail + f"; probe φ values {', '.join(probes)}")


def criterion_10_consistency() -> Verdict:
    name = "10 seam block equals minus the seam operator"
    bad = []
    suite = pattern_suite()
    for k, d in enumerate(suite):
        cert = detect_pattern(d)
        out = build_output_complex(d, cert)
        Phi = seam_map(bgg_reduce(d))
        for i in degree_span(Phi.source, Phi.target, pad=1):
            m = Phi.comp(i)
            if i == cert.j:
                if m != -out.D:
                    bad.append((k, i, "Φ^j != -D"))
            elif not m.is_zero():
                bad.append((k, i, "Φ nonzero off the seam"))
    return _fail(name, bad, len(suite))


def _breakable_entry(d: TwoRowDiagram):
    for i in degree_span(d.A, d.B):
        dB, dA = d.B.d(i + 1), d.A.d(i - 1)
        for r in range(d.B.dim(i + 1)):
            for c in range(d.A.dim(i)):
                if any(dB[k, r] for k in range(dB.rows)) or any(dA[c, k] for k in range(dA.cols)):
                    return i, r, c
    return None


def criterion_11_gauge() -> Verdict:
    name = "11 gauge equivalence and flatness"
    bad = []
    n = 50
    for s in range(n):
        A = fixture(FIXTURE_NAMES[s % len(FIXTURE_NAMES)], 1 + s % 2)
        B = fixture(FIXTURE_NAMES[(s * 3 + 1) % len(FIXTURE_NAMES)], 1 + (s // 2) % 2)
        g = gauge_equivalence(A, B, random_homotopy(A, B, 60_000 + s))
        span = g.Z0.degrees
        intertwines = all((g.Q[i + 1] @ g.Z0.d(i) - g.ZS.d(i) @ g.Q[i]).is_zero() for i in span[:-1])
        unit = all(determinant(g.Q[i]) == 1 for i in span)
        if not (g.ok and intertwines and unit):
            bad.append((s, g.sign, g.betti_0, g.betti_S))
    # flatness both ways: commuting S gives d_Z^2 = 0.  Adding E_rc to S^i
    # changes the residual by d_B^(i+1) E_rc and -E_rc d_A^(i-1), so pick an
    # entry whose column of d_B^(i+1) or row of d_A^(i-1) is nonzero.
    probes = []
    for d in nullhomotopy_suite():
        spot = _breakable_entry(d)
        if spot is not None:
            probes.append((d, spot))
    for s, (d, (i, r, c)) in enumerate(probes[:10]):
        rep = flatness(d)
        if not (rep.flat and rep.commuting):
            bad.append((s, "commuting S not flat"))
        arr = d.S.comp(i).array()
        arr[r, c] += 1
        comps = dict(d.S.comps)
        comps[i] = Matrix(arr)
        rep = flatness(TwoRowDiagram(d.A, d.B, ChainMap(d.A, d.B, 1, comps)))
        if rep.flat or rep.commuting:
            bad.append((s, "broken S still flat"))
    return _fail(name, bad, n + 10)


def criterion_12_determinism() -> Verdict:
    name = "12 determinism and BGGX round trip"
    bad = []
    total = 0
    for kind in bggx_kinds():
        for seed in (0, 1, 7):
            total += 1
            t1 = emit_bggx(generate(kind, seed))
            t2 = emit_bggx(generate(kind, seed))
            if t1 != t2:
                bad.append((kind, seed, "generator not deterministic"))
            if emit_bggx(parse_bggx(t1)) != t1:
                bad.append((kind, seed, "round trip"))
    for kind, command in (("fixture", "cohomology"), ("nullhomotopy", "les"), ("pattern", "bgg-pattern"),
                          ("mixed", "bgg-reduce"), ("phi-probe", "spectral"), ("nullhomotopy", "cone")):
        text = emit_bggx(generate(kind, 3))
        for fmt in ("text", "machine"):
            total += 1
            r1 = render(build_report(command, text, argv=[command]), fmt)
            r2 = render(build_report(command, text, argv=[command]), fmt)
            if r1 != r2:
                bad.append((command, fmt, "report differs"))
    return _fail(name, bad, total)


CRITERIA: tuple[Callable[[], Verdict], ...] = (
    criterion_1_validity,
    criterion_2_betti,
    criterion_3_cone_les,
    criterion_4_split,
    criterion_5_iso,
    criterion_6_pattern,
    criterion_7_rigid_motion,
    criterion_8_reduction,
    criterion_9_spectral,
    criterion_10_consistency,
    criterion_11_gauge,
    criterion_12_determinism,
)


def run_all() -> list[Verdict]:
    return [c() for c in CRITERIA]
