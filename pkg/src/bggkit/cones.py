"""Mapping cones, short and long exact sequences, gauge equivalence.

The cone of a commuting degree-(+1) map ``S: A -> B`` lives on
``Z^i = B^i ⊕ A^i`` (B block first) with differential

    [[d_B, S^i],
     [0,  -d_A]]

The sign on the A block is what makes ``d_Z ∘ d_Z`` equal to the commuting
residual ``d_B S - S d_A`` in its corner, so the cone is a complex exactly
when S is a chain map.  The quotient ``Z -> A`` is then a chain map onto
``(A, -d_A)``, whose cohomology bases coincide with those of A, and the
connecting morphism of ``0 -> B -> Z -> A -> 0`` is the map induced by S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .complexes import (
    ChainMap,
    CochainComplex,
    CohomologyBasis,
    ComplexError,
    InducedMap,
    cohomology,
    degree_span,
    induced_on_cohomology,
    negate,
    validate_complex,
)
from .exactfield import Matrix, inverse, kernel_basis, rank, solve_matrix
from .generators import TwoRowDiagram


@dataclass(frozen=True, eq=False)
class MappingCone:
    Z: CochainComplex
    diag: TwoRowDiagram

    def split(self, i: int) -> tuple[int, int]:
        """Sizes of the (B, A) blocks of ``Z^i``."""
        return self.diag.B.dim(i), self.diag.A.dim(i)


def cone_differential(B: CochainComplex, A: CochainComplex, S: ChainMap, i: int) -> Matrix:
    return Matrix.block([[B.d(i), S.comp(i)],
                         [Matrix.zeros(A.dim(i + 1), B.dim(i)), -A.d(i)]])


def mapping_cone(diag: TwoRowDiagram, check: bool = True) -> MappingCone:
    """Cone of ``diag.S``.

    With ``check=False`` the block matrices are assembled even when S does not
    commute, so the defect can be inspected; the result is then not a complex.
    """
    A, B, S = diag.A, diag.B, diag.S
    if check:
        for c, label in ((A, "A"), (B, "B")):
            rep = validate_complex(c)
            if not rep.ok:
                raise ComplexError(f"{label} is not a complex: {rep.failures}")
        if not S.is_chain_map():
            raise ComplexError("S does not commute with the differentials")
    span = degree_span(A, B)
    if not span:
        return MappingCone(CochainComplex.zero(), diag)
    dims = tuple(B.dim(i) + A.dim(i) for i in span)
    diffs = tuple(cone_differential(B, A, S, i) for i in span[:-1])
    return MappingCone(CochainComplex(span.start, dims, diffs), diag)


@dataclass(frozen=True)
class FlatnessReport:
    square: dict[int, Matrix]    # d_Z(i+1) d_Z(i)
    residual: dict[int, Matrix]  # d_B S^i - S^(i+1) d_A

    @property
    def flat(self) -> bool:
        return all(m.is_zero() for m in self.square.values())

    @property
    def commuting(self) -> bool:
        return all(m.is_zero() for m in self.residual.values())


def flatness(diag: TwoRowDiagram) -> FlatnessReport:
    """Compare ``d_Z²`` with the commuting-square residual degree by degree."""
    Z = mapping_cone(diag, check=False).Z
    square, residual = {}, {}
    for i in degree_span(diag.A, diag.B, pad=1):
        square[i] = Z.d(i + 1) @ Z.d(i)
        residual[i] = diag.S.residual(i)
    return FlatnessReport(square, residual)


@dataclass(frozen=True, eq=False)
class ShortExactSequenceOfComplexes:
    left: CochainComplex
    middle: CochainComplex
    right: CochainComplex
    inj: ChainMap
    surj: ChainMap

    def verify(self) -> list[tuple[int, str]]:
        """Degreewise failures of injectivity, surjectivity, exactness, or chain maps."""
        bad = []
        if not self.inj.is_chain_map():
            bad.append((None, "inclusion does not commute"))
        if not self.surj.is_chain_map():
            bad.append((None, "projection does not commute"))
        for i in degree_span(self.left, self.middle, self.right):
            f, g = self.inj.comp(i), self.surj.comp(i)
            if rank(f) != self.left.dim(i):
                bad.append((i, "inclusion not injective"))
            if rank(g) != self.right.dim(i):
                bad.append((i, "projection not surjective"))
            if not (g @ f).is_zero():
                bad.append((i, "composite not zero"))
            if self.left.dim(i) + self.right.dim(i) != self.middle.dim(i):
                bad.append((i, "dimensions do not add up"))
        return bad


def cone_ses(cone: MappingCone) -> ShortExactSequenceOfComplexes:
    """``0 -> B -> Z -> (A, -d_A) -> 0`` with block inclusion and projection."""
    A, B, Z = cone.diag.A, cone.diag.B, cone.Z
    right = negate(A)
    inj, surj = {}, {}
    for i in Z.degrees:
        b, a = cone.split(i)
        inj[i] = Matrix.vstack([Matrix.identity(b), Matrix.zeros(a, b)], cols=b)
        surj[i] = Matrix.hstack([Matrix.zeros(a, b), Matrix.identity(a)], rows=a)
    return ShortExactSequenceOfComplexes(B, Z, right, ChainMap(B, Z, 0, inj), ChainMap(Z, right, 0, surj))


def _lift_through(f: Matrix, v: Matrix, policy: str = "zero") -> Optional[Matrix]:
    x = solve_matrix(f, v)
    if x is None or policy == "zero":
        return x
    ker = kernel_basis(f)
    if ker.cols == 0:
        return x
    ones = Matrix([[1] * v.cols for _ in range(ker.cols)], shape=(ker.cols, v.cols))
    return x + ker @ ones


def connecting_morphism(ses: ShortExactSequenceOfComplexes,
                        h_left: Optional[CohomologyBasis] = None,
                        h_right: Optional[CohomologyBasis] = None,
                        policy: str = "zero") -> InducedMap:
    """Snake-lemma map ``H^i(right) -> H^(i+1)(left)``.

    Lift a representative through the projection, apply ``d_middle``, pull
    back through the inclusion.  ``policy="shifted"`` adds a kernel vector to
    every lift; the result must not change.
    """
    hl = h_left or cohomology(ses.left)
    hr = h_right or cohomology(ses.right)
    maps = {}
    for i in ses.right.degrees:
        reps = hr.reps.get(i, Matrix.zeros(ses.right.dim(i), 0))
        if ses.left.dim(i + 1) == 0 or reps.cols == 0:
            maps[i] = Matrix.zeros(hl.betti(i + 1), reps.cols)
            continue
        up = _lift_through(ses.surj.comp(i), reps, policy)
        if up is None:
            raise ComplexError(f"representative does not lift at degree {i}")
        down = _lift_through(ses.inj.comp(i + 1), ses.middle.d(i) @ up, "zero")
        if down is None:
            raise ComplexError(f"zig-zag does not pull back at degree {i}")
        maps[i] = hl.coords(i + 1, down)
    return InducedMap(1, maps)


@dataclass
class LongExactSequenceReport:
    nodes: list[tuple[str, int]]
    maps: list[Matrix]
    exact_at: list[bool]

    @property
    def exact(self) -> bool:
        return all(self.exact_at)

    def failures(self) -> list[str]:
        return [self.nodes[k][0] for k, ok in enumerate(self.exact_at) if not ok]

    def as_dict(self) -> dict:
        return {
            "nodes": [{"space": n, "betti": b, "exact": ok}
                      for (n, b), ok in zip(self.nodes, self.exact_at)],
            "exact": self.exact,
        }


def assemble_les(nodes: list[tuple[str, int]], maps: list[Matrix]) -> LongExactSequenceReport:
    """Check exactness at every node of ``n_0 -> n_1 -> ... -> n_k``.

    ``maps[k]`` goes from node k to node k+1.  The end nodes count as having
    zero neighbours beyond them.
    """
    if len(maps) != len(nodes) - 1:
        raise ValueError("need one map between consecutive nodes")
    for k, m in enumerate(maps):
        if m.shape != (nodes[k + 1][1], nodes[k][1]):
            raise ComplexError(f"map {k} has shape {m.shape}, nodes are {nodes[k]} -> {nodes[k + 1]}")
    exact = []
    for k, (_, b) in enumerate(nodes):
        inc = maps[k - 1] if k > 0 else Matrix.zeros(b, 0)
        out = maps[k] if k < len(maps) else Matrix.zeros(0, b)
        ok = (out @ inc).is_zero() and rank(inc) + rank(out) == b
        exact.append(ok)
    return LongExactSequenceReport(nodes, maps, exact)


def long_exact_sequence(ses: ShortExactSequenceOfComplexes) -> LongExactSequenceReport:
    """``... -> H^i(left) -> H^i(middle) -> H^i(right) -> H^(i+1)(left) -> ...``"""
    hl, hm, hr = cohomology(ses.left), cohomology(ses.middle), cohomology(ses.right)
    f = induced_on_cohomology(ses.inj, hl, hm)
    g = induced_on_cohomology(ses.surj, hm, hr)
    delta = connecting_morphism(ses, hl, hr)
    span = degree_span(ses.left, ses.middle, ses.right, pad=1)
    nodes, maps = [], []

    def get(m: InducedMap, i, rows, cols):
        return m.maps.get(i, Matrix.zeros(rows, cols))

    for i in span:
        nodes += [(f"H^{i}(left)", hl.betti(i)), (f"H^{i}(middle)", hm.betti(i)),
                  (f"H^{i}(right)", hr.betti(i))]
        maps += [get(f, i, hm.betti(i), hl.betti(i)), get(g, i, hr.betti(i), hm.betti(i))]
        if i != span[-1]:
            maps.append(get(delta, i, hl.betti(i + 1), hr.betti(i)))
    return assemble_les(nodes, maps)


# gauge transformation -----------------------------------------------------------

@dataclass
class GaugeResult:
    Q: dict[int, Matrix]
    Z0: CochainComplex
    ZS: CochainComplex
    sign: int           # R = sign * K in Q = [[I, R], [0, I]]
    chain_map: bool
    invertible: bool
    betti_0: tuple[int, ...]
    betti_S: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.chain_map and self.invertible and self.betti_0 == self.betti_S


def _anti_cone(A: CochainComplex, B: CochainComplex, S: Mapping[int, Matrix], span) -> CochainComplex:
    # anticommuting convention: [[d_B, S], [0, d_A]]
    dims = tuple(B.dim(i) + A.dim(i) for i in span)
    diffs = []
    for i in span[:-1]:
        s = S.get(i, Matrix.zeros(B.dim(i + 1), A.dim(i)))
        diffs.append(Matrix.block([[B.d(i), s], [Matrix.zeros(A.dim(i + 1), B.dim(i)), A.d(i)]]))
    return CochainComplex(span.start, dims, tuple(diffs))


def gauge_equivalence(A: CochainComplex, B: CochainComplex, K: Mapping[int, Matrix]) -> GaugeResult:
    """Unitriangular chain isomorphism between the cones of 0 and S = dK - Kd.

    Works in the anticommuting convention, where the cone carries ``d_A``
    unsigned.  Both signs of the off-diagonal block ``R = ±K`` are tried and
    the one that intertwines the differentials is recorded.
    """
    span = degree_span(A, B)
    Kf = {i: K.get(i, Matrix.zeros(B.dim(i), A.dim(i))) for i in degree_span(A, B, pad=1)}
    S = {i: B.d(i) @ Kf[i] - Kf[i + 1] @ A.d(i) for i in span if i + 1 in Kf}
    Z0 = _anti_cone(A, B, {}, span)
    ZS = _anti_cone(A, B, S, span)
    for sign in (-1, 1):
        Q = {i: Matrix.block([[Matrix.identity(B.dim(i)), Kf[i].scale(sign)],
                              [Matrix.zeros(A.dim(i), B.dim(i)), Matrix.identity(A.dim(i))]])
             for i in span}
        if all((Q[i + 1] @ Z0.d(i) - ZS.d(i) @ Q[i]).is_zero() for i in span[:-1]):
            break
    else:
        raise ComplexError("neither sign of the K block gives a chain map")
    invertible = True
    for i, q in Q.items():
        try:
            inverse(q)
        except ValueError:
            invertible = False
    return GaugeResult(Q, Z0, ZS, sign, True, invertible,
                       cohomology(Z0).betti_numbers(), cohomology(ZS).betti_numbers())


def determinant(m: Matrix):
    """Exact determinant by elimination (used to certify unitriangular blocks)."""
    a = m.tolist()
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
