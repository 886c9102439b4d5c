"""The two spectral sequences of the two-row double complex.

Starting with the S direction, page 1 holds the rows ``C = coker S`` and
``K = ker S`` with their induced differentials, page 2 their cohomology
joined by knight-move maps ``φ^i: H^i(C) -> H^(i+1)(K)``, and page 3 the
kernels and cokernels of φ, where the sequence stops.  Starting with the
row differentials, page 1 holds H(B) and H(A) joined by the induced map S~,
and page 2 its cokernels and kernels, where it stops.

Total degree of a class: a space in row B or C at index i, or in row A or K
at index i, contributes to total degree i of the cone ``Z^i = B^i ⊕ A^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bgg_reduction import BGGReduction, bgg_reduce, seam_map
from .complexes import (
    ChainMap,
    CochainComplex,
    CohomologyBasis,
    ComplexError,
    InducedMap,
    cohomology,
    degree_span,
    induced_on_cohomology,
)
from .cones import mapping_cone
from .exactfield import Matrix, kernel_basis, rank, solve_matrix
from .generators import TwoRowDiagram
from .rows import Rows, realize_rows


def rows_from_diagram(diag: TwoRowDiagram, policy: str = "first") -> tuple[CochainComplex, CochainComplex]:
    """``(K, C)`` with ``K^i = ker S^i`` and ``C^i = coker S^(i-1)``."""
    rows = realize_rows(diag, policy)
    return rows.K, rows.C


@dataclass(frozen=True, eq=False)
class KnightMoveMaps:
    maps: dict[int, Matrix]          # H^i(C) -> H^(i+1)(K)
    hK: CohomologyBasis
    hC: CohomologyBasis

    def matrix(self, i: int) -> Matrix:
        return self.maps.get(i, Matrix.zeros(self.hK.betti(i + 1), self.hC.betti(i)))

    def rank(self, i: int) -> int:
        return rank(self.matrix(i))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def as_induced(self) -> InducedMap:
        return InducedMap(1, dict(self.maps))


def _ones(rows: int, cols: int) -> Matrix:
    return Matrix([[1] * cols for _ in range(rows)], shape=(rows, cols))


def knight_move_phi(diag: TwoRowDiagram, rows: Optional[Rows] = None, lift: str = "zero",
                    hK: Optional[CohomologyBasis] = None,
                    hC: Optional[CohomologyBasis] = None) -> KnightMoveMaps:
    """Zig-zag ``c -> d_B c -> S^-1 -> d_A`` read in H(K).

    ``lift="shifted"`` moves every choice: the lift of c to B^i picks up an
    element of img S^(i-1), and the pullback through S^i picks up a kernel
    vector.  The resulting matrices must not change.
    """
    A, B, S = diag.A, diag.B, diag.S
    rows = rows or realize_rows(diag)
    hK = hK or cohomology(rows.K)
    hC = hC or cohomology(rows.C)
    maps = {}
    for i in rows.C.degrees:
        reps = hC.reps.get(i)
        if reps is None or reps.cols == 0 or hK.betti(i + 1) == 0:
            continue
        b = rows.cb(i) @ reps
        s_prev, s_here = S.comp(i - 1), S.comp(i)
        if lift == "shifted" and s_prev.cols:
            b = b + s_prev @ _ones(s_prev.cols, b.cols)
        target = B.d(i) @ b
        a = solve_matrix(s_here, target)
        if a is None:
            raise ComplexError(f"knight move at degree {i}: d_B of a C-cycle is not in img S^{i}")
        if lift == "shifted":
            ker = kernel_basis(s_here)
            if ker.cols:
                a = a + ker @ _ones(ker.cols, a.cols)
        k = rows.k_coords(i + 1, A.d(i) @ a)
        maps[i] = hK.coords(i + 1, k)
    return KnightMoveMaps(maps, hK, hC)


@dataclass
class Page:
    """Two rows of dimensions (upper row B/C side, lower row A/K side) and the maps between them."""
    upper: dict[int, int]
    lower: dict[int, int]
    maps: dict[int, Matrix] = field(default_factory=dict)
    label: str = ""

    def total(self, i: int) -> int:
        return self.upper.get(i, 0) + self.lower.get(i, 0)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "upper": {str(i): v for i, v in sorted(self.upper.items())},
            "lower": {str(i): v for i, v in sorted(self.lower.items())},
            "map_ranks": {str(i): rank(m) for i, m in sorted(self.maps.items())},
        }


@dataclass
class TwoRowPages:
    orientation: str
    pages: list[Page]
    converged_at: int
    degrees: range

    @property
    def e_infinity(self) -> Page:
        return self.pages[self.converged_at - 1]

    def e_infinity_totals(self) -> tuple[int, ...]:
        return tuple(self.e_infinity.total(i) for i in self.degrees)

    def as_dict(self) -> dict:
        return {
            "orientation": self.orientation,
            "converged_at": self.converged_at,
            "pages": [p.as_dict() for p in self.pages],
            "e_infinity_totals": list(self.e_infinity_totals()),
        }


def pages_vertical_first(diag: TwoRowDiagram, phi: Optional[KnightMoveMaps] = None,
                         rows: Optional[Rows] = None) -> TwoRowPages:
    rows = rows or realize_rows(diag)
    phi = phi or knight_move_phi(diag, rows)
    hK, hC = phi.hK, phi.hC
    span = degree_span(diag.A, diag.B, pad=1)
    p1 = Page({i: rows.C.dim(i) for i in span}, {i: rows.K.dim(i) for i in span},
              label="rows C and K")
    p2 = Page({i: hC.betti(i) for i in span}, {i: hK.betti(i) for i in span},
              {i: phi.matrix(i) for i in span}, label="H(C) and H(K), knight moves")
    p3 = Page({i: hC.betti(i) - phi.rank(i) for i in span},
              {i: hK.betti(i) - phi.rank(i - 1) for i in span},
              label="ker φ and coker φ")
    return TwoRowPages("vertical-first", [p1, p2, p3], 3, span)


def pages_horizontal_first(diag: TwoRowDiagram, St: Optional[InducedMap] = None,
                           hA: Optional[CohomologyBasis] = None,
                           hB: Optional[CohomologyBasis] = None) -> TwoRowPages:
    hA = hA or cohomology(diag.A)
    hB = hB or cohomology(diag.B)
    St = St or induced_on_cohomology(diag.S, hA, hB)
    span = degree_span(diag.A, diag.B, pad=1)
    p1 = Page({i: hB.betti(i) for i in span}, {i: hA.betti(i) for i in span},
              {i: St.matrix(i) for i in span if i in St.maps}, label="H(B) and H(A), induced S")
    p2 = Page({i: hB.betti(i) - St.rank(i - 1) for i in span},
              {i: hA.betti(i) - St.rank(i) for i in span},
              label="coker and ker of induced S")
    return TwoRowPages("horizontal-first", [p1, p2], 2, span)


def cone_Y_phi(K: CochainComplex, C: CochainComplex, Phi: ChainMap) -> CochainComplex:
    """``Y^i = K^i ⊕ C^i`` with differential ``[[d_K, Φ], [0, -d_C]]``."""
    if Phi.shift != 1 or Phi.source != C or Phi.target != K:
        raise ComplexError("Φ must be a degree +1 map from C to K")
    if not Phi.is_chain_map():
        bad = [i for i in Phi.degrees() if not Phi.residual(i).is_zero()]
        raise ComplexError(f"Φ does not commute with the differentials at degrees {bad}")
    Y = mapping_cone(TwoRowDiagram(C, K, Phi), check=True).Z
    return CochainComplex(Y.lo, Y.dims, Y.diffs, "Y_phi")


@dataclass
class ConvergenceCertificate:
    degrees: range
    cone_betti: tuple[int, ...]
    vertical: tuple[int, ...]
    horizontal: tuple[int, ...]
    y_betti: tuple[int, ...]
    phi_prediction: tuple[int, ...]     # dim coker φ^(i-1) + dim ker φ^i
    split_sum: tuple[int, ...]          # betti A + betti B
    s_tilde_zero: bool
    phi_matches_seam: bool              # Φ induces -φ

    @property
    def vertical_ok(self) -> bool:
        return self.vertical == self.cone_betti

    @property
    def horizontal_ok(self) -> bool:
        return self.horizontal == self.cone_betti

    @property
    def y_ok(self) -> bool:
        return self.y_betti == self.phi_prediction

    @property
    def split_ok(self) -> Optional[bool]:
        return self.y_betti == self.split_sum if self.s_tilde_zero else None

    @property
    def ok(self) -> bool:
        return (self.vertical_ok and self.horizontal_ok and self.y_ok
                and self.phi_matches_seam and self.split_ok is not False)

    def as_dict(self) -> dict:
        return {
            "degrees": [self.degrees.start, self.degrees.stop - 1],
            "cone_betti": list(self.cone_betti),
            "vertical_first_totals": list(self.vertical),
            "horizontal_first_totals": list(self.horizontal),
            "y_phi_betti": list(self.y_betti),
            "coker_ker_phi": list(self.phi_prediction),
            "betti_A_plus_B": list(self.split_sum),
            "s_tilde_zero": self.s_tilde_zero,
            "seam_induces_minus_phi": self.phi_matches_seam,
            "ok": self.ok,
        }


@dataclass
class SpectralAnalysis:
    vertical: TwoRowPages
    horizontal: TwoRowPages
    phi: KnightMoveMaps
    Phi: ChainMap
    Y: CochainComplex
    certificate: ConvergenceCertificate


def analyze(diag: TwoRowDiagram, policy: str = "first",
            red: Optional[BGGReduction] = None) -> SpectralAnalysis:
    red = red or bgg_reduce(diag, policy)
    rows = red.rows
    phi = knight_move_phi(diag, rows)
    hA, hB = cohomology(diag.A), cohomology(diag.B)
    St = induced_on_cohomology(diag.S, hA, hB)
    vert = pages_vertical_first(diag, phi, rows)
    hor = pages_horizontal_first(diag, St, hA, hB)
    Phi = seam_map(red)
    Y = cone_Y_phi(rows.K, rows.C, Phi)
    hY = cohomology(Y)
    Z = red.cone.Z
    hZ = cohomology(Z)
    span = vert.degrees
    induced = induced_on_cohomology(Phi, phi.hC, phi.hK)
    matches = all(induced.matrix(i) == -phi.matrix(i) for i in span)
    cert = ConvergenceCertificate(
        degrees=span,
        cone_betti=tuple(hZ.betti(i) for i in span),
        vertical=vert.e_infinity_totals(),
        horizontal=hor.e_infinity_totals(),
        y_betti=tuple(hY.betti(i) for i in span),
        phi_prediction=tuple(phi.hC.betti(i) - phi.rank(i) + phi.hK.betti(i) - phi.rank(i - 1) for i in span),
        split_sum=tuple(hA.betti(i) + hB.betti(i) for i in span),
        s_tilde_zero=St.is_zero(),
        phi_matches_seam=matches,
    )
    return SpectralAnalysis(vert, hor, phi, Phi, Y, cert)


def verify_convergence(diag: TwoRowDiagram, policy: str = "first") -> ConvergenceCertificate:
    return analyze(diag, policy).certificate
