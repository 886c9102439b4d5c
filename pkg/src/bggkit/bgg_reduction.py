"""BGG reduction of the twisted complex through pseudoinverses of S.

No rank hypotheses on S.  Per degree, ``T^i: B^(i+1) -> A^i`` is a
pseudoinverse of ``S^i`` with projections ``P_C = I - S T`` (kernel img S)
and ``P_K = I - T S`` (range ker S).  On the cone ``Z^i = B^i ⊕ A^i``

    L^i    = [[I, 0], [-T^i d_B, I]]
    L^-1 d_Z L = [[P_C d_B, S], [-P_K δ T d_B, P_K δ]]

where ``δ = -d_A`` is the differential the cone carries on its A block.  The
subspaces ``C^i ⊕ K^i`` (range of P_C in B^i, ker S^i in A^i) form a
subcomplex, the reduced complex, and ``L`` restricted to it is a
quasi-isomorphism into the cone: the quotient is ``img S^(i-1) ⊕ img T^i``
with the differential S, which is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainMap,
    CochainComplex,
    ComplexError,
    cohomology,
    degree_span,
    induced_on_cohomology,
)
from .cones import MappingCone, mapping_cone
from .exactfield import Matrix, image_basis, pseudoinverse, rank, solve_matrix
from .generators import TwoRowDiagram
from .rows import Rows, coords_in, realize_rows


@dataclass(frozen=True, eq=False)
class BGGReduction:
    diag: TwoRowDiagram
    cone: MappingCone
    policy: str
    T: dict[int, Matrix]       # B^(i+1) -> A^i
    P_C: dict[int, Matrix]     # on B^i, kernel img S^(i-1)
    P_K: dict[int, Matrix]     # on A^i, range ker S^i
    L: dict[int, Matrix]
    L_inv: dict[int, Matrix]
    conj: dict[int, Matrix]    # L^-1 d_Z L, degree i -> i+1
    rows: Rows

    @property
    def degrees(self) -> range:
        return self.cone.Z.degrees


def bgg_reduce(diag: TwoRowDiagram, policy: str = "first") -> BGGReduction:
    A, B, S = diag.A, diag.B, diag.S
    cone = mapping_cone(diag)
    Z = cone.Z
    span = degree_span(A, B, pad=1)
    T, P_C, P_K = {}, {}, {}
    for i in span:
        pinv = pseudoinverse(S.comp(i), policy)
        T[i], P_K[i], P_C[i + 1] = pinv.T, pinv.P_K, pinv.P_C
    L, L_inv = {}, {}
    for i in Z.degrees:
        b, a = B.dim(i), A.dim(i)
        low = T[i] @ B.d(i)
        L[i] = Matrix.block([[Matrix.identity(b), Matrix.zeros(b, a)], [-low, Matrix.identity(a)]])
        L_inv[i] = Matrix.block([[Matrix.identity(b), Matrix.zeros(b, a)], [low, Matrix.identity(a)]])
    conj = {i: L_inv[i + 1] @ Z.d(i) @ L[i] for i in Z.degrees if i + 1 in L}
    return BGGReduction(diag, cone, policy, T, P_C, P_K, L, L_inv, conj, realize_rows(diag, policy))


def printed_block_form(r: BGGReduction, i: int) -> Matrix:
    """``[[P_C d_B, S], [-P_K δ T d_B, P_K δ]]`` at degree i, with ``δ = -d_A``."""
    A, B, S = r.diag.A, r.diag.B, r.diag.S
    delta = -A.d(i)
    return Matrix.block([
        [r.P_C[i + 1] @ B.d(i), S.comp(i)],
        [-(r.P_K[i + 1] @ delta @ r.T[i] @ B.d(i)), r.P_K[i + 1] @ delta],
    ])


def identities(r: BGGReduction) -> dict[str, bool]:
    """Exact identities every reduction must satisfy."""
    S = r.diag.S
    checks = {
        "STS=S": True, "TST=T": True, "P_C^2=P_C": True, "P_K^2=P_K": True,
        "P_C S=0": True, "S P_K=0": True, "L L^-1=I": True, "conj^2=0": True, "block_form": True,
    }
    for i, t in r.T.items():
        s = S.comp(i)
        checks["STS=S"] &= s @ t @ s == s
        checks["TST=T"] &= t @ s @ t == t
        checks["P_C S=0"] &= (r.P_C[i + 1] @ s).is_zero()
        checks["S P_K=0"] &= (s @ r.P_K[i]).is_zero()
        checks["P_K^2=P_K"] &= r.P_K[i] @ r.P_K[i] == r.P_K[i]
        checks["P_C^2=P_C"] &= r.P_C[i + 1] @ r.P_C[i + 1] == r.P_C[i + 1]
    for i, l in r.L.items():
        checks["L L^-1=I"] &= l @ r.L_inv[i] == Matrix.identity(l.rows)
    for i, m in r.conj.items():
        if i + 1 in r.conj:
            checks["conj^2=0"] &= (r.conj[i + 1] @ m).is_zero()
        checks["block_form"] &= m == printed_block_form(r, i)
    return checks


def _embedding(r: BGGReduction, i: int) -> Matrix:
    """Basis of ``C^i ⊕ K^i`` inside ``Z^i = B^i ⊕ A^i``."""
    B, A = r.diag.B, r.diag.A
    cb = r.rows.cb(i) if B.dim(i) else Matrix.zeros(0, 0)
    kb = r.rows.kb(i) if A.dim(i) else Matrix.zeros(0, 0)
    return Matrix.block_diag(cb, kb)


def reduced_complex(r: BGGReduction) -> CochainComplex:
    """Restriction of ``L^-1 d_Z L`` to ``C ⊕ K`` (C block first)."""
    Z = r.cone.Z
    if not Z.dims:
        return CochainComplex.zero()
    E = {i: _embedding(r, i) for i in Z.degrees}
    diffs = []
    for i in Z.degrees[:-1]:
        m = solve_matrix(E[i + 1], r.conj[i] @ E[i])
        if m is None:
            raise ComplexError(f"conjugated differential leaves C ⊕ K at degree {i}")
        diffs.append(m)
    return CochainComplex(Z.lo, tuple(E[i].cols for i in Z.degrees), tuple(diffs), "reduced")


def reduced_block_form(r: BGGReduction, i: int) -> Matrix:
    """``[[d_C, 0], [-P_K δ T d_B, δ|K]]`` in the bases of C and K."""
    A, B = r.diag.A, r.diag.B
    rows = r.rows
    cb = rows.cb(i) if B.dim(i) else Matrix.zeros(0, 0)
    delta = -A.d(i)
    dC = rows.cp(i + 1) @ B.d(i) @ cb if B.dim(i + 1) else Matrix.zeros(0, cb.cols)
    seam = -(r.P_K[i + 1] @ delta @ r.T[i] @ B.d(i) @ cb) if A.dim(i + 1) else Matrix.zeros(0, cb.cols)
    low_left = rows.k_coords(i + 1, seam)
    low_right = rows.k_coords(i + 1, delta @ rows.kb(i)) if A.dim(i) else Matrix.zeros(rows.kb(i + 1).cols, 0)
    return Matrix.block([
        [dC, Matrix.zeros(dC.rows, low_right.cols)],
        [low_left, low_right],
    ])


def seam_map(r: BGGReduction) -> ChainMap:
    """``Φ^i = -P_K^(i+1) d_A T^i d_B`` from C^i to K^(i+1), in row bases."""
    A, B = r.diag.A, r.diag.B
    rows = r.rows
    comps = {}
    for i in rows.C.degrees:
        cb = rows.cb(i)
        if cb.cols == 0 or rows.K.dim(i + 1) == 0:
            continue
        v = -(r.P_K[i + 1] @ A.d(i) @ r.T[i] @ B.d(i) @ cb)
        comps[i] = rows.k_coords(i + 1, v)
    return ChainMap(rows.C, rows.K, 1, comps)


def lifting_map(r: BGGReduction, reduced: CochainComplex | None = None) -> ChainMap:
    reduced = reduced or reduced_complex(r)
    comps = {i: r.L[i] @ _embedding(r, i) for i in r.cone.Z.degrees}
    return ChainMap(reduced, r.cone.Z, 0, comps)


@dataclass(frozen=True, eq=False)
class MiddleTerm:
    complex: CochainComplex
    basis: dict[int, Matrix]     # img S^(i-1) ⊕ img T^i inside Z^i


def middle_term(r: BGGReduction) -> MiddleTerm:
    """``img S^(i-1) ⊕ img T^i`` with the differential ``[[0, S], [0, 0]]``."""
    A, B, S = r.diag.A, r.diag.B, r.diag.S
    Z = r.cone.Z
    if not Z.dims:
        return MiddleTerm(CochainComplex.zero(), {})
    F = {}
    for i in Z.degrees:
        imS = image_basis(S.comp(i - 1)) if B.dim(i) else Matrix.zeros(0, 0)
        imT = image_basis(r.T[i]) if A.dim(i) else Matrix.zeros(0, 0)
        F[i] = Matrix.block_diag(imS, imT)
    diffs = []
    for i in Z.degrees[:-1]:
        b, a = B.dim(i), A.dim(i)
        b1, a1 = B.dim(i + 1), A.dim(i + 1)
        calS = Matrix.block([[Matrix.zeros(b1, b), S.comp(i)], [Matrix.zeros(a1, b), Matrix.zeros(a1, a)]])
        m = solve_matrix(F[i + 1], calS @ F[i])
        if m is None:
            raise ComplexError(f"S leaves the middle term at degree {i}")
        diffs.append(m)
    return MiddleTerm(CochainComplex(Z.lo, tuple(F[i].cols for i in Z.degrees), tuple(diffs), "middle"), F)


def quotient_map(r: BGGReduction, middle: MiddleTerm | None = None) -> ChainMap:
    """``J L^-1`` from the cone onto the middle term."""
    middle = middle or middle_term(r)
    A, B = r.diag.A, r.diag.B
    comps = {}
    for i in r.cone.Z.degrees:
        J = Matrix.block_diag(Matrix.identity(B.dim(i)) - r.P_C[i], Matrix.identity(A.dim(i)) - r.P_K[i])
        comps[i] = coords_in(middle.basis[i], J @ r.L_inv[i], f"middle term at degree {i}")
    return ChainMap(r.cone.Z, middle.complex, 0, comps)


@dataclass
class QuasiIsoCertificate:
    middle_betti: tuple[int, ...]
    reduced_betti: tuple[int, ...]
    cone_betti: tuple[int, ...]
    induced_ranks: dict[int, tuple[int, int, int]]   # rank, rows, cols
    lift_is_chain_map: bool
    quot_is_chain_map: bool
    degreewise_exact: bool

    @property
    def middle_exact(self) -> bool:
        return not any(self.middle_betti)

    @property
    def invertible(self) -> bool:
        return all(r == n == m for r, n, m in self.induced_ranks.values())

    @property
    def ok(self) -> bool:
        return (self.middle_exact and self.invertible and self.lift_is_chain_map
                and self.quot_is_chain_map and self.degreewise_exact
                and self.reduced_betti == self.cone_betti)

    def as_dict(self) -> dict:
        return {
            "middle_betti": list(self.middle_betti),
            "reduced_betti": list(self.reduced_betti),
            "cone_betti": list(self.cone_betti),
            "induced_invertible": self.invertible,
            "lift_is_chain_map": self.lift_is_chain_map,
            "quot_is_chain_map": self.quot_is_chain_map,
            "degreewise_exact": self.degreewise_exact,
            "ok": self.ok,
        }


def verify_quasi_iso(r: BGGReduction) -> QuasiIsoCertificate:
    red = reduced_complex(r)
    mid = middle_term(r)
    lift = lifting_map(r, red)
    quot = quotient_map(r, mid)
    exact = True
    for i in r.cone.Z.degrees:
        f, g = lift.comp(i), quot.comp(i)
        exact &= rank(f) == red.dim(i)
        exact &= rank(g) == mid.complex.dim(i)
        exact &= (g @ f).is_zero()
        exact &= red.dim(i) + mid.complex.dim(i) == r.cone.Z.dim(i)
    h_red, h_cone = cohomology(red), cohomology(r.cone.Z)
    ind = induced_on_cohomology(lift, h_red, h_cone)
    ranks = {i: (rank(m), m.rows, m.cols) for i, m in ind.maps.items()}
    return QuasiIsoCertificate(
        middle_betti=cohomology(mid.complex).betti_numbers(),
        reduced_betti=h_red.betti_numbers(),
        cone_betti=h_cone.betti_numbers(),
        induced_ranks=ranks,
        lift_is_chain_map=lift.is_chain_map(),
        quot_is_chain_map=quot.is_chain_map(),
        degreewise_exact=exact,
    )
