"""Concrete kernel and cokernel rows of a two-row diagram.

``K^i = ker S^i`` is stored as a basis inside A^i.  ``C^i = coker S^(i-1)`` is
realized as a complement of ``img S^(i-1)`` spanned by standard vectors of
B^i, together with the quotient coordinates ``P: B^i -> C^i``.  Both rows are
complexes with the induced differentials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import CochainComplex, ComplexError, degree_span
from .exactfield import Matrix, complement_basis, image_basis, inverse, kernel_basis, solve_matrix
from .generators import TwoRowDiagram


@dataclass(frozen=True, eq=False)
class Rows:
    K: CochainComplex
    C: CochainComplex
    kbasis: dict[int, Matrix]   # A^i x dim K^i
    cbasis: dict[int, Matrix]   # B^i x dim C^i, unit columns
    cproj: dict[int, Matrix]    # dim C^i x B^i

    # outside the realized range every space is zero

    def kb(self, i: int) -> Matrix:
        return self.kbasis.get(i, Matrix.zeros(0, 0))

    def cb(self, i: int) -> Matrix:
        return self.cbasis.get(i, Matrix.zeros(0, 0))

    def cp(self, i: int) -> Matrix:
        return self.cproj.get(i, Matrix.zeros(0, 0))

    def k_coords(self, i: int, v: Matrix) -> Matrix:
        """Coordinates of vectors of ``ker S^i`` in its basis."""
        return coords_in(self.kbasis.get(i), v, f"ker S^{i}")


def coords_in(basis: Matrix | None, v: Matrix, what: str = "subspace") -> Matrix:
    if basis is None or basis.cols == 0:
        if not v.is_zero():
            raise ComplexError(f"nonzero vector in the zero {what}")
        return Matrix.zeros(0, v.cols)
    x = solve_matrix(basis, v)
    if x is None:
        raise ComplexError(f"vector leaves {what}")
    return x


def cokernel_realization(S_prev: Matrix, n: int, policy: str = "first") -> tuple[Matrix, Matrix]:
    """Complement basis of ``img S_prev`` in Q^n and the quotient coordinates."""
    img = image_basis(S_prev)
    comp = complement_basis(img, n, policy)
    frame_inv = inverse(Matrix.hstack([img, comp], rows=n))
    return comp, frame_inv.select_rows(range(img.cols, n))


def realize_rows(diag: TwoRowDiagram, policy: str = "first") -> Rows:
    A, B, S = diag.A, diag.B, diag.S
    span = degree_span(A, B, pad=1)
    kb, cb, cp = {}, {}, {}
    for i in span:
        kb[i] = kernel_basis(S.comp(i))
        cb[i], cp[i] = cokernel_realization(S.comp(i - 1), B.dim(i), policy)
    dK, dC = [], []
    for i in span[:-1]:
        dK.append(coords_in(kb[i + 1], A.d(i) @ kb[i], f"ker S^{i + 1}"))
        dC.append(cp[i + 1] @ B.d(i) @ cb[i])
    K = CochainComplex(span.start, tuple(kb[i].cols for i in span), tuple(dK), "K")
    C = CochainComplex(span.start, tuple(cb[i].cols for i in span), tuple(dC), "C")
    return Rows(K, C, kb, cb, cp)
