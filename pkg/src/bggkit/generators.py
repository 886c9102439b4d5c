"""Seeded test instances: simplicial fixtures and two-row diagrams.

All randomness goes through ``numpy.random.default_rng(seed)`` so that a seed
determines an instance bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional

import numpy as np

from .complexes import (
    ChainMap,
    CochainComplex,
    ComplexError,
    degree_span,
    direct_sum,
    direct_sum_map,
    nullhomotopy_to_S,
    shift,
    tensor_constant,
)
from .exactfield import Matrix, inverse


@dataclass(frozen=True)
class TwoRowDiagram:
    """Complexes A, B and a degree-(+1) map S: A^i -> B^(i+1)."""

    A: CochainComplex
    B: CochainComplex
    S: ChainMap

    def __post_init__(self):
        if self.S.shift != 1:
            raise ComplexError("S must raise degree by one")
        if self.S.source is not self.A and self.S.source != self.A:
            raise ComplexError("S does not start at A")
        if self.S.target is not self.B and self.S.target != self.B:
            raise ComplexError("S does not land in B")

    def degrees(self) -> range:
        """Degrees i where some A^i, B^i or B^(i+1) may be nonzero, padded by one."""
        return degree_span(self.A, self.B, pad=1)


# simplicial fixtures -----------------------------------------------------------

@dataclass(frozen=True)
class SimplicialFixture:
    name: str
    n_vertices: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]  # by dimension

    def check(self) -> None:
        present = [set(s) for s in self.simplices]
        if present and present[0] != {(v,) for v in range(self.n_vertices)}:
            raise ComplexError(f"{self.name}: vertex list mismatch")
        for k, level in enumerate(self.simplices):
            for s in level:
                if len(s) != k + 1 or list(s) != sorted(set(s)):
                    raise ComplexError(f"{self.name}: simplex {s} not ascending of dimension {k}")
                if k and any(f not in present[k - 1] for f in combinations(s, k)):
                    raise ComplexError(f"{self.name}: a face of {s} is missing")


def _full(n: int, top: int, name: str) -> SimplicialFixture:
    return SimplicialFixture(name, n, tuple(tuple(combinations(range(n), k + 1))
                                            for k in range(top + 1)))


FIXTURES: dict[str, SimplicialFixture] = {
    "POINT": _full(1, 0, "POINT"),
    "INTERVAL": _full(2, 1, "INTERVAL"),
    "CIRCLE3": _full(3, 1, "CIRCLE3"),
    "SPHERE_TETRA": _full(4, 2, "SPHERE_TETRA"),
    "BALL3": _full(4, 3, "BALL3"),
}

FIXTURE_BETTI = {
    "POINT": (1,),
    "INTERVAL": (1, 0),
    "CIRCLE3": (1, 1),
    "SPHERE_TETRA": (1, 0, 1),
    "BALL3": (1, 0, 0, 0),
}


def simplicial_cochain(f: SimplicialFixture | str) -> CochainComplex:
    """Simplicial coboundary with the alternating face signs."""
    if isinstance(f, str):
        f = FIXTURES[f]
    f.check()
    index = [{s: j for j, s in enumerate(level)} for level in f.simplices]
    diffs = []
    for k in range(len(f.simplices) - 1):
        rows = [[0] * len(f.simplices[k]) for _ in f.simplices[k + 1]]
        for r, s in enumerate(f.simplices[k + 1]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                rows[r][index[k][face]] = (-1) ** i
        diffs.append(Matrix(rows, shape=(len(f.simplices[k + 1]), len(f.simplices[k]))))
    return CochainComplex(0, tuple(len(l) for l in f.simplices), tuple(diffs), f.name)


def fixture(name: str, mult: int = 1) -> CochainComplex:
    c = simplicial_cochain(FIXTURES[name])
    return tensor_constant(c, mult) if mult != 1 else c


# random pieces -------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_matrix(rng, rows: int, cols: int, lo: int = -2, hi: int = 2) -> Matrix:
    vals = rng.integers(lo, hi + 1, size=(rows, cols))
    return Matrix(vals.tolist(), shape=(rows, cols))


def random_unitriangular(rng, n: int) -> Matrix:
    """Integer matrix P L U with unit diagonals, hence determinant ±1."""
    a = np.eye(n, dtype=np.int64)
    upper = np.triu(rng.integers(-1, 2, size=(n, n)), 1)
    lower = np.tril(rng.integers(-1, 2, size=(n, n)), -1)
    m = (a + lower) @ (a + upper)
    perm = rng.permutation(n)
    return Matrix(m[perm].tolist(), shape=(n, n))


def random_complex(seed, lo: int, hi: int, max_dim: int = 2) -> CochainComplex:
    """Sum of random elementary pieces (Q and Q -> Q) in a random basis."""
    rng = _rng(seed)
    n = hi - lo + 1
    singles = rng.integers(0, max_dim + 1, size=n)
    pairs = rng.integers(0, max_dim + 1, size=max(n - 1, 0))
    dims = [int(singles[k]) + (int(pairs[k]) if k < n - 1 else 0) + (int(pairs[k - 1]) if k else 0)
            for k in range(n)]
    diffs = []
    for k in range(n - 1):
        # basis at degree k: [singles | outgoing pairs | incoming pairs]
        d = np.zeros((dims[k + 1], dims[k]), dtype=np.int64)
        src0 = int(singles[k])
        tgt0 = int(singles[k + 1]) + (int(pairs[k + 1]) if k + 1 < n - 1 else 0)
        for p in range(int(pairs[k])):
            d[tgt0 + p, src0 + p] = 1
        diffs.append(Matrix(d.tolist(), shape=d.shape))
    basis = [random_unitriangular(rng, x) for x in dims]
    inv = [inverse(g) for g in basis]
    diffs = [basis[k + 1] @ diffs[k] @ inv[k] for k in range(n - 1)]
    return CochainComplex(lo, tuple(dims), tuple(diffs))


# diagram generators --------------------------------------------------------------

def nullhomotopy_diagram(A: CochainComplex, B: CochainComplex, K: Mapping[int, Matrix]) -> TwoRowDiagram:
    return TwoRowDiagram(A, B, nullhomotopy_to_S(A, B, K))


def random_homotopy(A: CochainComplex, B: CochainComplex, seed) -> dict[int, Matrix]:
    rng = _rng(seed)
    return {i: random_matrix(rng, B.dim(i), A.dim(i)) for i in degree_span(A, B)}


def random_nullhomotopy_diagram(A: CochainComplex, B: CochainComplex, seed) -> TwoRowDiagram:
    """S = dK + Kd with K entries uniform in {-2, ..., 2}; S induces zero."""
    return nullhomotopy_diagram(A, B, random_homotopy(A, B, seed))


def shift_identity_diagram(A: CochainComplex) -> TwoRowDiagram:
    """B = A moved up one degree, S^i the identity A^i -> B^(i+1)."""
    B = shift(A, -1)
    S = ChainMap(A, B, 1, {i: Matrix.identity(A.dim(i)) for i in A.degrees})
    return TwoRowDiagram(A, B, S)


def pattern_diagram(W: CochainComplex, Kpart: CochainComplex, Cpart: CochainComplex,
                    j: int) -> TwoRowDiagram:
    """A = W ⊕ Kpart, B^m = W^(m-1) ⊕ Cpart^m, S = identity on the W block.

    Kpart must vanish in degrees <= j and Cpart in degrees > j; then S^i is
    injective below j, bijective at j and surjective above.
    """
    for i in Kpart.degrees:
        if i <= j and Kpart.dim(i):
            raise ComplexError(f"Kpart is nonzero in degree {i} <= j = {j}")
    for i in Cpart.degrees:
        if i > j and Cpart.dim(i):
            raise ComplexError(f"Cpart is nonzero in degree {i} > j = {j}")
    A = direct_sum(W, Kpart)
    Wup = shift(W, -1)
    B = direct_sum(Wup, Cpart)
    comps = {}
    for i in A.degrees:
        w = W.dim(i)
        blk = Matrix.zeros(B.dim(i + 1), A.dim(i))
        if w:
            # W^i sits first in A^i and first in B^(i+1)
            arr = blk.array()
            for k in range(w):
                arr[k, k] = Fraction(1)
            blk = Matrix(arr)
        comps[i] = blk
    return TwoRowDiagram(A, B, ChainMap(A, B, 1, comps))


def phi_probe(seed: int = 0) -> TwoRowDiagram:
    """Smallest diagram with a nonzero knight-move map.

    Degrees 0..3; A = (0, Q, Q, 0) with d_A^1 = alpha, B = (0, Q, Q, 0) with
    d_B^1 = beta, S^1: A^1 -> B^2 is gamma and every other S vanishes.  Then
    H^1(C) = B^1 and H^2(K) = A^2 are one-dimensional and the zig-zag
    b -> beta b' = S(beta/gamma a1) -> d_A = alpha*beta/gamma a2 gives
    phi^1 = [alpha * beta / gamma].  The pattern holds with j = 1 and the seam
    operator is D = [alpha * beta / gamma] as well.
    """
    rng = _rng(seed)
    choices = np.array([-2, -1, 1, 2])
    alpha, beta, gamma = (int(x) for x in rng.choice(choices, size=3))
    A = CochainComplex.from_maps(0, (0, 1, 1, 0), {1: Matrix([[alpha]])})
    B = CochainComplex.from_maps(0, (0, 1, 1, 0), {1: Matrix([[beta]])})
    S = ChainMap(A, B, 1, {1: Matrix([[gamma]])})
    return TwoRowDiagram(A, B, S)


def probe_value(diag: TwoRowDiagram) -> Fraction:
    """The hand-derived phi of a :func:`phi_probe` instance, read off its entries."""
    alpha = diag.A.d(1)[0, 0]
    beta = diag.B.d(1)[0, 0]
    gamma = diag.S.comp(1)[0, 0]
    return Fraction(alpha) * beta / gamma


def shift_diagram(diag: TwoRowDiagram, k: int) -> TwoRowDiagram:
    """Move everything down by ``k`` degrees."""
    A, B = shift(diag.A, k), shift(diag.B, k)
    return TwoRowDiagram(A, B, ChainMap(A, B, 1, {i - k: m for i, m in diag.S.comps.items()}))


def direct_sum_diagram(d1: TwoRowDiagram, d2: TwoRowDiagram) -> TwoRowDiagram:
    S = direct_sum_map(d1.S, d2.S)
    return TwoRowDiagram(S.source, S.target, S)


def conjugate_diagram(diag: TwoRowDiagram, seed) -> TwoRowDiagram:
    """Change bases degreewise by random integer matrices of determinant ±1."""
    rng = _rng(seed)
    GA = {i: random_unitriangular(rng, diag.A.dim(i)) for i in diag.A.degrees}
    GB = {i: random_unitriangular(rng, diag.B.dim(i)) for i in diag.B.degrees}
    iA = {i: inverse(g) for i, g in GA.items()}
    iB = {i: inverse(g) for i, g in GB.items()}

    def conj(c, G, iG):
        return CochainComplex(c.lo, c.dims, tuple(G[i + 1] @ c.d(i) @ iG[i]
                                                   for i in range(c.lo, c.hi)), c.name)

    A, B = conj(diag.A, GA, iA), conj(diag.B, GB, iB)
    comps = {}
    for i, m in diag.S.comps.items():
        comps[i] = GB[i + 1] @ m @ iA[i]
    return TwoRowDiagram(A, B, ChainMap(A, B, 1, comps))


def mixed_diagram(seed, max_dim: int = 2) -> TwoRowDiagram:
    """A diagram whose induced S has intermediate rank and no rank pattern.

    A = A1 ⊕ A2 and B = A1[+1] ⊕ B2 carry S = (identity on A1) + dK + Kd for a
    random K over the whole of A -> B, then bases are scrambled.
    """
    rng = _rng(seed)
    A1 = random_complex(rng, 0, 2, max_dim)
    A2 = random_complex(rng, 0, 2, max_dim)
    B2 = random_complex(rng, 0, 3, max_dim)
    base = direct_sum_diagram(shift_identity_diagram(A1),
                              TwoRowDiagram(A2, B2, ChainMap(A2, B2, 1, {})))
    A, B = base.A, base.B
    homotopic = nullhomotopy_to_S(A, B, random_homotopy(A, B, rng))
    comps = {i: base.S.comp(i) + homotopic.comp(i) for i in degree_span(A, B, pad=1)}
    return conjugate_diagram(TwoRowDiagram(A, B, ChainMap(A, B, 1, comps)), rng)


def random_pattern_diagram(seed, j: Optional[int] = None, with_probe: bool = True) -> TwoRowDiagram:
    """Pattern instance with random W, Kpart, Cpart around a random seam ``j``.

    With ``with_probe`` a shifted :func:`phi_probe` is added so that the seam
    operator is nonzero; bases are then scrambled.
    """
    rng = _rng(seed)
    if j is None:
        j = int(rng.integers(0, 3))
    names = ["POINT", "INTERVAL", "CIRCLE3", "SPHERE_TETRA"]
    W = fixture(names[int(rng.integers(0, len(names)))], int(rng.integers(1, 3)))
    Kpart = random_complex(rng, j + 1, j + 2, 1)
    Cpart = random_complex(rng, j - 1, j, 1)
    diag = pattern_diagram(W, Kpart, Cpart, j)
    if with_probe:
        diag = direct_sum_diagram(diag, shift_diagram(phi_probe(rng), 1 - j))
    return conjugate_diagram(diag, rng)


def bggx_kinds() -> tuple[str, ...]:
    return ("fixture", "nullhomotopy", "shift-identity", "pattern", "phi-probe", "mixed")


def generate(kind: str, seed: int = 0, name: str = "CIRCLE3", mult: int = 2):
    """Dispatch used by the ``generate`` command."""
    if kind == "fixture":
        return fixture(name, mult)
    if kind == "nullhomotopy":
        c = fixture(name, mult)
        return random_nullhomotopy_diagram(c, c, seed)
    if kind == "shift-identity":
        return shift_identity_diagram(fixture(name, mult))
    if kind == "pattern":
        return random_pattern_diagram(seed)
    if kind == "phi-probe":
        return phi_probe(seed)
    if kind == "mixed":
        return mixed_diagram(seed)
    raise ValueError(f"unknown kind {kind!r}")
