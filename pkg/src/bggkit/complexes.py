"""Cochain complexes, graded maps and cohomology with explicit bases.

Conventions: differentials raise degree by one, ``d(i)`` has shape
``dim(i+1) x dim(i)`` and every space outside ``[lo, hi]`` is zero.  Chain
maps commute with the differentials (``d f = f d``); data in the
anticommuting convention is brought over with :func:`alternate_signs`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .exactfield import (
    Matrix,
    complement_basis,
    image_basis,
    kernel_basis,
    rank,
    rank_mod_p,
    solve_matrix,
)


class ComplexError(ValueError):
    """Raised when an object violates the structure it claims to have."""


@dataclass(frozen=True, eq=False)
class CochainComplex:
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if any(x < 0 for x in self.dims):
            raise ComplexError("negative dimension")
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ComplexError(
                f"expected {max(len(self.dims) - 1, 0)} differentials, got {len(self.diffs)}")
        for k, m in enumerate(self.diffs):
            want = (self.dims[k + 1], self.dims[k])
            if m.shape != want:
                raise ComplexError(f"d^{self.lo + k} has shape {m.shape}, expected {want}")

    @classmethod
    def from_maps(cls, lo: int, dims: Iterable[int], diffs: Mapping[int, Matrix] | Iterable[Matrix],
                  name: str = "") -> "CochainComplex":
        """Build from per-degree differentials; missing ones are zero."""
        dims = tuple(dims)
        if isinstance(diffs, Mapping):
            ds = []
            for k in range(len(dims) - 1):
                i = lo + k
                ds.append(diffs.get(i, Matrix.zeros(dims[k + 1], dims[k])))
            diffs = ds
        return cls(lo, dims, tuple(diffs), name)

    @classmethod
    def zero(cls) -> "CochainComplex":
        return cls(0, (), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def d(self, i: int) -> Matrix:
        """Differential from degree ``i`` to ``i+1`` (zero outside the support)."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return Matrix.zeros(self.dim(i + 1), self.dim(i))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * self.dim(i) for i in self.degrees)

    def support(self) -> tuple[int, int]:
        """Smallest degree range holding all nonzero spaces, ``(0, -1)`` if none."""
        nz = [i for i in self.degrees if self.dim(i)]
        return (nz[0], nz[-1]) if nz else (0, -1)

    def restricted(self, lo: int, hi: int) -> "CochainComplex":
        """Same complex re-indexed over ``[lo, hi]`` (must contain the support)."""
        slo, shi = self.support()
        if slo <= shi and (slo < lo or shi > hi):
            raise ComplexError(f"range [{lo}, {hi}] does not contain support [{slo}, {shi}]")
        dims = [self.dim(i) for i in range(lo, hi + 1)]
        return CochainComplex.from_maps(lo, dims, [self.d(i) for i in range(lo, hi)], self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainComplex):
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return all(self.dim(i) == other.dim(i) for i in range(lo, hi + 1)) and all(
            self.d(i) == other.d(i) for i in range(lo, hi))

    __hash__ = None


def degree_span(*complexes: CochainComplex, pad: int = 0) -> range:
    """Union of the index ranges, widened by ``pad`` on both sides."""
    nonempty = [c for c in complexes if c.dims]
    if not nonempty:
        return range(0, 0)
    lo = min(c.lo for c in nonempty) - pad
    hi = max(c.hi for c in nonempty) + pad
    return range(lo, hi + 1)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Graded map ``f^i: source^i -> target^(i+shift)``.

    Construction does not demand commutation: non-commuting data (an
    anticommuting S, a homotopy K) is representable and :meth:`residual`
    measures the failure.
    """

    source: CochainComplex
    target: CochainComplex
    shift: int
    comps: Mapping[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for i, m in dict(self.comps).items():
            want = (self.target.dim(i + self.shift), self.source.dim(i))
            if m.shape != want:
                raise ComplexError(f"component at degree {i} has shape {m.shape}, expected {want}")
            if m.rows and m.cols:
                comps[i] = m
        object.__setattr__(self, "comps", comps)

    def comp(self, i: int) -> Matrix:
        m = self.comps.get(i)
        if m is None:
            return Matrix.zeros(self.target.dim(i + self.shift), self.source.dim(i))
        return m

    def degrees(self) -> range:
        return degree_span(self.source, _shifted_view(self.target, self.shift), pad=1)

    def residual(self, i: int) -> Matrix:
        """``d_target f^i - f^(i+1) d_source`` at degree ``i``."""
        s = self.shift
        return self.target.d(i + s) @ self.comp(i) - self.comp(i + 1) @ self.source.d(i)

    def anti_residual(self, i: int) -> Matrix:
        s = self.shift
        return self.target.d(i + s) @ self.comp(i) + self.comp(i + 1) @ self.source.d(i)

    def is_chain_map(self) -> bool:
        return all(self.residual(i).is_zero() for i in self.degrees())

    def anticommutes(self) -> bool:
        return all(self.anti_residual(i).is_zero() for i in self.degrees())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.shift == other.shift
                and all(self.comp(i) == other.comp(i) for i in self.degrees()))

    __hash__ = None


def _shifted_view(c: CochainComplex, s: int) -> CochainComplex:
    return CochainComplex(c.lo - s, c.dims, c.diffs) if c.dims else c


def identity_map(c: CochainComplex) -> ChainMap:
    return ChainMap(c, c, 0, {i: Matrix.identity(c.dim(i)) for i in c.degrees})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g ∘ f``."""
    comps = {i: g.comp(i + f.shift) @ f.comp(i) for i in f.source.degrees}
    return ChainMap(f.source, g.target, f.shift + g.shift, comps)


# validation ------------------------------------------------------------------

@dataclass
class ValidityReport:
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def degrees(self) -> list[int]:
        return sorted({i for i, _ in self.failures})


def validate_complex(c: CochainComplex) -> ValidityReport:
    """Degrees ``i`` where ``d(i+1) d(i) != 0`` (shapes are checked on construction)."""
    report = ValidityReport()
    for i in range(c.lo, c.hi - 1):
        if not (c.d(i + 1) @ c.d(i)).is_zero():
            report.failures.append((i, "d∘d != 0"))
    return report


def check_complex(c: CochainComplex) -> None:
    rep = validate_complex(c)
    if not rep.ok:
        raise ComplexError(f"not a complex: {rep.failures}")


# cohomology ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohomologyBasis:
    """Per degree: cycle basis, boundary basis and class representatives.

    ``reps`` are cycles completing ``boundaries`` to a basis of the cycles.
    Coordinates of a cycle in H^i are read off by solving against
    ``[boundaries | reps]``.
    """

    complex: CochainComplex
    cycles: Mapping[int, Matrix]
    boundaries: Mapping[int, Matrix]
    reps: Mapping[int, Matrix]

    def betti(self, i: int) -> int:
        r = self.reps.get(i)
        return 0 if r is None else r.cols

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(self.betti(i) for i in self.complex.degrees)

    def _frame(self, i: int) -> Matrix:
        n = self.complex.dim(i)
        b = self.boundaries.get(i, Matrix.zeros(n, 0))
        r = self.reps.get(i, Matrix.zeros(n, 0))
        return Matrix.hstack([b, r], rows=n)

    def coords(self, i: int, z: Matrix) -> Matrix:
        """Classes of the cycle columns of ``z`` in the basis ``reps(i)``."""
        n = self.complex.dim(i)
        if z.rows != n:
            raise ComplexError(f"vectors of length {z.rows} in degree {i} of dimension {n}")
        frame = self._frame(i)
        x = solve_matrix(frame, z)
        if x is None:
            raise ComplexError(f"vector in degree {i} is not a cycle")
        nb = frame.cols - self.betti(i)
        return x.select_rows(range(nb, frame.cols))

    def is_boundary(self, i: int, z: Matrix) -> bool:
        return self.coords(i, z).is_zero()

    def perturbed(self, seed: int, scale: int = 2) -> "CohomologyBasis":
        """Same classes, representatives moved by random boundaries."""
        rng = np.random.default_rng(seed)
        reps = {}
        for i, r in self.reps.items():
            b = self.boundaries.get(i)
            if b is None or b.cols == 0 or r.cols == 0:
                reps[i] = r
                continue
            coeffs = Matrix(rng.integers(-scale, scale + 1, size=(b.cols, r.cols)).tolist(),
                            shape=(b.cols, r.cols))
            reps[i] = r + b @ coeffs
        return _PerturbedBasis(self.complex, self.cycles, self.boundaries, reps, self)


@dataclass(frozen=True, eq=False)
class _PerturbedBasis(CohomologyBasis):
    original: Optional[CohomologyBasis] = None

    def coords(self, i: int, z: Matrix) -> Matrix:
        return self.original.coords(i, z)


def cohomology(c: CochainComplex) -> CohomologyBasis:
    check_complex(c)
    cycles, bounds, reps = {}, {}, {}
    for i in c.degrees:
        n = c.dim(i)
        z = kernel_basis(c.d(i))
        b = image_basis(c.d(i - 1))
        # boundaries expressed in cycle coordinates, then complemented there
        bc = solve_matrix(z, b) if b.cols else Matrix.zeros(z.cols, 0)
        if bc is None:
            raise ComplexError(f"boundaries escape the cycles at degree {i}")
        ext = complement_basis(bc, z.cols)
        cycles[i], bounds[i], reps[i] = z, b, z @ ext
        assert reps[i].rows == n
    return CohomologyBasis(c, cycles, bounds, reps)


def betti_numbers(c: CochainComplex) -> tuple[int, ...]:
    return cohomology(c).betti_numbers()


def betti_by_rank(c: CochainComplex) -> tuple[int, ...]:
    """Betti numbers from ranks only: dim - rank d(i) - rank d(i-1)."""
    return tuple(c.dim(i) - rank(c.d(i)) - rank(c.d(i - 1)) for i in c.degrees)


def betti_mod_p(c: CochainComplex) -> tuple[int, ...]:
    """Betti numbers of the reduction mod the shadow prime."""
    return tuple(c.dim(i) - rank_mod_p(c.d(i)) - rank_mod_p(c.d(i - 1)) for i in c.degrees)


@dataclass(frozen=True, eq=False)
class InducedMap:
    """Matrices of a map on cohomology, degree ``i -> i + shift``."""

    shift: int
    maps: Mapping[int, Matrix]

    def matrix(self, i: int) -> Matrix:
        return self.maps[i]

    def rank(self, i: int) -> int:
        m = self.maps.get(i)
        return 0 if m is None else rank(m)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def is_identity(self) -> bool:
        return all(m.rows == m.cols and m == Matrix.identity(m.rows) for m in self.maps.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, InducedMap):
            return NotImplemented
        keys = set(self.maps) | set(other.maps)
        return self.shift == other.shift and all(
            self.maps.get(k, Matrix.zeros(0, 0)) == other.maps.get(k, Matrix.zeros(0, 0))
            for k in keys)

    def scaled(self, c) -> "InducedMap":
        return InducedMap(self.shift, {i: m.scale(c) for i, m in self.maps.items()})

    __hash__ = None


def induced_on_cohomology(f: ChainMap, hs: CohomologyBasis, ht: CohomologyBasis) -> InducedMap:
    maps = {}
    for i in hs.complex.degrees:
        reps = hs.reps.get(i, Matrix.zeros(hs.complex.dim(i), 0))
        j = i + f.shift
        img = f.comp(i) @ reps
        if ht.complex.dim(j) == 0:
            maps[i] = Matrix.zeros(0, reps.cols)
            continue
        try:
            maps[i] = ht.coords(j, img)
        except ComplexError as exc:
            raise ComplexError(f"image of a cycle is not a cycle at degree {i}") from exc
    return InducedMap(f.shift, maps)


# sign conventions ------------------------------------------------------------

def alternate_signs(c: CochainComplex) -> CochainComplex:
    """Replace ``d(i)`` by ``(-1)^i d(i)``.  An involution."""
    return CochainComplex(c.lo, c.dims, tuple(m if (c.lo + k) % 2 == 0 else -m
                                               for k, m in enumerate(c.diffs)), c.name)


def alternate_signs_map(f: ChainMap) -> ChainMap:
    """Carry a graded map across :func:`alternate_signs` of both complexes.

    Degree-0 maps (homotopies K) get ``(-1)^i K^i``; degree-(+1) maps (S) are
    left unchanged, which turns ``S d + d S = 0`` into ``S d = d S`` and
    ``S = dK - Kd`` into ``S = dK + Kd`` once K is also alternated.
    """
    src, tgt = alternate_signs(f.source), alternate_signs(f.target)
    if f.shift % 2 == 0:
        comps = {i: (m if i % 2 == 0 else -m) for i, m in f.comps.items()}
    else:
        comps = dict(f.comps)
    return ChainMap(src, tgt, f.shift, comps)


def nullhomotopy_to_S(A: CochainComplex, B: CochainComplex, K: Mapping[int, Matrix]) -> ChainMap:
    """``S^i = d_B K^i + K^(i+1) d_A`` as a degree-(+1) map ``A -> B``."""
    span = degree_span(A, B, pad=1)
    Kf = {}
    for i in span:
        want = (B.dim(i), A.dim(i))
        m = K.get(i)
        if m is None:
            m = Matrix.zeros(*want)
        if m.shape != want:
            raise ComplexError(f"K at degree {i} has shape {m.shape}, expected {want}")
        Kf[i] = m
    zero = lambda i: Matrix.zeros(B.dim(i), A.dim(i))
    comps = {i: B.d(i) @ Kf.get(i, zero(i)) + Kf.get(i + 1, zero(i + 1)) @ A.d(i) for i in span}
    return ChainMap(A, B, 1, comps)


# structural constructors -------------------------------------------------------

def shift(c: CochainComplex, k: int) -> CochainComplex:
    """Move degree ``i`` content to degree ``i - k``; differentials unchanged."""
    return CochainComplex(c.lo - k, c.dims, c.diffs, c.name)


def direct_sum(c1: CochainComplex, c2: CochainComplex) -> CochainComplex:
    span = degree_span(c1, c2)
    if not span:
        return CochainComplex.zero()
    dims = [c1.dim(i) + c2.dim(i) for i in span]
    diffs = [Matrix.block_diag(c1.d(i), c2.d(i)) for i in span[:-1]]
    return CochainComplex(span.start, tuple(dims), tuple(diffs))


def direct_sum_map(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.shift != g.shift:
        raise ComplexError("summands have different shifts")
    src = direct_sum(f.source, g.source)
    tgt = direct_sum(f.target, g.target)
    comps = {i: Matrix.block_diag(f.comp(i), g.comp(i)) for i in src.degrees}
    return ChainMap(src, tgt, f.shift, comps)


def tensor_constant(c: CochainComplex, m: int) -> CochainComplex:
    """``c ⊗ Q^m``: dimensions times m, each differential ``d ⊗ I_m``."""
    if m < 0:
        raise ValueError("multiplicity must be non-negative")
    return CochainComplex(c.lo, tuple(m * x for x in c.dims),
                          tuple(d.kron_identity(m) for d in c.diffs), c.name)


def negate(c: CochainComplex) -> CochainComplex:
    """Same spaces, differential ``-d``.  Cohomology bases are unchanged."""
    return CochainComplex(c.lo, c.dims, tuple(-m for m in c.diffs), c.name)


def zero_map(source: CochainComplex, target: CochainComplex, shift: int) -> ChainMap:
    return ChainMap(source, target, shift, {})

