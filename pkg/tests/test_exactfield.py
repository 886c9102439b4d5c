from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bggkit import _modp
from bggkit.exactfield import (
    PRIME,
    Matrix,
    complement_basis,
    format_rational,
    image_basis,
    inverse,
    kernel_basis,
    parse_rational,
    pseudoinverse,
    rank,
    rank_mod_p,
    rref,
    solve,
    solve_matrix,
)

R = Matrix([[1, 2], [2, 4]])


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: Matrix(rows, shape=(r, c)))))


# parsing --------------------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("3", F(3)), ("-4/6", F(-2, 3)), ("0", F(0)), ("10/5", F(2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["3/0", "1.5", "", "a/b", "1/-2", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_round_trip():
    for x in (F(0), F(7), F(-3, 4), F(22, 7)):
        assert parse_rational(format_rational(x)) == x


# documented examples ----------------------------------------------------------------

def test_rref_examples():
    r = rref(Matrix.identity(3))
    assert r.rank == 3 and r.pivot_cols == (0, 1, 2)
    r = rref(R)
    assert r.rank == 1 and r.pivot_cols == (0,)
    r = rref(Matrix.zeros(0, 5))
    assert r.rank == 0 and r.pivot_cols == ()


def test_rank_by_minors_oracle():
    # every 2x2 minor of R vanishes, a 1x1 minor does not
    assert R[0, 0] * R[1, 1] - R[0, 1] * R[1, 0] == 0
    assert rank(R) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(4)).cols == 0
    k = kernel_basis(R)
    assert k == Matrix([[1], [F(-1, 2)]])
    assert kernel_basis(Matrix.zeros(3, 3)) == Matrix.identity(3)


def test_image_examples():
    assert image_basis(Matrix.identity(2)) == Matrix.identity(2)
    assert image_basis(R) == Matrix([[1], [2]])
    assert image_basis(Matrix.zeros(2, 3)).cols == 0


def test_solve_examples():
    assert solve(Matrix.identity(3), [1, 2, 3]) == [1, 2, 3]
    assert solve(R, [1, 2]) == [1, 0]
    assert solve(R, [1, 1]) is None
    with pytest.raises(ValueError):
        solve(R, [1, 2, 3])


def test_complement_examples():
    assert complement_basis(Matrix([[1], [0], [0]]), 3) == Matrix([[0, 0], [1, 0], [0, 1]])
    assert complement_basis(Matrix.zeros(2, 0), 2) == Matrix.identity(2)
    assert complement_basis(Matrix([[1], [1]]), 2) == Matrix([[0], [1]])
    # the alternative policy picks from the other end
    assert complement_basis(Matrix([[1], [1]]), 2, "last") == Matrix([[1], [0]])


def test_pseudoinverse_examples():
    T, PC, PK = pseudoinverse(Matrix.identity(3))
    assert T == Matrix.identity(3) and PC.is_zero() and PK.is_zero()
    Z = Matrix.zeros(2, 3)
    T, PC, PK = pseudoinverse(Z)
    assert T == Matrix.zeros(3, 2) and PC == Matrix.identity(2) and PK == Matrix.identity(3)
    T, PC, PK = pseudoinverse(R)
    assert R @ T @ R == R and T @ R @ T == T
    assert PC == Matrix.identity(2) - R @ T and PK == Matrix.identity(2) - T @ R


def test_inverse_and_singular():
    m = Matrix([[2, 1], [1, 1]])
    assert m @ inverse(m) == Matrix.identity(2)
    with pytest.raises(ValueError):
        inverse(R)


def test_matrix_is_immutable():
    m = Matrix([[1, 2]])
    copy = m.array()
    copy[0, 0] = F(5)
    assert m[0, 0] == 1
    with pytest.raises(ValueError):
        m._a[0, 0] = F(5)


def test_matmul_with_denominators():
    a = Matrix([[F(1, 2), F(2, 3)], [0, F(-5, 7)]])
    b = Matrix([[F(3, 4)], [F(7, 5)]])
    assert a @ b == Matrix([[F(157, 120)], [F(-1)]])


# properties ----------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols
    assert (m @ kernel_basis(m)).is_zero()
    assert image_basis(m).cols == rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    r = rref(m).reduced
    assert rref(r).reduced == r


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_is_correct(m, coeffs):
    b = m @ Matrix.from_columns([coeffs[: m.cols]], m.cols)
    x = solve_matrix(m, b)
    assert x is not None and m @ x == b


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from(["first", "last"]))
def test_pseudoinverse_identities(S, policy):
    T, PC, PK = pseudoinverse(S, policy)
    assert S @ T @ S == S
    assert T @ S @ T == T
    assert PC @ PC == PC and PK @ PK == PK
    assert (PC @ S).is_zero() and (S @ PK).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from(["first", "last"]))
def test_complement_completes_a_basis(m, policy):
    img = image_basis(m)
    comp = complement_basis(img, m.rows, policy)
    assert img.cols + comp.cols == m.rows
    assert rank(Matrix.hstack([img, comp], rows=m.rows)) == m.rows


@settings(max_examples=60, deadline=None)
@given(matrices(6, 6))
def test_mod_p_shadow_agrees(m):
    # Hadamard: every minor is below (3 * sqrt(6))**6 < p, so no rank drop mod p
    assert rank_mod_p(m) == rank(m)


def test_jit_and_numpy_paths_agree():
    rng = np.random.default_rng(0)
    for n in (1, 7, 30):
        a = rng.integers(-3, 4, size=(n, n // 2 + 1)) @ rng.integers(-3, 4, size=(n // 2 + 1, n))
        r_np = _modp.rank_mod_p(a, PRIME, jit=False)
        r_jit = _modp.rank_mod_p(a, PRIME, jit=True)
        assert r_np == r_jit == np.linalg.matrix_rank(a)
