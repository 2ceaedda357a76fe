from fractions import Fraction
from itertools import combinations

import pytest

from detcomplex.core.errors import MissingAssignmentError, ShapeError
from detcomplex.core.exact_algebra import (
    build_off_diagonal, cofactor_det, det, eval_affine_matrix, jacobian_matrix, pushforward_hessian, rank,
    symbolic_det,
)
from detcomplex.core.families import det_cofactor_hessian
from detcomplex.types.affine import AffineForm, AffineMatrix, VarId
from detcomplex.types.matrix import RatMatrix


def generic_matrix(n: int) -> AffineMatrix:
    return AffineMatrix([[AffineForm.var(VarId(i + 1, j + 1)) for j in range(n)] for i in range(n)])


def test_det_small():
    """det of small integer and rational matrices"""
    assert det(RatMatrix([[1, 2], [3, 4]])) == -2
    assert det(RatMatrix([["1/2", "1/3"], ["1/4", "1/5"]])) == Fraction(1, 60)
    assert det(RatMatrix.identity(5)) == 1
    assert det(RatMatrix([])) == 1


def test_det_agrees_with_cofactor_expansion(make_matrix):
    """Bareiss and Laplace expansion give the same determinant"""
    for size in (1, 2, 3, 4, 5):
        for _ in range(6):
            m = make_matrix(size, denominators=True)
            assert det(m) == cofactor_det(m)


def test_det_needs_square():
    """det of a rectangular matrix raises ShapeError"""
    with pytest.raises(ShapeError):
        det(RatMatrix([[1, 2, 3], [4, 5, 6]]))


def test_rank():
    """rank of singular, rectangular and zero matrices"""
    assert rank(RatMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 2
    assert rank(RatMatrix([[0, 1, 0, 2], [0, 2, 0, 4]])) == 1
    assert rank(RatMatrix.zeros(3, 4)) == 0
    assert rank(RatMatrix([["1/2", 1], [1, 2]])) == 1
    assert rank(RatMatrix.identity(4)) == 4


def test_rank_of_product_is_bounded(make_matrix):
    """rank(AB) <= min(rank A, rank B)"""
    a = make_matrix(5, 2)
    b = make_matrix(2, 5)
    assert rank(a.mult(b)) <= 2


def naive_rank(m: RatMatrix) -> int:
    """Size of the largest nonzero minor."""
    for k in range(min(m.rows, m.cols), 0, -1):
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                if cofactor_det(RatMatrix.from_function(k, k, lambda i, j: m[rows[i], cols[j]])) != 0:
                    return k
    return 0


def low_rank(make_matrix, rng, rows, cols):
    k = rng.randint(1, min(rows, cols))
    return make_matrix(rows, k, bound=2).mult(make_matrix(k, cols, bound=2))


def test_rank_matches_largest_nonzero_minor(make_matrix, rng):
    """Elimination rank equals the naive minor rank up to size 5"""
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = low_rank(make_matrix, rng, rows, cols) if rng.random() < 0.5 else make_matrix(rows, cols, bound=2)
        assert rank(m) == naive_rank(m), m


def test_det_nonzero_iff_full_rank(make_matrix, rng):
    """det(M) != 0 exactly when rank(M) is the size"""
    seen = set()
    for _ in range(60):
        size = rng.randint(1, 6)
        m = low_rank(make_matrix, rng, size, size) if rng.random() < 0.5 else make_matrix(size, denominators=True)
        full = rank(m) == size
        assert (det(m) != 0) == full
        seen.add(full)
    assert seen == {True, False}


def test_pushforward_rank_is_bounded(make_matrix, rng):
    """rank(L H L^t) <= min(rank L, rank H); L = 0 gives the zero matrix"""
    for _ in range(20):
        n = rng.randint(2, 3)
        m = rng.randint(1, 6)
        lin = make_matrix(m, n * n, bound=3)
        h = low_rank(make_matrix, rng, n * n, n * n)
        h = h.sum(h.transpose())
        assert rank(pushforward_hessian(lin, h)) <= min(rank(lin), rank(h))
    h = make_matrix(9, 9)
    assert pushforward_hessian(RatMatrix.zeros(4, 9), h) == RatMatrix.zeros(4, 4)


def test_symbolic_det_matches_numeric(make_matrix):
    """Expanded det(F) evaluates to det(F(y))"""
    f = generic_matrix(3)
    poly = symbolic_det(f)
    assert len(poly.terms) == 6
    for _ in range(5):
        y = make_matrix(3)
        point = {VarId(i + 1, j + 1): y[i, j] for i in range(3) for j in range(3)}
        assert poly.evaluate(point) == det(y)


def test_symbolic_det_size_cap():
    """Symbolic expansion refuses matrices above the cap"""
    with pytest.raises(ShapeError):
        symbolic_det(AffineMatrix.zeros(7))


def test_eval_affine_matrix():
    """Entries are evaluated at the point; a missing variable is named"""
    f = AffineMatrix([[AffineForm.build(1, {VarId(1, 1): 2}), AffineForm.var(VarId(1, -1))],
                      [AffineForm.const(Fraction(1, 2)), AffineForm()]])
    point = {VarId(1, 1): Fraction(3), VarId(1, -1): Fraction(-1, 3)}
    assert eval_affine_matrix(f, point) == RatMatrix([[7, Fraction(-1, 3)], [Fraction(1, 2), 0]])
    with pytest.raises(MissingAssignmentError) as e:
        eval_affine_matrix(f, {VarId(1, 1): Fraction(0)})
    assert e.value.var == VarId(1, -1)


def test_jacobian_of_generic_matrix_is_identity():
    """Jacobian of the generic matrix in row-major variable order is the identity"""
    order = [VarId(i, j) for i in (1, 2) for j in (1, 2)]
    assert jacobian_matrix(generic_matrix(2), order) == RatMatrix.identity(4)


def test_pushforward_shapes():
    """L H L^t checks its dimensions"""
    with pytest.raises(ShapeError):
        pushforward_hessian(RatMatrix.ones(2, 3), RatMatrix.identity(4))
    with pytest.raises(ShapeError):
        pushforward_hessian(RatMatrix.ones(2, 4), RatMatrix.ones(4, 3))
    assert pushforward_hessian(RatMatrix.identity(4), RatMatrix.identity(4)) == RatMatrix.identity(4)


def test_det_hessian_matches_symbolic():
    """The cofactor Hessian of det equals the second derivatives of the expanded det"""
    n = 3
    f = generic_matrix(n)
    poly = symbolic_det(f)
    a = RatMatrix([[2, -1, 3], [0, 1, 4], [5, 2, -2]])
    point = {VarId(i + 1, j + 1): a[i, j] for i in range(n) for j in range(n)}
    order = [VarId(i + 1, j + 1) for i in range(n) for j in range(n)]
    expected = RatMatrix([[poly.derivative(v).derivative(w).evaluate(point) for w in order] for v in order])
    assert det_cofactor_hessian(a) == expected


@pytest.mark.parametrize("n", [3, 4, 5])
def test_det_hessian_rank_at_singular_matrices(n, make_matrix, rng):
    """At a singular matrix the Hessian of det has rank at most 2n"""
    for _ in range(20):
        m = make_matrix(n).to_lists()
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        m[-1] = [a * x + b * y for x, y in zip(m[0], m[1])]
        singular = RatMatrix(m)
        assert singular.det() == 0
        h = det_cofactor_hessian(singular)
        assert h.is_symmetric()
        assert h.rank() <= 2 * n


def test_off_diagonal_block_matrix_is_invertible(make_invertible, rng):
    """Zero diagonal blocks, Q on the first block row and column, R elsewhere: invertible"""
    for _ in range(50):
        a = rng.randint(1, 4)
        b = rng.randint(2, 4)
        q = make_invertible(a)
        r = make_invertible(a)
        m = build_off_diagonal(q, r, b)
        assert m.shape == (a * b, a * b)
        assert m.det() != 0


def test_off_diagonal_layout():
    """Block placement of build_off_diagonal"""
    q = RatMatrix([[7]])
    r = RatMatrix([[5]])
    assert build_off_diagonal(q, r, 3) == RatMatrix([[0, 7, 7], [7, 0, 5], [7, 5, 0]])
    with pytest.raises(ShapeError):
        build_off_diagonal(q, r, 1)
    with pytest.raises(ShapeError):
        build_off_diagonal(q, RatMatrix.identity(2), 2)
