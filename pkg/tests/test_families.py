from fractions import Fraction
from math import factorial, prod

import pytest

from detcomplex.core.errors import InvalidSpecError, MissingAssignmentError, ShapeError, SizeCapError
from detcomplex.core.families import (
    distinct_permutations, eval_brute, eval_recurrence, evaluate, family_polynomial, hessian_at,
    matrix_from_point, matrix_index, ones_value, partial, point_from_matrix, second_partial, var_index, var_order,
    zero_point,
)
from detcomplex.types.affine import VarId
from detcomplex.types.family import FamilyKind, FamilySpec
from detcomplex.types.matrix import RatMatrix


def shifted(x: RatMatrix, spec: FamilySpec, *moves: VarId) -> RatMatrix:
    for v in moves:
        i, c = matrix_index(spec, v)
        x = x.replace(i, c, x[i, c] + 1)
    return x


#
# Specs
#

def test_family_spec_parse():
    """perm, hoperm and mperm from CLI-style arguments"""
    assert FamilySpec.parse('perm', 3) == FamilySpec.perm(3)
    assert FamilySpec.parse('perm', 3).composition == (1, 1, 1)
    assert FamilySpec.parse('hoperm', 2).shape == (2, 4)
    spec = FamilySpec.parse('mperm', comp='2,1')
    assert spec.kind is FamilyKind.MPERM
    assert spec.shape == (3, 2)
    assert spec.gamma == 3


@pytest.mark.parametrize("args", [
    ('perm', None, None), ('mperm', None, None), ('mperm', None, '2,x'), ('mperm', None, '2,0'),
    ('hoperm', 0, None), ('nope', 2, None),
])
def test_family_spec_errors(args):
    """Incomplete or malformed specs are rejected"""
    with pytest.raises(InvalidSpecError):
        FamilySpec.parse(*args)


def test_canonical_order():
    """Sorting a composition remembers where every partition column came from"""
    partition, order = FamilySpec.mperm((1, 3, 2)).canonical()
    assert partition.composition == (3, 2, 1)
    assert order == (1, 2, 0)


#
# Evaluation
#

def test_worked_examples():
    """Hand-checked values of hoperm_2 and mperm_(2,1)"""
    h = RatMatrix([[1, 2, 3, 4], [5, 6, 7, 8]])
    assert eval_brute(FamilySpec.hoperm(2), h) == 128
    assert eval_recurrence(FamilySpec.hoperm(2), h) == 128
    m = RatMatrix([[1, 2], [3, 4], [5, 6]])
    assert eval_brute(FamilySpec.mperm((2, 1)), m) == 68
    assert eval_recurrence(FamilySpec.mperm((2, 1)), m) == 68


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hoperm_brute_matches_recurrence(n, make_matrix):
    """Both hoperm evaluators agree on random integer matrices"""
    spec = FamilySpec.hoperm(n)
    for _ in range(100):
        x = make_matrix(n, 2 * n)
        assert eval_brute(spec, x) == eval_recurrence(spec, x)


def test_mperm_brute_matches_recurrence(all_partitions, make_matrix):
    """Both mperm evaluators agree for every partition of gamma <= 8"""
    for comp in all_partitions(1, 8):
        spec = FamilySpec.mperm(comp)
        for k in range(3):
            x = make_matrix(spec.gamma, spec.n, denominators=k == 0)
            assert eval_brute(spec, x) == eval_recurrence(spec, x), comp


def test_evaluate_dispatch(make_matrix):
    """evaluate() picks the method by name"""
    spec = FamilySpec.mperm((1, 2))
    x = make_matrix(3, 2)
    assert evaluate(spec, x, 'brute') == evaluate(spec, x, 'rec')
    with pytest.raises(InvalidSpecError):
        evaluate(spec, x, 'fast')


def test_perm_is_the_permanent():
    """perm_2 is ad + bc"""
    assert eval_recurrence(FamilySpec.perm(2), RatMatrix([[1, 2], [3, 4]])) == 10


def test_shape_and_size_caps():
    """Wrong shapes and oversized families are refused"""
    with pytest.raises(ShapeError):
        eval_recurrence(FamilySpec.hoperm(2), RatMatrix.ones(2, 2))
    with pytest.raises(SizeCapError):
        eval_brute(FamilySpec.hoperm(9), RatMatrix.ones(9, 18))
    with pytest.raises(SizeCapError):
        eval_brute(FamilySpec.perm(13), RatMatrix.ones(13, 13))
    with pytest.raises(SizeCapError):
        eval_recurrence(FamilySpec.hoperm(13), RatMatrix.ones(13, 26))
    with pytest.raises(SizeCapError) as e:
        eval_recurrence(FamilySpec.mperm((11, 10)), RatMatrix.ones(21, 2))
    assert e.value.limit == 20


def test_family_polynomial_term_counts():
    """The expanded families have 2^n n! and gamma!/prod(m!) monomials, all with coefficient 1"""
    hoperm = family_polynomial(FamilySpec.hoperm(3))
    assert len(hoperm.terms) == 48
    assert set(hoperm.terms.values()) == {1}
    mperm = family_polynomial(FamilySpec.mperm((2, 1, 1)))
    assert len(mperm.terms) == 12
    assert mperm.degree() == 4


def test_family_polynomial_evaluates_like_recurrence(make_matrix):
    """Expanded polynomial and recurrence agree"""
    for spec in (FamilySpec.hoperm(2), FamilySpec.mperm((2, 1)), FamilySpec.perm(3)):
        x = make_matrix(*spec.shape)
        assert family_polynomial(spec).evaluate(point_from_matrix(spec, x)) == eval_recurrence(spec, x)


#
# Variables
#

def test_var_order_and_index():
    """var_index inverts var_order"""
    for spec in (FamilySpec.hoperm(3), FamilySpec.mperm((2, 1, 1))):
        order = var_order(spec)
        assert len(order) == spec.num_vars
        assert [var_index(spec, v) for v in order] == list(range(len(order)))
    assert var_order(FamilySpec.hoperm(2))[4] == VarId(1, -1)


def test_point_round_trip(make_matrix):
    """point_from_matrix and matrix_from_point are inverse"""
    spec = FamilySpec.hoperm(2)
    x = make_matrix(2, 4)
    point = point_from_matrix(spec, x)
    assert point[VarId(2, -1)] == x[1, 2]
    assert matrix_from_point(spec, point) == x
    del point[VarId(1, 2)]
    with pytest.raises(MissingAssignmentError) as e:
        matrix_from_point(spec, point)
    assert e.value.var == VarId(1, 2)


def test_distinct_permutations():
    """Multiset permutations are listed once each, in order"""
    words = list(distinct_permutations([2, 1, 1]))
    assert words == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert len(list(distinct_permutations([1, 1, 2, 2, 3]))) == 30


#
# Special points
#

@pytest.mark.parametrize("n", range(1, 7))
def test_hoperm_ones(n):
    """hoperm_n at the all-ones matrix is 2^n n!"""
    spec = FamilySpec.hoperm(n)
    assert ones_value(spec) == 2 ** n * factorial(n)
    assert eval_recurrence(spec, RatMatrix.ones(n, 2 * n)) == 2 ** n * factorial(n)


def test_mperm_ones(all_partitions):
    """mperm at the all-ones matrix is the multinomial gamma!/prod(m!)"""
    for comp in all_partitions(1, 10):
        spec = FamilySpec.mperm(comp)
        expected = Fraction(factorial(spec.gamma), prod(factorial(m) for m in comp))
        assert ones_value(spec) == expected
        assert eval_recurrence(spec, RatMatrix.ones(spec.gamma, spec.n)) == expected, comp


@pytest.mark.parametrize("n", range(1, 7))
def test_hoperm_zero(n):
    """hoperm vanishes at the all-ones matrix with x[n,n] = 1 - 2n"""
    zero = zero_point(FamilySpec.hoperm(n))
    assert zero.matrix[n - 1, n - 1] == 1 - 2 * n
    assert eval_recurrence(zero.spec, zero.matrix) == 0


def test_mperm_zero_every_partition(all_partitions):
    """Both zero constructions vanish for every partition of gamma <= 8"""
    cases = set()
    for comp in all_partitions(1, 8):
        zero = zero_point(FamilySpec.mperm(comp))
        cases.add(zero.case)
        assert eval_recurrence(zero.spec, zero.matrix) == 0, comp
    assert cases == {1, 2}


def test_zero_point_entries():
    """Documented entries of the explicit zeros"""
    assert zero_point(FamilySpec.hoperm(2)).matrix.row(1) == (1, -3, 1, 1)

    z = zero_point(FamilySpec.mperm((2, 1)))
    assert z.case == 1
    assert z.matrix[2, 0] == Fraction(-1, 2)
    assert (z.c, z.k, z.d, z.special_row) == (1, 1, Fraction(3, 2), 3)

    z = zero_point(FamilySpec.perm(3))
    assert z.case == 2
    assert z.matrix[0, 0] == -2
    assert z.special_row == 1


def test_zero_point_unsorted_composition():
    """The zero of an unsorted composition sits on the caller's columns"""
    z = zero_point(FamilySpec.mperm((1, 3)))
    assert z.matrix.row(3) == (1, Fraction(-1, 3))
    assert z.k == 2
    assert z.partition == (3, 1)
    assert z.column_order == (1, 0)
    assert eval_recurrence(z.spec, z.matrix) == 0


#
# Derivatives
#

@pytest.mark.parametrize("spec", [FamilySpec.hoperm(3), FamilySpec.mperm((2, 1, 1)), FamilySpec.perm(4),
                                  FamilySpec.mperm((1, 3))])
def test_derivatives_match_finite_differences(spec, make_matrix, rng):
    """Degree <= 1 per variable makes forward differences exact"""
    order = var_order(spec)
    for _ in range(100):
        x = make_matrix(*spec.shape)
        f = eval_recurrence(spec, x)
        v, w = rng.choice(order), rng.choice(order)
        assert partial(spec, x, v) == eval_recurrence(spec, shifted(x, spec, v)) - f
        if v != w:
            second = (eval_recurrence(spec, shifted(x, spec, v, w)) - eval_recurrence(spec, shifted(x, spec, v))
                      - eval_recurrence(spec, shifted(x, spec, w)) + f)
            assert second_partial(spec, x, v, w) == second


def test_second_partial_zero_patterns():
    """Same row, and same |column| for hoperm, give zero"""
    spec = FamilySpec.hoperm(2)
    x = RatMatrix([[1, 2, 3, 4], [5, 6, 7, 8]])
    assert second_partial(spec, x, VarId(1, 1), VarId(1, 2)) == 0
    assert second_partial(spec, x, VarId(1, 1), VarId(2, -1)) == 0
    assert second_partial(spec, x, VarId(1, 1), VarId(2, -2)) == 1


def test_hessian_shape(make_matrix):
    """Hessian is symmetric with a zero diagonal"""
    spec = FamilySpec.mperm((2, 1))
    h = hessian_at(spec, make_matrix(3, 2))
    assert h.shape == (6, 6)
    assert h.is_symmetric()
    assert all(h[k, k] == 0 for k in range(6))


@pytest.mark.parametrize("spec", [FamilySpec.hoperm(2), FamilySpec.hoperm(3), FamilySpec.perm(3),
                                  FamilySpec.mperm((2, 1)), FamilySpec.mperm((1, 2, 2))])
def test_hessian_is_symmetric(spec, make_matrix):
    """Symmetric with a zero diagonal at random points"""
    for _ in range(5):
        h = hessian_at(spec, make_matrix(*spec.shape, denominators=True))
        assert h.is_symmetric()
        assert all(h[k, k] == 0 for k in range(h.rows))


@pytest.mark.parametrize("n", [2, 3])
def test_hoperm_hessian_column_sign_symmetry(n, make_matrix):
    """Entries for x[i,+-j], x[k,+-l] agree for all four sign choices"""
    spec = FamilySpec.hoperm(n)
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for _ in range(5):
        h = hessian_at(spec, make_matrix(n, 2 * n))
        for i, j in cells:
            for k, l in cells:
                values = {h[var_index(spec, VarId(i, s * j)), var_index(spec, VarId(k, t * l))]
                          for s in (1, -1) for t in (1, -1)}
                assert len(values) == 1, (i, j, k, l)
