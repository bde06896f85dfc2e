import math
from fractions import Fraction as F

import pytest

from conftest import z
from merodiff.exact import GaussianRational, I, Polynomial
from merodiff.linalg import (hnf, integer_kernel, lll_reduce, nullspace_exact, rank_exact,
                             rank_numeric, rref, saturate)
from merodiff.numeric import BigComplex
from merodiff.roots import roots_with_multiplicity, squarefree_decomposition


def test_rref_and_rank():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    red, piv = rref(M)
    assert piv == [0, 1]
    assert rank_exact(M) == 2
    for v in nullspace_exact(M):
        assert all(sum(GaussianRational(a) * x for a, x in zip(row, v)) == 0 for row in M)


def test_rank_numeric_relative_and_scaled():
    assert rank_numeric([[1, 0], [0, 1e-20]]) == 1
    assert rank_numeric([[1e-30]]) == 1
    assert rank_numeric([[1e-30]], scale=1) == 0


def test_lll_finds_short_vector():
    # classic example: the reduced basis starts with a vector of norm^2 <= 2
    B = [[1, 0, 0, 31415926], [0, 1, 0, 27182818], [0, 0, 1, 14142135]]
    R = lll_reduce(B)
    assert hnf(R) == hnf(B)
    assert min(sum(x * x for x in r) for r in R) < sum(x * x for x in B[0])


def test_lll_rejects_dependent_input():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])


def test_hnf_canonical():
    assert hnf([[2, 4], [3, 5]]) == [[1, 1], [0, 2]]
    assert hnf([[0, 1, 1], [2, 0, 0], [2, 1, 1]]) == [[2, 0, 0], [0, 1, 1]]


def test_integer_kernel_and_saturate():
    ker = integer_kernel([[1, 1, 0]], 3)
    assert hnf(ker) == hnf([[1, -1, 0], [0, 0, 1]])
    assert hnf(saturate([[2, 0, 0]], 3)) == [[1, 0, 0]]
    assert hnf(saturate([[2, 4, 6]], 3)) == [[1, 2, 3]]


def test_squarefree_decomposition():
    p = (z - 1) ** 3 * (z + 2) ** 2 * (z - 5)
    parts = {k: g for g, k in squarefree_decomposition(p)}
    assert parts == {1: z - 5, 2: z + 2, 3: z - 1}


def test_roots_with_multiplicity_exact_and_irrational():
    p = (z - F(1, 2)) ** 3 * (z + I) ** 2 * (z * z - 2)
    roots = roots_with_multiplicity(p)
    exact = {(r, k) for r, k in roots if isinstance(r, GaussianRational)}
    assert exact == {(GaussianRational(F(1, 2)), 3), (-I, 2)}
    approx = sorted(complex(r).real for r, k in roots if isinstance(r, BigComplex))
    assert approx == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-15)


def test_roots_of_negative_rational():
    roots = roots_with_multiplicity(Polynomial((-1, 0, 1)))
    assert {r for r, _ in roots} == {GaussianRational(1), GaussianRational(-1)}
