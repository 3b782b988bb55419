from fractions import Fraction

import pytest

from genlcm.arithfun import build_function_table, parse_function
from genlcm.builders import (
    Factorization,
    MatrixFamily,
    NotTotallyMultiplicativeError,
    TableTooShortError,
    build_f1_factorization,
    build_f1_matrix,
    build_f2_factorization,
    build_f2_matrix,
    build_factorization,
    build_gcd_matrix,
    build_lcm_matrix,
    build_lcm_structure_product,
)
from genlcm.dets import bareiss_det
from genlcm.exactmat import ExactMatrix, diagonal, divisibility_matrix, identity

from conftest import PRESET_KINDS, preset_table


def loop_f1(n, i, j, g):
    return sum((g(k) for k in range(1, n + 1) if k % i == 0 and k % j == 0), Fraction(0))


def loop_f2(n, i, j, g):
    return sum((g(k) for k in range(1, n + 1) if k % i and k % j), Fraction(0))


ONE = build_function_table("one", 100)
ID = build_function_table("id", 100)
LAM = build_function_table("liouville", 100)


def test_gcd_matrix_examples():
    assert build_gcd_matrix(3, ID) == ExactMatrix([[1, 1, 1], [1, 2, 1], [1, 1, 3]])
    assert build_gcd_matrix(3) == build_gcd_matrix(3, ID)
    assert bareiss_det(build_gcd_matrix(4)).value == 4
    # phi(1) = phi(2) makes the first two rows of the phi-GCD matrix equal
    phi_gcd = build_gcd_matrix(4, build_function_table("phi", 4))
    assert phi_gcd.rows[0] == phi_gcd.rows[1]
    assert bareiss_det(phi_gcd).value == 0
    assert build_gcd_matrix(1, ONE) == ExactMatrix([[1]])


def test_lcm_matrix_examples():
    assert build_lcm_matrix(2, ID) == ExactMatrix([[1, 2], [2, 2]])
    assert bareiss_det(build_lcm_matrix(3, ID)).value == 12
    assert build_lcm_matrix(1) == ExactMatrix([[1]])


def test_lcm_matrix_extends_sieved_tables():
    phi = build_function_table("phi", 5)
    m = build_lcm_matrix(5, phi)
    assert m.entry(4, 5) == 8  # phi(20)


def test_lcm_matrix_short_user_table():
    g = parse_function("user:2=2,3=3,5=5", 5)
    with pytest.raises(TableTooShortError):
        build_lcm_matrix(5, g)


def test_f1_examples():
    assert build_f1_matrix(3, ONE) == ExactMatrix([[3, 1, 1], [1, 1, 0], [1, 0, 1]])
    assert build_f1_matrix(3, ID) == ExactMatrix([[6, 2, 3], [2, 2, 0], [3, 0, 3]])
    for g in (ONE, ID, LAM):
        assert build_f1_matrix(1, g) == ExactMatrix([[1]])


def test_f2_examples():
    assert build_f2_matrix(4, ONE) == ExactMatrix(
        [[0, 0, 0, 0], [0, 2, 1, 2], [0, 1, 3, 2], [0, 2, 2, 3]]
    )
    assert build_f2_matrix(4, ONE).entry(2, 3) == 1
    for g in (ONE, ID, LAM):
        assert set(build_f2_matrix(3, g).rows[0]) == {0}


def test_factorization_examples():
    assert build_f1_factorization(2, ONE).product() == ExactMatrix([[2, 1], [1, 1]])
    assert build_f1_factorization(4, ID).product() == ExactMatrix.from_function(
        4, lambda i, j: loop_f1(4, i, j, ID)
    ) == build_f1_matrix(4, ID)
    assert build_f2_factorization(3, LAM).product() == build_f2_matrix(3, LAM)


def test_factorization_shapes():
    fac = build_f1_factorization(5, ID)
    c = divisibility_matrix(5)
    assert (fac.left, fac.middle, fac.right, fac.outer) == (c.T, diagonal(range(1, 6)), c, None)
    with pytest.raises(ValueError):
        Factorization(identity(2), identity(3), identity(2))
    with pytest.raises(ValueError):
        Factorization(identity(2), divisibility_matrix(2), identity(2))


def test_lcm_structure_examples():
    assert build_lcm_structure_product(2).product() == ExactMatrix([[1, 2], [2, 2]])
    assert build_lcm_structure_product(3).product().entry(2, 3) == 6
    assert build_lcm_structure_product(1).product() == ExactMatrix([[1]])
    fac = build_lcm_structure_product(4)
    assert fac.outer == (diagonal([1, 2, 3, 4]),) * 2
    assert fac.middle.diagonal_values() == build_function_table("smith_g", 4).values


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 21, 34, 64])
def test_lcm_structure_equals_lcm_matrix(n):
    assert build_lcm_structure_product(n).product() == build_lcm_matrix(n)


@pytest.mark.parametrize("kind", PRESET_KINDS)
def test_factorizations_reproduce_builders(kind):
    g = preset_table(kind, 64)
    for n in (1, 2, 7, 16, 30, 64):
        assert build_f1_factorization(n, g).product() == build_f1_matrix(n, g)
    for n in (1, 2, 7, 16, 30):
        assert build_f2_factorization(n, g).product() == build_f2_matrix(n, g)


@pytest.mark.parametrize("kind", PRESET_KINDS)
def test_entry_identities_against_loops(kind):
    g = preset_table(kind, 40)
    for n in (1, 4, 9, 17, 40):
        f1, f2 = build_f1_matrix(n, g), build_f2_matrix(n, g)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert f1.entry(i, j) == loop_f1(n, i, j, g)
                assert f2.entry(i, j) == loop_f2(n, i, j, g)


@pytest.mark.parametrize("kind", ["one", "id", "liouville", "random1"])
def test_families_are_symmetric(kind):
    g = preset_table(kind, 20)
    for n in (1, 6, 20):
        assert build_gcd_matrix(n, g).is_symmetric()
        assert build_lcm_matrix(n, g if kind != "random1" else None).is_symmetric()
        assert build_f1_matrix(n, g).is_symmetric()
        assert build_f2_matrix(n, g).is_symmetric()


def test_out_of_range_lcm_gives_zero():
    # [2,3] = 6 > 5
    assert build_f1_matrix(5, ID).entry(2, 3) == 0
    assert build_f2_matrix(5, ONE).entry(2, 3) == 5 - 2 - 1 + 0


def test_f1_requires_total_multiplicativity():
    phi = build_function_table("phi", 10)
    for build in (build_f1_matrix, build_f2_matrix, build_f1_factorization):
        with pytest.raises(NotTotallyMultiplicativeError):
            build(4, phi)
    with pytest.raises(NotTotallyMultiplicativeError):
        MatrixFamily("f1", phi)
    # the unchecked path still builds, which the suite relies on
    assert build_f1_matrix(4, phi, check=False).entry(2, 2) == 2


def test_family_dispatch():
    assert MatrixFamily("lcm").build(3) == build_lcm_matrix(3)
    assert MatrixFamily("f2", ONE).build(4) == build_f2_matrix(4, ONE)
    with pytest.raises(ValueError):
        MatrixFamily("hcf")
    with pytest.raises(ValueError):
        MatrixFamily("f1")
    with pytest.raises(ValueError):
        build_factorization("gcd", 3)
    assert build_factorization("lcm", 3).product() == build_lcm_matrix(3)


def test_short_table_extends_or_fails():
    assert build_f1_matrix(6, build_function_table("id", 3)) == build_f1_matrix(6, ID)
    with pytest.raises(TableTooShortError):
        build_f1_matrix(6, parse_function("user:2=1,3=1", 3))
    with pytest.raises(TableTooShortError):
        build_gcd_matrix(6, parse_function("user:2=1,3=1", 3))
