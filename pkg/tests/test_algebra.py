"""Structure-constant algebras: construction, validation, tensor products."""

from fractions import Fraction

import pytest

from raywitt.algebra import FiniteAlgebraRing, GradedAlgebra
from raywitt.errors import ExactnessError, RaywittError
from raywitt.monoid import natural_line, nonneg_orthant, TruncatedMonoid
from raywitt.rings import PrimeField, QQ


def test_monoid_algebra_basics():
    A = GradedAlgebra.monoid_algebra(natural_line(2, killed_at=3), QQ)
    assert A.dim == 3
    assert A.labels == ("1", "t", "t^2")
    assert A.commutative
    x = A.basis_element(1)
    assert A.multiply(x, x) == A.basis_element(2)
    assert A.multiply(A.multiply(x, x), x) == {}  # x^3 = 0


def test_truncation_kills_high_products():
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=2)
    A = GradedAlgebra.monoid_algebra(t, QQ)
    i = A.degrees.index((1, 1))
    assert A.multiply(A.basis_element(i), A.basis_element(i)) == {}
    j = A.degrees.index((1, 0))
    prod = A.multiply(A.basis_element(j), A.basis_element(j))
    assert prod == {A.degrees.index((2, 0)): Fraction(1)}


def test_degree_zero_power_algebra():
    R = GradedAlgebra.degree_zero_power(QQ, 3, "y")
    assert R.labels == ("1", "y", "y^2")
    y = R.basis_element(1)
    assert R.multiply(y, R.multiply(y, y)) == {}
    assert all(R.is_degree_zero(i) for i in range(R.dim))


def test_bad_tables_rejected():
    t = natural_line(1)
    # unit must act as identity
    with pytest.raises(RaywittError):
        GradedAlgebra(
            t,
            ("1", "t"),
            ((0,), (1,)),
            {(0, 0): {0: Fraction(1)}, (0, 1): {}, (1, 0): {1: Fraction(1)}, (1, 1): {}},
            QQ,
        )
    # product must be homogeneous
    with pytest.raises(RaywittError):
        GradedAlgebra(
            t,
            ("1", "t"),
            ((0,), (1,)),
            {
                (0, 0): {0: Fraction(1)},
                (0, 1): {1: Fraction(1)},
                (1, 0): {1: Fraction(1)},
                (1, 1): {1: Fraction(1)},
            },
            QQ,
        )


def test_tensor_with_degree_zero():
    A = GradedAlgebra.monoid_algebra(natural_line(2), QQ)
    R = GradedAlgebra.degree_zero_power(QQ, 2, "y")
    B = A.tensor_degree_zero(R)
    assert B.dim == A.dim * R.dim
    assert B.labels[0] == "1"
    assert B.commutative
    y = B.basis_element(B.labels.index("y"))
    x = B.basis_element(B.labels.index("t"))
    yx = B.multiply(y, x)
    assert yx == B.basis_element(B.labels.index("y*t"))
    assert B.multiply(y, y) == {}
    assert B.element_degree(yx) == (1,)
    assert B.element_degree(y) == (0,)


def test_element_degree_rejects_mixed():
    A = GradedAlgebra.monoid_algebra(natural_line(2), QQ)
    with pytest.raises(RaywittError):
        A.element_degree({0: Fraction(1), 1: Fraction(1)})


def test_prime_field_coefficients():
    F5 = PrimeField(5)
    A = GradedAlgebra.monoid_algebra(natural_line(2, killed_at=3), F5)
    x = A.basis_element(1)
    assert A.multiply(x, x) == {2: 1}


def test_non_field_coefficients_rejected():
    from raywitt.rings import ZZ

    with pytest.raises(RaywittError):
        GradedAlgebra.monoid_algebra(natural_line(2), ZZ)


def test_finite_algebra_ring():
    R = GradedAlgebra.degree_zero_power(QQ, 2, "y")
    ring = FiniteAlgebraRing(R)
    one = ring.one()
    y = ring.element({1: Fraction(1)})
    assert ring.mul(y, y) == ring.zero()
    assert ring.to_str(ring.add(one, y)) == "1 + y"
    assert ring.mul(ring.from_int(2), y) == ring.add(y, y)
    # division: (1 + y) is invertible, y is a zero divisor
    inv = ring.divexact(one, ring.add(one, y))
    assert ring.mul(inv, ring.add(one, y)) == one
    with pytest.raises(ExactnessError):
        ring.divexact(one, y)
    assert ring.divexact(y, y) is not None  # any solution of y*x = y is accepted
