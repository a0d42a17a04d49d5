from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlqfa.linalg import (EXACT, FLOAT, Matrix, Scalar, SpanBasis, direct_sum,
                          is_unitary, kron, span_add)


def mexact(rows):
    return Matrix.from_rows(rows, EXACT)


X = mexact([[0, 1], [1, 0]])
ROT35 = mexact([[Fraction(3, 5), Fraction(4, 5)],
                [Fraction(-4, 5), Fraction(3, 5)]])

exact_entry = st.fractions(min_value=-3, max_value=3, max_denominator=7)
exact_2x2 = st.lists(st.lists(exact_entry, min_size=2, max_size=2),
                     min_size=2, max_size=2).map(mexact)


class TestScalar:
    def test_exact_arithmetic_is_closed(self):
        a = Scalar.exact(Fraction(1, 3), Fraction(1, 2))
        b = Scalar.exact(2, Fraction(-1, 5))
        for result in (a + b, a - b, a * b, -a, a.conjugate()):
            assert result.mode == EXACT
        assert (a * b).re == Fraction(1, 3) * 2 - Fraction(1, 2) * Fraction(-1, 5)
        assert a.abs2() == Fraction(1, 9) + Fraction(1, 4)
        assert isinstance(a.abs2(), Fraction)

    def test_mode_mixing_rejected(self):
        with pytest.raises(ValueError, match="mode mismatch"):
            Scalar.exact(1) * Scalar.of_float(1.0)

    def test_float_comparisons_take_tolerance(self):
        a = Scalar.of_float(1.0)
        b = Scalar.of_float(1.0 + 1e-12)
        assert a.approx_eq(b, 1e-9)
        assert not a.approx_eq(b, 1e-15)
        assert Scalar.of_float(1e-12).is_zero(tol=1e-9)
        assert not Scalar.exact(Fraction(1, 10 ** 12)).is_zero()

    def test_string_fraction_construction(self):
        s = Scalar.exact("3/5", "-4/5")
        assert s.re == Fraction(3, 5) and s.im == Fraction(-4, 5)


class TestKron:
    def test_identity_case(self):
        assert kron(Matrix.identity(2, EXACT), Matrix.identity(2, EXACT)) \
            == Matrix.identity(4, EXACT)

    def test_swap_squared_is_identity(self):
        xx = kron(X, X)
        # block-antidiagonal permutation: involution forced by structure
        assert xx @ xx == Matrix.identity(4, EXACT)
        assert xx.entry(0, 3) == Scalar.exact(1)
        assert xx.entry(0, 0) == Scalar.exact(0)

    @given(a=exact_2x2, b=exact_2x2, c=exact_2x2, d=exact_2x2)
    def test_mixed_product_law(self, a, b, c, d):
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)

    def test_mode_mismatch_rejected(self):
        with pytest.raises(ValueError, match="mode mismatch"):
            kron(X, Matrix.identity(2, FLOAT))

    def test_float_matches_numpy(self):
        a = Matrix.from_rows([[1, 2j], [3, 4]], FLOAT)
        b = Matrix.from_rows([[0, 1], [1, 0]], FLOAT)
        assert np.allclose(kron(a, b).to_complex(),
                           np.kron(a.to_complex(), b.to_complex()))


class TestDirectSum:
    def test_identity_blocks(self):
        assert direct_sum(Matrix.identity(2, EXACT), Matrix.identity(3, EXACT)) \
            == Matrix.identity(5, EXACT)

    def test_exact_entries_preserved(self):
        m = direct_sum(ROT35, mexact([[1]]))
        assert m.rows == m.cols == 3
        assert m.entry(0, 0) == Scalar.exact(Fraction(3, 5))
        assert m.entry(0, 1) == Scalar.exact(Fraction(4, 5))
        assert m.entry(1, 0) == Scalar.exact(Fraction(-4, 5))
        assert m.entry(2, 2) == Scalar.exact(1)
        assert m.entry(0, 2) == Scalar.exact(0)
        assert m.mode == EXACT

    @given(theta=st.floats(0, 6.283), phi=st.floats(0, 6.283))
    def test_sum_of_unitaries_is_unitary(self, theta, phi):
        u = Matrix.from_rows(
            [[np.cos(theta), np.sin(theta)],
             [-np.sin(theta), np.cos(theta)]], FLOAT)
        v = Matrix.from_rows([[np.exp(1j * phi)]], FLOAT)
        assert is_unitary(direct_sum(u, v), 1e-9)

    def test_exact_unitaries_stay_unitary(self):
        assert is_unitary(direct_sum(ROT35, X))

    def test_mode_mismatch_rejected(self):
        with pytest.raises(ValueError, match="mode mismatch"):
            direct_sum(X, Matrix.identity(2, FLOAT))


class TestIsUnitary:
    def test_identity(self):
        assert is_unitary(Matrix.identity(3, EXACT))
        assert is_unitary(Matrix.identity(3, FLOAT), 0.0)

    def test_rational_rotation(self):
        assert is_unitary(ROT35)

    def test_stretched_diagonal_rejected(self):
        assert not is_unitary(mexact([[1, 0], [0, 2]]))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="unitar"):
            is_unitary(Matrix.zeros(2, 3, EXACT))


class TestSpanBasis:
    def test_scalar_multiple_rejected(self):
        basis = SpanBasis(4, EXACT)
        assert span_add(basis, Matrix.identity(2, EXACT))
        doubled = mexact([[2, 0], [0, 2]])
        assert not span_add(basis, doubled)
        assert len(basis) == 1

    def test_independent_pair_accepted(self):
        basis = SpanBasis(4, EXACT)
        assert basis.add(Matrix.identity(2, EXACT))
        assert basis.add(X)
        assert len(basis) == 2

    def test_ambient_dimension_cap(self):
        basis = SpanBasis(4, EXACT)
        for i in range(2):
            for j in range(2):
                unit = [[1 if (r, c) == (i, j) else 0 for c in range(2)]
                        for r in range(2)]
                assert basis.add(mexact(unit))
        assert len(basis) == 4
        assert not basis.add(ROT35)
        assert not basis.add(X)
        assert len(basis) == 4

    def test_float_pivot_threshold(self):
        basis = SpanBasis(4, FLOAT)
        ident = Matrix.identity(2, FLOAT)
        assert basis.add(ident)
        nearly = Matrix.from_rows([[1 + 1e-14, 0], [0, 1 - 1e-14]], FLOAT)
        assert not basis.add(nearly)
        assert basis.add(Matrix.from_rows([[0, 1], [1, 0]], FLOAT))

    def test_dimension_mismatch_rejected(self):
        basis = SpanBasis(4, EXACT)
        with pytest.raises(ValueError, match="dim"):
            basis.add(Matrix.identity(3, EXACT))

    @given(st.lists(exact_2x2, min_size=1, max_size=8))
    def test_count_monotone_and_capped(self, matrices):
        basis = SpanBasis(4, EXACT)
        previous = 0
        for m in matrices:
            basis.add(m)
            assert previous <= len(basis) <= 4
            previous = len(basis)
            assert basis.contains(m)

    def test_contains_is_pure(self):
        basis = SpanBasis(4, EXACT)
        basis.add(Matrix.identity(2, EXACT))
        assert not basis.contains(X)
        assert len(basis) == 1


class TestDeterminism:
    def test_exact_results_bit_reproducible(self):
        def compute():
            m = ROT35
            for _ in range(12):
                m = m @ ROT35
            return m

        assert compute() == compute()

    def test_float_deterministic_for_fixed_order(self):
        a = Matrix.from_rows([[0.1, 0.2], [0.3, 0.4]], FLOAT)
        assert (a @ a) == (a @ a)
