"""Tests for the complex Hessenberg eigenvalue solver."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sobolev import (
    build_same_measure,
    golub_welsch,
    hessenberg_eigenvalues,
    laguerre_jacobi,
    legendre_jacobi,
    smallest_root,
    solve_hessenberg,
)


def random_hessenberg(rng, n):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.triu(A, -1)


def sort_key(vals):
    return np.asarray(sorted(vals, key=lambda z: (z.real, z.imag)))


def char_poly_at(H, lam):
    """det(lam I - H_j) by the Hessenberg leading-minor recursion."""
    n = H.shape[0]
    d = [1.0 + 0.0j, lam - H[0, 0]]
    for j in range(2, n + 1):
        val = (lam - H[j - 1, j - 1]) * d[j - 1]
        prod = 1.0 + 0.0j
        for i in range(j - 2, -1, -1):
            prod *= H[i + 1, i]
            val -= H[i, j - 1] * prod * d[i]
        d.append(val)
    return d[n]


class TestHessenbergEigenvalues:
    def test_nilpotent_block(self):
        spectrum = hessenberg_eigenvalues([[0.0, 0.0], [1.0, 0.0]])
        assert_allclose(spectrum.eigenvalues, [0.0, 0.0], atol=1e-15)

    def test_upper_triangular(self):
        H = np.triu(np.arange(16.0).reshape(4, 4)) + np.eye(4)
        got = hessenberg_eigenvalues(H).eigenvalues
        assert_allclose(got, sort_key(np.diag(H)), atol=1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            hessenberg_eigenvalues(np.zeros((3, 2)))

    def test_rejects_non_hessenberg(self):
        A = np.ones((4, 4))
        with pytest.raises(ValueError):
            hessenberg_eigenvalues(A)

    def test_table_configuration_second_degree(self):
        rule = golub_welsch(laguerre_jacobi(10, -0.5))
        Z, w = build_same_measure(rule, [1.0, 1.0])
        H = solve_hessenberg(Z, w, 2)
        root = smallest_root(H, 2)
        assert root.real == pytest.approx(0.0515973733627619, abs=1e-10)
        assert abs(root.imag) <= 1e-10

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 21, 34])
    def test_against_reference_eigensolver(self, n):
        rng = np.random.default_rng(n)
        H = random_hessenberg(rng, n)
        got = hessenberg_eigenvalues(H).eigenvalues
        ref = sort_key(np.linalg.eigvals(H))
        assert np.max(np.abs(got - ref)) <= 1e-10 * np.linalg.norm(H)

    @pytest.mark.parametrize("seed", range(4))
    def test_similarity_invariance(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 15))
        H = random_hessenberg(rng, n)
        D = np.diag(np.exp(2j * np.pi * rng.uniform(size=n)))
        got = hessenberg_eigenvalues(D.conj().T @ H @ D).eigenvalues
        ref = hessenberg_eigenvalues(H).eigenvalues
        assert np.max(np.abs(got - ref)) <= 1e-12 * max(np.linalg.norm(H), 1.0)

    @pytest.mark.parametrize("n", [2, 5, 12, 30])
    def test_trace_and_determinant(self, n):
        rng = np.random.default_rng(77 + n)
        H = random_hessenberg(rng, n)
        vals = hessenberg_eigenvalues(H).eigenvalues
        assert np.sum(vals) == pytest.approx(np.trace(H), rel=1e-11)
        assert np.prod(vals) == pytest.approx(np.linalg.det(H), rel=1e-9)

    def test_diagonal_operator_round_trip(self):
        # all blocks 1x1: the recurrence matrix must reproduce the nodes
        rule = golub_welsch(legendre_jacobi(10))
        Z, w = build_same_measure(rule, [1.0])
        H = solve_hessenberg(Z, w, Z.m, method="arnoldi")
        got = hessenberg_eigenvalues(H).eigenvalues
        assert np.max(np.abs(got - rule.nodes)) <= 1e-10

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_characteristic_polynomial_residual(self, n):
        rng = np.random.default_rng(n * 11)
        H = random_hessenberg(rng, n)
        scale = np.linalg.norm(H) ** n
        for lam in hessenberg_eigenvalues(H).eigenvalues:
            assert abs(char_poly_at(H, lam)) <= 1e-9 * scale


class TestSmallestRoot:
    def test_scalar_section(self):
        H = np.array([[4.0, 1.0], [1.0, 2.0]])
        assert smallest_root(H, 1) == 4.0

    def test_tie_broken_by_imaginary_part(self):
        H = np.diag([1.0 + 2.0j, 1.0 + 0.0j, 3.0])
        assert smallest_root(H, 3) == 1.0 + 0.0j

    def test_leading_section_only(self):
        H = np.diag([5.0, 6.0, -7.0])
        assert smallest_root(H, 2) == 5.0

    def test_rejects_out_of_range(self):
        H = np.eye(3)
        with pytest.raises(ValueError):
            smallest_root(H, 0)
        with pytest.raises(ValueError):
            smallest_root(H, 4)
