"""Working with the polynomials encoded by a recurrence Hessenberg matrix.

With H the recurrence matrix and ||w|| the weight norm of the underlying
product, the orthonormal sequence satisfies p_0 = 1/||w|| and

    h_{j+1,j} p_j(x) = x p_{j-1}(x) - sum_{i=1}^{j} h_{i,j} p_{i-1}(x).

Everything here runs off that relation: pointwise evaluation with
derivatives, monomial coefficient recovery for small degrees, Hermite
least-squares fitting in the orthonormal basis, and the banded matrix of
the induced five-term recurrence for point-mass products.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hiep import solve_hessenberg
from .spectral import JordanOperator, PolyCoeffs, WeightVector

__all__ = [
    "SopEvaluation",
    "evaluate",
    "coefficients",
    "LsqFit",
    "hermite_least_squares",
    "pentadiagonal_recurrence",
]


@dataclass(frozen=True)
class SopEvaluation:
    """Values and first derivatives of p_0..p_k at the evaluation points."""

    values: np.ndarray
    derivs: np.ndarray


def _subdiagonal(H: np.ndarray, j: int) -> float:
    h = H[j, j - 1]
    if not h.real > 0 or abs(h.imag) > 1e-12 * max(h.real, 1.0):
        raise ValueError(
            f"subdiagonal entry ({j + 1},{j}) must be real positive; "
            f"the polynomial sequence ends before degree {j}"
        )
    return float(h.real)


def evaluate(H, w_norm: float, x, k: int) -> SopEvaluation:
    """Evaluate p_0..p_k and their derivatives at x (scalar or array).

    Runs the recurrence directly in value space; derivatives use the
    differentiated recurrence, which stays stable at degrees in the
    hundreds where monomial coefficients would overflow.

    Parameters
    ----------
    H : recurrence matrix, at least (k+1) x (k+1).
    w_norm : Euclidean norm of the weight vector (sets p_0 = 1/w_norm).
    x : evaluation point(s), real or complex.
    k : highest degree to evaluate, k <= dim(H) - 1.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"recurrence matrix must be square, got {H.shape}")
    if not 0 <= k <= H.shape[0] - 1:
        raise ValueError(
            f"degree k={k} needs subdiagonal entry ({k + 1},{k}); "
            f"matrix of dimension {H.shape[0]} holds degrees 0..{H.shape[0] - 1}"
        )
    if not w_norm > 0:
        raise ValueError("weight norm must be positive")
    x = np.asarray(x, dtype=complex)
    values = np.empty((k + 1,) + x.shape, dtype=complex)
    derivs = np.zeros((k + 1,) + x.shape, dtype=complex)
    values[0] = 1.0 / w_norm
    for j in range(1, k + 1):
        h = _subdiagonal(H, j)
        proj = np.tensordot(H[:j, j - 1], values[:j], axes=(0, 0))
        dproj = np.tensordot(H[:j, j - 1], derivs[:j], axes=(0, 0))
        values[j] = (x * values[j - 1] - proj) / h
        derivs[j] = (values[j - 1] + x * derivs[j - 1] - dproj) / h
    return SopEvaluation(values=values, derivs=derivs)


def coefficients(H, w_norm: float, k: int):
    """Monomial coefficients of p_0..p_k as PolyCoeffs.

    Exact-degree expansion of the recurrence; intended for small k where
    the coefficients stay representable (tests, oracles).
    """
    H = np.asarray(H, dtype=complex)
    if not 0 <= k <= H.shape[0] - 1:
        raise ValueError(f"degree k={k} out of range for dimension {H.shape[0]}")
    coeff = [np.array([1.0 / w_norm], dtype=complex)]
    for j in range(1, k + 1):
        h = _subdiagonal(H, j)
        c = np.zeros(j + 1, dtype=complex)
        c[1:] = coeff[j - 1]
        for i in range(j):
            c[: i + 1] -= H[i, j - 1] * coeff[i]
        coeff.append(c / h)
    return [PolyCoeffs(c) for c in coeff]


@dataclass(frozen=True)
class LsqFit:
    """Least-squares expansion in the orthonormal basis.

    ``coefficients[j]`` multiplies p_j; errors are max-norm deviations of
    the approximant (and its derivative) from the supplied exact
    functions on the evaluation grid, or None when no exact function was
    given.
    """

    coefficients: np.ndarray
    degree: int
    value_error: float | None
    deriv_error: float | None


def hermite_least_squares(
    H,
    w_norm: float,
    nodes,
    node_weights,
    f_values,
    fprime_values,
    gamma: float,
    n: int,
    f_exact=None,
    fprime_exact=None,
    grid_points: int = 2001,
) -> LsqFit:
    """Degree-n least-squares fit penalizing value and derivative misfit.

    Minimizes sum_m weight_m (|f - f_n|^2 + gamma |f' - f_n'|^2) at the
    nodes over polynomials f_n of degree n.  In the basis orthonormal
    under that product the minimizer is the truncated expansion with

        c_j = sum_m weight_m (f_m conj(p_j(x_m)) + gamma f'_m conj(p_j'(x_m))).

    H must therefore be the recurrence matrix generated from the same
    nodes, weights and gamma.  If ``f_exact``/``fprime_exact`` callables
    are given, errors are measured in the max norm on a uniform grid of
    ``grid_points`` points over [-1, 1].
    """
    nodes = np.asarray(nodes, dtype=float)
    node_weights = np.asarray(node_weights, dtype=float)
    f_values = np.asarray(f_values, dtype=complex)
    fprime_values = np.asarray(fprime_values, dtype=complex)
    if not (
        nodes.shape == node_weights.shape == f_values.shape == fprime_values.shape
    ):
        raise ValueError("nodes, weights and sample arrays must share one shape")
    if gamma < 0:
        raise ValueError("gamma must be non-negative")

    basis = evaluate(H, w_norm, nodes, n)
    coeff = basis.values.conj() @ (node_weights * f_values)
    if gamma > 0:
        coeff += gamma * (basis.derivs.conj() @ (node_weights * fprime_values))

    value_error = None
    deriv_error = None
    if f_exact is not None:
        grid = np.linspace(-1.0, 1.0, grid_points)
        on_grid = evaluate(H, w_norm, grid, n)
        approx = np.tensordot(coeff, on_grid.values, axes=(0, 0))
        value_error = float(np.max(np.abs(approx - f_exact(grid))))
        if fprime_exact is not None:
            dapprox = np.tensordot(coeff, on_grid.derivs, axes=(0, 0))
            deriv_error = float(np.max(np.abs(dapprox - fprime_exact(grid))))
    return LsqFit(
        coefficients=coeff, degree=n, value_error=value_error, deriv_error=deriv_error
    )


def pentadiagonal_recurrence(
    Z: JordanOperator, w: WeightVector, m: int, solver: str = "update-rot"
) -> np.ndarray:
    """Matrix of the five-term recurrence induced by a squared argument.

    For spectral data whose operator has been shifted so the point-mass
    block sits at eigenvalue zero, Z^2 is diagonal and the polynomials
    satisfy a five-term recurrence in x^2.  Its matrix is the leading
    m x m section of H_{m+1}^2, Hermitian and pentadiagonal up to the
    solver's accuracy.
    """
    if m < 1:
        raise ValueError("recurrence dimension m must be at least 1")
    if Z.m < m + 1:
        raise ValueError(
            f"need spectral data of dimension at least {m + 1}, got {Z.m}"
        )
    H = solve_hessenberg(Z, w, m + 1, method=solver)
    return (H @ H)[:m, :m]
