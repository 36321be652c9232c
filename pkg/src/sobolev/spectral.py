"""Discretized Sobolev inner products and their Jordan spectral data.

A discretized Sobolev inner product

    <p, q> = sum_j sum_r  lambda_{j,r} p^(r)(z_j) conj(q^(r)(z_j))

is encoded by a block-diagonal Jordan matrix Z together with a weight
vector w that carries one entry beta_j per block.  The translation rests
on the identity (q(Z) w)^H (p(Z) w) = <p, q>, which holds whenever the
order-r weight at node j equals |beta_j|^2 |alpha_1 ... alpha_r|^2 / (r!)^2
with alpha_i the superdiagonal scalings of block j.  This module provides
both representations, builders for the standard product families, and a
direct polynomial-derivative evaluator used as an oracle against the
matrix form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .quadrature import QuadratureRule

__all__ = [
    "PolyCoeffs",
    "JordanBlockSpec",
    "JordanOperator",
    "WeightVector",
    "ProductTerm",
    "SobolevProductSpec",
    "build_same_measure",
    "build_discrete_laguerre_sobolev",
    "build_radau_endpoint",
    "spec_of",
    "inner_product_direct",
    "jordan_matvec",
    "jordan_poly_column",
    "spectral_to_json",
    "spectral_from_json",
]


@dataclass(frozen=True)
class PolyCoeffs:
    """Polynomial in the monomial basis, coefficients ordered low to high."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must form a non-empty 1-d sequence")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def derivative(self, order: int = 1) -> "PolyCoeffs":
        """Exact derivative, still as monomial coefficients."""
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order == 0:
            return self
        return PolyCoeffs(P.polyder(self.coeffs, order))

    def __call__(self, x):
        return P.polyval(x, self.coeffs)


@dataclass(frozen=True)
class JordanBlockSpec:
    """One Jordan block: eigenvalue z and superdiagonal scalings.

    ``superdiag`` stores (alpha_1, ..., alpha_k) where alpha_1 sits next to
    the last diagonal entry in the dense block; the dense superdiagonal
    read top to bottom is therefore the reverse of this sequence.
    """

    z: complex
    superdiag: np.ndarray

    def __post_init__(self):
        superdiag = np.atleast_1d(np.asarray(self.superdiag, dtype=complex))
        if superdiag.ndim != 1:
            raise ValueError("superdiag must be a 1-d sequence")
        if superdiag.size and np.any(superdiag == 0):
            raise ValueError("superdiagonal scalings must be nonzero")
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "superdiag", superdiag)

    @property
    def size(self) -> int:
        return self.superdiag.size + 1

    def dense(self) -> np.ndarray:
        A = self.z * np.eye(self.size, dtype=complex)
        if self.superdiag.size:
            A += np.diag(self.superdiag[::-1], 1)
        return A


@dataclass(frozen=True)
class JordanOperator:
    """Block-diagonal Jordan matrix stored as its list of blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("need at least one Jordan block")
        if not all(isinstance(b, JordanBlockSpec) for b in blocks):
            raise ValueError("blocks must be JordanBlockSpec instances")
        eigs = [b.z for b in blocks]
        if len(set(eigs)) != len(eigs):
            raise ValueError("block eigenvalues must be pairwise distinct")
        object.__setattr__(self, "blocks", blocks)

    @property
    def m(self) -> int:
        """Total dimension."""
        return sum(b.size for b in self.blocks)

    def offsets(self):
        """Row offset of each block in the dense matrix."""
        out = []
        pos = 0
        for b in self.blocks:
            out.append(pos)
            pos += b.size
        return out

    def dense(self) -> np.ndarray:
        Z = np.zeros((self.m, self.m), dtype=complex)
        for off, b in zip(self.offsets(), self.blocks):
            Z[off : off + b.size, off : off + b.size] = b.dense()
        return Z

    def frobenius_norm(self) -> float:
        total = 0.0
        for b in self.blocks:
            total += b.size * abs(b.z) ** 2
            total += float(np.sum(np.abs(b.superdiag) ** 2))
        return math.sqrt(total)

    def shift(self, c: complex) -> "JordanOperator":
        """The operator Z - c I (same block structure, shifted eigenvalues)."""
        return JordanOperator(
            tuple(JordanBlockSpec(b.z - c, b.superdiag) for b in self.blocks)
        )


@dataclass(frozen=True)
class WeightVector:
    """Per-block weights beta_j; densely, beta_j sits at the end of block j."""

    betas: np.ndarray

    def __post_init__(self):
        betas = np.atleast_1d(np.asarray(self.betas, dtype=complex))
        if betas.ndim != 1 or betas.size == 0:
            raise ValueError("betas must form a non-empty 1-d sequence")
        if np.any(betas == 0):
            raise ValueError("all block weights must be nonzero")
        object.__setattr__(self, "betas", betas)

    def norm(self) -> float:
        return float(np.linalg.norm(self.betas))

    def dense(self, Z: JordanOperator) -> np.ndarray:
        if len(Z.blocks) != self.betas.size:
            raise ValueError(
                f"weight count {self.betas.size} does not match "
                f"block count {len(Z.blocks)}"
            )
        w = np.zeros(Z.m, dtype=complex)
        for off, b, beta in zip(Z.offsets(), Z.blocks, self.betas):
            w[off + b.size - 1] = beta
        return w


@dataclass(frozen=True)
class ProductTerm:
    """One node of a discretized Sobolev product with its derivative weights.

    ``weights[r]`` multiplies p^(r)(node) conj(q^(r)(node)).  A nonzero
    weight at some order requires nonzero weights at every lower order,
    and the highest order present must carry positive weight.
    """

    node: complex
    weights: np.ndarray

    def __post_init__(self):
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if weights.ndim != 1 or weights.size == 0:
            raise ValueError("weights must form a non-empty 1-d sequence")
        if np.any(weights < 0):
            raise ValueError("derivative weights must be non-negative")
        if weights[-1] <= 0:
            raise ValueError("highest-order weight must be positive")
        seen_zero = False
        for v in weights:
            if v == 0:
                seen_zero = True
            elif seen_zero:
                raise ValueError(
                    "nonzero derivative weight above a zero one breaks "
                    "sequential dominance"
                )
        object.__setattr__(self, "node", complex(self.node))
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class SobolevProductSpec:
    """Symbolic form of a discretized Sobolev inner product."""

    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("need at least one product term")
        if not all(isinstance(t, ProductTerm) for t in terms):
            raise ValueError("terms must be ProductTerm instances")
        nodes = [t.node for t in terms]
        if len(set(nodes)) != len(nodes):
            raise ValueError("product nodes must be pairwise distinct")
        object.__setattr__(self, "terms", terms)


def build_same_measure(rule: QuadratureRule, gammas):
    """Spectral data for a product with one measure shared by all derivatives.

    Discretizes sum_r gamma_r * integral p^(r) conj(q^(r)) with the given
    quadrature rule: every node becomes a Jordan block of size len(gammas)
    whose scalings alpha_r = r * sqrt(gamma_r / gamma_{r-1}) make the
    order-r weight equal gamma_r * weight_j, and beta_j = sqrt(gamma_0 *
    weight_j).

    Parameters
    ----------
    rule : QuadratureRule
        Discretization of the base measure.
    gammas : sequence of positive floats
        Factors gamma_0..gamma_s weighting derivative orders 0..s.

    Returns
    -------
    (JordanOperator, WeightVector)
    """
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    if gammas.ndim != 1 or gammas.size == 0:
        raise ValueError("gammas must form a non-empty 1-d sequence")
    if np.any(gammas <= 0):
        raise ValueError("all gamma factors must be positive")
    r = np.arange(1.0, gammas.size)
    alphas = r * np.sqrt(gammas[1:] / gammas[:-1])
    blocks = tuple(JordanBlockSpec(z, alphas) for z in rule.nodes)
    betas = np.sqrt(gammas[0] * rule.weights).astype(complex)
    return JordanOperator(blocks), WeightVector(betas)


def build_discrete_laguerre_sobolev(rule: QuadratureRule, c: float, M: float, N: float):
    """Spectral data for integral p conj(q) x^a e^{-x} dx + M p(c)conj(q(c)) + N p'(c)conj(q'(c)).

    The point part becomes a leading 2x2 Jordan block at c with scaling
    sqrt(N/M) and weight sqrt(M); the quadrature rule contributes one 1x1
    block per node.
    """
    if not (M > 0 and N > 0):
        raise ValueError("point masses M and N must be positive")
    if np.any(rule.nodes == c):
        raise ValueError(f"point mass location {c} collides with a quadrature node")
    blocks = [JordanBlockSpec(c, [math.sqrt(N) / math.sqrt(M)])]
    blocks += [JordanBlockSpec(z, []) for z in rule.nodes]
    betas = np.concatenate(([math.sqrt(M)], np.sqrt(rule.weights))).astype(complex)
    return JordanOperator(tuple(blocks)), WeightVector(betas)


def build_radau_endpoint(rule: QuadratureRule, gamma: float, endpoint: float = 1.0):
    """Spectral data for a product with a derivative term at one endpoint.

    Expects a rule that contains ``endpoint`` among its nodes (a Gauss-Radau
    rule).  That node becomes a 2x2 block with scaling sqrt(gamma)/beta_0
    where beta_0^2 is the endpoint weight; the remaining nodes stay 1x1.
    """
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    hits = np.flatnonzero(rule.nodes == endpoint)
    if hits.size != 1:
        raise ValueError(f"rule must contain the endpoint {endpoint} exactly once")
    idx = int(hits[0])
    beta0 = math.sqrt(rule.weights[idx])
    blocks = [JordanBlockSpec(endpoint, [math.sqrt(gamma) / beta0])]
    betas = [beta0]
    for j in range(rule.n):
        if j == idx:
            continue
        blocks.append(JordanBlockSpec(rule.nodes[j], []))
        betas.append(math.sqrt(rule.weights[j]))
    return JordanOperator(tuple(blocks)), WeightVector(np.asarray(betas, dtype=complex))


def spec_of(Z: JordanOperator, w: WeightVector) -> SobolevProductSpec:
    """Read off the product encoded by (Z, w).

    The order-r weight at the node of block j is
    |beta_j|^2 |alpha_1 ... alpha_r|^2 / (r!)^2.
    """
    if len(Z.blocks) != w.betas.size:
        raise ValueError("weight count does not match block count")
    terms = []
    for b, beta in zip(Z.blocks, w.betas):
        weights = np.empty(b.size)
        prod = 1.0 + 0.0j
        for r in range(b.size):
            if r > 0:
                prod *= b.superdiag[r - 1]
            weights[r] = abs(beta) ** 2 * abs(prod) ** 2 / math.factorial(r) ** 2
        terms.append(ProductTerm(b.z, weights))
    return SobolevProductSpec(tuple(terms))


def inner_product_direct(p: PolyCoeffs, q: PolyCoeffs, spec: SobolevProductSpec) -> complex:
    """Evaluate the product by differentiating p and q at the nodes.

    Serves as the matrix-free oracle for the identity
    (q(Z) w)^H (p(Z) w) = <p, q>.
    """
    total = 0.0 + 0.0j
    for term in spec.terms:
        dp, dq = p, q
        for r, weight in enumerate(term.weights):
            if r > 0:
                dp = dp.derivative()
                dq = dq.derivative()
            if weight != 0.0:
                total += weight * dp(term.node) * np.conj(dq(term.node))
    return complex(total)


def jordan_matvec(Z: JordanOperator, x) -> np.ndarray:
    """Apply Z to a vector blockwise in O(m)."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (Z.m,):
        raise ValueError(f"vector length {x.shape} does not match dimension {Z.m}")
    y = np.empty_like(x)
    for off, b in zip(Z.offsets(), Z.blocks):
        seg = x[off : off + b.size]
        out = b.z * seg
        if b.size > 1:
            out[:-1] += b.superdiag[::-1] * seg[1:]
        y[off : off + b.size] = out
    return y


def jordan_poly_column(block: JordanBlockSpec, p: PolyCoeffs) -> np.ndarray:
    """Last column of p(J) for a single block J.

    Entry r from the bottom equals (alpha_1 ... alpha_r / r!) p^(r)(z), so
    the final entry is p(z) itself.
    """
    col = np.empty(block.size, dtype=complex)
    dp = p
    prod = 1.0 + 0.0j
    for r in range(block.size):
        if r > 0:
            prod *= block.superdiag[r - 1]
            dp = dp.derivative()
        col[block.size - 1 - r] = prod / math.factorial(r) * dp(block.z)
    return col


def _c2pair(value) -> list:
    value = complex(value)
    return [value.real, value.imag]


def spectral_to_json(Z: JordanOperator, w: WeightVector) -> dict:
    """JSON-ready dict with blocks (eigenvalue, scalings) and weights."""
    return {
        "blocks": [
            {"z": _c2pair(b.z), "alphas": [_c2pair(a) for a in b.superdiag]}
            for b in Z.blocks
        ],
        "betas": [_c2pair(beta) for beta in w.betas],
    }


def spectral_from_json(obj: dict):
    """Inverse of spectral_to_json."""
    blocks = tuple(
        JordanBlockSpec(
            complex(*entry["z"]), [complex(*a) for a in entry["alphas"]]
        )
        for entry in obj["blocks"]
    )
    betas = np.asarray([complex(*b) for b in obj["betas"]])
    return JordanOperator(blocks), WeightVector(betas)
