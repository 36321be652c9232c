"""Solvers for the Hessenberg inverse eigenvalue problem.

Given a Jordan operator Z and a weight vector w, both solvers produce a
unitary Q and an upper Hessenberg H with real non-negative subdiagonal
such that

    Q^H Z Q = H   and   Q e_1 = w / ||w||_2.

H is the recurrence matrix of the Sobolev orthonormal polynomials of the
product encoded by (Z, w), and column j+1 of Q is p_j(Z) w / ||w||_2.

Two independent methods are implemented: :func:`arnoldi`, a Krylov
iteration with modified Gram-Schmidt and one reorthogonalization sweep,
and :func:`update_solve`, which merges single-block solutions one block
at a time -- embed, inject the new weight with a plane rotation, restore
the Hessenberg structure column by column, and rescale the subdiagonal to
be real non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .spectral import JordanBlockSpec, JordanOperator, WeightVector, jordan_matvec

__all__ = [
    "ArnoldiResult",
    "arnoldi",
    "update_solve",
    "solve_hessenberg",
    "PlaneRotation",
    "Householder",
    "hessenberg_defect",
]

SOLVER_NAMES = ("arnoldi", "update-hh", "update-rot")


def _phase(value: complex) -> complex:
    a = abs(value)
    return value / a if a > 0 else 1.0 + 0.0j


def hessenberg_defect(H) -> float:
    """Largest magnitude strictly below the first subdiagonal."""
    H = np.asarray(H)
    worst = 0.0
    for i in range(H.shape[1]):
        if i + 2 < H.shape[0]:
            worst = max(worst, float(np.max(np.abs(H[i + 2 :, i]))))
    return worst


@dataclass(frozen=True)
class ArnoldiResult:
    """Output of the Arnoldi iteration.

    ``Q`` has orthonormal columns spanning the Krylov space, ``H`` is the
    square Hessenberg section, ``h_next`` the would-be next subdiagonal
    entry (zero at breakdown) and ``q_next`` the next basis vector, or
    None when the iteration broke down.
    """

    Q: np.ndarray
    H: np.ndarray
    h_next: float
    q_next: np.ndarray | None


def arnoldi(Z: JordanOperator, w: WeightVector, k: int, trace=None) -> ArnoldiResult:
    """Run k steps of the Arnoldi iteration on (Z, w).

    Each step applies Z to the newest basis vector, orthogonalizes by
    modified Gram-Schmidt against all previous vectors, and repeats the
    orthogonalization once to keep ``Q^H Q`` near the identity also for
    dimensions in the hundreds.  Breakdown (residual below
    1e-13 * ||Z||_F) truncates the result; for valid spectral data it can
    only occur at the full dimension m.

    Parameters
    ----------
    Z, w : spectral data of the discretized product.
    k : number of columns requested, 1 <= k <= m.
    trace : optional callable receiving one dict per step.
    """
    m = Z.m
    if not 1 <= k <= m:
        raise ValueError(f"column count k={k} must lie in 1..{m}")
    wd = w.dense(Z)
    wnorm = float(np.linalg.norm(wd))
    tol = 1e-13 * Z.frobenius_norm()

    Q = np.zeros((m, k), dtype=complex)
    Hext = np.zeros((k + 1, k), dtype=complex)
    Q[:, 0] = wd / wnorm
    ncols = k
    h_next = 0.0
    q_next = None
    for col in range(k):
        v = jordan_matvec(Z, Q[:, col])
        basis = Q[:, : col + 1]
        h = basis.conj().T @ v
        v = v - basis @ h
        correction = basis.conj().T @ v
        v = v - basis @ correction
        h += correction
        Hext[: col + 1, col] = h
        hn = float(np.linalg.norm(v))
        if trace is not None:
            trace(
                {
                    "event": "arnoldi-step",
                    "column": col + 1,
                    "subdiag": hn,
                    "reorth_correction": float(np.linalg.norm(correction)),
                }
            )
        if hn <= tol:
            ncols = col + 1
            h_next = hn
            q_next = None
            break
        Hext[col + 1, col] = hn
        if col + 1 < k:
            Q[:, col + 1] = v / hn
        else:
            h_next = hn
            q_next = v / hn

    Q = Q[:, :ncols]
    H = Hext[:ncols, :ncols]
    ortho = float(np.linalg.norm(Q.conj().T @ Q - np.eye(ncols)))
    if ortho > 1e-8:
        raise NumericalFailure(
            "orthogonality lost beyond recovery despite reorthogonalization",
            orthogonality=ortho,
            columns=ncols,
        )
    return ArnoldiResult(Q=Q, H=H, h_next=h_next, q_next=q_next)


@dataclass(frozen=True)
class PlaneRotation:
    """Unitary plane rotation acting on the coordinate pair (i, j).

    The 2x2 kernel is ``[[conj(a), -conj(b)], [b, a]]`` with
    |a|^2 + |b|^2 = 1, embedded in an identity of size ``dim``.
    """

    a: complex
    b: complex
    i: int
    j: int
    dim: int

    def __post_init__(self):
        if abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0) > 1e-14:
            raise ValueError("rotation parameters must satisfy |a|^2+|b|^2 = 1")
        if not (0 <= self.i < self.dim and 0 <= self.j < self.dim):
            raise ValueError("coordinate indices out of range")
        if self.i == self.j:
            raise ValueError("coordinate indices must differ")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    @classmethod
    def annihilating(cls, f: complex, g: complex, i: int, j: int, dim: int):
        """Rotation mapping (f, g) on (i, j) to (r, 0) with r = ||(f,g)|| >= 0."""
        r = math.hypot(abs(f), abs(g))
        if r == 0.0:
            return cls(1.0, 0.0, i, j, dim)
        return cls(f / r, -g / r, i, j, dim)

    def kernel(self) -> np.ndarray:
        return np.array(
            [[np.conj(self.a), -np.conj(self.b)], [self.b, self.a]], dtype=complex
        )

    def adjoint(self) -> "PlaneRotation":
        return PlaneRotation(np.conj(self.a), -self.b, self.i, self.j, self.dim)

    def matrix(self) -> np.ndarray:
        P = np.eye(self.dim, dtype=complex)
        P[np.ix_((self.i, self.j), (self.i, self.j))] = self.kernel()
        return P

    def apply_left(self, A: np.ndarray) -> np.ndarray:
        """Return P @ A without materializing P."""
        A = np.array(A, dtype=complex, copy=True)
        rows = A[(self.i, self.j), :]
        A[(self.i, self.j), :] = self.kernel() @ rows
        return A

    def apply_right(self, A: np.ndarray) -> np.ndarray:
        """Return A @ P without materializing P."""
        A = np.array(A, dtype=complex, copy=True)
        cols = A[:, (self.i, self.j)]
        A[:, (self.i, self.j)] = cols @ self.kernel()
        return A


@dataclass(frozen=True)
class Householder:
    """Reflector R = I - 2 y y^H / (y^H y) sending a vector to a multiple of e_1."""

    y: np.ndarray
    alpha: complex

    @classmethod
    def from_vector(cls, c) -> "Householder":
        """Reflector with R c = -alpha e_1, alpha = ||c|| e^{i arg(c_1)}.

        The sign of alpha matches the phase of c_1 so that forming
        y = c + alpha e_1 never cancels.
        """
        c = np.atleast_1d(np.asarray(c, dtype=complex))
        norm = float(np.linalg.norm(c))
        if norm == 0.0:
            raise ValueError("cannot build a reflector from the zero vector")
        alpha = _phase(c[0]) * norm
        y = c.copy()
        y[0] += alpha
        return cls(y=y, alpha=alpha)

    @property
    def dim(self) -> int:
        return self.y.size

    def matrix(self) -> np.ndarray:
        y = self.y
        return np.eye(self.dim, dtype=complex) - 2.0 * np.outer(y, y.conj()) / (
            y.conj() @ y
        )

    def apply_left(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=complex)
        y = self.y
        return A - np.outer(y, (2.0 / (y.conj() @ y)) * (y.conj() @ A))

    def apply_right(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=complex)
        y = self.y
        return A - np.outer(A @ y, (2.0 / (y.conj() @ y)) * y.conj())


def _single_block_solution(block: JordanBlockSpec, beta: complex):
    """Closed-form solution for one Jordan block with weight beta e_last.

    H is lower bidiagonal with the block eigenvalue on the diagonal and
    the scaling magnitudes on the subdiagonal; Q is the flip matrix with
    per-column phases chosen so that Q e_1 = (beta/|beta|) e_last and the
    subdiagonal of H comes out real positive.
    """
    s = block.size
    H = block.z * np.eye(s, dtype=complex)
    for i in range(s - 1):
        H[i + 1, i] = abs(block.superdiag[i])
    Q = np.zeros((s, s), dtype=complex)
    d = _phase(beta)
    for j in range(s):
        Q[s - 1 - j, j] = d
        if j < s - 1:
            d *= _phase(block.superdiag[j])
    return H, Q


def _reduction_kernel(c: np.ndarray, strategy: str) -> np.ndarray:
    """Unitary K with K c proportional to e_1, by reflector or rotations."""
    r = c.size
    if strategy == "householder":
        return Householder.from_vector(c).matrix()
    K = np.eye(r, dtype=complex)
    v = c.copy()
    for idx in range(r - 1, 0, -1):
        rot = PlaneRotation.annihilating(v[idx - 1], v[idx], idx - 1, idx, r)
        v = rot.apply_left(v.reshape(-1, 1)).ravel()
        K = rot.apply_left(K)
    return K


def update_solve(Z: JordanOperator, w: WeightVector, strategy: str = "rotations", trace=None):
    """Solve the inverse problem by updating with one Jordan block at a time.

    Starting from the closed-form single-block solution, each further
    block is (1) embedded block-diagonally, (2) tied to the existing
    solution by a plane rotation that turns the first basis column into
    the enlarged normalized weight vector, (3) brought back to Hessenberg
    form column by column, eliminating in column i the subdiagonal entry
    together with every nonzero below it, and (4) rescaled by a unimodular
    diagonal so the subdiagonal is real non-negative.

    Parameters
    ----------
    Z, w : spectral data of the discretized product.
    strategy : "rotations" or "householder" -- how the per-column
        elimination kernel is built.
    trace : optional callable receiving one dict per elimination step.

    Returns
    -------
    (H, Q) : m x m Hessenberg matrix and unitary basis.
    """
    if strategy not in ("rotations", "householder"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if len(Z.blocks) != w.betas.size:
        raise ValueError("weight count does not match block count")

    znorm = Z.frobenius_norm()
    H, Q = _single_block_solution(Z.blocks[0], w.betas[0])
    wnorm2 = abs(w.betas[0]) ** 2

    for bidx in range(1, len(Z.blocks)):
        block = Z.blocks[bidx]
        beta = w.betas[bidx]
        Hb, Qb = _single_block_solution(block, beta)

        d_prev = H.shape[0]
        d = d_prev + block.size
        Hn = np.zeros((d, d), dtype=complex)
        Hn[:d_prev, :d_prev] = H
        Hn[d_prev:, d_prev:] = Hb
        Qn = np.zeros((d, d), dtype=complex)
        Qn[:d_prev, :d_prev] = Q
        Qn[d_prev:, d_prev:] = Qb

        # plane rotation turning the first basis column into w/||w||; the
        # phase of beta already sits in the first column of Qb, so both
        # parameters are real
        prev_norm = math.sqrt(wnorm2)
        wnorm2 += abs(beta) ** 2
        cur_norm = math.sqrt(wnorm2)
        rot = PlaneRotation(prev_norm / cur_norm, -abs(beta) / cur_norm, 0, d_prev, d)
        Hn = rot.apply_left(rot.adjoint().apply_right(Hn))
        Qn = rot.adjoint().apply_right(Qn)

        # column-by-column return to Hessenberg structure
        for i in range(d - 2):
            rows = [i + 1] + [j for j in range(i + 2, d) if Hn[j, i] != 0]
            if len(rows) == 1:
                continue
            c = Hn[rows, i]
            K = _reduction_kernel(c, strategy)
            Hn[rows, :] = K @ Hn[rows, :]
            Hn[:, rows] = Hn[:, rows] @ K.conj().T
            Qn[:, rows] = Qn[:, rows] @ K.conj().T
            residual = float(np.max(np.abs(Hn[rows[1:], i])))
            if residual > 1e-10 * max(znorm, 1.0):
                raise NumericalFailure(
                    "Hessenberg restoration left a residual above tolerance",
                    column=i + 1,
                    block=bidx,
                    residual=residual,
                )
            if trace is not None:
                trace(
                    {
                        "event": "update-restore",
                        "block": bidx + 1,
                        "column": i + 1,
                        "eliminated": len(rows) - 1,
                        "residual": residual,
                    }
                )
            Hn[rows[1:], i] = 0.0

        # unimodular rescaling: subdiagonal real non-negative, first column kept
        phases = np.ones(d, dtype=complex)
        for i in range(d - 1):
            phases[i + 1] = _phase(Hn[i + 1, i]) * phases[i]
        Hn = phases.conj()[:, None] * Hn * phases[None, :]
        for i in range(d - 1):
            Hn[i + 1, i] = Hn[i + 1, i].real
        Qn = Qn * phases[None, :]

        H, Q = Hn, Qn

    return H, Q


def solve_hessenberg(Z: JordanOperator, w: WeightVector, k: int, method: str = "update-rot", trace=None):
    """Leading k x k recurrence matrix by the named solver.

    ``method`` is one of "arnoldi", "update-hh" (updating with Householder
    reflectors) or "update-rot" (updating with plane rotations).  The
    updating solvers compute the full m x m matrix and truncate; the
    result is the same by uniqueness of the solution.
    """
    if method == "arnoldi":
        return arnoldi(Z, w, k, trace=trace).H
    if method == "update-hh":
        H, _ = update_solve(Z, w, strategy="householder", trace=trace)
    elif method == "update-rot":
        H, _ = update_solve(Z, w, strategy="rotations", trace=trace)
    else:
        raise ValueError(f"unknown solver {method!r}; expected one of {SOLVER_NAMES}")
    return H[:k, :k]
