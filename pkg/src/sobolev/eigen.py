"""Eigenvalues of complex upper Hessenberg matrices.

Roots of the orthonormal polynomial p_k are the eigenvalues of the k x k
leading principal section of its recurrence matrix, so all root finding
in this package reduces to the Hessenberg eigenvalue problem.  Solved by
the implicit single-shift QR iteration with Wilkinson shifts, Givens
bulge chasing and aggressive deflation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .hiep import hessenberg_defect

__all__ = ["Spectrum", "hessenberg_eigenvalues", "smallest_root"]

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by real part, ties by imaginary part."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.eigenvalues, dtype=complex))
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def _givens(x: complex, y: complex):
    """c real, s complex with [[c, s], [-conj(s), c]] @ (x, y) = (r, 0)."""
    ax, ay = abs(x), abs(y)
    if ay == 0.0:
        return 1.0, 0.0 + 0.0j
    if ax == 0.0:
        return 0.0, np.conj(y) / ay
    r = math.hypot(ax, ay)
    return ax / r, (x / ax) * np.conj(y) / r


def _eig2(a, b, c, d):
    """Both eigenvalues of [[a, b], [c, d]]."""
    t = 0.5 * (a + d)
    disc = np.sqrt(complex(t * t - (a * d - b * c)))
    return t + disc, t - disc


def _implicit_step(A, lo, hi, mu):
    """One single-shift QR sweep on the active block lo..hi (inclusive)."""
    x = A[lo, lo] - mu
    y = A[lo + 1, lo]
    for k in range(lo, hi):
        c, s = _givens(x, y)
        j0 = max(lo, k - 1)
        rk = A[k, j0:].copy()
        rk1 = A[k + 1, j0:]
        A[k, j0:] = c * rk + s * rk1
        A[k + 1, j0:] = -np.conj(s) * rk + c * rk1
        i1 = min(hi, k + 2) + 1
        ck = A[:i1, k].copy()
        ck1 = A[:i1, k + 1]
        A[:i1, k] = c * ck + np.conj(s) * ck1
        A[:i1, k + 1] = -s * ck + c * ck1
        if k + 2 <= hi:
            x = A[k + 1, k]
            y = A[k + 2, k]


def hessenberg_eigenvalues(H) -> Spectrum:
    """All eigenvalues of a complex upper Hessenberg matrix.

    Deflation sets a subdiagonal entry to zero once it drops below
    eps * (|h_{j,j}| + |h_{j+1,j+1}|), with eps machine precision and the
    Frobenius norm as fallback scale; 1 x 1 and 2 x 2 trailing blocks are
    resolved directly.  Every tenth sweep without a deflation switches to
    an exceptional shift to break symmetry-induced stalls.

    Raises
    ------
    NumericalFailure
        If an eigenvalue fails to deflate within 30 * n sweeps.
    """
    A = np.array(H, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    n = A.shape[0]
    hnorm = float(np.linalg.norm(A))
    if hessenberg_defect(A) > 1e-13 * max(hnorm, 1.0):
        raise ValueError("matrix is not upper Hessenberg within tolerance")
    for i in range(n):
        A[i + 2 :, i] = 0.0

    eigs = []
    hi = n - 1
    stagnation = 0
    while hi >= 0:
        if hi == 0:
            eigs.append(A[0, 0])
            break
        # deflate negligible subdiagonal entries
        for j in range(hi, 0, -1):
            scale = abs(A[j - 1, j - 1]) + abs(A[j, j])
            if scale == 0.0:
                scale = hnorm
            if abs(A[j, j - 1]) <= _EPS * scale:
                A[j, j - 1] = 0.0
        if A[hi, hi - 1] == 0.0:
            eigs.append(A[hi, hi])
            hi -= 1
            stagnation = 0
            continue
        lo = hi
        while lo > 0 and A[lo, lo - 1] != 0.0:
            lo -= 1
        if hi - lo == 1:
            lam1, lam2 = _eig2(A[lo, lo], A[lo, hi], A[hi, lo], A[hi, hi])
            eigs.extend([lam1, lam2])
            hi = lo - 1
            stagnation = 0
            continue
        stagnation += 1
        if stagnation > 30 * n:
            raise NumericalFailure(
                "QR iteration failed to deflate an eigenvalue",
                active_low=lo,
                active_high=hi,
                sweeps=stagnation,
            )
        if stagnation % 10 == 0:
            mu = A[hi, hi] + 0.75 * abs(A[hi, hi - 1])
        else:
            lam1, lam2 = _eig2(
                A[hi - 1, hi - 1], A[hi - 1, hi], A[hi, hi - 1], A[hi, hi]
            )
            mu = lam1 if abs(lam1 - A[hi, hi]) <= abs(lam2 - A[hi, hi]) else lam2
        _implicit_step(A, lo, hi, mu)

    order = sorted(range(n), key=lambda i: (eigs[i].real, eigs[i].imag))
    return Spectrum(np.asarray([eigs[i] for i in order]))


def smallest_root(H, k: int) -> complex:
    """Smallest eigenvalue of the leading k x k section of H.

    Smallest means smallest real part; exact ties are broken by smallest
    absolute imaginary part.
    """
    H = np.asarray(H)
    if not 1 <= k <= H.shape[0]:
        raise ValueError(f"leading dimension k={k} must lie in 1..{H.shape[0]}")
    vals = hessenberg_eigenvalues(H[:k, :k]).eigenvalues
    best = min(vals, key=lambda z: (z.real, abs(z.imag)))
    return complex(best)
