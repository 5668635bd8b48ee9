"""Skew-symmetric solutions of ``A x = y`` for ``x^T y = 0``.

The pairing is bilinear (no conjugation) throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NearZeroPivot, NotOrthogonal

DELTA_MIN = 1e-8
ORTHO_TOL = 1e-8


class SkewMatrix:
    """Square complex matrix with ``A = -A^T`` and zero diagonal, enforced on construction."""

    __slots__ = ("entries",)

    def __init__(self, upper: np.ndarray):
        u = np.triu(np.asarray(upper, dtype=complex), k=1)
        a = u - u.T
        a.setflags(write=False)
        self.entries = a

    @classmethod
    def zeros(cls, n: int) -> SkewMatrix:
        return cls(np.zeros((n, n), dtype=complex))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: SkewMatrix) -> SkewMatrix:
        return SkewMatrix(self.entries + other.entries)

    def __sub__(self, other: SkewMatrix) -> SkewMatrix:
        return SkewMatrix(self.entries - other.entries)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __getitem__(self, idx):
        return self.entries[idx]

    def __repr__(self):
        return f"SkewMatrix({np.array2string(self.entries, precision=4)})"


def bilinear(x, y) -> complex:
    return complex(np.sum(np.asarray(x) * np.asarray(y)))


def skew_solve(x, y, delta_min: float = DELTA_MIN, ortho_tol: float = ORTHO_TOL) -> SkewMatrix:
    """Skew ``A`` with ``A x = y`` built on the pivot column of the largest ``|x_k|``.

    ``A[i, k] = y_i / x_k`` and ``A[k, j] = -y_j / x_k`` for ``i, j != k``, zero
    elsewhere.  Row ``k`` of ``A x`` equals ``y_k`` only because ``x^T y = 0``.
    ``||A||_F <= sqrt(2) ||y|| / |x_k| <= sqrt(2n) ||y|| / ||x||``.
    """
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.shape != y.shape:
        raise DimensionMismatch(f"x has length {x.size}, y has length {y.size}")
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx < delta_min:
        raise NearZeroPivot(f"||x|| = {nx:.3e} below {delta_min:.1e}")
    # normalise first so tiny y cannot underflow the comparison
    rel = abs(bilinear(x / nx, y / ny)) if ny > 0 else 0.0
    if rel > ortho_tol:
        raise NotOrthogonal(f"|x^T y| / (||x|| ||y||) = {rel:.3e} exceeds {ortho_tol:.1e}")
    # argmax returns the first maximiser
    k = int(np.argmax(np.abs(x)))
    col = y / x[k]
    a = np.zeros((x.size, x.size), dtype=complex)
    a[:k, k] = col[:k]
    a[k, k + 1:] = -col[k + 1:]
    return SkewMatrix(a)


def apply(A: SkewMatrix, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex).ravel()
    if x.size != A.n:
        raise DimensionMismatch(f"matrix is {A.n}x{A.n}, vector has length {x.size}")
    return A.entries @ x
