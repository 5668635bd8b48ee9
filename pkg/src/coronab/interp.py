"""Hermite interpolation with prescribed jets at the Blaschke zeros.

The production path is the explicit basis ``P[k][m]`` built from
``p_k = prod_{j != k} (z - a_j)**m_j`` and the Taylor jet of ``1/p_k`` at
``a_k``.  Clustered nodes make the monomial coefficients large (1e7 is common
for M = 8 at separation 0.05), so the basis and the final sum are formed at
``WORK_BITS`` bits of precision and rounded to double once.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import gmpy2
import numpy as np

from .blaschke import NODE_SEPARATION, BlaschkeSpec
from .errors import NodeCollision, SingularSystem
from .numcore import Poly

# target[k][m] is the prescribed m-th derivative at the k-th zero
JetTarget = Sequence[Sequence[complex]]

WORK_BITS = 113
ZERO = gmpy2.mpc(0)
ONE = gmpy2.mpc(1)


def _check_target(spec: BlaschkeSpec, target: JetTarget) -> None:
    if len(target) != len(spec.points):
        raise ValueError(f"expected jets at {len(spec.points)} nodes, got {len(target)}")
    for k, (vals, (_, m)) in enumerate(zip(target, spec.points)):
        if len(vals) != m:
            raise ValueError(f"node {k} has multiplicity {m} but {len(vals)} jet values")


def _check_nodes(spec: BlaschkeSpec) -> None:
    zs = spec.zeros
    for i in range(len(zs)):
        for j in range(i):
            if abs(zs[i] - zs[j]) <= NODE_SEPARATION:
                raise NodeCollision(f"nodes {zs[j]} and {zs[i]} too close for interpolation")


def _mp(z: complex) -> gmpy2.mpc:
    return gmpy2.mpc(complex(z))


def _mul(a: list, b: list) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _linear_pow(a, m: int) -> list:
    """Coefficients of ``(z - a)**m``."""
    out = [ONE]
    for _ in range(m):
        out = _mul(out, [-a, ONE])
    return out


def _taylor(c: list, a, order: int) -> list:
    """Coefficients of ``c(a + t)`` through ``t**order``."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    c += [ZERO] * max(0, order + 1 - n)
    return c[: order + 1]


def _reciprocal(c: list, order: int) -> list:
    out = [1 / c[0]]
    for k in range(1, order + 1):
        acc = ZERO
        for j in range(1, min(k, len(c) - 1) + 1):
            acc += c[j] * out[k - j]
        out.append(-acc / c[0])
    return out


@lru_cache(maxsize=256)
def _basis_mp(spec: BlaschkeSpec) -> tuple[tuple[tuple, ...], ...]:
    _check_nodes(spec)
    with gmpy2.context(precision=WORK_BITS):
        nodes = [(_mp(a), m) for a, m in spec.points]
        basis = []
        for k, (ak, mk) in enumerate(nodes):
            pk = [ONE]
            for j, (aj, mj) in enumerate(nodes):
                if j != k:
                    pk = _mul(pk, _linear_pow(aj, mj))
            # Taylor coefficients q_k^(l)(a_k)/l! of 1/p_k at a_k
            qk = _reciprocal(_taylor(pk, ak, mk - 1), mk - 1)
            row = []
            for m in range(mk):
                tail = [ZERO] * (mk - m)
                for l in range(mk - m):
                    for i, c in enumerate(_linear_pow(ak, l)):
                        tail[i] += qk[l] * c
                P = _mul(_mul(pk, _linear_pow(ak, m)), tail)
                row.append(tuple(c / math.factorial(m) for c in P))
            basis.append(tuple(row))
    return tuple(basis)


def basis_polys(spec: BlaschkeSpec) -> list[list[Poly]]:
    """The Hermite basis rounded to double: ``P[k][m]`` has m-th derivative 1 at node k and zero jets elsewhere."""
    return [[Poly([complex(c) for c in P]) for P in row] for row in _basis_mp(spec)]


def hermite_interpolate(spec: BlaschkeSpec, target: JetTarget) -> Poly:
    """Polynomial of degree <= M-1 with ``p^(m)(a_k) = target[k][m]``."""
    _check_target(spec, target)
    basis = _basis_mp(spec)
    M = spec.degree
    with gmpy2.context(precision=WORK_BITS):
        acc = [ZERO] * M
        for row, vals in zip(basis, target):
            for P, alpha in zip(row, vals):
                if alpha == 0:
                    continue
                alpha = _mp(alpha)
                for j, c in enumerate(P):
                    acc[j] += alpha * c
        return Poly([complex(c) for c in acc])


def confluent_vandermonde(spec: BlaschkeSpec) -> np.ndarray:
    """Rows are the functionals ``p -> p^(m)(a_k)`` applied to the monomials ``1, z, ..., z**(M-1)``."""
    M = spec.degree
    rows = []
    for a, mk in spec.points:
        for m in range(mk):
            rows.append([math.perm(j, m) * a ** (j - m) if j >= m else 0.0 for j in range(M)])
    return np.array(rows, dtype=complex)


def _lu_solve(A: list[list], b: list) -> list:
    """Gaussian elimination with partial pivoting on lists of multiprecision numbers."""
    n = len(A)
    A = [row[:] for row in A]
    b = b[:]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(A[r][col]))
        if A[piv][col] == 0:
            raise SingularSystem("confluent Vandermonde matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        b[col], b[piv] = b[piv], b[col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f != 0:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
                b[r] -= f * b[col]
    x = [ZERO] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc -= A[r][c] * x[c]
        x[r] = acc / A[r][r]
    return x


def hermite_oracle(spec: BlaschkeSpec, target: JetTarget, bits: int = WORK_BITS) -> Poly:
    """Reference interpolant: LU solve with partial pivoting of the confluent Vandermonde system.

    Solved with ``bits`` of precision; in double precision the system loses up
    to seven digits on clustered nodes.
    """
    _check_target(spec, target)
    _check_nodes(spec)
    M = spec.degree
    with gmpy2.context(precision=bits):
        rows = []
        for a, mk in spec.points:
            a = _mp(a)
            for m in range(mk):
                rows.append([math.perm(j, m) * a ** (j - m) if j >= m else ZERO for j in range(M)])
        rhs = [_mp(v) for vals in target for v in vals]
        x = _lu_solve(rows, rhs)
        return Poly([complex(c) for c in x])
