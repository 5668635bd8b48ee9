"""Bezout solvers for corona data in C + B*H^inf.

``bezout_unconstrained`` plays the role of the unconstrained corona solution
(rational data, extended Euclid).  ``constrained_solve`` corrects it into the
algebra with a skew matrix of Hermite interpolants; ``ideal_solve`` uses the
constant-plus-ideal splitting instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .blaschke import BlaschkeSpec, MembershipReport, check_membership, decompose
from .errors import (AllConstantsZero, CertificationFailure, IllConditioned, NoSolution, NotAMember,
                     OrthogonalityViolated)
from .interp import hermite_interpolate
from .numcore import Poly, RationalFn, certify_nonvanishing, circle_points, jet, poly_ext_gcd
from .skew import SkewMatrix, bilinear, skew_solve
from .verify import DEFAULT_GRID, GridConfig, corona_delta, residual, sup_norm, sup_sum

MEMBER_TOL = 1e-8
ORTHO_TOL = 1e-8
NEAR_ZERO_TOL = 1e-7
BEZOUT_TOL = 1e-8


@dataclass(frozen=True)
class CoronaInstance:
    f: tuple[RationalFn, ...]
    spec: BlaschkeSpec
    delta_claimed: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if not self.f:
            raise ValueError("corona data need at least one function")

    @property
    def n(self) -> int:
        return len(self.f)

    def check(self, tol: float = MEMBER_TOL) -> list[MembershipReport]:
        reports = [check_membership(fk, self.spec) for fk in self.f]
        for k, r in enumerate(reports):
            if not r.passes(tol):
                raise NotAMember(f"f[{k}] violates the algebra constraints (defect {r.defect:.3e})")
        return reports


@dataclass
class SolveReport:
    g: list[RationalFn]
    residual: float
    membership_defects: list[MembershipReport]
    g_norms: list[float]
    correction_norm: float
    delta_measured: float
    sup_sum_f: float = float("nan")
    solver_path: str = "constrained"
    g0: list[RationalFn] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def max_membership_defect(self) -> float:
        return max(r.defect for r in self.membership_defects)


def _distinct_denominators(fs: Sequence[RationalFn]) -> tuple[list[Poly], list[int]]:
    dens: list[Poly] = []
    which: list[int] = []
    for f in fs:
        for i, d in enumerate(dens):
            if d.coeffs.shape == f.den.coeffs.shape and np.all(d.coeffs == f.den.coeffs):
                which.append(i)
                break
        else:
            dens.append(f.den)
            which.append(len(dens) - 1)
    return dens, which


def common_denominator(fs: Sequence[RationalFn]) -> tuple[Poly, list[Poly]]:
    """``Q`` (product of the distinct denominators) and numerators ``P_k`` with ``f_k = P_k / Q``."""
    dens, which = _distinct_denominators(fs)
    Q = Poly([1.0])
    for d in dens:
        Q = Q * d
    lifted = []
    for fk, i in zip(fs, which):
        others = Poly([1.0])
        for j, d in enumerate(dens):
            if j != i:
                others = others * d
        lifted.append(fk.num * others)
    return Q, lifted


def _sylvester(ps: Sequence[Poly], L: int) -> np.ndarray:
    """Columns ``z**s p_k`` (s = 0..L) in coefficient space, grouped by k."""
    rows = L + max(p.degree for p in ps) + 1
    cols = []
    for p in ps:
        for s in range(L + 1):
            c = np.zeros(rows, dtype=complex)
            c[s:s + p.coeffs.size] = p.coeffs
            cols.append(c)
    return np.array(cols).T


def _small_cofactors(ps: Sequence[Poly], weight: Poly, L: int,
                     samples: int = 512) -> list[Poly] | None:
    """Cofactors ``u`` of degree <= L with ``sum u_k p_k = 1`` and small ``||u_k weight||_2`` on the circle.

    Particular solution by least squares, then the boundary norm is minimised
    over the null space of the Sylvester map.  ``None`` if the system is
    inconsistent at this degree.
    """
    n = len(ps)
    S = _sylvester(ps, L)
    rhs = np.zeros(S.shape[0], dtype=complex)
    rhs[0] = 1.0
    xp, *_ = np.linalg.lstsq(S, rhs, rcond=None)
    if np.abs(S @ xp - rhs).max() > 1e-10:
        return None
    N = null_space(S)
    if N.shape[1]:
        z = circle_points(samples)
        V = np.vander(z, L + 1, increasing=True) * weight(z)[:, None]
        W = np.kron(np.eye(n), V)
        y, *_ = np.linalg.lstsq(W @ N, -(W @ xp), rcond=None)
        xp = xp + N @ y
    return [Poly(xp[k * (L + 1):(k + 1) * (L + 1)]) for k in range(n)]


def _near_common_zero(ps: Sequence[Poly], tol: float = NEAR_ZERO_TOL) -> complex | None:
    """A root in the closed disk of the lowest-degree ``p`` at which every ``p`` is tiny, if any.

    Values are measured relative to ``sum |c_j| |z|^j``, the size Horner's
    rounding error scales with.
    """
    live = [p for p in ps if not p.is_zero]
    base = min(live, key=lambda p: p.degree)
    if base.degree < 1:
        return None
    for r in np.roots(base.coeffs[::-1]):
        if abs(r) > 1 + 1e-9:
            continue
        rel = 0.0
        for p in live:
            size = Poly(np.abs(p.coeffs))(abs(r)).real
            if size > 0:
                rel = max(rel, abs(p(r)) / size)
        if rel <= tol:
            return complex(r)
    return None


def bezout_unconstrained(f: Sequence[RationalFn]) -> list[RationalFn]:
    """Rational ``g0`` with ``sum g0_k f_k = 1``, holomorphic on the closed disk.

    Clears a common denominator ``Q`` (the product of the distinct
    denominators) and runs extended Euclid on the numerators; their gcd ``d``
    must be certified zero-free on the closed disk.  Euclid cofactors can be
    huge when the data nearly share a zero, so a minimum-norm solution of the
    same identity is preferred whenever it at least halves the sup norm.
    """
    if not f:
        raise ValueError("need at least one function")
    Q, lifted = common_denominator(f)
    if all(p.is_zero for p in lifted):
        raise NoSolution("all functions vanish identically")
    # Euclid alone misreads a shared zero as a roundoff-sized remainder, so test for one first
    r = _near_common_zero(lifted)
    if r is not None:
        raise NoSolution(f"numerators share a zero near {r:.6g} in the closed disk")
    d, us = poly_ext_gcd(lifted)
    try:
        cert = certify_nonvanishing(d)
    except CertificationFailure as exc:
        raise NoSolution(f"common factor of degree {d.degree} vanishes in the closed disk "
                         f"({exc.reason})") from exc
    g0 = [RationalFn(u * Q, d, cert) for u in us]
    best = g0 if len(f) < 2 else _prefer_small(f, g0, [p // d for p in lifted], RationalFn(Q, d, cert))
    r = residual(f, best)
    if r > BEZOUT_TOL:
        raise IllConditioned(f"Bezout cofactors leave residual {r:.3e}")
    return best


def _prefer_small(f, g0, reduced, weight) -> list[RationalFn]:
    D = max(p.degree for p in reduced)
    alt = _small_cofactors(reduced, weight, max(3 * D, 1))
    if alt is None:
        return g0
    g1 = [RationalFn(u * weight.num, weight.den, weight.cert) for u in alt]
    if residual(f, g1) > 1e-11:
        return g0
    z = circle_points(512)
    norm0 = max(float(np.abs(g(z)).max()) for g in g0)
    norm1 = max(float(np.abs(g(z)).max()) for g in g1)
    return g1 if 2 * norm1 <= norm0 else g0


def _vec(fs: Sequence[RationalFn], a: complex, order: int) -> np.ndarray:
    """Rows m = 0..order of the jets of each function at ``a``: shape (order+1, n)."""
    return np.array([jet(fk, a, order) for fk in fs]).T


def correction_matrices(f: Sequence[RationalFn], g0: Sequence[RationalFn],
                        spec: BlaschkeSpec, ortho_tol: float = ORTHO_TOL) -> list[list[SkewMatrix]]:
    """Skew matrices ``A[k][m]`` prescribing the m-th derivative of the correction at ``a_k``.

    ``A[0][0] = 0``; for ``k >= 1``, ``A[k][0] f(a_1) = g0(a_1) - g0(a_k)``; for
    ``m >= 1``, ``A[k][m] f(a_k) = -g0^(m)(a_k)``.  The right-hand sides are
    orthogonal to ``f`` because ``g0 . f = 1`` and ``f`` satisfies the
    constraints.
    """
    n = len(f)
    a1 = spec.base_point
    f_a1 = _vec(f, a1, 0)[0]
    g0_a1 = _vec(g0, a1, 0)[0]
    out = []
    for k, (ak, mk) in enumerate(spec.points):
        fj = _vec(f, ak, 0)[0]
        gj = _vec(g0, ak, mk - 1)
        row = []
        for m in range(mk):
            if m == 0:
                if k == 0:
                    row.append(SkewMatrix.zeros(n))
                    continue
                x, y = f_a1, g0_a1 - gj[0]
            else:
                x, y = fj, -gj[m]
            # y carries roundoff on the scale of the g0 jets, which can dwarf y itself
            scale = max(np.linalg.norm(y), float(np.abs(gj).max()), float(np.abs(g0_a1).max()))
            pairing = abs(bilinear(x, y))
            if pairing > ortho_tol * np.linalg.norm(x) * scale:
                raise OrthogonalityViolated(f"node {k}, order {m}: |x^T y| = {pairing:.3e}")
            A = skew_solve(x, y, ortho_tol=np.inf)
            if m == 0:
                A = A + out[0][0]
            row.append(A)
        out.append(row)
    return out


def correction_entries(A: list[list[SkewMatrix]], spec: BlaschkeSpec) -> dict[tuple[int, int], Poly]:
    """Interpolate every strict upper-triangle entry of the prescribed skew jets."""
    n = A[0][0].n
    H = {}
    for i in range(n):
        for j in range(i + 1, n):
            target = [[A[k][m][i, j] for m in range(len(A[k]))] for k in range(len(A))]
            H[(i, j)] = hermite_interpolate(spec, target)
    return H


def apply_correction(g0: Sequence[RationalFn], H: dict[tuple[int, int], Poly],
                     f: Sequence[RationalFn]) -> list[RationalFn]:
    """``g = g0 + H f`` for skew ``H`` given by its strict upper triangle."""
    g = list(g0)
    for (i, j), h in H.items():
        if h.is_zero:
            continue
        g[i] = g[i] + f[j] * h
        g[j] = g[j] - f[i] * h
    return g


def _report(inst: CoronaInstance, g: list[RationalFn], cfg: GridConfig, path: str,
            correction_norm: float, g0: list[RationalFn]) -> SolveReport:
    return SolveReport(
        g=g,
        residual=residual(inst.f, g, cfg),
        membership_defects=[check_membership(gk, inst.spec) for gk in g],
        g_norms=[sup_norm(gk, cfg) for gk in g],
        correction_norm=correction_norm,
        delta_measured=corona_delta(inst.f, cfg),
        sup_sum_f=sup_sum(inst.f, cfg),
        solver_path=path,
        g0=list(g0),
    )


def constrained_solve(inst: CoronaInstance, cfg: GridConfig = DEFAULT_GRID,
                      member_tol: float = MEMBER_TOL, ortho_tol: float = ORTHO_TOL) -> SolveReport:
    """Bezout solution inside the algebra: ``g = g0 + H f`` with ``H`` skew and polynomial."""
    inst.check(member_tol)
    g0 = bezout_unconstrained(inst.f)
    A = correction_matrices(inst.f, g0, inst.spec, ortho_tol)
    H = correction_entries(A, inst.spec)
    g = apply_correction(g0, H, inst.f)
    cnorm = max((sup_norm(RationalFn(h), cfg) for h in H.values()), default=0.0)
    rep = _report(inst, g, cfg, "constrained", cnorm, g0)
    rep.extras["H"] = H
    rep.extras["A"] = A
    return rep


def ideal_solve(inst: CoronaInstance, cfg: GridConfig = DEFAULT_GRID,
                member_tol: float = MEMBER_TOL, tol: float = 1e-12) -> SolveReport:
    """Bezout solution from the splitting ``f_k = c_k + phi_k`` with ``phi_k`` in ``B H^inf``.

    With ``|c_1|`` maximal and ``g~`` any unconstrained solution,
    ``g_1 = (1 - g~_1 phi_1)/c_1`` and ``g_k = -g~_k phi_1 / c_1`` for ``k >= 2``.
    """
    inst.check(member_tol)
    n = inst.n
    parts = [decompose(fk, inst.spec, tol=member_tol) for fk in inst.f]
    c = np.array([p[0] for p in parts])
    if np.all(np.abs(c) < tol):
        raise AllConstantsZero("every f_k vanishes at the zeros of B; the corona condition fails")
    lead = int(np.argmax(np.abs(c)))
    c1 = complex(c[lead])
    phi = inst.f[lead] - c1
    gt = bezout_unconstrained(inst.f)
    g = []
    for k in range(n):
        gk = -(gt[k] * phi) / c1
        if k == lead:
            gk = gk + 1.0 / c1
        g.append(gk)
    rep = _report(inst, g, cfg, "ideal", sup_norm(phi, cfg), gt)
    delta = rep.delta_measured
    gt_norm = max(sup_norm(gk, cfg) for gk in gt)
    bound = n / delta + (2 * n / delta) * gt_norm if delta > 0 else float("inf")
    rep.extras.update(lead_index=lead, constants=c.tolist(), gtilde_norm=gt_norm,
                      norm_bound=bound, bound_holds=bool(max(rep.g_norms) <= bound))
    return rep
