"""Stable-rank-one reductions for unimodular pairs.

Given ``(f, g)`` with ``f x + g y = 1`` in the algebra, find ``h`` in the
algebra such that ``f + h g`` is invertible there.  If ``f`` vanishes at the
base zero the pair is first replaced by ``(f + g, g)``, which is unimodular
with witness ``(x, y - x)``, and the answer is shifted by one.  Otherwise a
bounded search over ``h = c0 + B q`` runs, and every candidate must earn a
certificate before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .blaschke import BlaschkeSpec, MembershipReport, build_blaschke, check_membership
from .errors import CertificationFailure, DomainError, NotAMember, Rejection, SearchExhausted
from .numcore import NonvanishingCert, Poly, RationalFn, certify_nonvanishing, circle_points, winding_number
from .verify import DEFAULT_GRID, GridConfig, residual, sup_norm

MEMBER_TOL = 1e-8
BASE_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class UnimodularPair:
    f: RationalFn
    g: RationalFn
    spec: BlaschkeSpec
    witness: tuple[RationalFn, RationalFn] | None = None
    tol: float = MEMBER_TOL

    def __post_init__(self):
        for name, fn in (("f", self.f), ("g", self.g)):
            rep = check_membership(fn, self.spec)
            if not rep.passes(self.tol):
                raise NotAMember(f"{name} violates the algebra constraints (defect {rep.defect:.3e})")
        if self.witness is not None:
            x, y = self.witness
            r = residual([self.f, self.g], [x, y])
            if r > self.tol:
                raise DomainError(f"witness residual {r:.3e} exceeds {self.tol:.1e}")

    def shifted(self) -> UnimodularPair:
        """``(f + g, g)`` with witness ``(x, y - x)``."""
        w = None
        if self.witness is not None:
            x, y = self.witness
            w = (x, y - x)
        return UnimodularPair(self.f + self.g, self.g, self.spec, w, self.tol)


@dataclass(frozen=True)
class SearchBudget:
    max_degree: int = 8
    phases: int = 64
    magnitudes: int = 16
    c_max: float = 2.0
    starts: int = 4
    max_evals: int = 1500
    seed: int = 0


@dataclass
class ReductionCert:
    h: RationalFn
    inverse_margin: float
    membership_h: MembershipReport
    membership_sum: MembershipReport
    cert: NonvanishingCert
    path: list[str] = field(default_factory=list)


def _as_fn(h) -> RationalFn:
    if isinstance(h, RationalFn):
        return h
    if isinstance(h, Poly):
        return RationalFn(h)
    return RationalFn.const(complex(h))


def verify_reduction(pair: UnimodularPair, h, tol: float | None = None) -> ReductionCert:
    """Check that ``f + h g`` is invertible in the algebra; raise :class:`Rejection` otherwise.

    ``inverse_margin`` is ``min |f + h g|`` over the closed disk, read off the
    boundary as ``1 / sup |1/(f + h g)|``.
    """
    tol = pair.tol if tol is None else tol
    h = _as_fn(h)
    mh = check_membership(h, pair.spec)
    if not mh.passes(tol):
        raise Rejection("membership", f"h has defect {mh.defect:.3e}")
    s = pair.f + h * pair.g
    ms = check_membership(s, pair.spec)
    if not ms.passes(tol):
        raise Rejection("sum-membership", f"f + h g has defect {ms.defect:.3e}")
    try:
        cert = certify_nonvanishing(s.num)
    except CertificationFailure as exc:
        raise Rejection("nonvanishing", exc.reason) from exc
    inverse = RationalFn(s.den, s.num, cert)
    margin = 1.0 / sup_norm(inverse)
    return ReductionCert(h, margin, mh, ms, cert)


class _Objective:
    """Search objective for ``h = c0 + B q``: relative boundary min modulus of ``f + h g``.

    ``f + h g`` is written over a common denominator as ``(F + c0 G + B' q G') / Q``
    so its zeros are the roots of one polynomial.  While some root lies in the
    closed disk the score is minus the total depth of those roots, which gives
    the optimiser a slope towards zero-free candidates.
    """

    def __init__(self, pair: UnimodularPair, B: RationalFn, samples: int):
        from .solver import common_denominator

        _, (self.F, self.G, self.BG) = common_denominator([pair.f, pair.g, B * pair.g])
        self.z = circle_points(samples)

    def numerator(self, c0: complex, q: np.ndarray) -> np.ndarray:
        F, G = self.F.coeffs, self.G.coeffs
        out = np.zeros(max(F.size, G.size, self.BG.coeffs.size + q.size), dtype=complex)
        out[:F.size] += F
        out[:G.size] += c0 * G
        if q.size:
            bq = np.convolve(self.BG.coeffs, q)
            out[:bq.size] += bq
        return out

    def score(self, c0: complex, q: np.ndarray) -> float:
        p = np.trim_zeros(self.numerator(c0, q), "b")
        if p.size < 2:
            return float(abs(p[0])) if p.size else 0.0
        roots = np.roots(p[::-1])
        depth = 1.0 - np.abs(roots)
        inside = depth > -1e-9
        if inside.any():
            return -float(np.sum(depth[inside] + 1e-3))
        # samples miss roots parked just outside the circle; probe their radial projections
        near = roots[depth > -0.1]
        probes = np.concatenate([self.z, near / np.abs(near)])
        mods = np.abs(np.polyval(p[::-1], probes))
        # relative margin: blowing up q must not look like progress
        return float(mods.min() / mods.max())

    def margin(self, c0: complex, q: np.ndarray) -> float:
        return max(self.score(c0, q), 0.0)


def _unpack(x: np.ndarray) -> tuple[complex, np.ndarray]:
    c = x[0::2] + 1j * x[1::2]
    return complex(c[0]), c[1:]


def _candidate(c0: complex, q: np.ndarray, B: RationalFn) -> RationalFn:
    h = RationalFn.const(c0)
    if q.size and np.any(q != 0):
        h = h + B * Poly(q)
    return h


def _search(pair: UnimodularPair, budget: SearchBudget, cfg: GridConfig) -> ReductionCert:
    B = build_blaschke(pair.spec)
    obj = _Objective(pair, B, cfg.boundary_samples)
    best_margin = 0.0

    def attempt(stage: str, scored: list[tuple[float, complex, np.ndarray]]):
        # highest margin first; ties keep enumeration order
        nonlocal best_margin
        for m, c0, q in sorted(scored, key=lambda t: -t[0]):
            if m <= 0:
                break
            best_margin = max(best_margin, m)
            try:
                rc = verify_reduction(pair, _candidate(c0, q, B))
            except Rejection:
                continue
            rc.path.append(stage)
            return rc
        return None

    empty = np.zeros(0, dtype=complex)
    rc = attempt("zero", [(obj.margin(0j, empty), 0j, empty)])
    if rc is not None:
        return rc

    grid = []
    for i in range(1, budget.magnitudes + 1):
        r = budget.c_max * i / budget.magnitudes
        for k in range(budget.phases):
            c = r * complex(math.cos(2 * math.pi * k / budget.phases), math.sin(2 * math.pi * k / budget.phases))
            grid.append((obj.margin(c, empty), c, empty))
    rc = attempt("constant", grid)
    if rc is not None:
        return rc
    c_best = max(grid, key=lambda t: t[0])[1]

    sampler = qmc.Sobol(d=2 * (budget.max_degree + 2), scramble=True, seed=budget.seed)
    starts = 2 * sampler.random(budget.starts) - 1
    for deg in range(budget.max_degree + 1):
        dim = 2 * (deg + 2)
        for s in range(budget.starts):
            x0 = np.zeros(dim)
            x0[0], x0[1] = c_best.real, c_best.imag
            if s:
                x0 = x0 + starts[s, :dim]
            res = minimize(lambda x: -obj.score(*_unpack(x)), x0, method="Nelder-Mead",
                           options={"maxfev": budget.max_evals, "xatol": 1e-8, "fatol": 1e-10})
            c0, q = _unpack(res.x)
            rc = attempt(f"degree-{deg}", [(obj.margin(c0, q), c0, q)])
            if rc is not None:
                return rc
    raise SearchExhausted(best_margin)


def reduce_pair(pair: UnimodularPair, budget: SearchBudget = SearchBudget(),
                cfg: GridConfig = DEFAULT_GRID) -> ReductionCert:
    """Certified ``h`` with ``f + h g`` invertible, or :class:`SearchExhausted`."""
    a = pair.f(pair.spec.base_point)
    if abs(a) <= BASE_ZERO_TOL:
        if abs(pair.g(pair.spec.base_point)) <= BASE_ZERO_TOL:
            raise DomainError("f and g both vanish at the zeros of B; the pair is not unimodular")
        inner = reduce_pair(pair.shifted(), budget, cfg)
        rc = verify_reduction(pair, inner.h + 1.0)
        rc.path = ["shift"] + inner.path
        return rc
    return _search(pair, budget, cfg)
