"""Finite Blaschke products and membership in the algebra C + B*H^inf.

For a finite product with zeros ``a_k`` of multiplicity ``m_k`` a function
belongs to the algebra iff it takes the same value at every ``a_k`` and its
derivatives of order ``1..m_k-1`` vanish at ``a_k``.  Equivalently it is
``c + B*h`` with ``h`` holomorphic on the disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, NodeCollision, NotAMember
from .numcore import DISK_TOL, MIN_SAMPLES, NonvanishingCert, Poly, RationalFn, jet

NODE_SEPARATION = 1e-6


@dataclass(frozen=True)
class BlaschkeSpec:
    """Zeros and multiplicities of a finite Blaschke product.

    ``points[0]`` is the base point whose value fixes the constant part of
    every algebra member, so the order of ``points`` matters.
    """

    points: tuple[tuple[complex, int], ...]

    def __post_init__(self):
        pts = tuple((complex(a), int(m)) for a, m in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("a Blaschke product needs at least one zero")
        for a, m in pts:
            if not np.isfinite(a) or abs(a) >= 1:
                raise ValueError(f"zero {a} is not inside the open unit disk")
            if m < 1:
                raise ValueError(f"multiplicity {m} must be positive")
        for i in range(len(pts)):
            for j in range(i):
                if abs(pts[i][0] - pts[j][0]) <= NODE_SEPARATION:
                    raise NodeCollision(
                        f"zeros {pts[j][0]} and {pts[i][0]} closer than {NODE_SEPARATION}; "
                        "merge them into one zero of higher multiplicity")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[complex, int]]) -> BlaschkeSpec:
        return cls(tuple(pairs))

    @property
    def zeros(self) -> list[complex]:
        return [a for a, _ in self.points]

    @property
    def mults(self) -> list[int]:
        return [m for _, m in self.points]

    @property
    def degree(self) -> int:
        return sum(self.mults)

    @property
    def base_point(self) -> complex:
        return self.points[0][0]

    def zero_poly(self) -> Poly:
        """``prod (z - a_k)**m_k``."""
        p = Poly([1.0])
        for a, m in self.points:
            p = p * Poly([-a, 1.0]) ** m
        return p


def _unimodular_factor(a: complex) -> complex:
    return -1.0 + 0j if a == 0 else abs(a) / a


def build_blaschke(spec: BlaschkeSpec) -> RationalFn:
    """``B(z) = prod ((|a|/a) (a - z)/(1 - conj(a) z))**m`` with the factor -1 at ``a = 0``.

    The denominator is stored monic, ``prod (z - 1/conj(a))**m``, and the
    numerator as a unimodular constant times its conjugate reverse, so the
    two agree in modulus on the circle coefficient by coefficient.
    """
    den = np.ones(1, dtype=np.clongdouble)
    gamma = np.clongdouble(1.0)
    shift = 0
    cert = NonvanishingCert(1.0, MIN_SAMPLES, 0.0)
    for a, m in spec.points:
        if a == 0:
            shift += m
            continue
        root = 1 / np.conj(np.clongdouble(a))
        for _ in range(m):
            den = np.convolve(den, np.array([-root, 1], dtype=np.clongdouble))
        gamma *= (-np.clongdouble(a) / abs(a)) ** m
        # |z - 1/conj(a)| >= (1 - |a|)/|a| on the closed disk
        cert = cert * NonvanishingCert((1.0 - abs(a)) / abs(a), MIN_SAMPLES, 0.0) ** m
    den = den.astype(complex)
    num = np.concatenate([np.zeros(shift, dtype=complex), complex(gamma) * np.conj(den[::-1])])
    return BlaschkeProduct(spec, Poly(num), Poly(den), cert)


class BlaschkeProduct(RationalFn):
    """A :class:`RationalFn` that evaluates factor by factor.

    The expanded coefficients lose unimodularity to cancellation when zeros
    sit near the circle; the product form keeps ``|B| = 1`` there to a few
    ulps.  Arithmetic falls back to plain :class:`RationalFn`.
    """

    __slots__ = ("spec",)

    def __init__(self, spec: BlaschkeSpec, num: Poly, den: Poly, cert: NonvanishingCert):
        super().__init__(num, den, cert)
        self.spec = spec

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1 + DISK_TOL):
            raise DomainError("evaluation outside the closed unit disk")
        out = np.ones(z.shape, dtype=complex)
        for a, m in self.spec.points:
            u = _unimodular_factor(a)
            out = out * (u * (a - z) / (1 - np.conj(a) * z)) ** m
        return out if out.ndim else complex(out)


def blaschke_scale(spec: BlaschkeSpec) -> complex:
    """The constant ``beta`` with ``B = beta * zero_poly / prod (1 - conj(a) z)**m``."""
    beta = 1.0 + 0j
    for a, m in spec.points:
        beta *= (-_unimodular_factor(a)) ** m
    return beta


@dataclass(frozen=True)
class MembershipReport:
    base_value: complex
    a1_defect: float
    jet_defect: float

    @property
    def defect(self) -> float:
        return max(self.a1_defect, self.jet_defect)

    def passes(self, tol: float) -> bool:
        return self.defect <= tol


def check_membership(f: RationalFn, spec: BlaschkeSpec) -> MembershipReport:
    """Measure how far ``f`` is from satisfying the equal-value and vanishing-jet constraints.

    Values are compared against the base point only; the caller applies the
    tolerance.
    """
    c = f(spec.base_point)
    a1 = 0.0
    jd = 0.0
    for a, m in spec.points:
        j = jet(f, a, m - 1)
        a1 = max(a1, abs(j[0] - c))
        if m > 1:
            jd = max(jd, float(np.abs(j[1:]).max()))
    return MembershipReport(complex(c), float(a1), float(jd))


def decompose(f: RationalFn, spec: BlaschkeSpec, tol: float = 1e-8) -> tuple[complex, RationalFn]:
    """Split a member as ``f = c + B*h``; raises :class:`NotAMember` if the division is inexact."""
    c = complex(f(spec.base_point))
    top = f.num - c * f.den
    q, r = divmod(top, spec.zero_poly())
    scale = max(1.0, top.max_coeff())
    if r.max_coeff() > tol * scale:
        raise NotAMember(f"remainder {r.max_coeff():.3e} after division by the zero polynomial")
    # B's denominator factors usually reappear in f.den; cancel them instead of squaring them
    outer = Poly([1.0])
    den, shrink = f.den, 1.0
    for a, m in spec.points:
        for _ in range(m):
            reduced = _deflate(den, np.conj(a)) if a != 0 else None
            if reduced is None:
                outer = outer * Poly([1.0, -np.conj(a)])
            else:
                den = reduced
                shrink *= 1.0 + abs(a)
    cert = None if f.cert is None else f.cert.scaled(1.0 / shrink)
    h = RationalFn(q * outer / blaschke_scale(spec), den, cert)
    return c, h


def _deflate(p: Poly, abar: complex, tol: float = 1e-12) -> Poly | None:
    """Exact quotient of ``p`` by ``1 - abar z``, or None if it does not divide.

    Division runs upward in powers of ``z`` against ``1 - abar z``, which is
    stable because ``|abar| < 1``.
    """
    c = p.coeffs
    if c.size < 2:
        return None
    quo = np.empty(c.size - 1, dtype=complex)
    acc = 0j
    for k in range(c.size - 1):
        acc = c[k] + abar * acc
        quo[k] = acc
    rem = c[-1] + abar * acc
    if abs(rem) > tol * np.abs(c).max():
        return None
    return Poly(quo)


def recompose(c: complex, h: RationalFn, spec: BlaschkeSpec) -> RationalFn:
    return build_blaschke(spec) * h + c
