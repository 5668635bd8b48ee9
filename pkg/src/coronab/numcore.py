"""Complex polynomials and rational functions holomorphic on the closed unit disk.

Polynomials are dense, ascending coefficient arrays (``coeffs[j]`` multiplies
``z**j``).  A :class:`RationalFn` carries a certificate that its denominator has
no zero on the closed disk, so every value it takes there is finite and the
maximum principle applies to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CertificationFailure, DomainError, IllConditioned

# relative size below which a leading coefficient is treated as roundoff
TRIM_RTOL = 1e-15
# evaluation beyond this radius voids the denominator certificate
DISK_TOL = 1e-12
EUCLID_EPS = 1e-10
MIN_SAMPLES = 64
MAX_SAMPLES = 1 << 16


def _trim(c: np.ndarray) -> np.ndarray:
    mags = np.abs(c)
    big = mags.max() if c.size else 0.0
    if big == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(mags > TRIM_RTOL * big)[0]
    return c[: keep[-1] + 1]


_REFINE_RATIO = 1e-3


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, coeffs[-1], dtype=coeffs.dtype)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out.astype(complex)


class Poly:
    """Dense polynomial with complex coefficients in ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] | complex | np.ndarray):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel().copy()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise DomainError("non-finite polynomial coefficient")
        c = _trim(c)
        c.setflags(write=False)
        self.coeffs = c

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: complex) -> Poly:
        return cls([c])

    @classmethod
    def z(cls) -> Poly:
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> Poly:
        p = cls([1.0])
        for r in roots:
            p = p * cls([-r, 1.0])
        return p

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def lead(self) -> complex:
        return complex(self.coeffs[-1])

    def monic(self) -> Poly:
        if self.is_zero:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return Poly(self.coeffs / self.coeffs[-1])

    def max_coeff(self) -> float:
        return float(np.abs(self.coeffs).max())

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(self.coeffs / complex(scalar))

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        out = Poly([1.0])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        num = np.array(self.coeffs, dtype=complex)
        den = other.coeffs
        dn = len(den) - 1
        if len(num) - 1 < dn:
            return Poly([0.0]), Poly(num)
        q = np.zeros(len(num) - dn, dtype=complex)
        lead = den[-1]
        for i in range(len(num) - 1, dn - 1, -1):
            c = num[i] / lead
            q[i - dn] = c
            num[i - dn : i + 1] -= c * den
            num[i] = 0.0
        return Poly(q), Poly(num[:dn] if dn > 0 else [0.0])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    # -- calculus and evaluation ---------------------------------------------
    def deriv(self, order: int = 1) -> Poly:
        c = self.coeffs
        for _ in range(order):
            if len(c) == 1:
                return Poly([0.0])
            c = c[1:] * np.arange(1, len(c))
        return Poly(c)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = _horner(self.coeffs, z)
        # Horner's error is about eps * sum |c_k| |z|^k; redo cancelling points in extended precision
        scale = np.abs(self.coeffs).sum() * np.maximum(1.0, np.abs(z)) ** max(self.degree, 0)
        bad = np.abs(out) < _REFINE_RATIO * scale
        if np.any(bad):
            out = np.array(out)
            out[bad] = _horner(self.coeffs.astype(np.clongdouble), z[bad].astype(np.clongdouble))
        return out if out.ndim else complex(out)

    def taylor(self, a: complex, order: int | None = None) -> np.ndarray:
        """Coefficients of ``p(a + t)`` in powers of ``t`` (repeated synthetic division)."""
        c = np.array(self.coeffs, dtype=complex)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        if order is not None:
            c = np.concatenate([c, np.zeros(max(0, order + 1 - n), dtype=complex)])[: order + 1]
        return c

    def allclose(self, other: Poly | Sequence[complex], atol: float = 1e-12) -> bool:
        if not isinstance(other, Poly):
            other = Poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return bool(np.all(np.abs(a - b) <= atol))

    def __repr__(self):
        return f"Poly({np.array2string(self.coeffs, precision=6, separator=', ')})"


def series_reciprocal(c: np.ndarray, order: int) -> np.ndarray:
    """Truncated power series of ``1/c(t)`` through ``t**order``; requires ``c[0] != 0``."""
    c = np.asarray(c, dtype=complex)
    if c[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0 / c[0]
    for k in range(1, order + 1):
        m = min(k, len(c) - 1)
        acc = np.dot(c[1 : m + 1], out[k - m : k][::-1]) if m > 0 else 0.0
        out[k] = -acc / c[0]
    return out


def series_divide(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    inv = series_reciprocal(den, order)
    return np.convolve(np.asarray(num, dtype=complex)[: order + 1], inv)[: order + 1]


# --------------------------------------------------------------------------
# nonvanishing certificates


@dataclass(frozen=True)
class NonvanishingCert:
    """Evidence that a polynomial has no zero on the closed unit disk.

    ``margin`` is the minimum modulus over ``samples`` equispaced points of the
    unit circle and ``lipschitz_bound`` bounds the derivative along the circle,
    so between samples the modulus cannot fall by more than ``slack``.
    """

    margin: float
    samples: int
    lipschitz_bound: float

    @property
    def slack(self) -> float:
        return self.lipschitz_bound * math.pi / self.samples

    @property
    def lower_bound(self) -> float:
        return self.margin - self.slack

    def __mul__(self, other: NonvanishingCert) -> NonvanishingCert:
        # |pq| >= lower(p) lower(q) everywhere on the circle; no slack left to carry
        return NonvanishingCert(self.lower_bound * other.lower_bound,
                                max(self.samples, other.samples), 0.0)

    def scaled(self, s: float) -> NonvanishingCert:
        """Certificate for ``s * p`` given one for ``p``."""
        return NonvanishingCert(self.margin * s, self.samples, self.lipschitz_bound * s)

    def __pow__(self, k: int) -> NonvanishingCert:
        out = _UNIT_CERT
        for _ in range(k):
            out = out * self
        return out


def circle_points(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def winding_number(values: np.ndarray) -> tuple[int, float]:
    """Winding number of a closed sampled curve about 0 and its largest argument step."""
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(steps.sum() / (2 * np.pi))), float(np.abs(steps).max())


def certify_nonvanishing(p: Poly, samples: int = MIN_SAMPLES,
                         max_samples: int = MAX_SAMPLES) -> NonvanishingCert:
    """Certify that ``p`` has no zero on the closed unit disk.

    On the arc of half-width ``h = pi/n`` around each sample,
    ``|p| >= |p_i| - |p'_i| h - L2 h**2 / 2`` where ``L2`` bounds the second
    angular derivative (the smaller of ``sum j**2 |c_j|`` and the Bernstein
    bound ``deg**2 max|p|``).  The grid is refined until every arc keeps at
    least half its sampled modulus and every argument step is below pi/2; the
    winding number must then vanish.  The stored ``lipschitz_bound`` is the
    effective one, so ``lower_bound`` is the certified minimum on the circle.
    Raises :class:`CertificationFailure`.
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_SAMPLES}")
    if p.is_zero:
        raise CertificationFailure("zero polynomial")
    c = p.coeffs
    if p.degree == 0:
        return NonvanishingCert(float(abs(c[0])), samples, 0.0)
    d = p.degree
    j = np.arange(len(c))
    absc = np.abs(c)
    dp = p.deriv()
    floor = 1e-13 * float(absc.sum())
    n = samples
    while True:
        z = circle_points(n)
        vals = p(z)
        mods = np.abs(vals)
        m = float(mods.min())
        if m <= floor:
            raise CertificationFailure("boundary zero", margin=m)
        top = float(absc.sum())
        if n > 2 * math.pi * d:
            top = min(top, float(mods.max()) / (1 - math.pi * d / n))
        L2 = min(float(np.sum(j * j * absc)), d * d * top)
        h = math.pi / n
        drop = np.abs(dp(z)) * h + 0.5 * L2 * h * h
        wind, step = winding_number(vals)
        ratio = float((drop / mods).max())
        if ratio <= 0.5 and step < math.pi / 2:
            break
        need = max(2 * n, 1 << math.ceil(math.log2(n * max(ratio, 1.0) * 2.5)))
        if need > max_samples:
            raise CertificationFailure("margin does not clear Lipschitz slack", margin=m)
        n = need
    if wind != 0:
        raise CertificationFailure(f"winding number {wind}: zero inside the disk",
                                   margin=m, winding=wind)
    lower = float((mods - drop).min())
    return NonvanishingCert(m, n, (m - lower) / h)


# --------------------------------------------------------------------------
# rational functions

_UNIT_CERT = NonvanishingCert(1.0, MIN_SAMPLES, 0.0)


class RationalFn:
    """``num/den`` with ``den`` monic and certified nonvanishing on the closed disk."""

    __slots__ = ("num", "den", "cert")

    def __init__(self, num: Poly | Sequence[complex] | complex, den: Poly | Sequence[complex] | None = None,
                 cert: NonvanishingCert | None = None):
        if not isinstance(num, Poly):
            num = Poly(num)
        if den is None:
            den = Poly([1.0])
        elif not isinstance(den, Poly):
            den = Poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        lead = den.lead
        if lead != 1:
            num, den = num / lead, den / lead
            if cert is not None:
                cert = cert.scaled(1.0 / abs(lead))
        if den.degree == 0:
            cert = _UNIT_CERT
        elif cert is None:
            cert = certify_nonvanishing(den)
        self.num = num
        self.den = den
        self.cert = cert

    @classmethod
    def const(cls, c: complex) -> RationalFn:
        return cls(Poly.const(c))

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1 + DISK_TOL):
            raise DomainError("evaluation outside the closed unit disk")
        out = self.num(z) / self.den(z)
        return out if np.ndim(out) else complex(out)

    def _same_den(self, other: RationalFn) -> bool:
        a, b = self.den.coeffs, other.den.coeffs
        return a.shape == b.shape and bool(np.all(a == b))

    def _combine_den(self, other: RationalFn) -> tuple[Poly, NonvanishingCert | None]:
        if other.is_polynomial:
            return self.den, self.cert
        if self.is_polynomial:
            return other.den, other.cert
        return self.den * other.den, self.cert * other.cert

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn.const(other) if not isinstance(other, Poly) else RationalFn(other)
        if self._same_den(other):
            return RationalFn(self.num + other.num, self.den, self.cert)
        if other.is_polynomial:
            return RationalFn(self.num + other.num * self.den, self.den, self.cert)
        if self.is_polynomial:
            return RationalFn(self.num * other.den + other.num, other.den, other.cert)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den,
                          self.cert * other.cert)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, self.cert)

    def __sub__(self, other):
        if not isinstance(other, RationalFn):
            other = RationalFn.const(other) if not isinstance(other, Poly) else RationalFn(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            return RationalFn(self.num * other, self.den, self.cert)
        if not isinstance(other, RationalFn):
            return RationalFn(self.num * complex(other), self.den, self.cert)
        den, cert = self._combine_den(other)
        return RationalFn(self.num * other.num, den, cert)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return RationalFn(self.num / complex(scalar), self.den, self.cert)

    def boundary_values(self, n: int) -> np.ndarray:
        z = circle_points(n)
        return self.num(z) / self.den(z)

    def __repr__(self):
        if self.is_polynomial:
            return f"RationalFn({self.num!r})"
        return f"RationalFn({self.num!r} / {self.den!r})"


def evaluate(f: RationalFn, z: complex) -> complex:
    """Value of ``f`` at ``z``; raises :class:`DomainError` outside the closed disk."""
    if not np.isfinite(z):
        raise DomainError("non-finite evaluation point")
    return f(z)


def rational_derivative(num: Poly, den: Poly, order: int) -> tuple[Poly, Poly]:
    """Quotient-rule derivative of ``num/den``; the result has denominator ``den**(order+1)``.

    Pure polynomial bookkeeping, usable even when ``den`` vanishes on the circle.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    dprime = den.deriv()
    n = num
    for j in range(1, order + 1):
        # d/dz [n / den^j] = (n' den - j n den') / den^(j+1)
        n = n.deriv() * den - j * (n * dprime)
    return n, den ** (order + 1)


def derivative(f: RationalFn, order: int = 1) -> RationalFn:
    num, den = rational_derivative(f.num, f.den, order)
    if f.is_polynomial:
        return RationalFn(num)
    return RationalFn(num, den, f.cert ** (order + 1))


def jet(f: RationalFn | Poly, a: complex, order: int) -> np.ndarray:
    """Derivatives ``f(a), f'(a), ..., f^(order)(a)`` via Taylor series division."""
    if isinstance(f, Poly):
        t = f.taylor(a, order)
    else:
        t = series_divide(f.num.taylor(a, order), f.den.taylor(a, order), order)
    return t * np.array([math.factorial(m) for m in range(order + 1)], dtype=float)


# --------------------------------------------------------------------------
# extended Euclid


def _decide_degree(r: Poly, scale: float, eps: float) -> Poly:
    """Strip leading coefficients that are roundoff relative to ``scale``."""
    c = r.coeffs
    top = len(c) - 1
    while top >= 0:
        ratio = abs(c[top]) / scale
        if ratio < eps / 10:
            top -= 1
        elif ratio <= 10 * eps:
            raise IllConditioned(
                f"leading coefficient ratio {ratio:.3e} inside ambiguity band "
                f"[{eps / 10:.1e}, {10 * eps:.1e}]")
        else:
            break
    return Poly(c[: top + 1]) if top >= 0 else Poly([0.0])


def _ext_gcd2(a: Poly, b: Poly, scale: float, eps: float) -> tuple[Poly, Poly, Poly]:
    r0, r1 = a, b
    s0, s1 = Poly([1.0]), Poly([0.0])
    t0, t1 = Poly([0.0]), Poly([1.0])
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r = _decide_degree(r, scale, eps)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def poly_ext_gcd(ps: Sequence[Poly], eps: float = EUCLID_EPS) -> tuple[Poly, list[Poly]]:
    """Monic gcd ``d`` of ``ps`` and cofactors ``us`` with ``sum(us[j]*ps[j]) == d``.

    Pairs are folded left to right with two-polynomial extended Euclid.  A
    leading coefficient below ``eps/10`` times the largest input coefficient
    is dropped; one inside ``[eps/10, 10*eps]`` raises :class:`IllConditioned`.
    """
    if not ps:
        raise ValueError("empty polynomial list")
    scale = max(p.max_coeff() for p in ps)
    if scale == 0.0:
        raise ValueError("all polynomials are zero")
    ps = [_decide_degree(p, scale, eps) for p in ps]
    d = ps[0]
    us = [Poly([1.0])]
    for p in ps[1:]:
        d, s, t = _ext_gcd2(d, p, scale, eps)
        us = [s * u for u in us] + [t]
    lead = d.lead
    return d / lead, [u / lead for u in us]
