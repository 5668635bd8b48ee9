"""Seeded random members of the algebra and corona instances with a measured margin."""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeSpec, build_blaschke
from .numcore import Poly, RationalFn
from .solver import CoronaInstance
from .verify import DEFAULT_GRID, GridConfig, corona_delta, sup_sum


def random_complex(rng: np.random.Generator, size=None, scale: float = 1.0):
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def random_spec(rng: np.random.Generator, max_points: int = 3, max_mult: int = 3,
                radius: float = 0.8, min_sep: float = 0.05, max_degree: int = 6) -> BlaschkeSpec:
    while True:
        count = int(rng.integers(1, max_points + 1))
        pts = radius * np.sqrt(rng.random(count)) * np.exp(2j * np.pi * rng.random(count))
        if all(abs(pts[i] - pts[j]) >= min_sep for i in range(count) for j in range(i)):
            break
    mults = rng.integers(1, max_mult + 1, size=count)
    while mults.sum() > max_degree:
        mults[np.argmax(mults)] -= 1
    return BlaschkeSpec(tuple((complex(a), int(m)) for a, m in zip(pts, mults) if m > 0))


def random_member(rng: np.random.Generator, spec: BlaschkeSpec, max_q_degree: int = 6,
                  B: RationalFn | None = None) -> RationalFn:
    """``c + B q`` with a random constant and a random polynomial ``q`` of degree <= ``max_q_degree``."""
    if B is None:
        B = build_blaschke(spec)
    deg = int(rng.integers(0, max_q_degree + 1))
    q = Poly(random_complex(rng, deg + 1) / np.sqrt(deg + 1))
    return B * q + complex(random_complex(rng))


def random_instance(rng: np.random.Generator, n: int, spec: BlaschkeSpec | None = None,
                    delta_min: float = 0.05, delta_max: float = np.inf, max_q_degree: int = 6,
                    cfg: GridConfig = DEFAULT_GRID, max_tries: int = 1000) -> CoronaInstance:
    """Rejection-sample ``n`` members, rescaled so ``sup sum |f_k| = 1``, with margin in the band.

    The rescaled margin lies in ``[delta_min, delta_max)``; ``delta_claimed``
    records the measured value.  Raises ``RuntimeError`` after ``max_tries``.
    """
    if spec is None:
        spec = random_spec(rng)
    B = build_blaschke(spec)
    for _ in range(max_tries):
        fs = [random_member(rng, spec, max_q_degree, B) for _ in range(n)]
        s = sup_sum(fs, cfg)
        fs = [f / s for f in fs]
        delta = corona_delta(fs, cfg)
        if delta_min <= delta < delta_max:
            return CoronaInstance(tuple(fs), spec, delta_claimed=delta)
    raise RuntimeError(f"no instance with margin in [{delta_min}, {delta_max}) after {max_tries} tries")


def planted_zero_instance(rng: np.random.Generator, n: int, spec: BlaschkeSpec,
                          zero: complex | None = None, max_q_degree: int = 6) -> tuple[CoronaInstance, complex]:
    """Members sharing a common zero at ``zero`` (random in the disk by default), away from the nodes."""
    B = build_blaschke(spec)
    while zero is None:
        cand = 0.95 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        if min(abs(cand - a) for a in spec.zeros) > 0.1:
            zero = complex(cand)
    bz = B(zero)
    fs = []
    for _ in range(n):
        c = complex(random_complex(rng))
        deg = int(rng.integers(0, max_q_degree + 1))
        q = Poly(random_complex(rng, deg + 1))
        # shift q so that c + B q vanishes at the planted zero
        q = q - (q(zero) + c / bz)
        fs.append(B * q + c)
    return CoronaInstance(tuple(fs), spec), zero
