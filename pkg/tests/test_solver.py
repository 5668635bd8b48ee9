import numpy as np
import pytest

from conftest import P
from coronab import (AllConstantsZero, BlaschkeSpec, CoronaInstance, NoSolution, NotAMember, RationalFn,
                     bezout_unconstrained, build_blaschke, check_membership, constrained_solve,
                     corona_delta, ideal_solve, residual)
from coronab.sampling import planted_zero_instance, random_instance, random_spec


def coeffs_close(f: RationalFn, expected, tol=1e-12) -> bool:
    """Compare a rational function with a polynomial by its reduced coefficients."""
    assert f.den.degree == 0
    c = f.num.coeffs / f.den.coeffs[0]
    e = np.asarray(expected, dtype=complex)
    c = np.pad(c, (0, max(0, e.size - c.size)))
    e = np.pad(e, (0, max(0, c.size - e.size)))
    return bool(np.abs(c - e).max() <= tol)


# -- unconstrained ---------------------------------------------------------

def test_unconstrained_examples():
    g = bezout_unconstrained([P(0, 0, 1), P(1, 0, 0, -1)])
    assert coeffs_close(g[0], [0, 1]) and coeffs_close(g[1], [1])
    g = bezout_unconstrained([P(1)])
    assert coeffs_close(g[0], [1])
    g = bezout_unconstrained([P(0, 1), P(1, -1)])
    assert coeffs_close(g[0], [1]) and coeffs_close(g[1], [1])


def test_unconstrained_common_zero_is_no_solution():
    with pytest.raises(NoSolution):
        bezout_unconstrained([P(-0.5, 1), P(-0.5, 1) * P(2, 1)])
    with pytest.raises(NoSolution):
        bezout_unconstrained([P(0), P(0)])


def test_unconstrained_planted_zeros(rng):
    # Euclid alone would read some of these remainders as nonzero roundoff
    for i in range(40):
        inst, _ = planted_zero_instance(rng, 2 + i % 2, random_spec(rng))
        with pytest.raises(NoSolution):
            bezout_unconstrained(inst.f)


def test_unconstrained_common_zero_outside_is_fine():
    # shared factor z - 2 never vanishes on the closed disk
    fs = [P(-2, 1) * P(0, 1), P(-2, 1) * P(1, -1)]
    g = bezout_unconstrained(fs)
    assert residual(fs, g) <= 1e-10


def test_unconstrained_random(rng):
    for _ in range(30):
        inst = random_instance(rng, int(rng.integers(2, 4)))
        g = bezout_unconstrained(inst.f)
        assert residual(inst.f, g) <= 1e-9


# -- constrained -----------------------------------------------------------

def test_worked_example(z2):
    inst = CoronaInstance((P(0, 0, 1), P(1, 0, 0, -1)), z2)
    rep = constrained_solve(inst)
    assert coeffs_close(rep.g[0], [0, 0, 0, 0, 1])
    assert coeffs_close(rep.g[1], [1, 0, 0, 1])
    assert rep.residual <= 1e-12
    assert rep.max_membership_defect <= 1e-12
    A = rep.extras["A"]
    assert np.allclose(A[0][1].entries, [[0, -1], [1, 0]])
    assert np.allclose(rep.extras["H"][(0, 1)].coeffs, [0, -1])


def test_constant_data_need_no_correction(z2):
    rep = constrained_solve(CoronaInstance((P(2), P(1j)), z2))
    assert rep.correction_norm == 0
    assert residual(rep.g, [P(2), P(1j)]) <= 1e-12


def test_member_with_constant_cofactors(z2):
    rep = constrained_solve(CoronaInstance((P(0, 0, 1), P(1, 0, -0.5)), z2))
    assert coeffs_close(rep.g[0], [0.5]) and coeffs_close(rep.g[1], [1])
    assert rep.correction_norm == 0


def test_single_function(z2):
    rep = constrained_solve(CoronaInstance((P(2, 0, 0, 1),), z2))
    assert rep.residual <= 1e-12 and rep.max_membership_defect <= 1e-10


def test_non_member_rejected(z2):
    with pytest.raises(NotAMember):
        constrained_solve(CoronaInstance((P(0, 1), P(1)), z2))


def test_planted_zero_fails(rng):
    spec = random_spec(rng)
    inst, _ = planted_zero_instance(rng, 2, spec)
    with pytest.raises(NoSolution):
        constrained_solve(inst)


def test_constrained_random(rng):
    for _ in range(25):
        inst = random_instance(rng, int(rng.integers(1, 4)))
        rep = constrained_solve(inst)
        assert rep.residual <= 1e-8
        assert rep.max_membership_defect <= 1e-8
        assert rep.delta_measured > 0
        # H is skew with zero diagonal and degree below the number of constraints
        M = inst.spec.degree
        assert all(h.degree <= M - 1 for h in rep.extras["H"].values())
        assert all(i < j for i, j in rep.extras["H"])


def test_multiple_points():
    spec = BlaschkeSpec(((0.3, 2), (-0.4j, 1), (0.5 + 0.2j, 2)))
    B = build_blaschke(spec)
    fs = (B * P(1, 2) + 0.3, B * P(0, 1, 1j) - 0.2j, RationalFn.const(0.1) + B)
    rep = constrained_solve(CoronaInstance(fs, spec))
    assert rep.residual <= 1e-9
    for g in rep.g:
        assert check_membership(g, spec).defect <= 1e-9


# -- ideal -----------------------------------------------------------------

def test_ideal_examples(z2):
    rep = ideal_solve(CoronaInstance((P(1, 0, -0.5), P(0, 0, 1)), z2))
    assert coeffs_close(rep.g[0], [1, 0, 0.5], 1e-12)
    assert coeffs_close(rep.g[1], [0, 0, 0.25], 1e-12)
    rep = ideal_solve(CoronaInstance((P(1),), z2))
    assert coeffs_close(rep.g[0], [1])
    rep = ideal_solve(CoronaInstance((P(1), P(0, 0, 1)), z2))
    assert coeffs_close(rep.g[0], [1]) and coeffs_close(rep.g[1], [0])


def test_ideal_picks_largest_constant(z2):
    # leading constant sits in the second slot; the answer is reindexed back
    rep = ideal_solve(CoronaInstance((P(0.1, 0, 1), P(2, 0, 1)), z2))
    assert rep.extras["lead_index"] == 1
    assert rep.residual <= 1e-12


def test_ideal_all_constants_zero(z2):
    with pytest.raises(AllConstantsZero):
        ideal_solve(CoronaInstance((P(0, 0, 1), P(0, 0, 0, 1)), z2))


def test_ideal_random_bound(rng):
    for _ in range(20):
        inst = random_instance(rng, int(rng.integers(2, 4)))
        rep = ideal_solve(inst)
        assert rep.residual <= 1e-8 and rep.max_membership_defect <= 1e-8
        assert rep.extras["bound_holds"]


def test_solve_implies_positive_delta(rng):
    for _ in range(10):
        inst = random_instance(rng, 2)
        constrained_solve(inst)
        assert corona_delta(inst.f) > 0
