import pytest

from conftest import P
from coronab import (DomainError, NotAMember, Rejection, SearchBudget, SearchExhausted, UnimodularPair,
                     constrained_solve, reduce_pair, verify_reduction)
from coronab.sampling import random_instance
from coronab.verify import residual


def test_already_invertible(z2):
    pair = UnimodularPair(P(1, 0, -0.5), P(0, 0, 1), z2)
    rc = verify_reduction(pair, 0)
    assert rc.inverse_margin == pytest.approx(0.5, abs=1e-6)
    rc = reduce_pair(pair)
    assert rc.path == ["zero"] and rc.inverse_margin == pytest.approx(0.5, abs=1e-6)


def test_constant_shift_example(z2):
    pair = UnimodularPair(P(0, 0, 1), P(1), z2)
    rc = verify_reduction(pair, 2)
    assert rc.inverse_margin == pytest.approx(1, abs=1e-6)
    assert rc.cert.lower_bound > 0


def test_search_on_base_zero_uses_shift(z2):
    pair = UnimodularPair(P(0, 0, 1), P(1, 0, 1), z2)
    rc = reduce_pair(pair)
    assert rc.path[0] == "shift"
    again = verify_reduction(pair, rc.h)
    assert again.inverse_margin == pytest.approx(rc.inverse_margin)


def test_shift_transform_keeps_witness(z2):
    f, g = P(0, 0, 1), P(1, 0, 1)
    x, y = P(-1), P(1)
    pair = UnimodularPair(f, g, z2, witness=(x, y))
    moved = pair.shifted()
    assert moved.f.num.allclose(P(1, 0, 2).num)
    sx, sy = moved.witness
    assert residual([moved.f, moved.g], [sx, sy]) <= residual([f, g], [x, y]) + 1e-15


def test_rejections(z2):
    pair = UnimodularPair(P(0, 0, 1), P(1), z2)
    with pytest.raises(Rejection) as exc:
        verify_reduction(pair, 0)
    assert exc.value.which == "nonvanishing"
    with pytest.raises(Rejection) as exc:
        verify_reduction(pair, P(0, 1))
    assert exc.value.which == "membership"


def test_pair_validation(z2):
    with pytest.raises(NotAMember):
        UnimodularPair(P(0, 1), P(1), z2)
    with pytest.raises(DomainError):
        UnimodularPair(P(0, 0, 1), P(1), z2, witness=(P(1), P(0)))
    with pytest.raises(DomainError):
        reduce_pair(UnimodularPair(P(0, 0, 1), P(0, 0, 0, 1), z2))


def test_exhaustion_reports_best_margin(z2):
    # deep zeros with no room for a constant fix and no budget for corrections
    pair = UnimodularPair(P(0.01, 0, 1), P(0.01, 0, 1), z2)
    budget = SearchBudget(max_degree=0, phases=4, magnitudes=1, c_max=0.5, starts=1, max_evals=5)
    # f + c g = (1 + c) f has its zeros at +-0.1i whatever c is
    with pytest.raises(SearchExhausted) as exc:
        reduce_pair(pair, budget)
    assert exc.value.best_margin >= 0


def test_random_pairs_reverify(rng):
    """Whatever the search returns must pass the independent checker."""
    done = 0
    for _ in range(8):
        inst = random_instance(rng, 2)
        f, g = inst.f
        pair = UnimodularPair(f, g, inst.spec, witness=tuple(constrained_solve(inst).g))
        try:
            rc = reduce_pair(pair, SearchBudget(max_degree=2, starts=2, max_evals=400))
        except SearchExhausted:
            continue
        again = verify_reduction(pair, rc.h)
        assert again.inverse_margin > 0
        assert again.membership_sum.defect <= 1e-8
        done += 1
    assert done >= 4

