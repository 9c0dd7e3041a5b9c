import itertools

import pytest
from hypothesis import given, strategies as st

from bilinrank.cc_builder import (
    EvaluationPlan,
    SymmetricBilinearAlgorithm,
    base_algorithm,
    build_algorithm,
    check_conditions,
    check_terms,
    multiply_with,
    predicted_rank,
    product_tensor,
    select_plan,
    verify_algorithm,
    verify_base,
)
from bilinrank.errors import ConditionsNotMet, FieldMismatch, InsufficientPlaces, UnsupportedBase
from bilinrank.ff_core import FieldElement, Polynomial, field_of_order, make_field
from bilinrank.function_field import Divisor, Place

F2 = make_field(2)
F3 = make_field(3)


def place(F, *c):
    return Place(F, Polynomial(F, c))


def naive_product(alg, x, y):
    """Oracle: schoolbook polynomial product reduced mod Q."""
    F = alg.q
    r = (Polynomial(F, x) * Polynomial(F, y)) % alg.modulus_Q
    return tuple(r.coeffs) + (0,) * (alg.n - len(r.coeffs))


def apply_terms(alg, x, y):
    F = alg.q
    acc = [0] * alg.n
    for phi, w in alg.terms:
        a = 0
        b = 0
        for p, xi, yi in zip(phi, x, y):
            a = F.add(a, F.mul(p, xi))
            b = F.add(b, F.mul(p, yi))
        c = F.mul(a, b)
        acc = [F.add(s, F.mul(c, wi)) for s, wi in zip(acc, w)]
    return tuple(acc)


# ----------------------------------------------------------- base table

@pytest.mark.parametrize("k,u,r", [(1, 1, 1), (2, 1, 3), (4, 1, 9), (1, 2, 3), (2, 2, 9), (4, 2, 27)])
def test_base_algorithms_exhaustive(k, u, r):
    b = base_algorithm(F2, k, u)
    assert b.rank == r
    rep = verify_base(b)
    assert rep.mode == "exhaustive" and rep.pairs == 2 ** (2 * k * u)
    assert not rep.failures and not rep.asymmetric


def test_truncated_base_is_the_textbook_formula():
    # m1 = a0 b0, m2 = (a0+a1)(b0+b1), m3 = a1 b1; c0 = m1, c1 = m2 - m1 - m3
    b = base_algorithm(F2, 1, 2)
    for a0, a1, b0, b1 in itertools.product(range(2), repeat=4):
        got = [0, 0]
        for phi, w in b.terms:
            m = ((phi[0] * a0 + phi[1] * a1) * (phi[0] * b0 + phi[1] * b1)) % 2
            got = [(g + m * c) % 2 for g, c in zip(got, w)]
        assert got == [a0 * b0 % 2, (a0 * b1 + a1 * b0) % 2]


def test_base_algorithms_over_f3():
    for k, u in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        rep = verify_base(base_algorithm(F3, k, u))
        assert not rep.failures


def test_unsupported_base():
    with pytest.raises(UnsupportedBase):
        base_algorithm(F2, 3, 1)
    with pytest.raises(UnsupportedBase):
        base_algorithm(F2, 1, 3)


# ----------------------------------------------------------- plan selection

def test_select_plan_n3():
    plan = select_plan(F2, 3, 4)
    assert plan.D == Divisor([(Place(F2), 2)])
    assert list(plan.places) == [(place(F2, 0, 1), 2), (place(F2, 1, 1), 1), (place(F2, 1, 1, 1), 1)]
    assert plan.budget == 5
    assert predicted_rank(plan) == 7


def test_select_plan_n2():
    plan = select_plan(F2, 2, 4)
    assert plan.D == Divisor([(Place(F2), 1)])
    assert list(plan.places) == [(place(F2, 0, 1), 2), (place(F2, 1, 1), 1)]
    assert plan.budget == 3
    assert predicted_rank(plan) == 4


def test_select_plan_insufficient():
    with pytest.raises(InsufficientPlaces):
        select_plan(F2, 18, 4)


def test_rank_of_degree_one_plan():
    F5 = make_field(5)
    Q3 = place(F5, 1, 1, 0, 1)  # x^3 + x + 1 has no roots mod 5
    plan = EvaluationPlan(F5, 3, Q3, Divisor([(Place(F5), 2)]),
                          tuple((place(F5, a, 1), 1) for a in range(5)))
    assert predicted_rank(plan) == 5
    assert check_conditions(plan).ok
    assert build_algorithm(plan).rank == 5


# ----------------------------------------------------------- conditions

def test_conditions_pass_for_selected_plan():
    rep = check_conditions(select_plan(F2, 3, 4))
    assert rep.ok, rep.failed()


def test_conditions_budget_failure():
    base = select_plan(F2, 3, 4)
    plan = EvaluationPlan(F2, 3, base.Q, base.D, ((place(F2, 0, 1), 1), (place(F2, 1, 1), 1)))
    rep = check_conditions(plan)
    assert not rep.get("c_budget")
    with pytest.raises(ConditionsNotMet):
        build_algorithm(plan)


def test_conditions_support_failure():
    base = select_plan(F2, 3, 4)
    Px = place(F2, 0, 1)
    plan = EvaluationPlan(F2, 3, base.Q, Divisor([(Px, 2)]), base.places)
    assert not check_conditions(plan).get("support_disjoint")


# ----------------------------------------------------------- construction

def test_build_small_examples():
    a2 = build_algorithm(select_plan(F2, 2, 4))
    assert a2.rank == 4 and verify_algorithm(a2, "exhaustive").ok
    a3 = build_algorithm(select_plan(F2, 3, 4))
    assert a3.rank == 7 and verify_algorithm(a3, "exhaustive").ok


@pytest.mark.parametrize("F", [F2, F3])
def test_search_reaches_winograd_floor(F):
    alg = build_algorithm(select_plan(F, 2, 4 if F.q == 2 else 2, "search"))
    assert alg.rank == 3
    assert verify_algorithm(alg, "exhaustive").ok


def test_multiply_with():
    alg = build_algorithm(select_plan(F2, 3, 4))
    K = alg.ext
    assert alg.modulus_Q == Polynomial(F2, (1, 1, 0, 1))
    a = FieldElement(K, K.from_coeffs((0, 1, 0)))
    a2 = FieldElement(K, K.from_coeffs((0, 0, 1)))
    assert multiply_with(alg, a, a2) == FieldElement(K, K.from_coeffs((1, 1, 0)))
    for x in K.elements():
        assert multiply_with(alg, x, K.element(0)) == K.element(0)
        assert multiply_with(alg, x, K.element(1)) == x
    with pytest.raises(FieldMismatch):
        multiply_with(alg, field_of_order(4).element(1), a)


@pytest.mark.parametrize("q,d,n", [(2, 4, n) for n in range(2, 11)] + [(3, 2, n) for n in range(2, 8)])
def test_rank_matches_prediction_and_floor(q, d, n):
    plan = select_plan(field_of_order(q), n, d)
    alg = build_algorithm(plan)
    assert alg.rank == predicted_rank(plan)
    assert alg.rank >= 2 * n - 1
    assert plan.budget <= 2 * n + 2
    assert all(len(phi) == n and len(w) == n for phi, w in alg.terms)


@given(st.sampled_from([(2, 4, 4), (2, 4, 5), (3, 2, 3), (3, 2, 4)]), st.data())
def test_algorithm_matches_schoolbook(cfg, data):
    q, d, n = cfg
    alg = _cached(q, d, n)
    vec = st.lists(st.integers(0, q - 1), min_size=n, max_size=n).map(tuple)
    x, y = data.draw(vec), data.draw(vec)
    assert apply_terms(alg, x, y) == naive_product(alg, x, y)
    assert apply_terms(alg, x, y) == apply_terms(alg, y, x)


_CACHE = {}


def _cached(q, d, n):
    if (q, d, n) not in _CACHE:
        _CACHE[q, d, n] = build_algorithm(select_plan(field_of_order(q), n, d))
    return _CACHE[q, d, n]


# ----------------------------------------------------------- verifier

def test_verify_random_f4096():
    alg = build_algorithm(select_plan(F2, 12, 4))
    rep = verify_algorithm(alg, "random", samples=100_000, seed=42)
    assert rep.mode == "random" and rep.pairs == 100_000
    assert not rep.failures and rep.seed == 42


def test_tampered_algorithm_is_detected():
    alg = _cached(2, 4, 4)
    phi, w = alg.terms[0]
    bad = SymmetricBilinearAlgorithm(alg.q, alg.n, alg.modulus_Q,
                                     ((phi, (0,) * alg.n),) + alg.terms[1:], alg.plan)
    rep = verify_algorithm(bad, "exhaustive")
    assert rep.failures and not rep.ok
    rep = verify_algorithm(bad, "random", samples=2000, seed=1)
    assert rep.failures


def test_random_shards_independent_of_workers():
    alg = _cached(3, 2, 4)
    tensor = product_tensor(alg.q, alg.modulus_Q)
    bad = ((alg.terms[0][0], (1,) + (0,) * (alg.n - 1)),) + alg.terms[1:]
    one = check_terms(alg.q, bad, tensor, alg.n, "random", 25_000, 7, workers=1)
    two = check_terms(alg.q, bad, tensor, alg.n, "random", 25_000, 7, workers=2)
    assert one == two
