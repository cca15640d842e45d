import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jacrank import criteria, ff, zeta
from jacrank.config import Budget
from jacrank.curves import family, projective_cover, superelliptic_cover
from jacrank.errors import BudgetExceeded


def brute_count(C, k):
    """Points of y^m = f by looping over F_{q^k}; infinity handled by valuation."""
    E = ff.extension(C.field, k)
    n = 0
    for x in E.elements():
        fx = C.f_value(x)
        if fx.is_zero():
            n += 1
        else:
            n += sum(1 for y in E.elements() if y**C.m == fx)
    if C.infinity_branch:
        n += 1
    else:
        lead = ff.embed(C.lead, E)
        n += sum(1 for y in E.elements() if y**C.m == lead)
    return n


def test_count_examples():
    F = ff.make_field(5)
    E = projective_cover(F, 2, (1, 1, 1), [0, 1, 2])
    assert zeta.count_points(E, 1) == 8
    assert zeta.count_points(F, 3) == 126
    Z = zeta.zeta_numerator(E)
    assert Z.L == (1, 2, 5) and Z.prank == 1 and not Z.supersingular
    assert len(zeta.closed_points(E, 1)) == 8


@pytest.mark.parametrize("p,h,m,exps", [(7, 1, 3, (1, 1, 2)), (7, 1, 3, (1, 1, 1)), (5, 1, 3, (1, 2, 1)),
                                        (3, 2, 2, (1, 1, 1, 1)), (2, 2, 3, (1, 2)), (5, 1, 2, (1, 1, 1, 1, 1))])
def test_counts_against_brute_force(p, h, m, exps):
    F = ff.make_field(p, h)
    C = projective_cover(F, m, exps, list(F.elements())[:len(exps)], lead=F(2) if p > 2 else None)
    for k in (1, 2):
        assert zeta.count_points(C, k) == brute_count(C, k)


def test_genus_examples():
    F = ff.make_field(7)
    assert family(F, 3, (1, 1, 2), [3]).genus() == 2
    assert projective_cover(F, 2, (1,) * 5, [0, 1, 2, 3, 4]).genus() == 2


@given(st.sampled_from([(7, 1, 3), (13, 1, 3), (11, 1, 5), (5, 2, 3), (2, 2, 3)]), st.data())
def test_genus_is_sum_of_d(phm, data):
    p, h, m = phm
    F = ff.make_field(p, h)
    d = data.draw(st.integers(2, 4))
    exps = data.draw(st.lists(st.integers(1, m - 1), min_size=d, max_size=d))
    pts = data.draw(st.lists(st.sampled_from(list(F.elements())), min_size=d, max_size=d, unique=True))
    C = projective_cover(F, m, exps, pts)
    assert criteria.curve_exponent_data(C).genus == C.genus()


@settings(max_examples=25)
@given(st.sampled_from([(7, 1, 3), (5, 1, 2), (11, 1, 5), (3, 2, 2), (13, 1, 3)]), st.data())
def test_functional_equation_and_positivity(phm, data):
    p, h, m = phm
    F = ff.make_field(p, h)
    d = data.draw(st.integers(2, 4))
    exps = data.draw(st.lists(st.integers(1, m - 1), min_size=d, max_size=d))
    pts = data.draw(st.lists(st.sampled_from(list(F.elements())), min_size=d, max_size=d, unique=True))
    C = projective_cover(F, m, exps, pts)
    if F.q ** (C.genus() + 1) > 2_000_000:
        return
    Z = zeta.zeta_numerator(C)
    g, q = Z.genus, F.q
    assert all(Z.L[2 * g - i] == q ** (g - i) * Z.L[i] for i in range(g + 1))
    assert sum(Z.L) > 0
    if g:
        assert Z.extra_checked
    assert list(Z.counts) == zeta.L_to_counts(Z.L, q, len(Z.counts))


def test_full_counts_agree():
    F = ff.make_field(7)
    C = family(F, 3, (1, 1, 2), [3])
    assert zeta.zeta_numerator(C, full=True).L == zeta.zeta_numerator(C).L


def test_supersingular_examples():
    assert zeta.supersingular_test((1, 0, 5), 5)
    assert zeta.supersingular_test((1, 0, 10, 0, 25), 5)   # (1 + 5t^2)^2
    assert not zeta.supersingular_test((1, 2, 5), 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_supersingular_genus_one(p):
    # every Weil polynomial 1 + a t + p t^2 with |a| <= 2 sqrt(p)
    for a in range(-2 * int(p**0.5) - 1, 2 * int(p**0.5) + 2):
        if a * a > 4 * p:
            continue
        L = (1, a, p)
        assert zeta.supersingular_test(L, p) == (a % p == 0)
        assert zeta.supersingular_by_divisibility(L, p) == (a % p == 0)


@pytest.mark.parametrize("p,h", [(5, 1), (7, 1), (3, 2)])
def test_two_supersingularity_forms_agree(p, h):
    F = ff.make_field(p, h)
    for pts in itertools.islice(itertools.combinations(list(F.elements()), 5), 30):
        L = zeta.zeta_numerator(projective_cover(F, 2, (1,) * 5, pts)).L
        assert zeta.supersingular_test(L, F.q) == zeta.supersingular_by_divisibility(L, F.q)


def test_closed_point_examples():
    F = ff.make_field(5)
    assert len(zeta.closed_points(F, 1)) == 6
    assert len(zeta.closed_points(F, 2)) == 16
    pts = zeta.closed_points(family(F, 2, (1, 1, 1), [2]), 3)
    for P in pts:
        if P.x is not None and P.degree > 1:
            orbit = {(P.x ** (5**i), P.y ** (5**i)) for i in range(P.degree)}
            assert len(orbit) == P.degree
            assert min(orbit) == (P.x, P.y)


@pytest.mark.parametrize("p,h,m,exps", [(7, 1, 3, (1, 1, 2)), (5, 1, 2, (1, 1, 1)), (2, 2, 3, (1, 2, 1))])
def test_closed_points_count_places(p, h, m, exps):
    F = ff.make_field(p, h)
    C = projective_cover(F, m, exps, list(F.elements())[:len(exps)])
    pts = zeta.closed_points(C, 3)
    for k in (1, 2, 3):
        # N_k = sum over closed points of degree dividing k of the degree
        assert zeta.count_points(C, k) == sum(P.degree for P in pts if k % P.degree == 0)


def test_superelliptic_count():
    F = ff.make_field(7)
    W = superelliptic_cover(F, 2, 2, [0, -1, 0, 1])
    assert W.genus() == 3
    # w^4 = x^3 - x by direct search
    for k in (1, 2):
        E = ff.extension(F, k)
        n = 4
        for x in E.elements():
            v = x**3 - x
            if v:
                n += sum(1 for w in E.elements() if w**4 == v)
        assert zeta.count_points(W, k) == n


def test_budget_guard():
    F = ff.make_field(7)
    with pytest.raises(BudgetExceeded):
        zeta.count_points(family(F, 3, (1, 1, 2), [3]), 4, Budget(max_field=1000))
