import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from jacrank import charsum, cyclo, ff, zeta
from jacrank.config import Budget
from jacrank.curves import ClosedPoint, family, projective_cover, superelliptic_cover
from jacrank.cyclo import CycloInt
from jacrank.errors import BadExponent, OrderMismatch, SupportMeetsT

# (p, h, m) with m | p^h - 1
SMALL = [(7, 1, 3), (13, 1, 3), (2, 2, 3), (5, 2, 3), (11, 1, 5), (2, 4, 5), (3, 4, 5), (5, 1, 2), (29, 1, 7)]


def test_chi_examples():
    F = ff.make_field(7)
    assert charsum.chi_p(F, 3, F(1)) == 0
    assert charsum.chi_p(F, 3, F(3)) == 1
    assert charsum.chi_p(F, 3, F(6) ** 3) == 0
    assert charsum.chi_p(F, 3, F(0)) is None
    with pytest.raises(OrderMismatch):
        charsum.chi_p(F, 5, F(2))


def test_jacobi_examples():
    F5 = ff.make_field(5)
    J = charsum.jacobi_sum(F5, 2, (1, 1))
    assert J == CycloInt.from_int(2, 1)
    assert cyclo.abs_square(J) == 1
    J = charsum.jacobi_sum(ff.make_field(7), 3, (1, 1, 2))
    assert cyclo.abs_square(J) == 49
    with pytest.raises(BadExponent):
        charsum.jacobi_sum(F5, 2, (1, 2))
    with pytest.raises(OrderMismatch):
        charsum.jacobi_sum(F5, 3, (1, 1))


@settings(max_examples=60)
@given(st.sampled_from(SMALL), st.data())
def test_recursive_matches_direct(phm, data):
    p, h, m = phm
    F = ff.make_field(p, h)
    d = data.draw(st.integers(1, 4 if F.q <= 16 else 3))
    a = data.draw(st.lists(st.integers(1, m - 1), min_size=d, max_size=d))
    assert charsum.jacobi_sum(F, m, a) == charsum.jacobi_sum(F, m, a, "direct")


@pytest.mark.parametrize("p,h,m", SMALL)
def test_abs_square(p, h, m):
    F = ff.make_field(p, h)
    for d in (2, 3, 4):
        for a in itertools.product(range(1, m), repeat=d):
            J = charsum.jacobi_sum(F, m, a)
            s = sum(a) % m
            assert cyclo.abs_square(J) == (F.q ** (d - 1) if s else F.q ** (d - 2))


@pytest.mark.parametrize("p,h,m,a", [(7, 1, 3, (1, 2, 2)), (4, 1, 3, None), (11, 1, 5, (1, 3, 4)), (5, 2, 3, (2, 2))])
def test_scaling_sums_vanish(p, h, m, a):
    if a is None:
        p, h, a = 2, 2, (1, 1, 2, 2)
    F = ff.make_field(p, h)
    if sum(a) % m == 0:
        a = a[:-1]
    els = list(F.elements())
    T = {}
    for mu in els[1:]:
        counts = [0] * m
        for zs in itertools.product(els, repeat=len(a) - 1):
            last = -mu - sum(zs, F.zero())
            vals = (*zs, last)
            if any(v.is_zero() for v in vals):
                continue
            counts[sum(ai * charsum.chi_p(F, m, v) for ai, v in zip(a, vals)) % m] += 1
        T[mu] = CycloInt.from_counts(m, counts)
    s = sum(a)
    for mu, val in T.items():
        assert val == CycloInt.eps(m, s * charsum.chi_p(F, m, mu)) * T[F.one()]
    assert sum(T.values(), CycloInt.from_int(m, 0)).is_zero()


def _minpoly(x, F):
    k = x.field.h // F.h
    poly = [x.field.one()]
    y = x
    for _ in range(k):
        nxt = [x.field.zero()] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * y
        poly = nxt
        y = y ** F.q
    return [ff.restrict(c, F) for c in poly]


def _pmul(a, b, F):
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


@pytest.mark.parametrize("p,h,m,exps,lead", [(2, 2, 3, (1, 1), 1), (5, 1, 2, (1, 1, 1), 2), (7, 1, 3, (1, 1, 2), 3),
                                             (3, 2, 2, (1, 1, 1), 2), (5, 2, 3, (1, 2, 2), 1)])
def test_weil_reciprocity_exhaustive(p, h, m, exps, lead):
    F = ff.make_field(p, h)
    pts = list(F.elements())[:len(exps)]
    C = projective_cover(F, m, exps, pts, lead=F(lead))
    cps = [P for P in zeta.closed_points(F, 3) if P.x is not None
           and not any(P.x == ff.embed(b, P.x.field) for b in C.branch)]
    by_deg = {k: [P for P in cps if P.degree == k] for k in (1, 2, 3)}
    data = {id(P): (_minpoly(P.x, F), charsum.f_of_divisor(C, [(P, 1)])) for P in cps}
    seen = 0
    for l in (1, 2, 3):
        for parts in _partitions(l):
            for choice in itertools.product(*[itertools.combinations_with_replacement(by_deg[k], n)
                                              for k, n in parts]):
                poly, val = [F.one()], F.one()
                for group in choice:
                    for P in group:
                        mp, v = data[id(P)]
                        poly = _pmul(poly, mp, F)
                        val = val * v
                assert charsum.f_of_monic(C, poly) == val
                seen += 1
    # every monic polynomial prime to the branch values occurs exactly once
    assert seen == sum(_count_coprime(F, C, l) for l in (1, 2, 3))


def _partitions(l):
    """Ways to write l as sum of n_k * k, returned as [(k, n_k)]."""
    out = []
    for n1 in range(l + 1):
        for n2 in range((l - n1) // 2 + 1):
            n3, r = divmod(l - n1 - 2 * n2, 3)
            if r == 0:
                out.append([(k, n) for k, n in ((1, n1), (2, n2), (3, n3)) if n])
    return out


def _count_coprime(F, C, l):
    n = 0
    for cs in itertools.product(list(F.elements()), repeat=l):
        poly = list(cs) + [F.one()]
        ok = True
        for x in C.branch:
            v = F.zero()
            for c in reversed(poly):
                v = v * x + c
            ok &= not v.is_zero()
        n += ok
    return n


def test_f_of_divisor_basic():
    F = ff.make_field(7)
    C = family(F, 3, (1, 1, 2), [3])
    y = F(5)
    assert charsum.f_of_divisor(C, [(ClosedPoint(1, y), 1)]) == C.f_value(y)
    E = ff.extension(F, 2)
    x = E.gen() + E.one()
    v = C.f_value(x)
    assert ff.embed(charsum.f_of_divisor(C, [(ClosedPoint(2, x), 1)]), E) == v ** (1 + 7)
    with pytest.raises(SupportMeetsT):
        charsum.f_of_divisor(C, [(ClosedPoint(1, F(3)), 1)])


def test_divisor_sum_examples():
    F = ff.make_field(7)
    for al in range(2, 7):
        C = family(F, 3, (1, 1, 2), [al])
        assert charsum.divisor_char_sum(C, 0) == CycloInt.from_int(3, 1)
        S = charsum.divisor_char_sum(C, 1)
        # by hand: sum over a of chi(a(a-1)(a-al)^2), sign (-1)^(1*4) = 1
        counts = [0, 0, 0]
        for a in range(7):
            v = F(a) * (F(a) - F(1)) * (F(a) - F(al)) ** 2
            if v:
                counts[charsum.chi_p(F, 3, v)] += 1
        assert S == CycloInt.from_counts(3, counts)
        assert not criteria_zero(S, F)


def criteria_zero(S, F):
    from jacrank import criteria
    return criteria.is_zero_mod_prime(S, F)


@pytest.mark.parametrize("p,h,m,d", [(7, 1, 3, 4), (2, 2, 3, 3), (11, 1, 5, 3), (13, 1, 3, 3)])
def test_routes_agree(p, h, m, d):
    F = ff.make_field(p, h)
    C = projective_cover(F, m, [1 + i % (m - 1) for i in range(d)], list(F.elements())[:d])
    for l in range(C.normalized().lpoly_degree + 1):
        for j in range(1, m):
            assert charsum.divisor_char_sum(C, l, j, "monic") == charsum.divisor_char_sum(C, l, j, "points")


@pytest.mark.parametrize("p,h,m,exps", [(7, 1, 3, (1, 1, 2)), (13, 1, 3, (1, 2, 2, 2)), (11, 1, 5, (1, 2, 3)),
                                        (2, 4, 5, (1, 1, 4)), (29, 1, 7, (1, 2, 3))])
def test_galois_equivariance(p, h, m, exps):
    F = ff.make_field(p, h)
    C = projective_cover(F, m, exps, list(F.elements())[:len(exps)])
    base = charsum.l_polynomial(C, 1).sums
    for j in range(2, m):
        assert charsum.l_polynomial(C, j).sums == tuple(cyclo.galois(c, j) for c in base)


def test_threads_and_chunks_do_not_change_sums():
    F = ff.make_field(13)
    C = projective_cover(F, 3, (1, 1, 2, 1), [0, 1, 5, 9])
    ref = [charsum._monic_histogram(C, l, Budget()).tolist() for l in range(4)]
    for threads, chunk in ((1, 13), (3, 13), (4, 169), (2, 1)):
        b = Budget(chunk=chunk, threads=threads)
        assert [charsum._monic_histogram(C, l, b).tolist() for l in range(4)] == ref


def test_lpoly_shape():
    F = ff.make_field(7)
    C = family(F, 3, (1, 1, 2), [3])
    L = charsum.l_polynomial(C)
    assert L.degree == 2
    assert L.coeffs()[-1] == CycloInt.from_int(3, 1)


@pytest.mark.parametrize("p,h,m,exps", [(7, 1, 3, (1, 1, 2)), (7, 1, 3, (1, 1, 1)), (11, 1, 5, (1, 2, 3, 3)),
                                        (5, 2, 3, (1, 1, 2, 2)), (2, 4, 5, (2, 2, 2))])
def test_product_over_characters_is_zeta(p, h, m, exps):
    F = ff.make_field(p, h)
    C = projective_cover(F, m, exps, list(F.elements())[:len(exps)])
    assert charsum.product_over_characters(C) == zeta.zeta_numerator(C).L


def test_constant_term_examples():
    F = ff.make_field(7)
    k, S, J = charsum.verify_constant_term(family(F, 3, (1, 1, 2), [3]))
    assert S == CycloInt.eps(3, k) * J * (-1) ** 4
    assert cyclo.abs_square(S) == 7 ** 2
    F5 = ff.make_field(5)
    k, S, J = charsum.verify_constant_term(projective_cover(F5, 2, (1, 1, 1), [0, 1, 2]))
    assert k in (0, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_elliptic_base(p):
    F = ff.make_field(p)
    lam = 2 if p == 5 else 3
    # y0^2 = x (x - 1) (x - lam), cover function y0
    f0 = [0, lam, -(1 + lam), 1]
    W = superelliptic_cover(F, 2, 2, f0)
    assert W.base_genus == 1 and W.lpoly_degree == 4
    k, S, J = charsum.verify_constant_term(W)
    assert S in (J * p, -(J * p))
    LE = zeta.zeta_numerator(W.base_curve()).L
    Lc = charsum.product_over_characters(W)
    prod = [0] * (len(LE) + len(Lc) - 1)
    for i, x in enumerate(LE):
        for j, y in enumerate(Lc):
            prod[i + j] += x * y
    assert tuple(prod) == zeta.zeta_numerator(W).L


def test_superelliptic_points_route_matches_multisets():
    F = ff.make_field(7)
    W = superelliptic_cover(F, 2, 2, [0, -1, 0, 1])
    E0 = W.base_curve()
    pts = [P for P in zeta.closed_points(E0, 2) if not P.in_T and P.x is not None]
    for l in (1, 2):
        counts = [0, 0]
        for parts in _partitions(l):
            if any(k > 2 for k, _ in parts):
                continue
            groups = [[P for P in pts if P.degree == k] for k, _ in parts]
            for choice in itertools.product(*[itertools.combinations_with_replacement(g, n)
                                              for g, (_, n) in zip(groups, parts)]):
                D = [(P, 1) for grp in choice for P in grp]
                counts[charsum.chi_p(F, 2, charsum.f_of_divisor(W, D))] += 1
        assert charsum.divisor_char_sum(W, l) == CycloInt.from_counts(2, counts)
