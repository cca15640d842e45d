"""Jacobi sums, divisor character sums and the L-polynomial factors P^chi.

Characters are chi^j with chi(z) = zeta^(log z mod m), zeta = g^((q-1)/m);
values in Z[eps] are CycloInt and the map eps -> zeta reduces them mod the
canonical prime.  Divisor sums on the projective line run over monic
polynomials q of degree l, using

    f(div q) = (-1)^(l * sum a) * lead^l * prod q(x_i)^(a_i).

On a superelliptic base they come from the Euler product over closed
points of the base curve.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import ff, zeta
from .config import DEFAULT_BUDGET, Budget
from .curves import ClosedPoint, CurveSpec  # noqa: F401  (re-exported)
from .cyclo import CycloInt
from .errors import (BadExponent, DegreeTooLarge, NoUnitMatch, OrderMismatch,
                     SupportMeetsT, ValidationError, WrongShape)

CharValue = Optional[int]   # exponent k of zeta^k, None for chi(0) = 0


def chi_p(F: ff.FieldSpec, m: int, z: ff.FqElem, j: int = 1) -> CharValue:
    k = ff.chi_exponent(F, m, z)
    return None if k is None else k * j % m


def _check_exponents(m, a):
    out = []
    for i, x in enumerate(a):
        if int(x) % m == 0:
            raise BadExponent(f"a[{i}] = {x} is divisible by m = {m}")
        out.append(int(x) % m)
    return out


# ---------------------------------------------------------------------------
# Jacobi sums

@lru_cache(maxsize=32)
def _two_term_logs(F: ff.FieldSpec):
    """log z and log(1 - z) over z not in {0, 1}."""
    tab = ff.tables(F)
    z = tab.all_codes()
    one_minus = tab.sub(tab.code(F.one()), z)
    keep = (tab.log[z] >= 0) & (tab.log[one_minus] >= 0)
    return tab.log[z[keep]], tab.log[one_minus[keep]]


def _J2(F, m, a, b) -> CycloInt:
    """sum over z != 0, 1 of chi^a(z) chi^b(1 - z), with chi^0 = 1 on units."""
    lz, l1 = _two_term_logs(F)
    e = (a * lz + b * l1) % m
    return CycloInt.from_counts(m, np.bincount(e, minlength=m))


def _jacobi_recursive(F, m, a) -> CycloInt:
    q = F.q
    neg = ff.sign_log(F)
    H1, H0 = CycloInt.from_int(m, 1), CycloInt.from_int(m, 0)
    A = a[0]
    for ak in a[1:]:
        Ak = (A + ak) % m
        new1 = _J2(F, m, ak, A) * H1 + H0
        new0 = CycloInt.eps(m, A * neg) * H1 * (q - 1) if Ak == 0 else CycloInt.from_int(m, 0)
        H1, H0, A = new1, new0, Ak
    sign = (-1) ** (len(a) + 1)
    return CycloInt.eps(m, A * neg) * H1 * sign


def _jacobi_direct(F, m, a, budget) -> CycloInt:
    d = len(a)
    q = F.q
    if q ** (d - 1) > budget.max_terms:
        raise DegreeTooLarge(f"{q}^{d - 1} terms exceed the budget")
    tab = ff.tables(F, budget)
    minus_one = tab.code(-F.one())
    counts = np.zeros(m, dtype=np.int64)
    z = tab.all_codes()
    # vectorise the last free coordinate, loop over the others
    for head in itertools.product(range(q), repeat=max(d - 2, 0)):
        hl = tab.log[np.array(head, dtype=np.int64)] if head else np.zeros(0, dtype=np.int64)
        if (hl < 0).any():
            continue
        e0 = int(sum(ai * li for ai, li in zip(a, hl)))
        s = minus_one
        for c in head:
            s = int(tab.sub(s, c))
        if d == 1:
            l_last = tab.log[np.array([s])]
            ok = l_last >= 0
            e = (e0 + a[0] * l_last) % m
        else:
            lz = tab.log[z]
            rest = tab.sub(np.full(q, s, dtype=np.int64), z)
            lr = tab.log[rest]
            ok = (lz >= 0) & (lr >= 0)
            e = (e0 + a[d - 2] * lz + a[d - 1] * lr) % m
        counts += np.bincount(e[ok], minlength=m)
    return CycloInt.from_counts(m, counts) * (-1) ** (d + 1)


def jacobi_sum(F: ff.FieldSpec, m: int, a, method: str = "auto",
               budget: Budget = DEFAULT_BUDGET) -> CycloInt:
    """(-1)^(d+1) * sum over z_1 + ... + z_d = -1 of prod chi^(a_i)(z_i)."""
    if (F.q - 1) % m:
        raise OrderMismatch(f"{m} does not divide {F.q} - 1")
    if not len(a):
        raise ValidationError("need at least one exponent")
    a = _check_exponents(m, a)
    if method == "auto":
        method = "recursive"
    if method == "recursive":
        return _jacobi_recursive(F, m, a)
    if method == "direct":
        return _jacobi_direct(F, m, a, budget)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# the function f on divisors

def _norm_log_factor(F: ff.FieldSpec, k: int) -> int:
    """s with N(g_E) = g_F^s, g_E and g_F the canonical primitive roots."""
    if k == 1:
        return 1
    E = ff.extension(F, k)
    gamma = ff.primitive_root(E) ** ((E.q - 1) // (F.q - 1))
    return ff.tables(F).log_of(ff.restrict(gamma, F))


def f_of_divisor(C: CurveSpec, D) -> ff.FqElem:
    """prod N(f(P))^n over (P, n) in D; P a ClosedPoint off the branch locus."""
    F = C.field
    out = F.one()
    for P, n in D:
        if P.in_T or P.x is None:
            raise SupportMeetsT(f"{P} lies over the branch locus")
        E = P.x.field
        if C.base is None:
            if any(P.x == ff.embed(xi, E) for xi in C.branch):
                raise SupportMeetsT(f"{P} is a branch point")
            val = C.f_value(P.x)
        else:
            if P.y is None or P.y.is_zero():
                raise SupportMeetsT(f"{P} is a zero of y0")
            val = P.y
        out = out * ff.norm_to_base(val, F) ** n
    return out


def f_of_monic(C: CurveSpec, qpoly) -> ff.FqElem:
    """f(div q) for monic q (coefficients in F, constant first), by reciprocity."""
    if C.base is not None or not C.infinity_branch:
        raise WrongShape("reciprocity route needs the projective line with infinity branched")
    F = C.field
    qpoly = [F.elem(c) for c in qpoly]
    if qpoly[-1] != F.one():
        raise ValidationError("q must be monic")
    l = len(qpoly) - 1
    out = C.lead**l * (F.one() if (l * sum(C.exponents)) % 2 == 0 else -F.one())
    for xi, a in zip(C.branch, C.exponents):
        v = F.zero()
        for c in reversed(qpoly):
            v = v * xi + c
        if v.is_zero():
            raise SupportMeetsT(f"q vanishes at the branch point {xi}")
        out = out * v**a
    return out


# ---------------------------------------------------------------------------
# divisor sums

def _monic_block(tab, pts, a, base_e, m, inner, prefix_vals):
    acc_e = np.full(len(inner[0]), base_e, dtype=np.int64)
    ok = np.ones(len(inner[0]), dtype=bool)
    for W, v, ai in zip(inner, prefix_vals, a):
        lv = tab.log[tab.add(W, v)]
        ok &= lv >= 0
        acc_e += ai * lv
    return np.bincount(acc_e[ok] % m, minlength=m)


@lru_cache(maxsize=256)
def _monic_histogram(C: CurveSpec, l: int, budget: Budget):
    """Counts of chi-exponents of f(div q) over monic q of degree l."""
    F, m = C.field, C.m
    q = F.q
    if l == 0:
        h = np.zeros(m, dtype=np.int64)
        h[0] = 1
        return h
    if q**l > budget.max_terms:
        raise DegreeTooLarge(f"{q}^{l} monic polynomials exceed the budget of {budget.max_terms}")
    tab = ff.tables(F, budget)
    a = C.exponents
    base_e = (l * sum(a) * ff.sign_log(F) + l * tab.log_of(C.lead)) % (q - 1)
    codes = tab.all_codes()
    pw = [[tab.code(x**j) for j in range(l + 1)] for x in C.branch]
    s = 0
    while s < l and q ** (s + 1) <= budget.chunk:
        s += 1
    s = max(s, 1)
    inner = []
    for i in range(C.d):
        W = np.zeros(1, dtype=np.int64)
        for j in range(s):
            cx = tab.mul(codes, pw[i][j])
            W = tab.add(W[:, None], cx[None, :]).ravel()
        inner.append(W)
    prefixes = list(itertools.product(range(q), repeat=l - s))

    def work(chunk):
        out = np.zeros(m, dtype=np.int64)
        for pre in chunk:
            vals = []
            for i in range(C.d):
                v = pw[i][l]
                for j, c in enumerate(pre, start=s):
                    v = int(tab.add(v, tab.mul(c, pw[i][j])))
                vals.append(v)
            out += _monic_block(tab, None, a, base_e, m, inner, vals)
        return out

    nthreads = max(1, min(budget.threads, len(prefixes)))
    if nthreads == 1:
        return work(prefixes)
    parts = [prefixes[i::nthreads] for i in range(nthreads)]
    with ThreadPoolExecutor(nthreads) as pool:
        return sum(pool.map(work, parts))


def _closed_point_histogram(C: CurveSpec, k: int, budget: Budget):
    """Counts of chi-exponents of N(f(P)) over closed points P of degree k off T."""
    m = C.m
    s = _norm_log_factor(C.field, k)
    E = ff.extension(C.field, k)
    tab = ff.tables(E, budget)
    if C.base is None:
        xs = zeta.p1_closed_point_codes(C.field, k, budget)
        lf = zeta.log_f(C, k, budget)[xs]
        lf = lf[lf >= 0]
    else:
        _, ys = zeta.curve_closed_point_codes(C.base_curve(), k, budget)
        lf = tab.log[ys]
    return np.bincount(lf * s % m, minlength=m)


@lru_cache(maxsize=64)
def _euler_series(C: CurveSpec, L: int, budget: Budget):
    """Group-ring coefficients A[l][c] = #{effective D of degree l off T : chi(f(D)) = zeta^c}."""
    m = C.m
    A = [[0] * m for _ in range(L + 1)]
    A[0][0] = 1
    for k in range(1, L + 1):
        hist = _closed_point_histogram(C, k, budget)
        for c in range(m):
            N = int(hist[c])
            if not N:
                continue
            # multiply by (1 - eps^c t^k)^(-N)
            B = [row[:] for row in A]
            for r in range(1, L // k + 1):
                coef = math.comb(N + r - 1, r)
                shift = r * c % m
                for l in range(0, L + 1 - r * k):
                    src = A[l]
                    dst = B[l + r * k]
                    for e in range(m):
                        if src[e]:
                            dst[(e + shift) % m] += coef * src[e]
            A = B
    return A


def _apply_power(counts, j, m):
    out = [0] * m
    for e, c in enumerate(counts):
        out[e * j % m] += int(c)
    return CycloInt.from_counts(m, out)


def divisor_char_sum(C: CurveSpec, l: int, j: int = 1, method: str = "auto",
                     budget: Budget = DEFAULT_BUDGET) -> CycloInt:
    """S_l(chi^j): sum of chi^j(f(D)) over effective divisors of degree l off the branch locus."""
    C.require_mu_m()
    if l < 0:
        raise ValueError("degree must be non-negative")
    if j % C.m == 0:
        raise BadExponent("j must be a unit mod m")
    if C.base is None:
        C = C.normalized()
    if method == "auto":
        method = "monic" if C.base is None else "points"
    if method == "monic":
        if C.base is not None:
            raise WrongShape("monic enumeration needs the projective line")
        counts = _monic_histogram(C, l, budget)
    elif method == "points":
        counts = _euler_series(C, l, budget)[l]
    else:
        raise ValueError(f"unknown method {method!r}")
    return _apply_power(counts, j, C.m)


@dataclass(frozen=True)
class LPoly:
    """P^chi(t) = sum_i S_i t^(D - i); ``sums`` holds S_0, ..., S_D."""
    m: int
    j: int
    sums: tuple

    @property
    def degree(self):
        return len(self.sums) - 1

    def coeffs(self):
        """Coefficients of P^chi, constant term first."""
        return tuple(reversed(self.sums))

    def to_json(self):
        return {"j": self.j, "degree": self.degree,
                "coeffs": [c.to_json() for c in self.coeffs()]}


def l_polynomial(C: CurveSpec, j: int = 1, method: str = "auto",
                 budget: Budget = DEFAULT_BUDGET) -> LPoly:
    if C.base is None:
        C = C.normalized()
    D = C.lpoly_degree
    return LPoly(C.m, j % C.m, tuple(divisor_char_sum(C, l, j, method, budget) for l in range(D + 1)))


def product_over_characters(C: CurveSpec, method: str = "auto", budget: Budget = DEFAULT_BUDGET):
    """prod_j sum_i S_i(chi^j) t^i as integers; equals the zeta numerator over F_q."""
    m = C.m
    acc = [CycloInt.from_int(m, 1)]
    for j in range(1, m):
        Lj = l_polynomial(C, j, method, budget).sums
        nxt = [CycloInt.from_int(m, 0)] * (len(acc) + len(Lj) - 1)
        for a, x in enumerate(acc):
            for b, y in enumerate(Lj):
                nxt[a + b] = nxt[a + b] + x * y
        acc = nxt
    if not all(c.is_rational() for c in acc):
        raise AssertionError("product over the characters is not rational")
    return tuple(c.coeffs[0] for c in acc)


def verify_constant_term(C: CurveSpec, j: int = 1, budget: Budget = DEFAULT_BUDGET):
    """Find k with S_D = (-1)^(d+1) eps^k q^g J(chi^(j a_1), ..., chi^(j a_d)).

    Returns (k, S_D, J).  Raises NoUnitMatch when no root of unity fits.
    """
    C.require_mu_m()
    if C.base is None:
        C = C.normalized()
    m, d = C.m, C.d
    D = C.lpoly_degree
    S = divisor_char_sum(C, D, j, budget=budget)
    J = jacobi_sum(C.field, m, [a * j for a in C.exponents], budget=budget)
    target = J * (C.q**C.base_genus * (-1) ** (d + 1))
    for k in range(m):
        if CycloInt.eps(m, k) * target == S:
            return k, S, J
    raise NoUnitMatch(f"S_{D} = {S} is not a unit multiple of {target}")
