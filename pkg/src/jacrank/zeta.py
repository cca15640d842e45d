"""Point counts, zeta numerators and closed points: the brute-force oracle.

Counting works on integer codes of F_{q^k}: for the cover y^m = f over
the projective line an unbranched rational x contributes gcd(m, Q-1)
points when log f(x) is divisible by that gcd, and none otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ff
from .config import DEFAULT_BUDGET, Budget
from .curves import ClosedPoint, CurveSpec
from .errors import BudgetExceeded, InconsistentCounts, WrongShape


# ---------------------------------------------------------------------------
# counting

def _field_data(C: CurveSpec, k: int, budget: Budget):
    E = ff.extension(C.field, k)
    tab = ff.tables(E, budget)
    pts = np.array([tab.code(ff.embed(x, E)) for x in C.branch], dtype=np.int64)
    return E, tab, pts


def log_f(C: CurveSpec, k: int, budget: Budget = DEFAULT_BUDGET):
    """Discrete log of f(x) for every code x of F_{q^k}; -1 where f(x) = 0."""
    E, tab, pts = _field_data(C, k, budget)
    xs = tab.all_codes()
    Q = E.q
    acc = np.full(Q, tab.log_of(ff.embed(C.lead, E)), dtype=np.int64)
    zero = np.zeros(Q, dtype=bool)
    for xi, a in zip(pts, C.exponents):
        lx = tab.log[tab.sub(xs, xi)]
        zero |= lx < 0
        acc = (acc + a * lx) % (Q - 1)
    acc[zero] = -1
    return acc


def _count_p1_cover(C: CurveSpec, k: int, budget: Budget) -> int:
    Q = C.q**k
    g0 = math.gcd(C.m, Q - 1)
    lf = log_f(C, k, budget)
    good = (lf >= 0) & (lf % g0 == 0)
    n = g0 * int(good.sum()) + C.d
    if C.infinity_branch:
        n += 1
    else:
        E = ff.extension(C.field, k)
        n += g0 if ff.tables(E, budget).log_of(ff.embed(C.lead, E)) % g0 == 0 else 0
    return n


def curve_point_arrays(C: CurveSpec, k: int, budget: Budget = DEFAULT_BUDGET):
    """Codes (x, y) of the affine points with f(x) != 0 over F_{q^k}."""
    if C.base is not None:
        raise WrongShape("expected a cover of the projective line")
    E = ff.extension(C.field, k)
    tab = ff.tables(E, budget)
    N = E.q - 1
    lf = log_f(C, k, budget)
    g0 = math.gcd(C.m, N)
    xs = np.nonzero((lf >= 0) & (lf % g0 == 0))[0]
    if len(xs) == 0:
        return xs, xs
    n0 = N // g0
    inv = pow(C.m // g0, -1, n0) if n0 > 1 else 0
    base = (lf[xs] // g0) * inv % max(n0, 1)
    X = np.repeat(xs, g0)
    L = (np.repeat(base, g0) + np.tile(np.arange(g0, dtype=np.int64) * n0, len(xs))) % N
    return X, tab.exp[L]


def _count_superelliptic(C: CurveSpec, k: int, budget: Budget) -> int:
    E0 = C.base_curve()
    Q = C.q**k
    g0 = math.gcd(C.m, Q - 1)
    tab = ff.tables(ff.extension(C.field, k), budget)
    _, ys = curve_point_arrays(E0, k, budget)
    ly = tab.log[ys]
    return C.d + 1 + g0 * int((ly % g0 == 0).sum())


def count_points(C, k: int = 1, budget: Budget = DEFAULT_BUDGET) -> int:
    """Number of F_{q^k}-points on the smooth projective model."""
    if k < 1:
        raise ValueError("k must be positive")
    if isinstance(C, ff.FieldSpec):
        return C.q**k + 1
    if C.q**k > budget.max_field:
        raise BudgetExceeded(f"F_{C.q}^{k} exceeds the table budget")
    if C.base is None:
        return _count_p1_cover(C, k, budget)
    return _count_superelliptic(C, k, budget)


def genus(C: CurveSpec) -> int:
    return C.genus()


# ---------------------------------------------------------------------------
# zeta numerator

@dataclass(frozen=True)
class ZetaData:
    q: int
    p: int
    genus: int
    counts: tuple      # N_1, N_2, ...
    L: tuple           # L(t) coefficients, constant term first
    prank: int
    supersingular: bool
    extra_checked: bool

    def to_json(self):
        return {"q": self.q, "genus": self.genus, "counts": list(self.counts),
                "L": list(self.L), "prank": self.prank,
                "supersingular": self.supersingular, "extra_checked": self.extra_checked}


def _power_sums_to_L(s, n):
    c = [1]
    for k in range(1, n + 1):
        tot = sum(s[i - 1] * c[k - i] for i in range(1, k + 1))
        if tot % k:
            raise InconsistentCounts(f"Newton identity not integral at k = {k}")
        c.append(-tot // k)
    return c


def L_to_counts(L, q, K):
    """N_1..N_K predicted by an L-polynomial."""
    s = []
    for k in range(1, K + 1):
        c_k = L[k] if k < len(L) else 0
        s.append(-k * c_k - sum(s[i - 1] * (L[k - i] if k - i < len(L) else 0)
                                for i in range(1, k)))
    return [q**k + 1 - s[k - 1] for k in range(1, K + 1)]


def p_rank_of_L(L, p) -> int:
    deg = 0
    for i, c in enumerate(L):
        if c % p:
            deg = i
    return deg


def zeta_numerator(C: CurveSpec, full: bool = False, extra: bool = True,
                   budget: Budget = DEFAULT_BUDGET) -> ZetaData:
    """L(t) from counts over F_{q^k}, k <= genus (all 2*genus with full=True)."""
    g, q = C.genus(), C.q
    K = 2 * g if full else g
    if q**max(K, 1) > budget.max_field:
        raise BudgetExceeded(f"need F_{q}^{K}, above the table budget")
    counts = [count_points(C, k, budget) for k in range(1, K + 1)]
    for k, n in enumerate(counts, 1):
        if (n - q**k - 1) ** 2 > 4 * g * g * q**k:
            raise InconsistentCounts(f"N_{k} = {n} breaks the Weil bound")
    s = [q**k + 1 - n for k, n in enumerate(counts, 1)]
    c = _power_sums_to_L(s, K)
    L = c[: g + 1] + [0] * g
    for i in range(g + 1, 2 * g + 1):
        L[i] = q ** (i - g) * c[2 * g - i]
    if full and L != c:
        raise InconsistentCounts("counts contradict the functional equation")
    extra_checked = False
    if extra and not full and g > 0 and q ** (g + 1) <= budget.max_field:
        nk = count_points(C, g + 1, budget)
        if nk != L_to_counts(L, q, g + 1)[-1]:
            raise InconsistentCounts(f"N_{g + 1} disagrees with the computed L-polynomial")
        counts.append(nk)
        extra_checked = True
    if sum(L) <= 0 and g > 0:
        raise InconsistentCounts("L(1) must be positive")
    return ZetaData(q, C.p, g, tuple(counts), tuple(L), p_rank_of_L(L, C.p),
                    supersingular_test(L, q), extra_checked)


# ---------------------------------------------------------------------------
# supersingularity

def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivmod(a, b):
    a = list(a)
    qt = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        c = Fraction(a[-1]) / b[-1]
        qt[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return qt, a


def cyclotomic(j: int):
    num = [-1] + [0] * (j - 1) + [1]
    for d in range(1, j):
        if j % d == 0:
            num, r = _pdivmod(num, cyclotomic(d))
            assert not r
    return [int(c) for c in num]


def _phi(j):
    return sum(1 for i in range(1, j + 1) if math.gcd(i, j) == 1)


def supersingular_test(L, q) -> bool:
    """True when every root of the reversed L-polynomial is sqrt(q) times a root of unity.

    The squared roots divided by q must be roots of unity; we peel off
    cyclotomic factors of that normalised polynomial until nothing is left.
    """
    n = len(L) - 1
    if n == 0:
        return True
    P = list(reversed(L))               # monic, roots alpha_i
    Pm = [c * (-1) ** i for i, c in enumerate(P)]
    prod = _pmul(P, Pm)                 # P(t) P(-t), even polynomial
    P2 = [prod[2 * i] * (-1) ** n for i in range(n + 1)]
    Qn = [Fraction(c * q**i, q**n) for i, c in enumerate(P2)]
    js = [j for j in range(1, 4 * n * n + 3) if _phi(j) <= n]
    for j in js:
        phi = cyclotomic(j)
        while len(Qn) > 1:
            qt, r = _pdivmod(Qn, phi)
            if r:
                break
            Qn = qt
    return len(Qn) == 1


def supersingular_by_divisibility(L, q) -> bool:
    """Literal form: the squarefree part of P divides t^(2n) - q^n."""
    g2 = len(L) - 1
    if g2 == 0:
        return True
    n = 1
    for j in range(1, 4 * g2 * g2 + 3):
        if _phi(j) <= 2 * g2:
            n = n * j // math.gcd(n, j)
    P = [Fraction(c) for c in reversed(L)]
    dP = [i * c for i, c in enumerate(P)][1:]
    a, b = P, dP
    while b and any(b):
        _, r = _pdivmod(a, b)
        a, b = b, r
    R, rr = _pdivmod(P, a)
    assert not rr
    target = [Fraction(-q**n)] + [0] * (2 * n - 1) + [1]
    _, r = _pdivmod(target, R)
    return not r


# ---------------------------------------------------------------------------
# closed points

def _exact_orbit_reps(keys_by_frob, k):
    """Mask of orbit representatives of exact degree k given keys of F^i(P), i < k."""
    keys0 = keys_by_frob[0]
    exact = np.ones(len(keys0), dtype=bool)
    for j in range(1, k):
        if k % j == 0:
            exact &= keys_by_frob[j] != keys0
    rep = np.ones(len(keys0), dtype=bool)
    for j in range(1, k):
        rep &= keys0 <= keys_by_frob[j]
    return exact & rep


def p1_closed_point_codes(F: ff.FieldSpec, k: int, budget: Budget = DEFAULT_BUDGET):
    """Codes in F_{q^k} of the least representatives of degree-k closed points of the affine line."""
    E = ff.extension(F, k)
    tab = ff.tables(E, budget)
    xs = tab.all_codes()
    keys = [xs]
    for _ in range(1, k):
        keys.append(tab.power(keys[-1], F.q))
    return xs[_exact_orbit_reps(keys, k)]


def curve_closed_point_codes(C: CurveSpec, k: int, budget: Budget = DEFAULT_BUDGET):
    """Representatives (x, y) of degree-k closed points with f(x) != 0."""
    E = ff.extension(C.field, k)
    tab = ff.tables(E, budget)
    X, Y = curve_point_arrays(C, k, budget)
    Q = E.q
    keys, x, y = [X * Q + Y], X, Y
    for _ in range(1, k):
        x, y = tab.power(x, C.q), tab.power(y, C.q)
        keys.append(x * Q + y)
    mask = _exact_orbit_reps(keys, k)
    return X[mask], Y[mask]


def closed_points(C, max_degree: int, budget: Budget = DEFAULT_BUDGET):
    """Closed points of degree <= max_degree on P^1 (FieldSpec) or on y^m = f."""
    out = []
    if isinstance(C, ff.FieldSpec):
        out.append(ClosedPoint(1, None, kind="infinite"))
        for k in range(1, max_degree + 1):
            E = ff.extension(C, k)
            out.extend(ClosedPoint(k, E.from_code(c)) for c in p1_closed_point_codes(C, k, budget))
        return out
    if C.base is not None:
        raise WrongShape("closed points are listed for covers of the projective line")
    F = C.field
    for xi in C.branch:
        out.append(ClosedPoint(1, xi, F.zero(), kind="ramified", in_T=True))
    if C.infinity_branch:
        out.append(ClosedPoint(1, None, kind="infinite", in_T=True))
    for k in range(1, max_degree + 1):
        E = ff.extension(F, k)
        if not C.infinity_branch:
            # points (infinity, y) with y^m = lead; orbit reps of exact degree k
            lead = ff.embed(C.lead, E)
            roots = sorted(y for y in E.elements() if y ** C.m == lead)
            for y in roots:
                orbit = [y ** (F.q**i) for i in range(k)]
                if min(orbit) == y and all(orbit[j] != y for j in range(1, k) if k % j == 0):
                    out.append(ClosedPoint(k, None, y, kind="infinite", in_T=False))
        X, Y = curve_closed_point_codes(C, k, budget)
        out.extend(ClosedPoint(k, E.from_code(a), E.from_code(b)) for a, b in zip(X, Y))
    return out
