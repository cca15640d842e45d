"""Cartier-Manin matrices of hyperelliptic curves y^2 = f(x).

The (i, j) entry is the coefficient c_{ip-j} of f^((p-1)/2), 1 <= i, j <= g.
Over F_q the p-rank is the rank of A A^(p) ... A^(p^(g-1)), where A^(p)
raises every entry to the p-th power.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import ff
from .curves import CurveSpec
from .errors import EvenCharacteristic, NotSquarefree, WrongGenus, WrongShape


# small dense polynomial helpers over F_q (FqElem lists, constant first)

def _trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _pmul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _prem(a, b):
    a, b = _trim(a), _trim(b)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - c * y
        a = _trim(a)
    return a


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _prem(a, b)
    return a


def _ppow(a, e, F):
    out, base = [F.one()], a
    while e:
        if e & 1:
            out = _pmul(out, base, F)
        e >>= 1
        if e:
            base = _pmul(base, base, F)
    return out


def _coerce(f, F):
    return _trim(F.elem(c) for c in f)


@dataclass(frozen=True)
class CartierMatrix:
    p: int
    g: int
    field: ff.FieldSpec
    entries: tuple     # rows of FqElem
    coeffs: tuple      # all coefficients of f^((p-1)/2)

    def c(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero()

    def to_json(self):
        F = self.field
        return [[F.to_json(x) for x in row] for row in self.entries]


def cartier_matrix(f, p: int, F: ff.FieldSpec = None) -> CartierMatrix:
    if p == 2:
        raise EvenCharacteristic("the Cartier-Manin matrix needs odd p")
    F = F or ff.make_field(p)
    if F.p != p:
        raise ValueError("field characteristic differs from p")
    f = _coerce(f, F)
    deg = len(f) - 1
    if deg < 3:
        raise WrongShape("need deg f >= 3")
    df = _trim(x * i for i, x in enumerate(f))[1:] if deg else []
    df = _trim([f[i] * i for i in range(1, len(f))])
    if len(_pgcd(f, df)) > 1:
        raise NotSquarefree("f has a repeated factor")
    g = (deg - 1) // 2
    fr = _ppow(f, (p - 1) // 2, F)
    cm = CartierMatrix(p, g, F, (), tuple(fr))
    rows = tuple(tuple(cm.c(i * p - j) for j in range(1, g + 1)) for i in range(1, g + 1))
    return CartierMatrix(p, g, F, rows, tuple(fr))


def genus2_prank0_test(A: CartierMatrix) -> bool:
    """Trace and determinant of the 2x2 matrix both vanish."""
    if A.g != 2:
        raise WrongGenus(f"expected genus 2, got {A.g}")
    p = A.p
    trace = A.c(p - 1) + A.c(2 * p - 2)
    det = A.c(p - 1) * A.c(2 * p - 2) - A.c(p - 2) * A.c(2 * p - 1)
    return trace.is_zero() and det.is_zero()


def _frob(M, e):
    return [[x**e for x in row] for row in M]


def _matmul(X, Y, F):
    n, k, m = len(X), len(Y), len(Y[0])
    return [[sum((X[i][t] * Y[t][j] for t in range(k)), F.zero()) for j in range(m)]
            for i in range(n)]


def rank(M, F) -> int:
    M = [list(row) for row in M]
    r = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        for i in range(len(M)):
            if i != r and not M[i][c].is_zero():
                fac = M[i][c] * inv
                M[i] = [x - fac * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def semilinear_product(A: CartierMatrix):
    """A^(p^(g-1)) ... A^(p) A, the g-th power of the p-linear map."""
    F, p = A.field, A.p
    M = [list(row) for row in A.entries]
    out = M
    for k in range(1, A.g):
        out = _matmul(_frob(M, p**k), out, F)
    return out


def semilinear_prank(A: CartierMatrix) -> int:
    if A.g == 0:
        return 0
    return rank(semilinear_product(A), A.field)


# ---------------------------------------------------------------------------
# the two genus-2 sums against trace and determinant

@dataclass(frozen=True)
class EqMatch:
    p: int
    sum1: int            # sum over a of f(a)^r
    sum1_literal: int    # sum over a of [a(1+a) prod(alpha_i + a)]^r
    trace_form: int      # -c_{p-1} - c_{2p-2}
    sum2_literal: int    # double sum over monic quadratics
    sum2_split: int      # (sum over F_{p^2} of N(f)^r + sum over F_p x F_p) / 2
    det_form: int        # c_{p-1} c_{2p-2} - c_{p-2} c_{2p-1}
    ok: bool


def verify_eq_match(C: CurveSpec) -> EqMatch:
    """Check both sums against the Cartier-Manin trace and determinant, mod p."""
    F = C.field
    if C.m != 2 or C.d != 5 or C.base is not None or F.h != 1:
        raise WrongShape("need y^2 = quintic with split branch points over a prime field")
    if tuple(sorted(C.exponents)) != (1,) * 5 or C.lead != F.one():
        raise WrongShape("need a monic squarefree quintic")
    p = F.p
    r = (p - 1) // 2
    xs = [x.coeffs[0] for x in C.branch]
    if 0 not in xs or 1 not in xs:
        raise WrongShape("branch points must contain 0 and 1")
    alphas = [x for x in xs if x not in (0, 1)]

    def f(a):
        out = 1
        for x in xs:
            out = out * (a - x) % p
        return out

    sum1 = sum(pow(f(a), r, p) for a in range(p)) % p
    lit1 = 1
    sum1_literal = 0
    for a in range(p):
        lit1 = a * (1 + a)
        for al in alphas:
            lit1 = lit1 * (al + a) % p
        sum1_literal += pow(lit1, r, p)
    sum1_literal %= p

    sum2_literal = 0
    for a in range(p):
        for b in range(p):
            v = a * (1 + b + a)
            for al in alphas:
                v = v * (al * al + al * b + a) % p
            sum2_literal += pow(v, r, p)
    sum2_literal %= p

    E = ff.extension(F, 2)
    big = E.zero()
    for al in E.elements():
        v = C.f_value(al)
        big = big + (v * v**p) ** r
    big = ff.restrict(big, F).coeffs[0]
    pairs = sum1 * sum1
    sum2_split = (big + pairs) * pow(2, -1, p) % p

    A = cartier_matrix([c.coeffs[0] for c in _expand(xs, p)], p)
    c = lambda k: A.c(k).coeffs[0]
    trace_form = (-c(p - 1) - c(2 * p - 2)) % p
    det_form = (c(p - 1) * c(2 * p - 2) - c(p - 2) * c(2 * p - 1)) % p
    sign = pow(-1, r, p)
    ok = (sum1 == trace_form and sum1_literal == sign * sum1 % p
          and sum2_literal == det_form and sum2_split == sum2_literal)
    return EqMatch(p, sum1, sum1_literal, trace_form, sum2_literal, sum2_split, det_form, ok)


def _expand(xs, p):
    F = ff.make_field(p)
    out = [F.one()]
    for x in xs:
        out = _pmul(out, [F(-x), F.one()], F)
    return out


def hyperelliptic_poly(C: CurveSpec):
    """f = lead * prod (x - x_i) for a curve y^2 = f."""
    if C.m != 2 or C.base is not None:
        raise WrongShape("need y^2 = f(x) over the projective line")
    F = C.field
    out = [C.lead]
    for x in C.branch:
        out = _pmul(out, [-x, F.one()], F)
    return out
