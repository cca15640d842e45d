"""Exponent combinatorics and the p-rank decision procedures for cyclic covers.

d_u = [sum_i <u a_i / m>] is the dimension of the chi^u-eigenspace of
H^1(Y, O_Y).  The Jacobi sum generates p^theta(a), theta(a) = sum d_u
sigma_{-u}^{-1}, so its valuation at the prime where eps -> zeta^c is the
sum of d_{-c u} over the decomposition group C_h.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import charsum, cyclo, ff, zeta
from .config import DEFAULT_BUDGET, Budget
from .curves import CurveSpec
from .cyclo import CycloInt
from .errors import BadExponent, BaseNotP1, HypothesisViolated, RamifiedPrime


@dataclass(frozen=True)
class ExponentData:
    m: int
    a: tuple
    p: int
    h: int
    b: int
    c_h: tuple          # the subgroup generated by p mod m
    e_h: tuple          # least representative of each coset
    d: dict             # u -> d_u
    theta: tuple        # (u, d_u): coefficient of sigma_{-u}^{-1}
    O: dict             # t -> O_t for t in e_h

    @property
    def genus(self):
        return sum(self.d.values())

    def to_json(self):
        return {"m": self.m, "a": list(self.a), "p": self.p, "h": self.h, "b": self.b,
                "c_h": list(self.c_h), "e_h": list(self.e_h),
                "d": {str(u): v for u, v in sorted(self.d.items())},
                "theta": [list(x) for x in self.theta],
                "O": {str(t): v for t, v in sorted(self.O.items())}}


def exponent_data(m: int, a, p: int) -> ExponentData:
    if not ff.is_prime(m) or not ff.is_prime(p):
        raise ValueError("m and p must be prime")
    if p == m:
        raise RamifiedPrime(f"p = m = {m}")
    for i, x in enumerate(a):
        if x % m == 0:
            raise BadExponent(f"a[{i}] = {x} is divisible by m")
    a = tuple(x % m for x in a)
    c_h = sorted({pow(p, i, m) for i in range(m)})
    h = len(c_h)
    seen, e_h = set(), []
    for t in range(1, m):
        if t not in seen:
            e_h.append(t)
            seen.update(t * u % m for u in c_h)
    d = {u: sum(u * x % m for x in a) // m for u in range(1, m)}
    O = {t: sum(d[t * u % m] for u in c_h) for t in e_h}
    theta = tuple((u, d[u]) for u in range(1, m))
    return ExponentData(m, a, p, h, (m - 1) // h, tuple(c_h), tuple(e_h), d, theta, O)


def not_supersingular_test(E: ExponentData) -> bool:
    return any(E.O[t] != E.O[1] for t in E.e_h)


def not_prank0_test(E: ExponentData) -> bool:
    return any(E.O[t] == 0 for t in E.e_h)


def stickelberger_valuations(E: ExponentData, N: int = 8):
    """Predicted valuations of the Jacobi sum, one per factor in factor_p order."""
    fact = cyclo.factor_p(E.m, E.p, N)
    return [sum(E.d[(-c * u) % E.m] for u in E.c_h) for c in (min(r) for r in fact.roots)]


def curve_exponent_data(C: CurveSpec) -> ExponentData:
    """Exponent data of the normalised cover (infinity branched)."""
    if C.base is None:
        C = C.normalized()
    return exponent_data(C.m, C.exponents, C.p)


# ---------------------------------------------------------------------------
# reduction mod the canonical prime

def zeta_q(F: ff.FieldSpec, m: int) -> ff.FqElem:
    roots, _ = ff.mth_roots_of_unity(F, m)
    return roots[1]


def reduce_mod_prime(x: CycloInt, F: ff.FieldSpec) -> ff.FqElem:
    """Image of x under eps -> zeta in F."""
    return cyclo.evaluate(x, zeta_q(F, x.m))


def prime_index_for(F: ff.FieldSpec, m: int, N: int = 8) -> int:
    """Index of the factor of Phi_m vanishing at zeta in F."""
    fact = cyclo.factor_p(m, F.p, N)
    z = zeta_q(F, m)
    for i, g in enumerate(fact.residues):
        acc = F.zero()
        for c in reversed(g):
            acc = acc * z + F(c)
        if acc.is_zero():
            return i
    raise AssertionError("no factor vanishes at zeta")


def is_zero_mod_prime(x: CycloInt, F: ff.FieldSpec) -> bool:
    """x in ker(eps -> zeta), decided by valuation and checked by evaluation."""
    by_eval = reduce_mod_prime(x, F).is_zero()
    if x.is_zero():
        return True
    v = cyclo.valuation_auto(x, F.p, prime_index_for(F, x.m))
    if (v >= 1) != by_eval:
        raise AssertionError("valuation and evaluation disagree")
    return by_eval


# ---------------------------------------------------------------------------
# equation systems

@dataclass(frozen=True)
class Equation:
    l: int
    j: int
    value: CycloInt
    satisfied: bool


@dataclass(frozen=True)
class EquationSystem:
    case: str                 # inert | split
    equations: tuple
    base_prank: int
    prank0: bool

    @property
    def system(self):
        return [(e.l, e.j) for e in self.equations]

    def to_json(self):
        return {"case": self.case, "base_prank": self.base_prank, "prank0": self.prank0,
                "equations": [{"l": e.l, "j": e.j, "value": e.value.to_json(),
                               "satisfied": e.satisfied} for e in self.equations]}


def base_prank(C: CurveSpec, budget: Budget = DEFAULT_BUDGET) -> int:
    if C.base is None:
        return 0
    B = C.base_curve()
    if (B.q - 1) % B.m == 0:
        return criterion_prank(B, budget)
    return zeta.zeta_numerator(B, budget=budget).prank


def prank0_equations(C: CurveSpec, strict: bool = False,
                     budget: Budget = DEFAULT_BUDGET) -> EquationSystem:
    C.require_mu_m()
    if C.base is None:
        C = C.normalized()
    E = exponent_data(C.m, C.exponents, C.p)
    D = C.lpoly_degree
    if E.b == 1:
        case, js = "inert", [1]
        bp = base_prank(C, budget)
    else:
        if C.base is not None:
            raise BaseNotP1("the split-prime system needs the projective line as base")
        bad = [t for t in E.e_h if E.O[t] == 0]
        if bad:
            raise HypothesisViolated(f"O_t = 0 for t in {bad}")
        case = "split"
        js = list(range(1, C.m)) if strict else list(E.e_h)
        bp = 0
    eqs = []
    for j in js:
        for l in range(1, D):
            S = charsum.divisor_char_sum(C, l, j, budget=budget)
            eqs.append(Equation(l, j, S, is_zero_mod_prime(S, C.field)))
    ok = bp == 0 and all(e.satisfied for e in eqs)
    return EquationSystem(case, tuple(eqs), bp, ok)


def lemma_form(C: CurveSpec, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Every P^(chi^j) is t^r + p Q_j(t): all non-leading sums divisible by p."""
    C.require_mu_m()
    for j in range(1, C.m):
        sums = charsum.l_polynomial(C, j, budget=budget).sums
        if any(c % C.p for S in sums[1:] for c in S.coeffs):
            return False
    return True


def unit_root_count(L: charsum.LPoly, F: ff.FieldSpec) -> int:
    """Degree of sum_i S_i t^i mod the canonical prime."""
    deg = 0
    for i, S in enumerate(L.sums):
        if not reduce_mod_prime(S, F).is_zero():
            deg = i
    return deg


def criterion_prank(C: CurveSpec, budget: Budget = DEFAULT_BUDGET) -> int:
    """p-rank from the character sums: base p-rank plus the unit roots of each P^(chi^j)."""
    C.require_mu_m()
    total = base_prank(C, budget)
    for j in range(1, C.m):
        total += unit_root_count(charsum.l_polynomial(C, j, budget=budget), C.field)
    return total


# ---------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class PrankVerdict:
    route: str                      # criterion | oracle | cartier
    prank: Optional[int]
    supersingular: Optional[bool] = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"route": self.route, "prank": self.prank,
                "supersingular": self.supersingular, "detail": self.detail}


def criterion_verdict(C: CurveSpec, budget: Budget = DEFAULT_BUDGET) -> PrankVerdict:
    C = C if (C.q - 1) % C.m == 0 else C.with_mu_m()
    Cn = C.normalized() if C.base is None else C
    E = exponent_data(Cn.m, Cn.exponents, Cn.p)
    detail = {"not_supersingular_certified": not_supersingular_test(E),
              "exponents": E.to_json()}
    if C.base is None:
        detail["not_prank0_certified"] = not_prank0_test(E)
    try:
        detail["equations"] = prank0_equations(C, budget=budget).to_json()
    except HypothesisViolated as exc:
        Z = zeta.zeta_numerator(C, budget=budget)
        detail["equations"] = {"skipped": str(exc), "fallback": "oracle", "prank0": Z.prank == 0}
    pr = criterion_prank(C, budget)
    ss = False if detail["not_supersingular_certified"] else None
    return PrankVerdict("criterion", pr, ss, detail)


def oracle_verdict(C: CurveSpec, budget: Budget = DEFAULT_BUDGET) -> PrankVerdict:
    Z = zeta.zeta_numerator(C, budget=budget)
    return PrankVerdict("oracle", Z.prank, Z.supersingular, {"L": list(Z.L), "genus": Z.genus})


# ---------------------------------------------------------------------------
# Deuring polynomial

@dataclass(frozen=True)
class DeuringData:
    p: int
    coeffs: tuple        # H mod p, constant term first
    roots: tuple         # roots in F_{p^2}, canonical order

    def to_json(self):
        E = ff.make_field(self.p, 2)
        return {"p": self.p, "coeffs": list(self.coeffs),
                "roots": [E.to_json(x) for x in self.roots], "field": E.describe()}


def deuring(p: int) -> DeuringData:
    if p == 2 or not ff.is_prime(p):
        raise ValueError("p must be an odd prime")
    r = (p - 1) // 2
    coeffs = tuple(math.comb(r, i) ** 2 % p for i in range(r + 1))
    E = ff.make_field(p, 2)
    roots = []
    for lam in E.elements():
        acc = E.zero()
        for c in reversed(coeffs):
            acc = acc * lam + E(c)
        if acc.is_zero():
            roots.append(lam)
    return DeuringData(p, coeffs, tuple(roots))
