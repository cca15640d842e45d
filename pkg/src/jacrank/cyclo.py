"""Exact arithmetic in Z[eps], eps a primitive m-th root of unity (m prime).

Elements are stored on the basis 1, eps, ..., eps^(m-2); eps^(m-1) is
rewritten as -(1 + eps + ... + eps^(m-2)).  Valuations at the primes above
p are read off after reducing modulo Hensel-lifted factors of the m-th
cyclotomic polynomial over Z/p^N.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import polys
from .errors import (ModulusMismatch, NonUnit, PrecisionExhausted,
                     RamifiedPrime, ZeroElement)


@dataclass(frozen=True)
class CycloInt:
    m: int
    coeffs: tuple

    @classmethod
    def from_counts(cls, m, counts):
        """sum_k counts[k] * eps^k for a length-m vector of counts."""
        counts = [int(c) for c in counts]
        if len(counts) != m:
            raise ValueError("need one count per power of eps")
        top = counts[m - 1]
        return cls(m, tuple(c - top for c in counts[: m - 1]))

    @classmethod
    def from_int(cls, m, n):
        return cls(m, (int(n),) + (0,) * (m - 2))

    @classmethod
    def eps(cls, m, k=1):
        counts = [0] * m
        counts[k % m] = 1
        return cls.from_counts(m, counts)

    def full(self):
        return list(self.coeffs) + [0]

    def _coerce(self, other):
        if isinstance(other, (int, np.integer)):
            return CycloInt.from_int(self.m, int(other))
        if not isinstance(other, CycloInt):
            return NotImplemented
        if other.m != self.m:
            raise ModulusMismatch(f"Z[eps_{self.m}] vs Z[eps_{other.m}]")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloInt(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.m
        acc = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % m] += a * b
        return CycloInt.from_counts(m, acc)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = CycloInt.from_int(self.m, 1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*e^{k}")
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {"m": self.m, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        m = int(obj["m"])
        coeffs = tuple(int(c) for c in obj["coeffs"])
        if len(coeffs) != m - 1:
            raise ValueError(f"expected {m - 1} coefficients")
        return cls(m, coeffs)


def cyclo_arith(a: CycloInt, b: CycloInt, op: str) -> CycloInt:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def galois(a: CycloInt, t: int) -> CycloInt:
    """sigma_t: eps -> eps^t."""
    m = a.m
    if t % m == 0:
        raise NonUnit(f"{t} is not a unit mod {m}")
    acc = [0] * m
    for k, c in enumerate(a.coeffs):
        acc[(k * t) % m] += c
    return CycloInt.from_counts(m, acc)


def conj(a: CycloInt) -> CycloInt:
    return galois(a, a.m - 1)


def abs_square(a: CycloInt):
    """a * conj(a) as an int, or None when the product is not rational."""
    prod = a * conj(a)
    return prod.coeffs[0] if prod.is_rational() else None


def evaluate(a: CycloInt, root):
    """Image of a under eps -> root (root an element of some ring with ** and +)."""
    out = root ** 0 * 0
    power = root ** 0
    for c in a.coeffs:
        if c:
            out = out + power * c
        power = power * root
    return out


def norm(a: CycloInt) -> int:
    """Absolute norm N_{Q(eps)/Q}(a)."""
    prod = CycloInt.from_int(a.m, 1)
    for t in range(1, a.m):
        prod = prod * galois(a, t)
    assert prod.is_rational()
    return prod.coeffs[0]


# ---------------------------------------------------------------------------
# primes above p

@dataclass(frozen=True)
class PrimeFactorization:
    p: int
    m: int
    h: int
    b: int
    N: int
    residues: tuple   # mod-p factors, constant term first, monic
    factors: tuple    # Hensel lifts modulo p^N
    roots: tuple      # roots[i] = set of c with eps^c... root zeta^c of factor i


def _order(p, m):
    h, x = 1, p % m
    while x != 1:
        x = x * p % m
        h += 1
    return h


def _hensel_step(f, g, hh, s, t, p, k):
    """Lift f = g*hh mod p^k to mod p^(k+1); s*g + t*hh = 1 mod p."""
    pk = p**k
    mod = pk * p
    e = polys.sub(f, polys.mul(g, hh, mod), mod)
    assert all(c % pk == 0 for c in e)
    e = [c // pk % p for c in e]
    dg = polys.rem(polys.mul(t, e, p), g, p)
    # e - dg*hh is divisible by g over F_p
    dh, r = polys.divmod_(polys.sub(e, polys.mul(dg, hh, p), p), g, p)
    assert not r
    g2 = polys.add(g, [pk * c for c in dg], mod)
    h2 = polys.add(hh, [pk * c for c in dh], mod)
    return g2, h2


def _lift_factor(f, g, p, N):
    hh, r = polys.divmod_(f, g, p)
    assert not r
    one, s, t = polys.xgcd(g, hh, p)
    assert one == [1]
    for k in range(1, N):
        g, hh = _hensel_step(f, g, hh, s, t, p, k)
    return tuple(g)


@functools.lru_cache(maxsize=None)
def factor_p(m: int, p: int, N: int = 8) -> PrimeFactorization:
    """Factor Phi_m = (x^m - 1)/(x - 1) over Z/p^N into b monic pieces of degree h."""
    from .ff import make_field, mth_roots_of_unity
    if p == m:
        raise RamifiedPrime(f"{p} ramifies in Z[eps_{m}]")
    if N < 1:
        raise ValueError("precision must be >= 1")
    h = _order(p, m)
    b = (m - 1) // h
    F = make_field(p, h)
    zeta_pows, _ = mth_roots_of_unity(F, m)
    seen, residues = set(), []
    for c in range(1, m):
        if c in seen:
            continue
        orbit = [c * p**i % m for i in range(h)]
        seen.update(orbit)
        poly = [F.one()]
        for e in orbit:  # multiply by (x - zeta^e)
            root = zeta_pows[e]
            nxt = [F.zero()] * (len(poly) + 1)
            for i, a in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + a
                nxt[i] = nxt[i] - a * root
            poly = nxt
        assert all(not any(a.coeffs[1:]) for a in poly)
        residues.append((tuple(a.coeffs[0] for a in poly), frozenset(orbit)))
    residues.sort(key=lambda r: r[0])
    phi = [1] * m
    lifted = tuple(_lift_factor(phi, list(g), p, N) for g, _ in residues)
    return PrimeFactorization(p, m, h, b, N, tuple(g for g, _ in residues), lifted,
                              tuple(o for _, o in residues))


def prime_index(fact: PrimeFactorization, c: int = 1) -> int:
    """Index of the factor vanishing at zeta^c (zeta the canonical m-th root)."""
    for i, orbit in enumerate(fact.roots):
        if c % fact.m in orbit:
            return i
    raise ValueError(f"{c} is not a unit mod {fact.m}")


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(a: CycloInt, fact: PrimeFactorization, i: int) -> int:
    if a.is_zero():
        raise ZeroElement("valuation of zero")
    if a.m != fact.m:
        raise ModulusMismatch("element and factorization use different m")
    mod = fact.p**fact.N
    r = polys.rem(list(a.coeffs), list(fact.factors[i]), mod)
    if not r:
        raise PrecisionExhausted(f"valuation >= {fact.N}")
    return min(_vp(c, fact.p) for c in r if c)


def valuation_auto(a: CycloInt, p: int, i: int = None, N: int = 8, c: int = None):
    """Valuation with precision doubling; pick the prime by index or by root exponent c."""
    while True:
        fact = factor_p(a.m, p, N)
        idx = prime_index(fact, c) if c is not None else i
        try:
            return valuation(a, fact, idx)
        except PrecisionExhausted:
            N *= 2


def valuations(a: CycloInt, p: int, N: int = 8):
    """Valuations at every prime above p, in factor order."""
    fact = factor_p(a.m, p, N)
    return [valuation_auto(a, p, i, N) for i in range(fact.b)]
