"""Finite fields F_{p^h} with a canonical, reproducible presentation.

A field is fixed by ``(p, h)``: the modulus is the lexicographically least
monic irreducible polynomial of degree ``h`` (coefficients compared constant
term first) and the distinguished primitive root is the least primitive
element in the same order.  Every character value downstream is computed
relative to these choices.

Two layers live here.  ``FqElem`` is a plain value type with operator
overloads, used for setup work and small computations.  ``FieldTables``
holds numpy exp/log tables over integer codes and carries the hot loops.
An element's code is ``sum(c_i * p**(h-1-i))`` so that integer order is the
canonical order.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from . import polys
from .config import DEFAULT_BUDGET
from .errors import (BudgetExceeded, DegreeZero, DivideByZero, FieldMismatch,
                     NonPrime, OrderMismatch)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if polys.sub(polys.powmod(x, p**n, f, p), x, p):
        return False
    for r in factorint(n):
        t = polys.sub(polys.powmod(x, p ** (n // r), f, p), x, p)
        if len(polys.gcd(f, t, p)) > 1:
            return False
    return True


def least_irreducible(p: int, h: int) -> tuple:
    if h == 1:
        return (0, 1)
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=h - 1):
            f = [c0, *rest, 1]
            if is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    h: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.h

    def __repr__(self):
        return f"F_{self.p}^{self.h}" if self.h > 1 else f"F_{self.p}"

    def elem(self, coeffs) -> "FqElem":
        if isinstance(coeffs, FqElem):
            if coeffs.field != self:
                raise FieldMismatch(f"{coeffs!r} is not in {self!r}")
            return coeffs
        if isinstance(coeffs, (int, np.integer)):
            return self.from_int(int(coeffs))
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.h:
            raise ValueError(f"{len(c)} coefficients for a degree-{self.h} field")
        return FqElem(self, tuple(c + [0] * (self.h - len(c))))

    __call__ = elem

    def from_int(self, n: int) -> "FqElem":
        return FqElem(self, (n % self.p,) + (0,) * (self.h - 1))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def gen(self):
        """Class of x modulo the defining polynomial."""
        if self.h == 1:
            return self.from_int(0)
        return FqElem(self, (0, 1) + (0,) * (self.h - 2))

    def code(self, e: "FqElem") -> int:
        c = 0
        for x in e.coeffs:
            c = c * self.p + x
        return c

    def from_code(self, c: int) -> "FqElem":
        out = []
        for _ in range(self.h):
            c, r = divmod(int(c), self.p)
            out.append(r)
        return FqElem(self, tuple(reversed(out)))

    def elements(self):
        """All elements in canonical order."""
        for c in itertools.product(range(self.p), repeat=self.h):
            yield FqElem(self, c)

    def to_json(self, e: "FqElem"):
        return e.coeffs[0] if self.h == 1 else list(e.coeffs)

    def describe(self) -> dict:
        return {"p": self.p, "h": self.h, "q": self.q, "modulus": list(self.modulus)}


@dataclass(frozen=True, order=False)
class FqElem:
    field: FieldSpec
    coeffs: tuple

    def _check(self, other):
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        if not isinstance(other, FqElem):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        prod = polys.mul(self.coeffs, other.coeffs, F.p)
        r = polys.rem(prod, F.modulus, F.p) if F.h > 1 else prod
        r = list(r) + [0] * (F.h - len(r))
        return FqElem(F, tuple(r))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise DivideByZero("inverse of zero")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __int__(self):
        return self.field.code(self)

    def __repr__(self):
        if self.field.h == 1:
            return str(self.coeffs[0])
        terms = [f"{c}" + (f"*x^{i}" if i else "") for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def make_field(p: int, h: int = 1) -> FieldSpec:
    """Canonical F_{p^h}; repeated calls return the same object."""
    if h < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {h}")
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p**h >= 2**63:
        raise ValueError("field too large for enumeration")
    return FieldSpec(p, h, least_irreducible(p, h))


def arith(a: FqElem, b, op: str) -> FqElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


def _prime_factors(n: int):
    return sorted(factorint(n))


@functools.lru_cache(maxsize=None)
def primitive_root(F: FieldSpec) -> FqElem:
    """Least generator of F^x in canonical order."""
    n = F.q - 1
    if n == 1:
        return F.one()
    cofactors = [n // r for r in _prime_factors(n)]
    for g in F.elements():
        if g.is_zero():
            continue
        if all(g**c != F.one() for c in cofactors):
            return g
    raise AssertionError("no primitive root")


def mth_roots_of_unity(F: FieldSpec, m: int):
    """Return ([zeta^0, ..., zeta^(m-1)], dlog) for the canonical zeta."""
    if (F.q - 1) % m:
        raise OrderMismatch(f"{m} does not divide {F.q} - 1")
    zeta = primitive_root(F) ** ((F.q - 1) // m)
    roots = [zeta**k for k in range(m)]
    return roots, {u: k for k, u in enumerate(roots)}


def extension(F: FieldSpec, k: int) -> FieldSpec:
    return make_field(F.p, F.h * k)


@functools.lru_cache(maxsize=None)
def _embedding(F: FieldSpec, E: FieldSpec):
    if E.p != F.p or E.h % F.h:
        raise FieldMismatch(f"{F!r} does not embed in {E!r}")
    if F.h == 1:
        return None
    # F sits in E as {0} U <w>, w = g^((Q-1)/(q-1)); take the least root of F's modulus
    w = primitive_root(E) ** ((E.q - 1) // (F.q - 1))
    roots = []
    z = E.one()
    for _ in range(F.q - 1):
        val = E.zero()
        for c in reversed(F.modulus):
            val = val * z + c
        if val.is_zero():
            roots.append(z)
        z = z * w
    beta = min(roots)
    powers = [E.one()]
    for _ in range(F.h - 1):
        powers.append(powers[-1] * beta)
    return beta, powers


def embed(a: FqElem, E: FieldSpec) -> FqElem:
    """Image of a in the extension E under the canonical embedding."""
    F = a.field
    if F == E:
        return a
    data = _embedding(F, E)
    if data is None:
        return E.from_int(a.coeffs[0])
    _, powers = data
    out = E.zero()
    for c, b in zip(a.coeffs, powers):
        if c:
            out = out + b * c
    return out


def restrict(b: FqElem, F: FieldSpec) -> FqElem:
    """Inverse of ``embed``: the element of F mapping to b (b must lie in F)."""
    E = b.field
    if F == E:
        return b
    data = _embedding(F, E)
    p = F.p
    if data is None:
        if any(b.coeffs[1:]):
            raise FieldMismatch(f"{b!r} is not in the prime field")
        return F.from_int(b.coeffs[0])
    _, powers = data
    # solve sum_i c_i * powers[i] = b over F_p
    cols = [list(v.coeffs) for v in powers]
    rows = [[cols[j][i] for j in range(F.h)] + [b.coeffs[i]] for i in range(E.h)]
    sol = _solve_mod_p(rows, F.h, p)
    if sol is None:
        raise FieldMismatch(f"{b!r} does not lie in {F!r}")
    return F.elem(sol)


def _solve_mod_p(rows, ncols, p):
    rows = [r[:] for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] % p for row in rows[r:]):
        return None
    sol = [0] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


def norm_to_base(a: FqElem, F: FieldSpec) -> FqElem:
    """Field norm N_{E/F}(a) = a^(1 + q + ... + q^(k-1)), returned as an element of F."""
    E = a.field
    if E == F:
        return a
    if E.h % F.h:
        raise FieldMismatch(f"{E!r} is not an extension of {F!r}")
    return restrict(a ** ((E.q - 1) // (F.q - 1)), F)


class FieldTables:
    """Vectorised arithmetic on integer codes via exp/log tables.

    ``log[0]`` is -1; ``exp`` has length q - 1 and starts at 1.
    """

    def __init__(self, F: FieldSpec):
        self.F = F
        self.p, self.n, self.q = F.p, F.h, F.q
        self.weights = np.array([F.p ** (F.h - 1 - i) for i in range(F.h)], dtype=np.int64)
        self.g = primitive_root(F)
        self.exp = self._build_exp()
        log = np.full(self.q, -1, dtype=np.int64)
        log[self.exp] = np.arange(self.q - 1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("primitive root table is not a permutation")
        self.log = log

    def _mul_matrix(self, c: FqElem):
        F = self.F
        cols = []
        xj = F.one()
        for _ in range(F.h):
            cols.append((c * xj).coeffs)
            xj = xj * F.gen() if F.h > 1 else xj
        return np.array(cols, dtype=np.int64)  # row j = coeffs of c*x^j

    def _build_exp(self):
        F = self.F
        N = self.q - 1
        digs = np.array([F.one().coeffs], dtype=np.int64)
        while len(digs) < N:
            M = self._mul_matrix(self.g ** len(digs))
            digs = np.vstack([digs, (digs @ M) % self.p])
        return digs[:N] @ self.weights

    # code helpers -------------------------------------------------------
    def code(self, e: FqElem) -> int:
        return self.F.code(e)

    def elem(self, c) -> FqElem:
        return self.F.from_code(int(c))

    def digit(self, codes, i):
        return (codes // self.weights[i]) % self.p

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i, w in enumerate(self.weights):
            out += ((self.digit(a, i) + self.digit(b, i)) % self.p) * w
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        for i, w in enumerate(self.weights):
            out += ((-self.digit(a, i)) % self.p) * w
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        out = self.exp[(la * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.full(a.shape, self.code(self.F.one()), dtype=np.int64)
        return np.where(la < 0, 0, out)

    def frobenius(self, a, e: int):
        """a -> a^e for e coprime to q-1 style maps (used for a^q)."""
        return self.power(a, e)

    def all_codes(self):
        return np.arange(self.q, dtype=np.int64)

    def log_of(self, e: FqElem) -> int:
        return int(self.log[self.code(e)])


@functools.lru_cache(maxsize=8)
def _tables(F: FieldSpec) -> FieldTables:
    return FieldTables(F)


def tables(F: FieldSpec, budget=DEFAULT_BUDGET) -> FieldTables:
    if F.q > budget.max_field:
        raise BudgetExceeded(f"{F!r} has {F.q} elements, table budget is {budget.max_field}")
    return _tables(F)


def chi_exponent(F: FieldSpec, m: int, z: FqElem):
    """Exponent k with z^((q-1)/m) = zeta^k, or None for z = 0."""
    if (F.q - 1) % m:
        raise OrderMismatch(f"{m} does not divide {F.q} - 1")
    if z.is_zero():
        return None
    _, dlog = mth_roots_of_unity(F, m)
    return dlog[z ** ((F.q - 1) // m)]


def sign_log(F: FieldSpec) -> int:
    """Discrete log of -1 relative to the canonical primitive root."""
    return 0 if F.p == 2 else (F.q - 1) // 2


def m_power_gcd(m: int, q: int) -> int:
    return math.gcd(m, q - 1)
