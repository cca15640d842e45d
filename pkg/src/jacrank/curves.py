"""Curve data shared by the character-sum, oracle and CLI layers.

A ``CurveSpec`` describes the cyclic cover y^m = f of a base curve.  On the
projective line f = lead * prod (x - x_i)^(a_i); on a superelliptic base
y0^m0 = f0(x) the cover function is f = y0, branched at the zeros of f0 and
at the point at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import ff
from .errors import (BadExponent, HypothesisViolated, NonPrime, NotSquarefree,
                     OrderMismatch, RamifiedPrime, ValidationError)


@dataclass(frozen=True)
class SuperellipticBase:
    m0: int
    f0: tuple  # FqElem coefficients, constant term first

    @property
    def degree(self):
        return len(self.f0) - 1


@dataclass(frozen=True)
class ClosedPoint:
    degree: int
    x: Optional[ff.FqElem]          # None at infinity
    y: Optional[ff.FqElem] = None   # None on the projective line
    kind: str = "affine"            # affine | ramified | infinite
    in_T: bool = False


@dataclass(frozen=True)
class CurveSpec:
    field: ff.FieldSpec
    m: int
    exponents: tuple
    branch: tuple
    base: Optional[SuperellipticBase] = None
    lead: Optional[ff.FqElem] = None

    def __post_init__(self):
        F, m = self.field, self.m
        if not ff.is_prime(m):
            raise NonPrime(f"m = {m} must be prime")
        if F.p == m:
            raise RamifiedPrime(f"characteristic {F.p} divides m")
        if len(self.exponents) != len(self.branch):
            raise ValidationError("one exponent per branch point")
        exps = tuple(int(a) % m for a in self.exponents)
        for i, a in enumerate(exps):
            if a == 0:
                raise BadExponent(f"exponents[{i}] is divisible by m = {m}")
        object.__setattr__(self, "exponents", exps)
        pts = tuple(F.elem(x) for x in self.branch)
        if len(set(pts)) != len(pts):
            raise ValidationError("branch points must be pairwise distinct")
        object.__setattr__(self, "branch", pts)
        lead = F.one() if self.lead is None else F.elem(self.lead)
        if lead.is_zero():
            raise ValidationError("leading coefficient must be nonzero")
        object.__setattr__(self, "lead", lead)
        if self.base is not None:
            self._check_base()

    def _check_base(self):
        B, F = self.base, self.field
        if not ff.is_prime(B.m0) or F.p == B.m0:
            raise ValidationError("base exponent m0 must be a prime different from p")
        f0 = tuple(F.elem(c) for c in B.f0)
        object.__setattr__(self, "base", SuperellipticBase(B.m0, f0))
        if math.gcd(B.m0, B.degree) != 1:
            raise HypothesisViolated("base needs a single point at infinity: gcd(m0, deg f0) = 1")
        roots = [x for x in F.elements() if _horner(f0, x).is_zero()]
        if len(roots) != B.degree:
            raise NotSquarefree("f0 must split into distinct linear factors over the base field")
        if tuple(sorted(self.branch)) != tuple(roots) or set(self.exponents) - {1}:
            raise ValidationError("on a superelliptic base the branch points are the roots of f0, exponent 1")
        if (-B.degree) % self.m == 0:
            raise HypothesisViolated("the point at infinity must be a branch point of the cover")

    # --- derived data ----------------------------------------------------
    @property
    def q(self):
        return self.field.q

    @property
    def p(self):
        return self.field.p

    @property
    def d(self):
        return len(self.branch)

    @property
    def a0(self) -> int:
        """Exponent at infinity, reduced mod m (0 means unbranched)."""
        return (-sum(self.exponents)) % self.m

    @property
    def infinity_branch(self) -> bool:
        return self.a0 != 0

    @property
    def n_branch(self) -> int:
        return self.d + (1 if self.infinity_branch else 0)

    @property
    def base_genus(self) -> int:
        if self.base is None:
            return 0
        return self.base_curve().genus()

    def genus(self) -> int:
        g, m = self.base_genus, self.m
        two_pi = m * (2 * g - 2) + (m - 1) * self.n_branch + 2
        assert two_pi % 2 == 0
        return two_pi // 2

    @property
    def lpoly_degree(self) -> int:
        return 2 * self.base_genus + self.n_branch - 2

    def base_curve(self) -> "CurveSpec":
        """The base y0^m0 = f0 as a cover of the projective line."""
        if self.base is None:
            raise ValidationError("base is the projective line")
        B = self.base
        return CurveSpec(self.field, B.m0, (1,) * B.degree, tuple(sorted(self.branch)),
                         lead=B.f0[-1])

    def f_value(self, x: ff.FqElem) -> ff.FqElem:
        """f(x) for x in an extension of the base field (projective-line base only)."""
        E = x.field
        out = ff.embed(self.lead, E)
        for xi, a in zip(self.branch, self.exponents):
            out = out * (x - ff.embed(xi, E)) ** a
        return out

    # --- transformations -------------------------------------------------
    def normalized(self) -> "CurveSpec":
        """Isomorphic cover with infinity among the branch points.

        Moves the last branch point to infinity with x = x_d + 1/u; the
        discarded factor u^(-sum a) is an m-th power.
        """
        if self.infinity_branch or self.base is not None:
            return self
        *rest, xd = self.branch
        *arest, _ = self.exponents
        lead = self.lead
        new_pts = []
        for xi, a in zip(rest, arest):
            lead = lead * (xd - xi) ** a
            new_pts.append((xi - xd).inverse())
        return CurveSpec(self.field, self.m, tuple(arest), tuple(new_pts), lead=lead)

    def base_change(self, k: int) -> "CurveSpec":
        if k == 1:
            return self
        E = ff.extension(self.field, k)
        base = None
        if self.base is not None:
            base = SuperellipticBase(self.base.m0, tuple(ff.embed(c, E) for c in self.base.f0))
        return CurveSpec(E, self.m, self.exponents, tuple(ff.embed(x, E) for x in self.branch),
                         base=base, lead=ff.embed(self.lead, E))

    def mu_degree(self) -> int:
        """Least k with m | q^k - 1."""
        k, qk = 1, self.q % self.m
        while qk != 1:
            qk = qk * self.q % self.m
            k += 1
        return k

    def with_mu_m(self) -> "CurveSpec":
        return self.base_change(self.mu_degree())

    def require_mu_m(self):
        if (self.q - 1) % self.m:
            raise OrderMismatch(f"{self.m} does not divide {self.q} - 1")

    # --- serialisation ---------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        out = {"p": F.p, "h": F.h, "m": self.m, "modulus": list(F.modulus),
               "exponents": list(self.exponents),
               "branch": [F.to_json(x) for x in self.branch]}
        if self.lead != F.one():
            out["lead"] = F.to_json(self.lead)
        if self.base is None:
            out["base"] = "P1"
        else:
            out["base"] = {"m0": self.base.m0, "f0": [F.to_json(c) for c in self.base.f0]}
        return out


def _horner(coeffs, x):
    acc = x.field.zero()
    for c in reversed(coeffs):
        acc = acc * x + ff.embed(c, x.field)
    return acc


def projective_cover(F, m, exponents, branch, lead=None) -> CurveSpec:
    return CurveSpec(F, m, tuple(exponents), tuple(F.elem(x) for x in branch), lead=lead)


def superelliptic_cover(F, m, m0, f0) -> CurveSpec:
    """Cover y^m = y0 of the base y0^m0 = f0(x)."""
    f0 = tuple(F.elem(c) for c in f0)
    roots = [x for x in F.elements() if _horner(f0, x).is_zero()]
    return CurveSpec(F, m, (1,) * len(roots), tuple(roots), base=SuperellipticBase(m0, f0))


def family(F, m, exponents, alphas):
    """y^m = x^a1 (x-1)^a2 (x-alpha_1)^a3 ..."""
    return projective_cover(F, m, exponents, [0, 1, *alphas])
