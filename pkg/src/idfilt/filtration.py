"""Rationally and finitely generated idealistic filtrations.

A filtration assigns to every rational level a an ideal I_a, decreasing in
a, with I_a * I_b inside I_(a+b) and I_0 = R.  Here one is presented by a
finite list of (polynomial, positive rational level) generators; the ideal
at level a is generated by the products of generators whose levels sum to
at least a.  All ideals are taken as images in R/m^(D+1).

Normalization drops zero polynomials and non-positive levels (both carry no
information), and detects generators that are units at the origin, which
force every level ideal to be the whole local ring.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .gls import TruncatedIdeal, ideal_image, membership
from .poly import Poly, TruncationContext
from .values import SatValue, sat_min


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class FiltrationSpec:
    """Finite generator presentation of an idealistic filtration."""

    __slots__ = ("ctx", "gens", "d_saturated", "_level_cache", "_full_cache")

    def __init__(self, ctx: TruncationContext, gens, d_saturated: bool = False):
        clean = []
        seen = set()
        for f, a in gens:
            if f.field != ctx.field or f.nvars != ctx.nvars:
                raise ValueError("generator does not live in the ambient ring")
            a = Fraction(a)
            if a <= 0 or f.is_zero():
                continue
            key = (a, f.sort_key())
            if key in seen:
                continue
            seen.add(key)
            clean.append((f, a))
        clean.sort(key=lambda fa: (fa[1], fa[0].sort_key()))
        self.ctx = ctx
        self.gens = tuple(clean)
        self.d_saturated = d_saturated
        self._level_cache = {}
        self._full_cache = None

    # presentation ---------------------------------------------------------

    @property
    def trivial_full(self) -> bool:
        """A positive-level unit generator makes every level ideal all of R."""
        return any(f.order() == 0 for f, _ in self.gens)

    @property
    def grid_denominator(self) -> int:
        d = 1
        for _, a in self.gens:
            d = _lcm(d, a.denominator)
        return d

    def grid_levels(self, up_to=None):
        """Positive multiples of 1/denominator up to the truncation degree."""
        top = Fraction(self.ctx.D if up_to is None else up_to)
        delta = self.grid_denominator
        out = []
        k = 1
        while Fraction(k, delta) <= top:
            out.append(Fraction(k, delta))
            k += 1
        return out

    def __eq__(self, other):
        return (isinstance(other, FiltrationSpec) and self.ctx == other.ctx
                and self.gens == other.gens)

    def __repr__(self):
        from .poly import poly_str
        inner = ", ".join(f"({poly_str(f)} @ {a})" for f, a in self.gens)
        return f"FiltrationSpec[{inner}]"

    # level ideals -----------------------------------------------------------

    def _full_ring(self) -> TruncatedIdeal:
        if self._full_cache is None:
            one = Poly.one(self.ctx.field, self.ctx.nvars)
            self._full_cache = ideal_image([one], self.ctx)
        return self._full_cache

    def _minimal_products(self, a: Fraction):
        """Minimal generator products reaching level a, pruned by order.

        A product whose order exceeds D vanishes in the quotient and any
        extension of a qualifying product is a redundant multiple, so the
        search emits exactly the antichain of minimal exponent vectors.
        """
        D = self.ctx.D
        data = [(f.truncate(D), lvl, f.order()) for f, lvl in self.gens]
        out = []

        def walk(i, prod, level, order):
            if level >= a:
                out.append(prod)
                return
            if i >= len(data):
                return
            walk(i + 1, prod, level, order)
            f, lvl, ordf = data[i]
            p, l, o = prod, level, order
            while True:
                o += ordf
                if o > D:
                    break
                p = p.mul_trunc(f, D)
                if p.is_zero():
                    break
                l += lvl
                if l >= a:
                    out.append(p)
                    break
                walk(i + 1, p, l, o)

        walk(0, Poly.one(self.ctx.field, self.ctx.nvars), Fraction(0), 0)
        return out

    def ideal_at_level(self, a) -> TruncatedIdeal:
        """Truncated image of I_a; the full ring for a <= 0."""
        a = Fraction(a)
        if a <= 0 or self.trivial_full:
            return self._full_ring()
        # the level ideal is a step function jumping only on the rational grid
        delta = self.grid_denominator
        key = -(-a.numerator * delta // a.denominator)  # ceil(a * delta)
        hit = self._level_cache.get(key)
        if hit is None:
            prods = self._minimal_products(Fraction(key, delta))
            hit = ideal_image(prods, self.ctx)
            self._level_cache[key] = hit
        return hit

    # invariants at the origin ----------------------------------------------

    def mu_P(self) -> SatValue:
        """Multiplicity at the origin: min of ord(f)/a over the generators.

        Minimizing over generators is exact for a generated filtration
        because order is superadditive over products and sums.  A generator
        invisible at precision D contributes a flagged lower bound.
        """
        vals = []
        for f, a in self.gens:
            o = f.order()
            if o > self.ctx.D:
                vals.append(SatValue.at_least(Fraction(self.ctx.D + 1) / a))
            else:
                vals.append(SatValue.exact(Fraction(int(o)) / a))
        return sat_min(vals)

    def in_support(self) -> bool:
        """Does the origin lie in the support, i.e. is mu_P >= 1.

        Generators of order beyond the truncation degree are zero in the
        working quotient, so a precision-limited bound counts as in-support.
        """
        return not self.mu_P().lt_certain(1)


def ideal_at_level(F: FiltrationSpec, a) -> TruncatedIdeal:
    return F.ideal_at_level(a)


def mu_P(F: FiltrationSpec) -> SatValue:
    return F.mu_P()


def in_support(F: FiltrationSpec) -> bool:
    return F.in_support()


def is_integral_witness(F: FiltrationSpec, f: Poly, a, coeffs) -> bool:
    """Verify a monic integral dependence of (f, a) on the filtration.

    Checks f^n + c_1 f^(n-1) + ... + c_n = 0 in the truncated ring and that
    each c_i lies in the level-(i*a) ideal.  True certifies that (f, a) is
    integral over the filtration as witnessed.
    """
    if not coeffs:
        raise ValueError("need at least one witness coefficient")
    a = Fraction(a)
    D = F.ctx.D
    n = len(coeffs)
    acc = f.pow_trunc(n, D)
    for i, c in enumerate(coeffs, start=1):
        acc = acc + c.truncate(D).mul_trunc(f.pow_trunc(n - i, D), D)
    if not acc.is_zero():
        return False
    for i, c in enumerate(coeffs, start=1):
        ct = c.truncate(D)
        if ct.is_zero():
            continue
        if not membership(ct, F.ideal_at_level(i * a)):
            return False
    return True
