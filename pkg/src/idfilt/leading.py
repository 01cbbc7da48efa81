"""Leading algebra, pure parts, leading generator systems and sigma.

The leading algebra collects, degree by degree, the initial forms of
filtration elements whose level matches their order.  For a differentially
saturated filtration it is generated by its pure part: initial forms that
are p^e-th powers of linear forms.  A leading generator system picks
filtration elements realizing compatible bases of all pure parts; in
characteristic zero it reduces to a basis of the degree-one part (the
classical maximal-contact data), while in characteristic p the degree-one
part may vanish and higher Frobenius levels take over.

Root coordinates make everything plain linear algebra in G_1: taking p^e-th
roots identifies the pure part at level e with a subspace U_e of the span
of the variables, and the chain of pure parts becomes a chain of subspaces
U_0 <= U_1 <= ... whose growth the extraction walks deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import FieldError
from .filtration import FiltrationSpec
from .gls import GradedSubspace, monomial_basis
from .poly import Poly, TruncationContext


class LeadingAlgebra:
    """Per-degree homogeneous bases L_n of the leading algebra, n <= D."""

    __slots__ = ("ctx", "components", "from_d_saturated")

    def __init__(self, ctx: TruncationContext, components, from_d_saturated: bool):
        self.ctx = ctx
        self.components = components  # list over n of lists of homogeneous Poly
        self.from_d_saturated = from_d_saturated

    def dim(self, n: int) -> int:
        return len(self.components[n])

    def dims(self):
        return [len(c) for c in self.components]


def leading_algebra(F: FiltrationSpec) -> LeadingAlgebra:
    """L_n = initial forms of level-n elements of order n, for n <= D.

    Expects a differentially saturated input for the structure theory to
    apply; this is not enforced, only recorded on the result.
    """
    ctx = F.ctx
    comps = [[Poly.one(ctx.field, ctx.nvars)]]
    for n in range(1, ctx.D + 1):
        S = F.ideal_at_level(n)
        comps.append(S.space.graded_slice(n))
    return LeadingAlgebra(ctx, comps, F.d_saturated)


def _pure_monomial_columns(ctx: TruncationContext, q: int):
    _, index, _ = monomial_basis(ctx.nvars, ctx.D)
    cols = []
    for i in range(ctx.nvars):
        exps = tuple(q if j == i else 0 for j in range(ctx.nvars))
        cols.append(index[exps])
    return cols


def pure_part(L: LeadingAlgebra, e: int):
    """Pure part of L at Frobenius level e, with p^e-th roots of its basis.

    The pure part is the intersection of L_{p^e} with the span of the pure
    power monomials x_i^(p^e); over a finite field that span is exactly the
    Frobenius image of G_1, so the computation is exact.  Returns
    (homogeneous basis, linear-form roots).
    """
    ctx = L.ctx
    p = ctx.field.char
    if e == 0:
        basis = list(L.components[1])
        return basis, list(basis)
    if p == 0:
        raise FieldError("characteristic 0 has pure parts only in degree 1")
    q = p ** e
    if q > ctx.D:
        raise ValueError("p^e exceeds the truncation degree")
    space = GradedSubspace.from_polys(ctx, L.components[q])
    section = space.coordinate_section(_pure_monomial_columns(ctx, q))
    basis = [f.graded_component(q) for f in section.basis_polys()]
    F = ctx.field
    roots = []
    for w in basis:
        terms = {}
        for exps, c in w.terms.items():
            i = next(k for k, x in enumerate(exps) if x)
            lin = tuple(1 if k == i else 0 for k in range(ctx.nvars))
            terms[lin] = F.frobenius_root(c, e)
        roots.append(Poly(F, ctx.nvars, terms))
    return basis, roots


def default_emax(ctx: TruncationContext) -> int:
    """Largest e with p^e <= D; pure parts beyond are invisible at truncation."""
    p = ctx.field.char
    if p == 0:
        return 0
    return int(math.log(ctx.D, p) + 1e-9)


@dataclass(frozen=True)
class LGS:
    """Leading generator system: (element, Frobenius level) pairs.

    Each element lies in m^(p^e) with pure initial form, and the Frobenius
    lifts of the initial forms give a basis of every pure part.
    """

    entries: tuple  # ((Poly, int e), ...) ordered by nondecreasing e

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def levels(self, p: int):
        return [p ** e if p else 1 for _, e in self.entries]


@dataclass(frozen=True)
class SigmaSeq:
    """The invariant sigma: e maps to d minus the pure-part dimension."""

    values: tuple
    d: int
    stabilized: bool

    def trimmed(self):
        """Drop trailing repeats past the first stable pair; the tail is
        constant once the pure-part chain stabilizes."""
        vals = list(self.values)
        if not self.stabilized:
            return vals
        last_change = 0
        for i in range(1, len(vals)):
            if vals[i] != vals[i - 1]:
                last_change = i
        return vals[: last_change + 2]

    def to_json(self):
        return {"values": list(self.values), "stabilized": self.stabilized,
                "trimmed": self.trimmed()}


def _linear_span(ctx, forms):
    return GradedSubspace.from_polys(ctx, forms)


def _pure_tower(F: FiltrationSpec, E_max: int):
    """Pure bases and root subspaces U_e for e = 0 .. E_max."""
    L = leading_algebra(F)
    tower = []
    for e in range(E_max + 1):
        basis, roots = pure_part(L, e)
        tower.append((basis, roots))
    return L, tower


def extract_lgs(F: FiltrationSpec, E_max: int | None = None):
    """Deterministic leading generator system of a saturated filtration.

    Walks the pure parts by increasing Frobenius level; whenever the root
    space grows, the previously chosen roots are extended to a basis by
    greedy graded-lex pivoting, and each new initial form is lifted to a
    filtration element by back-substitution in the echelon basis of the
    level ideal.  Returns (LGS, SigmaSeq, LeadingAlgebra).
    """
    ctx = F.ctx
    p = ctx.field.char
    if E_max is None:
        E_max = default_emax(ctx)
    if p > 0 and p ** E_max > ctx.D:
        raise ValueError("p^E_max exceeds the truncation degree")
    L, tower = _pure_tower(F, E_max)

    chosen = []  # (root linear form, e)
    entries = []
    prev_dim = None
    stabilized = False
    sigma_vals = []
    for e, (basis, roots) in enumerate(tower):
        dim_e = len(basis)
        sigma_vals.append(ctx.nvars - dim_e)
        u_span = _linear_span(ctx, roots)
        # chain inclusion: earlier roots must still be roots at this level
        chain_ok = all(u_span.contains_poly(v) for v, _ in chosen)
        span = _linear_span(ctx, [v for v, _ in chosen])
        grew = False
        for v in roots:
            if span.contains_poly(v):
                continue
            grew = True
            chosen.append((v, e))
            span = _linear_span(ctx, [w for w, _ in chosen])
            entries.append((_lift_initial_form(F, v, e), e))
        # stabilized means chain equality at the last two computed levels
        stabilized = (prev_dim is not None and chain_ok and not grew
                      and dim_e == prev_dim)
        prev_dim = dim_e
    lgs = LGS(tuple(entries))
    sig = SigmaSeq(tuple(sigma_vals), ctx.nvars, stabilized)
    return lgs, sig, L


def _lift_initial_form(F: FiltrationSpec, root: Poly, e: int) -> Poly:
    """Unique echelon combination in the level ideal with the given initial
    form root^(p^e)."""
    ctx = F.ctx
    p = ctx.field.char
    q = p ** e if p else 1
    w = root.pow(q) if q > 1 else root
    S = F.ideal_at_level(q).space
    degs = S.pivot_degrees()
    mons, _, _ = monomial_basis(ctx.nvars, ctx.D)
    Fld = ctx.field
    rows = S.basis_polys()
    h = Poly.zero(Fld, ctx.nvars)
    got = Poly.zero(Fld, ctx.nvars)
    for i, dgt in enumerate(degs):
        if dgt != q:
            continue
        pivot_mon = mons[S.pivots[i]]
        c = w.terms.get(pivot_mon)
        if c is None or Fld.is_zero(c):
            continue
        h = h + rows[i].scale(c)
        got = got + rows[i].graded_component(q).scale(c)
    if got != w:
        raise RuntimeError("initial form is not realized by the level ideal")
    return h


def sigma(F: FiltrationSpec, E_max: int | None = None) -> SigmaSeq:
    """The invariant sigma(e) = d - dim of the pure part at level e.

    In characteristic zero the sequence is the single value d - dim L_1.
    """
    _, sig, _ = extract_lgs(F, E_max)
    return sig
