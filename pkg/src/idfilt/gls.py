"""Exact linear algebra on subspaces of the truncated ring R/m^(D+1).

A subspace is stored as one reduced row echelon basis over ALL monomials of
degree <= D, with columns in graded-lex order (degree ascending, then
lexicographically descending exponents).  Inhomogeneous generators like
x^2+y^3 do not split into graded pieces, so the whole-space echelon form is
the primary representation and per-degree slices are derived views:

* rows whose pivot monomial has degree >= n span exactly S `intersect` m^n,
  because an echelon row is zero left of its pivot;
* the degree-n components of the rows with pivot degree exactly n form a
  basis of the image of S `intersect` m^n in G_n = m^n/m^(n+1).

Pivot choice is always the leftmost (graded-lex smallest) column, so every
basis is the canonical RREF of its row space and outputs are deterministic.
Dense rows over at most C(D+d, d) columns; the supported envelope is
d <= 6, D <= 16.  Finished subspaces are immutable and shareable.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._kernels import reduce_mod_p, rref_mod_p
from ._linalg import reduce_generic, rref_generic
from .poly import Poly, TruncationContext, grlex_key


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, D: int):
    """All exponent tuples of degree <= D in graded-lex column order."""
    mons = [()]
    for _ in range(nvars):
        mons = [m + (e,) for m in mons for e in range(D + 1)]
    mons = [m for m in mons if sum(m) <= D]
    mons.sort(key=grlex_key)
    index = {m: i for i, m in enumerate(mons)}
    degree_of = tuple(sum(m) for m in mons)
    return tuple(mons), index, degree_of


def _is_prime_kind(field) -> bool:
    return field.kind == "prime-field"


def poly_to_vec(f: Poly, ctx: TruncationContext):
    mons, index, _ = monomial_basis(ctx.nvars, ctx.D)
    if _is_prime_kind(ctx.field):
        v = np.zeros(len(mons), dtype=np.int64)
        for e, c in f.terms.items():
            v[index[e]] = c % ctx.field.p
        return v
    v = [ctx.field.zero()] * len(mons)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def vec_to_poly(v, ctx: TruncationContext) -> Poly:
    mons, _, _ = monomial_basis(ctx.nvars, ctx.D)
    F = ctx.field
    terms = {}
    for i, m in enumerate(mons):
        c = int(v[i]) if _is_prime_kind(F) else v[i]
        if _is_prime_kind(F):
            c = c % F.p
        if not F.is_zero(c):
            terms[m] = c
    return Poly(F, ctx.nvars, terms)


def _rref(ctx, rows):
    if _is_prime_kind(ctx.field):
        mat = np.asarray(rows, dtype=np.int64) if not isinstance(rows, np.ndarray) else rows
        if mat.ndim == 1:
            mat = mat.reshape(1, -1)
        red, piv = rref_mod_p(mat % ctx.field.p, ctx.field.p)
        return red, [int(c) for c in piv]
    red, piv = rref_generic([list(r) for r in rows], ctx.field)
    return red, piv


class GradedSubspace:
    """Canonical echelon basis of a subspace of the truncated ring."""

    __slots__ = ("ctx", "rows", "pivots")

    def __init__(self, ctx: TruncationContext, rows, pivots):
        self.ctx = ctx
        self.rows = rows
        self.pivots = tuple(pivots)

    # construction -------------------------------------------------------

    @staticmethod
    def from_polys(ctx, polys) -> "GradedSubspace":
        vecs = [poly_to_vec(f.truncate(ctx.D), ctx) for f in polys if not f.is_zero()]
        return GradedSubspace.from_vectors(ctx, vecs)

    @staticmethod
    def from_vectors(ctx, vecs) -> "GradedSubspace":
        N = len(monomial_basis(ctx.nvars, ctx.D)[0])
        if len(vecs) == 0:
            empty = np.zeros((0, N), dtype=np.int64) if _is_prime_kind(ctx.field) else []
            return GradedSubspace(ctx, empty, ())
        if _is_prime_kind(ctx.field):
            rows, piv = _rref(ctx, np.array(vecs, dtype=np.int64))
        else:
            rows, piv = _rref(ctx, vecs)
        return GradedSubspace(ctx, rows, piv)

    @staticmethod
    def zero(ctx) -> "GradedSubspace":
        return GradedSubspace.from_vectors(ctx, [])

    # queries --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _check_ctx(self, other: "GradedSubspace"):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch between subspaces")

    def reduce_vec(self, v):
        if _is_prime_kind(self.ctx.field):
            return reduce_mod_p(self.rows, np.asarray(self.pivots, dtype=np.int64),
                                v, self.ctx.field.p)
        return reduce_generic(self.rows, self.pivots, v, self.ctx.field)

    def contains_poly(self, f: Poly) -> bool:
        if f.degree() > self.ctx.D:
            raise ValueError("polynomial exceeds truncation degree")
        r = self.reduce_vec(poly_to_vec(f, self.ctx))
        if _is_prime_kind(self.ctx.field):
            return not r.any()
        return all(self.ctx.field.is_zero(c) for c in r)

    def reduce_poly(self, f: Poly) -> Poly:
        """Canonical residue of f modulo this subspace."""
        if f.degree() > self.ctx.D:
            raise ValueError("polynomial exceeds truncation degree")
        return vec_to_poly(self.reduce_vec(poly_to_vec(f, self.ctx)), self.ctx)

    def contains_subspace(self, other: "GradedSubspace") -> bool:
        self._check_ctx(other)
        for row in other.rows:
            r = self.reduce_vec(np.array(row, dtype=np.int64)
                                if _is_prime_kind(self.ctx.field) else row)
            if _is_prime_kind(self.ctx.field):
                if r.any():
                    return False
            elif not all(self.ctx.field.is_zero(c) for c in r):
                return False
        return True

    def equals(self, other: "GradedSubspace") -> bool:
        self._check_ctx(other)
        if self.pivots != other.pivots:
            return False
        if _is_prime_kind(self.ctx.field):
            return bool(np.array_equal(self.rows, other.rows))
        return self.rows == other.rows

    def pivot_degrees(self):
        _, _, degree_of = monomial_basis(self.ctx.nvars, self.ctx.D)
        return [degree_of[c] for c in self.pivots]

    def dim_from_degree(self, n: int) -> int:
        """Dimension of S `intersect` m^n (rows with pivot degree >= n)."""
        return sum(1 for d in self.pivot_degrees() if d >= n)

    def intersect_power_m_rows(self, n: int):
        """Rows spanning S `intersect` m^n."""
        keep = [i for i, d in enumerate(self.pivot_degrees()) if d >= n]
        if _is_prime_kind(self.ctx.field):
            return self.rows[keep]
        return [self.rows[i] for i in keep]

    def graded_slice(self, n: int):
        """Basis of the image of S `intersect` m^n in G_n, as homogeneous polys."""
        out = []
        for i, d in enumerate(self.pivot_degrees()):
            if d == n:
                out.append(vec_to_poly(self.rows[i], self.ctx).graded_component(n))
        return out

    def slice_dims(self):
        dims = [0] * (self.ctx.D + 1)
        for d in self.pivot_degrees():
            dims[d] += 1
        return dims

    def basis_polys(self):
        return [vec_to_poly(row, self.ctx) for row in self.rows]

    def solve_coords(self, f: Poly):
        """Coefficients c with f = sum c_i row_i, or None when f is outside.

        Reading pivot coordinates off the echelon basis; this is the
        deterministic back-substitution used for leading-form lifts.
        """
        v = poly_to_vec(f.truncate(self.ctx.D), self.ctx)
        F = self.ctx.field
        if _is_prime_kind(F):
            coords = [int(v[c]) % F.p for c in self.pivots]
        else:
            coords = [v[c] for c in self.pivots]
        r = self.reduce_vec(v)
        ok = (not r.any()) if _is_prime_kind(F) else all(F.is_zero(c) for c in r)
        return coords if ok else None

    # subspace arithmetic ---------------------------------------------------

    def sum_with(self, other: "GradedSubspace") -> "GradedSubspace":
        self._check_ctx(other)
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        if _is_prime_kind(self.ctx.field):
            stacked = np.vstack([self.rows, other.rows])
        else:
            stacked = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        rows, piv = _rref(self.ctx, stacked)
        return GradedSubspace(self.ctx, rows, piv)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        """Zassenhaus: reduce [[A A],[B 0]]; zero-left rows carry the meet."""
        self._check_ctx(other)
        ctx = self.ctx
        N = len(monomial_basis(ctx.nvars, ctx.D)[0])
        if self.dim == 0 or other.dim == 0:
            return GradedSubspace.zero(ctx)
        F = ctx.field
        if _is_prime_kind(F):
            a, b = len(self.rows), len(other.rows)
            block = np.zeros((a + b, 2 * N), dtype=np.int64)
            block[:a, :N] = self.rows
            block[:a, N:] = self.rows
            block[a:, :N] = other.rows
            red, _ = rref_mod_p(block, F.p)
            keep = [r[N:] for r in red if not r[:N].any()]
        else:
            block = []
            for r in self.rows:
                block.append(list(r) + list(r))
            zero = [F.zero()] * N
            for r in other.rows:
                block.append(list(r) + zero)
            red, _ = rref_generic(block, F)
            keep = [r[N:] for r in red if all(F.is_zero(c) for c in r[:N])]
        return GradedSubspace.from_vectors(ctx, keep)

    def coordinate_section(self, keep_columns) -> "GradedSubspace":
        """Subspace of vectors supported only on the given columns.

        Columns outside keep_columns are moved first, so echelon rows whose
        pivot lands in the kept block vanish on the rest.
        """
        ctx = self.ctx
        F = ctx.field
        N = len(monomial_basis(ctx.nvars, ctx.D)[0])
        keep = sorted(keep_columns)
        other = [c for c in range(N) if c not in set(keep)]
        perm = other + keep
        cut = len(other)
        if self.dim == 0:
            return self
        if _is_prime_kind(F):
            mat = self.rows[:, perm].copy()
            red, piv = rref_mod_p(mat, F.p)
            sel = [i for i, c in enumerate(piv) if c >= cut]
            back = np.zeros((len(sel), N), dtype=np.int64)
            for k, i in enumerate(sel):
                back[k, perm] = red[i]
        else:
            mat = [[row[c] for c in perm] for row in self.rows]
            red, piv = rref_generic(mat, F)
            sel = [i for i, c in enumerate(piv) if c >= cut]
            back = []
            for i in sel:
                row = [F.zero()] * N
                for j, c in enumerate(perm):
                    row[c] = red[i][j]
                back.append(row)
        return GradedSubspace.from_vectors(ctx, back)

    def dump(self) -> str:
        """One line per basis vector, graded-lex sorted."""
        from .poly import poly_str
        return "\n".join(poly_str(f) for f in self.basis_polys())


class TruncatedIdeal:
    """Image of an ideal in R/m^(D+1): a subspace plus its generator list.

    Closed under multiplication by each variable up to degree D.
    """

    __slots__ = ("gens", "space")

    def __init__(self, gens, space: GradedSubspace):
        self.gens = tuple(gens)
        self.space = space

    @property
    def ctx(self):
        return self.space.ctx

    def contains(self, f: Poly) -> bool:
        return self.space.contains_poly(f)


def ideal_image(gens, ctx: TruncationContext) -> TruncatedIdeal:
    """Span of {X^A g : |A| + ord(g) <= D}, the full truncated ideal image."""
    mons, _, _ = monomial_basis(ctx.nvars, ctx.D)
    vecs = []
    for g in gens:
        gt = g.truncate(ctx.D)
        if gt.is_zero():
            continue
        budget = ctx.D - int(gt.order())
        for A in mons:
            if sum(A) > budget:
                continue
            vecs.append(poly_to_vec(gt.shift(A, ctx.D), ctx))
    return TruncatedIdeal(gens, GradedSubspace.from_vectors(ctx, vecs))


def membership(f: Poly, S) -> bool:
    """Does f lie in the subspace (or truncated ideal) S."""
    space = S.space if isinstance(S, TruncatedIdeal) else S
    return space.contains_poly(f)


def subspace_sum(S1, S2) -> GradedSubspace:
    a = S1.space if isinstance(S1, TruncatedIdeal) else S1
    b = S2.space if isinstance(S2, TruncatedIdeal) else S2
    return a.sum_with(b)


def subspace_intersect(S1, S2) -> GradedSubspace:
    a = S1.space if isinstance(S1, TruncatedIdeal) else S1
    b = S2.space if isinstance(S2, TruncatedIdeal) else S2
    return a.intersect(b)


def power_m(n: int, ctx: TruncationContext) -> GradedSubspace:
    """Image of m^n: full ring when n <= 0, zero space beyond D."""
    mons, _, degree_of = monomial_basis(ctx.nvars, ctx.D)
    n = max(n, 0)
    if n > ctx.D:
        return GradedSubspace.zero(ctx)
    N = len(mons)
    cols = [i for i in range(N) if degree_of[i] >= n]
    F = ctx.field
    if _is_prime_kind(F):
        rows = np.zeros((len(cols), N), dtype=np.int64)
        for k, c in enumerate(cols):
            rows[k, c] = 1
    else:
        rows = []
        for c in cols:
            row = [F.zero()] * N
            row[c] = F.one()
            rows.append(row)
    return GradedSubspace(ctx, rows, cols)
