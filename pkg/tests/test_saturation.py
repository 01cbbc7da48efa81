from fractions import Fraction

import pytest

from idfilt.filtration import FiltrationSpec, ideal_at_level
from idfilt.gls import membership
from idfilt.poly import Poly, poly_str
from idfilt.saturation import (ProbeVerdict, RadicalProbeBounds,
                               b_saturate_probe, d_saturate, d_saturate_log,
                               frobenius_probe, monomial_closure_member,
                               radical_probe, theta_monomial)
from idfilt.fields import FieldError
from tests.conftest import ctx_of, mk


def gens_str(F):
    return sorted((poly_str(f), str(a)) for f, a in F.gens)


def test_d_saturate_examples(QQ, F2):
    F = FiltrationSpec(ctx_of(QQ, 2, 8), [(mk(QQ, "x^2"), 2)])
    assert gens_str(d_saturate(F)) == [("2*x", "1"), ("x^2", "2")]
    G = FiltrationSpec(ctx_of(F2, 2, 8), [(mk(F2, "x^2"), 2)])
    assert gens_str(d_saturate(G)) == [("x^2", "2")]
    E = FiltrationSpec(ctx_of(F2, 2, 8), [])
    assert d_saturate(E).gens == ()


def test_d_saturate_log_examples(QQ):
    ctxb = ctx_of(QQ, 2, 8, boundary=(0,))
    F = FiltrationSpec(ctxb, [(mk(QQ, "x^2"), 2)])
    got = gens_str(d_saturate_log(F))
    assert ("2*x^2", "1") in got and ("x^2", "2") in got
    G = FiltrationSpec(ctxb, [(mk(QQ, "y^2"), 2)])
    assert ("2*y", "1") in gens_str(d_saturate_log(G))
    # empty boundary: identical to the plain saturation
    H = FiltrationSpec(ctx_of(QQ, 2, 8), [(mk(QQ, "x*y"), 2)])
    assert d_saturate_log(H) == d_saturate(H)


def test_d_saturate_idempotent_and_enlarging(rng, F3):
    ctx = ctx_of(F3, 2, 6)
    F = FiltrationSpec(ctx, [(mk(F3, "x^2 + y^3"), Fraction(5, 2)),
                             (mk(F3, "x*y"), 1)])
    ds, dds = d_saturate(F), d_saturate(d_saturate(F))
    for k in range(1, 2 * ctx.D + 1):
        a = Fraction(k, 2)
        assert ds.ideal_at_level(a).space.equals(dds.ideal_at_level(a).space)
        assert ds.ideal_at_level(a).space.contains_subspace(
            F.ideal_at_level(a).space)


def test_radical_probe_examples(QQ):
    ctx = ctx_of(QQ, 2, 8)
    bounds = RadicalProbeBounds()
    F = FiltrationSpec(ctx, [(mk(QQ, "x^2"), 2)])
    got = radical_probe(F, mk(QQ, "x"), 1, bounds)
    assert got.member and got.witness_n == 2
    assert not radical_probe(F, mk(QQ, "y"), 1, bounds).member
    member_direct = radical_probe(F, mk(QQ, "x^2"), 2, bounds)
    assert member_direct.member and member_direct.witness_n == 1


def test_radical_probe_precision_flag(QQ):
    ctx = ctx_of(QQ, 2, 4)
    bounds = RadicalProbeBounds()
    F = FiltrationSpec(ctx, [(mk(QQ, "x"), 1)])
    got = radical_probe(F, mk(QQ, "x^5 + y^5"), 1, bounds)
    assert not got.member and got.precision_limited


def test_frobenius_probe_examples(F2, QQ):
    ctx = ctx_of(F2, 2, 8)
    bounds = RadicalProbeBounds()
    F = FiltrationSpec(ctx, [(mk(F2, "x^2"), 2)])
    got = frobenius_probe(F, mk(F2, "x"), 1, bounds)
    assert got.member and got.witness_n == 2
    # members of the filtration itself re-certify via n = p
    G = FiltrationSpec(ctx, [(mk(F2, "x*y"), 1)])
    assert frobenius_probe(G, mk(F2, "x*y"), 1, bounds).member
    assert not frobenius_probe(FiltrationSpec(ctx, [(mk(F2, "y"), 1)]),
                               mk(F2, "x"), 1, bounds).member
    with pytest.raises(FieldError):
        frobenius_probe(FiltrationSpec(ctx_of(QQ, 2, 8), [(mk(QQ, "x"), 1)]),
                        mk(QQ, "x"), 1, bounds)


def test_theta_examples(QQ):
    # brute force over n, m <= 30: (xy)^n in (x^2,y^3)^m iff some split fits
    def brute(vs, w, cap=30):
        best = Fraction(0)
        for n in range(1, cap + 1):
            for m in range(cap, 0, -1):
                if any(i * vs[0][0] + (m - i) * vs[1][0] <= n * w[0]
                       and i * vs[0][1] + (m - i) * vs[1][1] <= n * w[1]
                       for i in range(m + 1)):
                    best = max(best, Fraction(m, n))
                    break
        return best

    assert brute([(2, 0), (0, 3)], (1, 1)) == Fraction(5, 6)
    assert theta_monomial([mk(QQ, "x^2"), mk(QQ, "y^3")], mk(QQ, "x*y")) \
        == Fraction(5, 6)
    assert theta_monomial([mk(QQ, "x")], mk(QQ, "x")) == 1
    assert theta_monomial([mk(QQ, "x^2")], mk(QQ, "x^3")) == Fraction(3, 2)


def test_theta_errors(QQ):
    with pytest.raises(ValueError):
        theta_monomial([Poly.one(QQ, 2)], mk(QQ, "x"))
    with pytest.raises(ValueError):
        theta_monomial([], mk(QQ, "x"))
    with pytest.raises(ValueError):
        theta_monomial([mk(QQ, "x + y")], mk(QQ, "x"))


def test_monomial_closure_member(QQ):
    I = [mk(QQ, "x^2"), mk(QQ, "y^3")]
    theta = theta_monomial(I, mk(QQ, "x*y"))
    for n in (1, 2, 3, 6):
        for m in range(1, 8):
            got = monomial_closure_member(I, m, tuple(n * c for c in (1, 1)))
            assert got == (Fraction(m, n) <= theta)


def test_b_saturate_probe_examples(F2):
    ctx = ctx_of(F2, 2, 8)
    F = FiltrationSpec(ctx, [(mk(F2, "y^2"), 2)])
    sat, added = b_saturate_probe(F)
    assert [(poly_str(g), str(a), n) for g, a, n in added] == [("y", "1", 2)]
    assert membership(mk(F2, "y"), sat.ideal_at_level(1))
    # already saturated: unchanged
    G = FiltrationSpec(ctx, [(mk(F2, "x"), 1)])
    sat2, added2 = b_saturate_probe(G)
    assert added2 == [] and gens_str(sat2) == [("x", "1")]
    E = FiltrationSpec(ctx, [])
    sat3, added3 = b_saturate_probe(E)
    assert added3 == [] and sat3.gens == ()


def test_b_saturate_theta_upgrade(QQ):
    # monomial generators: exact asymptotics raise the level of x
    ctx = ctx_of(QQ, 2, 8)
    F = FiltrationSpec(ctx, [(mk(QQ, "x^2"), 1), (mk(QQ, "x"), Fraction(1, 4))])
    sat, added = b_saturate_probe(F)
    raised = [a for g, a, _ in added if poly_str(g) == "x"]
    assert raised and max(raised) == Fraction(1, 2)
    assert membership(mk(QQ, "x"), sat.ideal_at_level(Fraction(1, 2)))


def test_bounds_validation():
    with pytest.raises(ValueError):
        RadicalProbeBounds(0, 64)
    with pytest.raises(ValueError):
        RadicalProbeBounds(8, 0)


def test_probe_verdict_json():
    assert ProbeVerdict(True, 2, Fraction(63, 64)).to_json()["witness_n"] == 2
    assert ProbeVerdict(False, precision_limited=True).to_json()[
        "precision_limited"]
