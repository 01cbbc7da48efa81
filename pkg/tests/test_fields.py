import math

import pytest

from idfilt.fields import (BUILTIN_MODULI, ExtensionField, FieldError,
                           PrimeField, RationalField, binom, binom_mod_p,
                           binom_multi, field_from_spec)


def test_binom_mod_p_examples():
    # factorial oracle: C(6,2)=15, C(4,2)=6
    assert math.comb(6, 2) == 15 and math.comb(4, 2) == 6
    assert binom_mod_p(6, 2, 2) == 15 % 2 == 1
    assert binom_mod_p(4, 2, 2) == 6 % 2 == 0
    for i in (0, 1, 7, 200):
        assert binom_mod_p(i, 0, 5) == 1
    assert binom_mod_p(3, 5, 3) == 0  # j > i


def test_binom_mod_p_vs_factorial_oracle():
    for p in (2, 3, 5, 7):
        for i in range(0, 120):
            for j in range(0, 120):
                want = math.comb(i, j) % p if j <= i else 0
                assert binom_mod_p(i, j, p) == want


def test_binom_mod_p_rejects_composite():
    with pytest.raises(FieldError):
        binom_mod_p(4, 2, 6)


def test_binom_multi_examples():
    assert binom_multi((2, 3), (1, 1)) == 2 * 3 == 6
    assert binom_multi((1, 1), (2, 0)) == 0
    assert binom_multi((4, 7, 2), (0, 0, 0)) == 1
    with pytest.raises(FieldError):
        binom_multi((1, 2), (1,))


def test_frobenius_root_prime_field_is_identity(F5):
    for c in range(5):
        for e in (0, 1, 3):
            assert F5.frobenius_root(c, e) == c


def test_frobenius_root_f9_by_exhaustion(F9):
    g = F9.generator()
    g2 = F9.mul(g, g)
    r = F9.frobenius_root(g2, 1)
    # cube back: r^3 must be g^2, and r is the unique such element
    assert F9.pow(r, 3) == g2
    assert sum(1 for x in F9.elements() if F9.pow(x, 3) == g2) == 1


def test_frobenius_root_all_small_fields():
    cases = [PrimeField(2), PrimeField(7), ExtensionField(2, 2),
             ExtensionField(2, 4), ExtensionField(3, 3), ExtensionField(5, 2)]
    for F in cases:
        q = F.p ** F.m
        assert q <= 81 or F.m == 1
        for e in (1, 2):
            for x in F.elements():
                assert F.pow(F.frobenius_root(x, e), F.p ** e) == x


def test_frobenius_root_char0_errors(QQ):
    assert QQ.frobenius_root(QQ.from_int(3), 0) == 3
    with pytest.raises(FieldError):
        QQ.frobenius_root(QQ.from_int(3), 1)


def test_builtin_moduli_are_irreducible():
    for (p, m) in BUILTIN_MODULI:
        ExtensionField(p, m)  # constructor re-checks irreducibility


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        ExtensionField(2, 2, (1, 0, 1))  # g^2 + 1 = (g+1)^2 over F_2


def test_field_axioms_randomized(rng):
    for F in (PrimeField(3), ExtensionField(2, 3), RationalField()):
        def r():
            if F.char == 0:
                from fractions import Fraction
                return Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            if F.m == 1:
                return rng.randrange(F.p)
            return tuple(rng.randrange(F.p) for _ in range(F.m))
        for _ in range(80):
            a, b, c = r(), r(), r()
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))
            if not F.is_zero(a):
                assert F.mul(a, F.inv(a)) == F.one()


def test_field_from_spec():
    assert field_from_spec("GF(2)") == PrimeField(2)
    assert field_from_spec("GF(3^2)") == ExtensionField(3, 2)
    assert field_from_spec("GF(5^1)") == PrimeField(5)
    assert field_from_spec("QQ") == RationalField()
    with pytest.raises(FieldError):
        field_from_spec("GF(6)")
    with pytest.raises(FieldError):
        field_from_spec("GF(4)")  # prime powers need the p^m form
    with pytest.raises(FieldError):
        field_from_spec("R")
