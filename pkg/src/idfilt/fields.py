"""Exact coefficient arithmetic over F_p, F_{p^m} and Q, plus binomial services.

Scalars are plain Python values and every operation goes through a Field
object: ints in [0, p) for a prime field, tuples of ints of length m for an
extension field, and fractions.Fraction for the rationals.  All values are
immutable and every operation is a pure function, so fields and scalars can
be shared freely across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# binomial coefficients


def binom(i: int, j: int) -> int:
    """Exact binomial coefficient with C(i, j) = 0 when j > i or j < 0."""
    if j < 0 or j > i:
        return 0
    return math.comb(i, j)


def binom_mod_p(i: int, j: int, p: int) -> int:
    """C(i, j) mod p by digit products in base p.

    Total: returns 0 whenever j > i (some base-p digit of j then exceeds the
    matching digit of i).
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if j < 0 or j > i:
        return 0
    out = 1
    while j > 0 or i > 0:
        a, b = i % p, j % p
        if b > a:
            return 0
        out = (out * math.comb(a, b)) % p
        i //= p
        j //= p
    return out


def binom_multi(I, J) -> int:
    """Componentwise product of binomial coefficients, as an exact integer."""
    if len(I) != len(J):
        raise FieldError("multi-index length mismatch")
    out = 1
    for a, b in zip(I, J):
        if b > a:
            return 0
        out *= math.comb(a, b)
    return out


# ---------------------------------------------------------------------------
# fields

# fixed defining polynomials (lowest coefficient first, monic) so that
# extension-field output is reproducible bit for bit
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),          # g^2 + g + 1
    (2, 3): (1, 1, 0, 1),       # g^3 + g + 1
    (2, 4): (1, 1, 0, 0, 1),    # g^4 + g + 1
    (3, 2): (2, 2, 1),          # g^2 + 2g + 2
    (3, 3): (1, 2, 0, 1),       # g^3 + 2g + 1
    (3, 4): (2, 0, 0, 2, 1),    # g^4 + 2g^3 + 2
    (5, 2): (2, 4, 1),          # g^2 + 4g + 2
    (7, 2): (3, 6, 1),          # g^2 + 6g + 3
}


class Field:
    """Common interface for the three coefficient domains."""

    kind: str
    p: int
    m: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = self.one(), a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frobenius_root(self, a, e: int):
        """The unique b with b^(p^e) = a; identity when e = 0."""
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    @property
    def char(self) -> int:
        return self.p

    def __repr__(self):
        return self.spec_str()

    def spec_str(self) -> str:
        raise NotImplementedError


class PrimeField(Field):
    kind = "prime-field"
    m = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def frobenius_root(self, a, e):
        # Frobenius is the identity on the prime field
        return a % self.p

    def elements(self):
        return list(range(self.p))

    def sort_key(self, a):
        return (a,)

    def to_str(self, a):
        return str(a % self.p)

    def spec_str(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))


def _polydiv_mod(num, den, p):
    """Remainder of num by monic den over F_p; coefficient lists, low first."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def _is_irreducible(modulus, p) -> bool:
    """Exhaustive root / trial-factor check; intended for small degrees."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    if m == 1:
        return True
    for r in range(p):
        # evaluate at r
        acc = 0
        for c in reversed(modulus):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    if m <= 3:
        return True
    # trial division by all monic factors of degree 2 .. m//2
    for deg in range(2, m // 2 + 1):
        for idx in range(p ** deg):
            den = []
            t = idx
            for _ in range(deg):
                den.append(t % p)
                t //= p
            den.append(1)
            if any(_polydiv_mod(modulus, den, p)):
                continue
            return False
    return True


class ExtensionField(Field):
    """F_{p^m} with elements stored as length-m coefficient tuples (low first)."""

    kind = "extension-field"

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if m < 2:
            raise FieldError("extension degree must be >= 2")
        if modulus is None:
            modulus = BUILTIN_MODULI.get((p, m))
            if modulus is None:
                raise FieldError(f"no built-in modulus for GF({p}^{m}); supply one")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1:
            raise FieldError("modulus degree must equal the extension degree")
        if not _is_irreducible(modulus, p):
            raise FieldError("modulus is reducible over the prime field")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.m - 1)

    def generator(self):
        if self.m == 1:
            return self.one()
        return (0, 1) + (0,) * (self.m - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        return tuple(_polydiv_mod(prod, self.modulus, p))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.q - 2)

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def frobenius_root(self, a, e):
        if e == 0:
            return a
        k = (-e) % self.m
        return self.pow(a, self.p ** k)

    def elements(self):
        out = []
        for idx in range(self.q):
            vec, t = [], idx
            for _ in range(self.m):
                vec.append(t % self.p)
                t //= self.p
            out.append(tuple(vec))
        return out

    def sort_key(self, a):
        return tuple(a)

    def to_str(self, a):
        if all(c == 0 for c in a[1:]):
            return str(a[0])
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                g = "g" if i == 1 else f"g^{i}"
                parts.append(g if c == 1 else f"{c}*{g}")
        return "(" + "+".join(parts) + ")"

    def spec_str(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.m == self.m
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ext", self.p, self.m, self.modulus))


class RationalField(Field):
    kind = "rationals"
    p = 0
    m = 1

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def frobenius_root(self, a, e):
        if e == 0:
            return Fraction(a)
        raise FieldError("characteristic 0 has no Frobenius roots")

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def to_str(self, a):
        return str(a)

    def spec_str(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")


def field_from_spec(text: str) -> Field:
    """Parse the field syntax used in spec files: GF(p), GF(p^m), QQ."""
    s = text.strip()
    if s == "QQ":
        return RationalField()
    if s.startswith("GF(") and s.endswith(")"):
        body = s[3:-1].strip()
        if "^" in body:
            ps, ms = body.split("^", 1)
            try:
                p, m = int(ps), int(ms)
            except ValueError:
                raise FieldError(f"bad field spec {text!r}")
            if not is_prime(p):
                raise FieldError(f"{body} is not a prime power with prime base")
            if m == 1:
                return PrimeField(p)
            return ExtensionField(p, m)
        try:
            p = int(body)
        except ValueError:
            raise FieldError(f"bad field spec {text!r}")
        if not is_prime(p):
            raise FieldError(f"{p} is not a prime power")
        return PrimeField(p)
    raise FieldError(f"bad field spec {text!r}; expected GF(p), GF(p^m) or QQ")
