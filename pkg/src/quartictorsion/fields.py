"""Exact arithmetic in prime fields, extension fields, the rationals, and
univariate polynomials over them.

Field elements are small immutable objects with overloaded operators, so the
same generic code (polynomial arithmetic, Gaussian elimination, divisor
machinery) runs over F_p, F_{p^k}, Q, and number fields alike.  Every field
object exposes ``zero``, ``one``, ``elem`` (coercion from ints/raw data) and
``random`` (from an explicit rng); finite fields additionally know their size.

Extension fields are always built on the deterministic defining polynomial
returned by :func:`make_extension`, so representations are bit-reproducible
across runs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import NonCoprimeModuli


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division; our moduli are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(bound + 1) if sieve[i]]


# ---------------------------------------------------------------------------
# prime fields


class PrimeFieldElem:
    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def __add__(self, other):
        return PrimeFieldElem(self.value + self.field.coerce_int(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElem(self.value - self.field.coerce_int(other), self.field)

    def __rsub__(self, other):
        return PrimeFieldElem(self.field.coerce_int(other) - self.value, self.field)

    def __mul__(self, other):
        return PrimeFieldElem(self.value * self.field.coerce_int(other), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self.field.coerce_int(other)
        return PrimeFieldElem(self.value * pow(o, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        return PrimeFieldElem(self.field.coerce_int(other) * pow(self.value, -1, self.field.p), self.field)

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.field)

    def __pow__(self, n: int):
        if n < 0:
            return PrimeFieldElem(pow(pow(self.value, -1, self.field.p), -n, self.field.p), self.field)
        return PrimeFieldElem(pow(self.value, n, self.field.p), self.field)

    def inverse(self):
        return PrimeFieldElem(pow(self.value, -1, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """The field F_p.  Instances are cached per p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # shared field protocol -------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    def zero(self):
        return PrimeFieldElem(0, self)

    def one(self):
        return PrimeFieldElem(1, self)

    def elem(self, x) -> PrimeFieldElem:
        if isinstance(x, PrimeFieldElem):
            if x.field.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return PrimeFieldElem(x.numerator * pow(x.denominator, -1, self.p), self)
        return PrimeFieldElem(int(x), self)

    def coerce_int(self, x) -> int:
        if isinstance(x, PrimeFieldElem):
            if x.field.p != self.p:
                raise ValueError("element of a different prime field")
            return x.value
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {type(x)} into F_{self.p}")

    def random(self, rng) -> PrimeFieldElem:
        return PrimeFieldElem(rng.randrange(self.p), self)

    def elements(self) -> Iterable[PrimeFieldElem]:
        return (PrimeFieldElem(v, self) for v in range(self.p))

    def frobenius(self, x: PrimeFieldElem) -> PrimeFieldElem:
        return x

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# polynomials over a field


class Poly:
    """Dense univariate polynomial over a field object.

    Coefficients are stored in ascending degree with a nonzero leading
    coefficient (the zero polynomial has an empty list).
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field):
        cs = [field.elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.field = field

    @staticmethod
    def x(field) -> "Poly":
        return Poly([0, 1], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.one() / self.leading()
        return Poly([c * inv for c in self.coeffs], self.field)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] - other[i] for i in range(n)], self.field)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.field)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.field)
        if self.is_zero() or other.is_zero():
            return Poly([], self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.field), self
        inv = self.field.one() / other.leading()
        quo = [self.field.zero()] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quo, self.field), Poly(rem[: other.degree], self.field)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __call__(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([self.coeffs[i] * i for i in range(1, len(self.coeffs))], self.field)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        result = Poly([1], self.field)
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly([self.field.zero()] * k + self.coeffs, self.field)

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# extension fields


class ExtFieldElem:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence[int], field: "ExtField"):
        # canonical: tuple of ints reduced mod p, length k
        self.coeffs = tuple(c % field.p for c in coeffs)
        self.field = field

    def __add__(self, other):
        o = self.field.elem(other)
        return ExtFieldElem([a + b for a, b in zip(self.coeffs, o.coeffs)], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.field.elem(other)
        return ExtFieldElem([a - b for a, b in zip(self.coeffs, o.coeffs)], self.field)

    def __rsub__(self, other):
        return self.field.elem(other) - self

    def __mul__(self, other):
        o = self.field.elem(other)
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.field.elem(other).inverse()

    def __rtruediv__(self, other):
        return self.field.elem(other) * self.inverse()

    def __neg__(self):
        return ExtFieldElem([-a for a in self.coeffs], self.field)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return self.field._inverse(self)

    def __eq__(self, other):
        if isinstance(other, ExtFieldElem):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.elem(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"{list(self.coeffs)}"


class ExtField:
    """F_{p^k} presented as F_p[t]/(defining_poly).

    The defining polynomial is the deterministic one from make_extension,
    stored as an ascending tuple of k+1 ints with leading coefficient 1.
    """

    __slots__ = ("p", "k", "defining", "_red_rows")

    def __init__(self, p: int, k: int, defining: Sequence[int]):
        self.p = p
        self.k = k
        self.defining = tuple(c % p for c in defining[:-1]) + (1,)
        # reduction table: row j = t^(k+j) expressed in t^0..t^(k-1)
        rows = []
        cur = [(-c) % p for c in self.defining[:-1]]  # t^k
        rows.append(list(cur))
        for _ in range(1, k):
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i in range(k):
                    nxt[i] = (nxt[i] + lead * rows[0][i]) % p
            cur = [c % p for c in nxt]
            rows.append(list(cur))
        self._red_rows = rows

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def degree(self) -> int:
        return self.k

    def zero(self):
        return ExtFieldElem([0] * self.k, self)

    def one(self):
        return ExtFieldElem([1] + [0] * (self.k - 1), self)

    def gen(self):
        """The class of t."""
        c = [0] * self.k
        if self.k == 1:
            c[0] = (-self.defining[0]) % self.p
        else:
            c[1] = 1
        return ExtFieldElem(c, self)

    def elem(self, x) -> ExtFieldElem:
        if isinstance(x, ExtFieldElem):
            if x.field is self:
                return x
            if x.field.p == self.p and x.field.defining == self.defining:
                return ExtFieldElem(x.coeffs, self)
            raise ValueError("element of a different extension field")
        if isinstance(x, PrimeFieldElem):
            if x.field.p != self.p:
                raise ValueError("wrong characteristic")
            return ExtFieldElem([x.value] + [0] * (self.k - 1), self)
        if isinstance(x, int):
            return ExtFieldElem([x] + [0] * (self.k - 1), self)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            v = x.numerator * pow(x.denominator, -1, self.p)
            return ExtFieldElem([v] + [0] * (self.k - 1), self)
        if isinstance(x, (tuple, list)):
            c = list(x) + [0] * (self.k - len(x))
            return ExtFieldElem(c, self)
        raise TypeError(f"cannot coerce {type(x)} into GF({self.p}^{self.k})")

    def _mul(self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem:
        p, k = self.p, self.k
        if k == 1:
            return ExtFieldElem([a.coeffs[0] * b.coeffs[0]], self)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    prod[i + j] += ai * bj
        out = prod[:k]
        for j in range(k, 2 * k - 1):
            c = prod[j] % p
            if c:
                row = self._red_rows[j - k]
                for i in range(k):
                    out[i] += c * row[i]
        return ExtFieldElem([v % p for v in out], self)

    def _inverse(self, a: ExtFieldElem) -> ExtFieldElem:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return a ** (self.order - 2)

    def random(self, rng) -> ExtFieldElem:
        return ExtFieldElem([rng.randrange(self.p) for _ in range(self.k)], self)

    def elements(self) -> Iterable[ExtFieldElem]:
        def rec(prefix):
            if len(prefix) == self.k:
                yield ExtFieldElem(prefix, self)
                return
            for v in range(self.p):
                yield from rec(prefix + [v])

        return rec([])

    def frobenius(self, x: ExtFieldElem) -> ExtFieldElem:
        return x**self.p

    def subfield_elem(self, x) -> bool:
        """True if x lies in the prime field."""
        return not any(x.coeffs[1:])

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.defining == self.defining
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.defining))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


def _int_poly_is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic degree-k polynomial over F_p."""
    F = prime_field(p)
    f = Poly(coeffs, F)
    k = f.degree
    if k == 1:
        return True
    x = Poly.x(F)
    # x^(p^k) == x mod f, and for each prime l | k: gcd(x^(p^(k/l)) - x, f) = 1
    xp = x.pow_mod(p**k, f)
    if xp != x % f:
        return False
    for l in {q for q in range(2, k + 1) if k % q == 0 and is_prime(q)}:
        g = x.pow_mod(p ** (k // l), f) - x
        if f.gcd(g).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def make_extension(p: int, k: int) -> tuple[int, ...]:
    """Deterministic defining polynomial of F_{p^k}: the lexicographically
    smallest monic irreducible of degree k, comparing coefficient tuples
    (c_0, c_1, ..., c_{k-1}) with c_0 most significant.

    Returned ascending: (c_0, ..., c_{k-1}, 1).
    """
    if not is_prime(p) or k < 1:
        raise ValueError("need p prime and k >= 1")
    if k == 1:
        return (0, 1)

    def rec(prefix: list[int]):
        if len(prefix) == k:
            if _int_poly_is_irreducible_mod_p(prefix + [1], p):
                return tuple(prefix) + (1,)
            return None
        for v in range(p):
            hit = rec(prefix + [v])
            if hit is not None:
                return hit
        return None

    result = rec([])
    assert result is not None  # irreducibles of every degree exist
    return result


@lru_cache(maxsize=None)
def ext_field(p: int, k: int) -> ExtField:
    return ExtField(p, k, make_extension(p, k))


def finite_field(q: int):
    """F_q for a prime power q, with the deterministic modulus."""
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1 or not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return ext_field(p, k) if k > 1 else prime_field(p)
    return prime_field(q)


# ---------------------------------------------------------------------------
# the rationals


class RationalField:
    """Q with Fraction elements, satisfying the same protocol."""

    __slots__ = ()

    characteristic = 0
    degree = 1

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def elem(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {type(x)} into Q")

    def random(self, rng) -> Fraction:
        return Fraction(rng.randrange(-99, 100), rng.randrange(1, 20))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "Q"


QQ = RationalField()


# ---------------------------------------------------------------------------
# finite-field polynomial factorization (to the extent needed)


def _poly_rng_seed(f: Poly) -> int:
    data = (f.field.order if hasattr(f.field, "order") else 0, tuple(hash(c) for c in f.coeffs))
    return hash(data) & 0x7FFFFFFF


def squarefree_part(f: Poly) -> Poly:
    """Largest squarefree divisor of f (finite-field coefficients)."""
    f = f.monic()
    d = f.derivative()
    if d.is_zero():
        # f is a p-th power: f(x) = g(x^p); take p-th roots of coefficients
        p = f.field.characteristic
        q = f.field.order
        root = [f.coeffs[i] ** (q // p) for i in range(0, len(f.coeffs), p)]
        return squarefree_part(Poly(root, f.field))
    g = f.gcd(d)
    if g.degree == 0:
        return f
    h = f // g
    # fold in factors of g missing from h
    rest = squarefree_part(g)
    extra = rest // rest.gcd(h)
    return h * extra


def distinct_degree_profile(f: Poly) -> list[int]:
    """Degrees (with multiplicity) of the irreducible factors of squarefree f."""
    f = f.monic()
    assert f.gcd(f.derivative()).degree == 0, "input must be squarefree"
    q = f.field.order
    profile: list[int] = []
    x = Poly.x(f.field)
    h = x
    d = 0
    rem = f
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            profile.append(rem.degree)
            break
        h = h.pow_mod(q, rem)
        g = rem.gcd(h - x)
        if g.degree > 0:
            profile.extend([d] * (g.degree // d))
            rem = rem // g
            h = h % rem
    return sorted(profile)


def _equal_degree_split(f: Poly, d: int, rng) -> Poly:
    """A proper monic factor of f, where f is a product of >= 2 distinct
    irreducibles all of degree d (Cantor-Zassenhaus)."""
    q = f.field.order
    p = f.field.characteristic
    one = Poly([1], f.field)
    n = f.degree
    while True:
        a = Poly([f.field.random(rng) for _ in range(n)], f.field)
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            return g
        if p == 2:
            # trace map over F_{2^m}: a + a^2 + a^4 + ... (d*k terms)
            m = d * f.field.degree
            t = a
            acc = a
            for _ in range(m - 1):
                t = (t * t) % f
                acc = acc + t
            g = f.gcd(acc)
        else:
            b = a.pow_mod((q**d - 1) // 2, f)
            g = f.gcd(b - one)
        if 0 < g.degree < f.degree:
            return g


def factor_squarefree(f: Poly, rng=None) -> list[Poly]:
    """Monic irreducible factors of a squarefree monic f over F_q."""
    import random as _random

    f = f.monic()
    if rng is None:
        rng = _random.Random(_poly_rng_seed(f))
    q = f.field.order
    x = Poly.x(f.field)
    factors: list[Poly] = []
    h = x
    d = 0
    rem = f
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            factors.append(rem)
            break
        h = h.pow_mod(q, rem)
        g = rem.gcd(h - x)
        if g.degree > 0:
            # split the degree-d part into irreducibles
            stack = [g]
            while stack:
                piece = stack.pop()
                if piece.degree == d:
                    factors.append(piece)
                else:
                    part = _equal_degree_split(piece, d, rng)
                    stack.extend([part, piece // part])
            rem = rem // g
            h = h % rem
    return sorted(factors, key=lambda t: tuple((c.value,) if isinstance(c, PrimeFieldElem) else c.coeffs for c in t.coeffs))


def factor_poly(f: Poly, rng=None) -> list[tuple[Poly, int]]:
    """Full monic factorization over F_q as (irreducible, multiplicity) pairs."""
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    for g in factor_squarefree(squarefree_part(f)):
        m = 0
        rem = f
        while True:
            quo, r = divmod(rem, g)
            if not r.is_zero():
                break
            rem = quo
            m += 1
        out.append((g, m))
    return out


def poly_roots(f: Poly) -> list:
    """All roots of f in its coefficient field, with multiplicity.

    Computed via gcd with the field equation x^q - x followed by equal-degree
    splitting into linear factors, then multiplicity extraction by division.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    q = f.field.order
    sf = squarefree_part(f)
    x = Poly.x(f.field)
    lin = sf.gcd(x.pow_mod(q, sf) - x)
    roots = []
    if lin.degree > 0:
        # split the product of linear factors
        import random as _random

        rng = _random.Random(_poly_rng_seed(f))
        stack = [lin]
        while stack:
            piece = stack.pop()
            if piece.degree == 1:
                roots.append(-piece.coeffs[0])
            else:
                part = _equal_degree_split(piece, 1, rng)
                stack.extend([part, piece // part])
    out = []
    for r in roots:
        m = 0
        rem = f
        g = Poly([-r, 1], f.field)
        while True:
            quo, rr = divmod(rem, g)
            if not rr.is_zero():
                break
            rem = quo
            m += 1
        out.extend([r] * m)
    def _key(v):
        return (v.value,) if isinstance(v, PrimeFieldElem) else v.coeffs
    return sorted(out, key=_key)


# ---------------------------------------------------------------------------
# CRT and rational reconstruction


def crt_combine(residues: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine (residue, modulus) pairs with pairwise coprime moduli.

    Returns (r, M) with 0 <= r < M = prod(moduli) and r = a_i mod m_i.
    """
    if not residues:
        raise ValueError("need at least one residue")
    r, m = residues[0]
    r %= m
    for a, n in residues[1:]:
        g = math.gcd(m, n)
        if g != 1:
            raise NonCoprimeModuli(f"moduli {m} and {n} share the factor {g}")
        # r + m*t = a mod n
        t = ((a - r) * pow(m, -1, n)) % n
        r = r + m * t
        m = m * n
    return r % m, m


def rational_reconstruction(a: int, N: int) -> Optional[Fraction]:
    """The unique r/s with r*s^{-1} = a mod N, gcd(r,s)=1, s>0 and
    |r|, s <= sqrt(N/2), or None if no such pair exists."""
    if not 0 <= a < N:
        raise ValueError("need 0 <= a < N")
    if a == 0:
        return Fraction(0)
    bound = math.isqrt(N // 2)
    r0, s0 = N, 0
    r1, s1 = a, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1 or math.gcd(abs(s1), N) != 1:
        return None
    frac = Fraction(r1, s1)  # Fraction normalises the sign into the numerator
    return frac
