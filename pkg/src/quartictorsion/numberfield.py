"""Number fields Q(theta) presented by a monic integer minimal polynomial.

Splitting data is only certified at primes coprime to the polynomial
discriminant, where factoring the minimal polynomial mod p reads off residue
degrees directly; no maximal-order machinery is used or needed.
Irreducibility over Q is proved by intersecting modular factor-degree
patterns (a sound, occasionally inconclusive test; inconclusive inputs are
rejected rather than trusted).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DenominatorAtP, RamifiedOrNonmaximal
from .fields import (
    QQ,
    Poly,
    distinct_degree_profile,
    ext_field,
    factor_squarefree,
    prime_field,
    primes_up_to,
    squarefree_part,
)
from .lattice import det_int

DEGREE_CAP = 12


def sylvester_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials (ascending coefficients)."""
    fd, gd = len(f) - 1, len(g) - 1
    if fd < 0 or gd < 0:
        return 0
    n = fd + gd
    rows = []
    for i in range(gd):
        rows.append([0] * i + list(reversed(f)) + [0] * (n - fd - 1 - i))
    for i in range(fd):
        rows.append([0] * i + list(reversed(g)) + [0] * (n - gd - 1 - i))
    if not rows:
        return 1
    return det_int(rows)


def poly_discriminant(f: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return 1
    deriv = [i * f[i] for i in range(1, n + 1)]
    res = sylvester_resultant(list(f), deriv)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _subset_sums(parts: Sequence[int], total: int) -> frozenset[int]:
    mask = 1
    for d in parts:
        mask |= mask << d
    return frozenset(i for i in range(total + 1) if (mask >> i) & 1)


def is_irreducible_over_q(coeffs: Sequence[int], prime_bound: int = 500) -> Optional[bool]:
    """True when modular degree patterns prove irreducibility over Q;
    False for visibly reducible input (a rational root or constant factor);
    None when the test is inconclusive."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("need a monic polynomial of positive degree")
    if n == 1:
        return True
    if coeffs[0] == 0:
        return False
    # rational root test (monic: integer roots divide the constant term)
    c0 = abs(coeffs[0])
    for r in range(1, c0 + 1):
        if c0 % r == 0:
            for s in (r, -r):
                if sum(c * s**i for i, c in enumerate(coeffs)) == 0:
                    return False
    disc = poly_discriminant(coeffs)
    if disc == 0:
        return False  # repeated factors
    achievable: Optional[frozenset[int]] = None
    for p in primes_up_to(prime_bound):
        if disc % p == 0:
            continue
        profile = distinct_degree_profile(Poly(coeffs, prime_field(p)))
        sums = _subset_sums(profile, n)
        achievable = sums if achievable is None else (achievable & sums)
        if achievable <= frozenset({0, n}):
            return True
    return None


class NumberFieldElem:
    """Element of Q(theta) in the power basis, exact rational coordinates."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field: "NumberField"):
        n = field.degree
        cs = list(coords) + [Fraction(0)] * (n - len(coords))
        self.coords = tuple(Fraction(c) for c in cs[:n])
        self.field = field

    def __add__(self, other):
        o = self.field.elem(other)
        return NumberFieldElem([a + b for a, b in zip(self.coords, o.coords)], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.field.elem(other)
        return NumberFieldElem([a - b for a, b in zip(self.coords, o.coords)], self.field)

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
        return NumberFieldElem([-a for a in self.coords], self.field)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return self.field._inverse(self)

    def __eq__(self, other):
        if isinstance(other, NumberFieldElem):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self == self.field.elem(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __repr__(self):
        return f"NF{list(map(str, self.coords))}"


class NumberField:
    """Q[x]/(min_poly) with verified irreducibility and degree <= 12."""

    __slots__ = ("min_poly", "degree", "disc", "_modpoly", "_red_rows")

    def __init__(self, min_poly: Sequence[int]):
        coeffs = [int(c) for c in min_poly]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic with integer coefficients")
        self.degree = len(coeffs) - 1
        if not 1 <= self.degree <= DEGREE_CAP:
            raise ValueError(f"degree must lie in [1, {DEGREE_CAP}]")
        verdict = is_irreducible_over_q(coeffs)
        if verdict is False:
            raise ValueError("minimal polynomial is reducible over Q")
        if verdict is None:
            raise ValueError("could not certify irreducibility of the minimal polynomial")
        self.min_poly = tuple(coeffs)
        self.disc = poly_discriminant(coeffs)
        self._modpoly = Poly([Fraction(c) for c in coeffs], QQ)
        # reduction rows: theta^(degree+j) in the power basis
        n = self.degree
        rows = []
        cur = [Fraction(-c) for c in coeffs[:n]]
        rows.append(list(cur))
        for _ in range(1, n):
            nxt = [Fraction(0)] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i in range(n):
                    nxt[i] += lead * rows[0][i]
            cur = nxt
            rows.append(list(cur))
        self._red_rows = rows

    # field protocol --------------------------------------------------------
    characteristic = 0

    def zero(self):
        return NumberFieldElem([], self)

    def one(self):
        return NumberFieldElem([Fraction(1)], self)

    def gen(self):
        if self.degree == 1:
            return NumberFieldElem([Fraction(-self.min_poly[0])], self)
        return NumberFieldElem([Fraction(0), Fraction(1)], self)

    def elem(self, x):
        if isinstance(x, NumberFieldElem):
            if x.field is not self:
                if x.field.min_poly != self.min_poly:
                    raise ValueError("element of a different number field")
                return NumberFieldElem(x.coords, self)
            return x
        if isinstance(x, (int, Fraction)):
            return NumberFieldElem([Fraction(x)], self)
        if isinstance(x, (tuple, list)):
            return NumberFieldElem(x, self)
        if isinstance(x, str):
            return NumberFieldElem([Fraction(x)], self)
        raise TypeError(f"cannot coerce {type(x)} into the number field")

    def random(self, rng):
        return NumberFieldElem([Fraction(rng.randrange(-9, 10), rng.randrange(1, 4)) for _ in range(self.degree)], self)

    def _mul(self, a: NumberFieldElem, b: NumberFieldElem) -> NumberFieldElem:
        n = self.degree
        if n == 1:
            return NumberFieldElem([a.coords[0] * b.coords[0]], self)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ai in enumerate(a.coords):
            if ai:
                for j, bj in enumerate(b.coords):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:n]
        for j in range(n, 2 * n - 1):
            c = prod[j]
            if c:
                row = self._red_rows[j - n]
                for i in range(n):
                    out[i] += c * row[i]
        return NumberFieldElem(out, self)

    def _inverse(self, a: NumberFieldElem) -> NumberFieldElem:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x] against the minimal polynomial
        r0, r1 = self._modpoly, Poly(list(a.coords), QQ)
        s0, s1 = Poly([], QQ), Poly([Fraction(1)], QQ)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        assert r0.degree == 0, "minimal polynomial not irreducible?"
        inv_lead = Fraction(1) / r0.coeffs[0]
        return NumberFieldElem([c * inv_lead for c in s0.coeffs], self)

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.min_poly == self.min_poly

    def __hash__(self):
        return hash(("NumberField", self.min_poly))

    def __repr__(self):
        return f"Q[x]/({list(self.min_poly)})"


def residue_degrees(K: NumberField, p: int) -> list[int]:
    """Degrees of the irreducible factors of the minimal polynomial mod p,
    ascending; certified splitting data only away from the discriminant."""
    if K.degree == 1:
        return [1]
    if K.disc % p == 0:
        raise RamifiedOrNonmaximal(f"{p} divides the polynomial discriminant")
    profile = distinct_degree_profile(Poly(K.min_poly, prime_field(p)))
    assert sum(profile) == K.degree
    return profile


def factors_mod_p(K: NumberField, p: int) -> list[Poly]:
    """The irreducible factors of min_poly mod p in a deterministic order
    (ascending degree, then coefficient tuple)."""
    if K.disc % p == 0:
        raise RamifiedOrNonmaximal(f"{p} divides the polynomial discriminant")
    f = Poly(K.min_poly, prime_field(p))
    factors = factor_squarefree(f)
    return sorted(factors, key=lambda g: (g.degree, tuple(c.value for c in g.coeffs)))


def reduce_nf_elem(x: NumberFieldElem, p: int, factor_index: int = 0):
    """Image of x in the residue field F_{p^f} of the chosen prime above p,
    sending theta to the smallest root of the chosen factor."""
    K = x.field
    if K.degree == 1:
        theta = Fraction(-K.min_poly[0])
        val = x.coords[0] * theta**0
        F = prime_field(p)
        if val.denominator % p == 0:
            raise DenominatorAtP(f"denominator of {val} vanishes mod {p}")
        return F.elem(val)
    factors = factors_mod_p(K, p)
    if not 0 <= factor_index < len(factors):
        raise ValueError("factor index out of range")
    g = factors[factor_index]
    fdeg = g.degree
    F = prime_field(p) if fdeg == 1 else ext_field(p, fdeg)
    if fdeg == 1:
        root = -g.coeffs[0]
    else:
        from .fields import poly_roots

        lifted = Poly([c.value for c in g.coeffs], F)
        roots = sorted(poly_roots(lifted), key=lambda r: r.coeffs)
        root = roots[0]
    acc = F.zero()
    power = F.one()
    for c in x.coords:
        if c.denominator % p == 0:
            raise DenominatorAtP(f"denominator of {c} vanishes mod {p}")
        if c:
            acc = acc + F.elem(c) * power
        power = power * root
    return acc


@dataclass
class AlgebraicNumber:
    """An element of a number field together with optional modular
    fingerprints (prime -> residue at a chosen degree-1 place)."""

    field: NumberField
    coords: tuple
    fingerprints: dict = dc_field(default_factory=dict)

    def elem(self) -> NumberFieldElem:
        return NumberFieldElem(self.coords, self.field)

    def verify_fingerprints(self) -> bool:
        """Each stored residue must be the image of the coords under theta ->
        some root of the minimal polynomial mod p."""
        x = self.elem()
        for p, value in self.fingerprints.items():
            roots = [
                r
                for r in _roots_mod(self.field, p)
            ]
            ok = False
            for root in roots:
                F = prime_field(p)
                try:
                    img = sum(
                        (F.elem(c) * F.elem(root) ** i for i, c in enumerate(x.coords)),
                        F.zero(),
                    )
                except ZeroDivisionError:
                    raise DenominatorAtP(f"denominator vanishes mod {p}")
                if img.value == value % p:
                    ok = True
                    break
            if not ok:
                return False
        return True


def _roots_mod(K: NumberField, p: int) -> list[int]:
    from .fields import poly_roots

    f = Poly(K.min_poly, prime_field(p))
    return sorted(r.value for r in poly_roots(f))
