"""Plane quartic models: validation, good primes, point search, counting.

A curve is stored by its 15 coefficients in the fixed monomial order
x^4, x^3y, x^3z, x^2y^2, x^2yz, x^2z^2, xy^3, xy^2z, xyz^2, xz^3,
y^4, y^3z, y^2z^2, yz^3, z^4 (lexicographic descending in (deg_x, deg_y)).

Smoothness is decided exactly: the partials (plus f itself, so that small
characteristic needs no special case) generate everything in degree 8 iff
the curve has no geometric singular point.  Over Q the test short-circuits
through full-rank reductions and only falls back to exact rational rank.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import forms
from .errors import BadReduction, BudgetExceeded
from .fields import QQ, PrimeField, ExtField, ext_field, prime_field, primes_up_to
from .linalg import Mat

N_COEFFS = 15
QUARTIC_MONOS = forms.mono_list(4)


class CurvePoint:
    """A projective point on a quartic, normalised so the first nonzero
    coordinate is 1.  For rational points the primitive integer triple is
    kept alongside for I/O."""

    __slots__ = ("coords", "int_coords")

    def __init__(self, coords, int_coords: Optional[tuple[int, int, int]] = None):
        self.coords = tuple(coords)
        self.int_coords = int_coords

    def __eq__(self, other):
        return isinstance(other, CurvePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.int_coords is not None:
            return "(%d : %d : %d)" % self.int_coords
        return "(%s : %s : %s)" % self.coords


class PlaneQuartic:
    """A plane quartic over Q (integer coefficients, primitive) or over a
    finite field (coefficient field elements)."""

    __slots__ = ("field", "coeffs", "_vec", "_smooth")

    def __init__(self, field, coeffs: Sequence):
        if len(coeffs) != N_COEFFS:
            raise ValueError(f"need {N_COEFFS} coefficients")
        self.field = field
        if field == QQ:
            fracs = [Fraction(c) for c in coeffs]
            if all(f == 0 for f in fracs):
                raise ValueError("zero form")
            denom = math.lcm(*[f.denominator for f in fracs])
            ints = [int(f * denom) for f in fracs]
            content = 0
            for v in ints:
                content = math.gcd(content, v)
            self.coeffs = tuple(v // content for v in ints)
        else:
            elems = [field.elem(c) for c in coeffs]
            if not any(elems):
                raise ValueError("zero form")
            self.coeffs = tuple(elems)
        self._vec = None
        self._smooth = None

    # -- basic data ---------------------------------------------------------
    def vec(self):
        """Coefficient vector in S_4 over the curve's own field."""
        if self._vec is None:
            self._vec = forms.form_vector(
                self.field, 4, {m: c for m, c in zip(QUARTIC_MONOS, self.coeffs)}
            )
        return self._vec

    def coeff_map(self) -> dict:
        return {m: c for m, c in zip(QUARTIC_MONOS, self.coeffs) if c}

    def evaluate(self, point) -> object:
        return forms.form_eval(self.field, self.vec(), 4, point)

    def contains(self, point) -> bool:
        return not self.evaluate(point)

    def base_change(self, field) -> "PlaneQuartic":
        return PlaneQuartic(field, [field.elem(c) for c in self.coeffs])

    def reduce(self, p: int) -> "PlaneQuartic":
        if self.field != QQ:
            raise ValueError("reduction starts from a curve over Q")
        F = prime_field(p)
        if all(c % p == 0 for c in self.coeffs):
            raise BadReduction(f"curve vanishes mod {p}")
        return PlaneQuartic(F, [F.elem(c) for c in self.coeffs])

    # -- smoothness ----------------------------------------------------------
    def _smooth_rows(self, field, vec):
        fx, fy, fz = forms.form_partials(field, vec, 4)
        rows = forms.multiply_span_by_monomials(field, [vec], 4, 4)
        for part in (fx, fy, fz):
            rows.extend(forms.multiply_span_by_monomials(field, [part], 3, 5))
        return rows

    def is_smooth(self) -> bool:
        if self._smooth is None:
            self._smooth = self._compute_smooth()
        return self._smooth

    def _compute_smooth(self) -> bool:
        target = forms.dim_s(8)
        if self.field != QQ:
            rows = self._smooth_rows(self.field, self.vec())
            return Mat(self.field, rows).rank == target
        # over Q: a full-rank reduction certifies smoothness cheaply
        for p in primes_up_to(200):
            if all(c % p == 0 for c in self.coeffs):
                continue
            cp = self.reduce(p)
            if Mat(cp.field, cp._smooth_rows(cp.field, cp.vec())).rank == target:
                return True
        rows = self._smooth_rows(QQ, forms.form_vector(QQ, 4, self.coeff_map()))
        return Mat(QQ, rows).rank == target

    def __eq__(self, other):
        return (
            isinstance(other, PlaneQuartic)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"PlaneQuartic({self.field}, {list(self.coeffs)})"


def is_smooth(curve: PlaneQuartic) -> bool:
    return curve.is_smooth()


def good_primes(curve: PlaneQuartic, bound: int) -> list[int]:
    """Ascending odd primes p <= bound at which the reduction stays a smooth
    quartic.  p = 2 is always excluded (the torsion machinery needs p > 2)."""
    if curve.field != QQ:
        raise ValueError("good_primes applies to curves over Q")
    if not curve.is_smooth():
        raise ValueError("curve is singular over Q")
    out = []
    for p in primes_up_to(bound):
        if p == 2:
            continue
        if all(c % p == 0 for c in curve.coeffs):
            continue
        if curve.reduce(p).is_smooth():
            out.append(p)
    return out


def find_rational_point(curve: PlaneQuartic, height_bound: int = 32) -> Optional[CurvePoint]:
    """Smallest rational point in the deterministic search order: shells of
    increasing max-norm, and inside a shell descending lexicographic over
    primitive triples with positive first nonzero coordinate."""
    if curve.field != QQ:
        raise ValueError("rational point search runs over Q")
    for h in range(1, height_bound + 1):
        shell = []
        rng = range(-h, h + 1)
        for x in rng:
            for y in rng:
                for z in rng:
                    if max(abs(x), abs(y), abs(z)) != h:
                        continue
                    if math.gcd(math.gcd(abs(x), abs(y)), abs(z)) != 1:
                        continue
                    first = next(v for v in (x, y, z) if v != 0)
                    if first < 0:
                        continue
                    shell.append((x, y, z))
        shell.sort(reverse=True)
        for pt in shell:
            if _eval_int(curve, pt) == 0:
                coords = _normalise_projective(pt)
                return CurvePoint(coords, pt)
    return None


def _eval_int(curve: PlaneQuartic, pt: tuple[int, int, int]) -> int:
    x, y, z = pt
    total = 0
    for (a, b, c), co in zip(QUARTIC_MONOS, curve.coeffs):
        if co:
            total += co * x**a * y**b * z**c
    return total


def _normalise_projective(pt: tuple[int, int, int]) -> tuple[Fraction, Fraction, Fraction]:
    first = next(v for v in pt if v != 0)
    return tuple(Fraction(v, first) for v in pt)


def count_points(curve: PlaneQuartic, k: int = 1, budget: int = 10**6) -> int:
    """#C(F_{q^k}) for a smooth quartic over F_q, by batched fiberwise root
    counting along the x:z line (the vectorised equivalent of one quartic
    poly_roots call per fiber)."""
    from . import counting

    if curve.field == QQ:
        raise ValueError("count_points needs a curve over a finite field")
    q = curve.field.order
    if q**k > budget:
        raise BudgetExceeded(f"q^k = {q**k} exceeds the budget {budget}")
    n = counting.count_curve_points(curve, k)
    # Weil bound sanity for genus 3
    if abs(n - (q**k + 1)) > 6 * math.isqrt(q**k) + 6:
        raise AssertionError("count violates the Weil bound; curve not smooth?")
    return n


# ---------------------------------------------------------------------------
# input parsing

_TERM_RE = re.compile(r"\s*([+-])?\s*([0-9]+)?\s*\*?\s*((?:[xyz](?:\s*(?:\^|\*\*)\s*[0-9]+)?\s*\*?\s*)*)")


def parse_quartic(text: str) -> list[int]:
    """Parse either 15 comma-separated integers or a polynomial string in
    x, y, z with integer coefficients into the fixed coefficient order."""
    text = text.strip()
    if "," in text:
        parts = [int(t.strip()) for t in text.split(",")]
        if len(parts) != N_COEFFS:
            raise ValueError(f"expected {N_COEFFS} comma-separated integers")
        return parts
    coeffs = {m: 0 for m in QUARTIC_MONOS}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos+12]!r}")
        sign_s, coeff_s, vars_s = m.groups()
        if sign_s is None and not first:
            raise ValueError(f"missing sign near {text[pos:pos+12]!r}")
        sign = -1 if sign_s == "-" else 1
        coeff = int(coeff_s) if coeff_s else 1
        expo = {"x": 0, "y": 0, "z": 0}
        for vm in re.finditer(r"([xyz])(?:\s*(?:\^|\*\*)\s*([0-9]+))?", vars_s or ""):
            expo[vm.group(1)] += int(vm.group(2)) if vm.group(2) else 1
        mono = (expo["x"], expo["y"], expo["z"])
        if sum(mono) != 4:
            raise ValueError(f"term of degree {sum(mono)} in a quartic: {m.group(0).strip()!r}")
        coeffs[mono] += sign * coeff
        pos = m.end()
        first = False
    return [coeffs[m] for m in QUARTIC_MONOS]


def finite_field_of(q: int):
    """F_q by prime-power q (deterministic modulus)."""
    if q < 2:
        raise ValueError("q must be a prime power")
    for p in primes_up_to(q):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return ext_field(p, k) if k > 1 else prime_field(p)
    raise ValueError(f"{q} is not a prime power")
