"""Frobenius characteristic polynomials of genus-3 reductions, Jacobian group
orders, candidate-order sets, and interval baby-step giant-step filtering.

Point counts c_k = #C(F_{p^k}) give power sums s_k = p^k + 1 - c_k of the six
Frobenius eigenvalues; Newton's identities produce the top coefficients and
the functional equation a_{6-i} = p^{3-i} a_i fills in the rest.  When only
c_1, c_2 are affordable the middle coefficient a_3 stays free inside its Weil
bound, giving an interval of candidate orders that the BSGS filter shrinks to
the true #J(F_p) with random points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AnnihilatorInvalid, InconsistentCounts, MaxIterations

ROOT_ABS_TOL = 1e-6


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class WeilData:
    """Degree-6 Frobenius data at p; a3 is None when only c1, c2 are known."""

    p: int
    a1: int
    a2: int
    a3: Optional[int]

    @property
    def complete(self) -> bool:
        return self.a3 is not None

    def polynomial(self) -> list[int]:
        """Coefficients of P(T), ascending degree."""
        if not self.complete:
            raise ValueError("incomplete Weil data")
        p, a1, a2, a3 = self.p, self.a1, self.a2, self.a3
        return [p**3, p**2 * a1, p * a2, a3, a2, a1, 1]

    def order(self) -> int:
        return sum(self.polynomial())

    def power_sum(self, k: int) -> int:
        """s_k = sum of k-th powers of the Frobenius eigenvalues."""
        if not self.complete:
            raise ValueError("incomplete Weil data")
        coeffs = self.polynomial()
        e = [(-1) ** i * coeffs[6 - i] for i in range(7)]  # e[0] = 1
        s: list[int] = [6]
        for kk in range(1, k + 1):
            acc = 0
            for i in range(1, min(kk, 6) + 1):
                term = e[i] * (s[kk - i] if kk - i > 0 else 0)
                acc += (-1) ** (i - 1) * term
            if kk <= 6:
                acc += (-1) ** (kk - 1) * kk * e[kk]
            s.append(acc)
        return s[k]

    def predicted_count(self, k: int) -> int:
        return self.p**k + 1 - self.power_sum(k)


def _check_weil(data: WeilData) -> None:
    p = data.p
    if data.a1**2 > 36 * p:
        raise InconsistentCounts(f"|a1| = {abs(data.a1)} exceeds 6*sqrt({p})")
    if abs(data.a2) > 15 * p:
        raise InconsistentCounts(f"|a2| = {abs(data.a2)} exceeds 15p")
    if data.complete:
        if data.a3**2 > 400 * p**3:
            raise InconsistentCounts(f"|a3| = {abs(data.a3)} exceeds 20p^(3/2)")
        roots = np.roots(list(reversed(data.polynomial())))
        target = math.sqrt(p)
        if np.any(np.abs(np.abs(roots) - target) > ROOT_ABS_TOL * target):
            raise InconsistentCounts("Frobenius roots are off the Weil circle")


def weil_poly_from_counts(c1: int, c2: int, c3: int, p: int) -> WeilData:
    """Complete Frobenius polynomial from exact counts over F_p, F_p^2, F_p^3."""
    s1 = p + 1 - c1
    s2 = p**2 + 1 - c2
    s3 = p**3 + 1 - c3
    e1 = s1
    if (e1 * s1 - s2) % 2:
        raise InconsistentCounts("second Newton identity has no integer solution")
    e2 = (e1 * s1 - s2) // 2
    if (s3 - e1 * s2 + e2 * s1) % 3:
        raise InconsistentCounts("third Newton identity has no integer solution")
    e3 = (s3 - e1 * s2 + e2 * s1) // 3
    data = WeilData(p=p, a1=-e1, a2=e2, a3=-e3)
    _check_weil(data)
    return data


def partial_weil_from_counts(c1: int, c2: int, p: int) -> WeilData:
    s1 = p + 1 - c1
    s2 = p**2 + 1 - c2
    e1 = s1
    if (e1 * s1 - s2) % 2:
        raise InconsistentCounts("second Newton identity has no integer solution")
    e2 = (e1 * s1 - s2) // 2
    data = WeilData(p=p, a1=-e1, a2=e2, a3=None)
    _check_weil(data)
    return data


def jacobian_order(data: WeilData) -> int:
    n = data.order()
    if n <= 0:
        raise InconsistentCounts("nonpositive group order")
    return n


def a3_bound(p: int) -> int:
    return math.isqrt(400 * p**3)


@dataclass(frozen=True)
class OrderCandidateSet:
    """All group orders consistent with known a1, a2: an arithmetic
    progression (step 1) in a3, intersected with positivity."""

    p: int
    a1: int
    a2: int
    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def a3_of(self, n: int) -> int:
        base = 1 + self.a1 + self.a2 + self.p * self.a2 + self.p**2 * self.a1 + self.p**3
        return n - base


def candidate_orders(c1: int, c2: int, p: int) -> OrderCandidateSet:
    data = partial_weil_from_counts(c1, c2, p)
    base = 1 + data.a1 + data.a2 + p * data.a2 + p**2 * data.a1 + p**3
    bound = a3_bound(p)
    lo = max(1, base - bound)
    hi = base + bound
    if hi < 1:
        raise InconsistentCounts("candidate interval is empty")
    return OrderCandidateSet(p=p, a1=data.a1, a2=data.a2, lo=lo, hi=hi)


def annihilators_in_interval(jac, S, lo: int, hi: int) -> list[int]:
    """All n in [lo, hi] with n*S = 0, by interval baby-step giant-step."""
    width = hi - lo + 1
    w = math.isqrt(width) + 1
    table: dict = {}
    cur = jac.identity()
    for j in range(w):
        table.setdefault(cur.key(), []).append(j)
        cur = jac.add(cur, S)
    giant = cur  # after w additions this is w*S
    acc = jac.scalar_mul(lo, S)
    hits: list[int] = []
    u = 0
    while lo + u * w <= hi:
        target = jac.negate(acc)
        for j in table.get(target.key(), ()):
            n = lo + u * w + j
            if lo <= n <= hi:
                hits.append(n)
        acc = jac.add(acc, giant)
        u += 1
    return sorted(set(hits))


def filter_orders_bsgs(jac, candidates: OrderCandidateSet, rng, max_draws: int = 64) -> int:
    """Shrink the candidate set with random points until one order is left."""
    current: Optional[list[int]] = None
    for _ in range(max_draws):
        S = jac.random_point(rng)
        if current is None:
            ann = annihilators_in_interval(jac, S, candidates.lo, candidates.hi)
            current = ann
        elif len(current) > 32:
            ann = annihilators_in_interval(jac, S, candidates.lo, candidates.hi)
            current = sorted(set(current) & set(ann))
        else:
            current = [n for n in current if jac.scalar_mul(n, S).is_identity()]
        if not current:
            raise InconsistentCounts("no candidate order annihilates the sampled points")
        if len(current) == 1:
            return current[0]
    raise MaxIterations(f"BSGS filter did not isolate an order in {max_draws} draws")


def element_order(jac, S, annihilator: int) -> int:
    """Exact order of S given a multiple of it."""
    if annihilator <= 0:
        raise AnnihilatorInvalid("annihilator must be positive")
    if not jac.scalar_mul(annihilator, S).is_identity():
        raise AnnihilatorInvalid("N*S is not the identity")
    order = annihilator
    for ell in factorize(annihilator):
        while order % ell == 0 and jac.scalar_mul(order // ell, S).is_identity():
            order //= ell
    return order
