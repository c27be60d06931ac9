"""Small-group bookkeeping for enumerated abelian subgroups.

Elements are identified by hashable keys; the group operation is supplied by
the caller.  Everything here is desk-scale: groups are fully enumerated.
"""

from __future__ import annotations

from typing import Callable, Iterable


class EnumeratedGroup:
    """A finite abelian group held as {key: element} with closure utilities."""

    def __init__(self, identity, key_of: Callable, add: Callable):
        self.identity = identity
        self.key_of = key_of
        self.add = add
        self.elements = {key_of(identity): identity}
        self.generators: list = []

    def __len__(self):
        return len(self.elements)

    def __contains__(self, elem) -> bool:
        return self.key_of(elem) in self.elements

    def extend(self, gen, size_cap: int = 10**6) -> bool:
        """Close the group under one more generator; False if already inside."""
        if gen in self:
            return False
        self.generators.append(gen)
        # multiples of gen until it falls back into the current set
        multiples = []
        cur = gen
        while self.key_of(cur) not in self.elements:
            multiples.append(cur)
            cur = self.add(cur, gen)
        new = dict(self.elements)
        for mult in multiples:
            for elem in self.elements.values():
                s = self.add(elem, mult)
                new[self.key_of(s)] = s
                if len(new) > size_cap:
                    raise MemoryError("group enumeration exceeded its cap")
        self.elements = new
        return True

    def element_orders(self, mul_by: Callable[[object], object]) -> dict:
        """Orders of all elements when mul_by is x -> l*x for a prime l.

        Returns {key: exponent j} with order(x) = l^j.
        """
        id_key = self.key_of(self.identity)
        step = {k: self.key_of(mul_by(v)) for k, v in self.elements.items()}
        depth = {id_key: 0}

        def resolve(k):
            chain = []
            while k not in depth:
                chain.append(k)
                k = step[k]
            d = depth[k]
            for kk in reversed(chain):
                d += 1
                depth[kk] = d
            return depth

        for k in self.elements:
            resolve(k)
        return depth


def invariants_from_order_profile(depths: Iterable[int], l: int) -> list[int]:
    """Elementary-divisor exponents (descending) of an abelian l-group from
    the multiset of element orders l^depth."""
    depths = list(depths)
    emax = max(depths) if depths else 0
    # m_j = log_l #{x : l^j x = 0} = sum_i min(lambda_i, j)
    m = [0] * (emax + 1)
    for j in range(emax + 1):
        cnt = sum(1 for d in depths if d <= j)
        mj = 0
        while l**mj < cnt:
            mj += 1
        if l**mj != cnt:
            raise ValueError("order profile is not an abelian l-group profile")
        m[j] = mj
    diffs = [m[j] - m[j - 1] for j in range(1, emax + 1)]  # #{i : lambda_i >= j}
    rank = diffs[0] if diffs else 0
    lam = [sum(1 for dj in diffs if dj >= i + 1) for i in range(rank)]
    return lam


def meet_invariants(a: list[int], b: list[int]) -> list[int]:
    """Componentwise minimum of two descending exponent vectors; the largest
    structure embedding in both."""
    n = max(len(a), len(b))
    padded_a = list(a) + [0] * (n - len(a))
    padded_b = list(b) + [0] * (n - len(b))
    out = [min(x, y) for x, y in zip(padded_a, padded_b)]
    return [v for v in out if v > 0]


def embeds_in(sub: list[int], big: list[int]) -> bool:
    """Can an abelian l-group with exponents ``sub`` embed into ``big``?"""
    sub_sorted = sorted(sub, reverse=True)
    big_sorted = sorted(big, reverse=True)
    if len(sub_sorted) > len(big_sorted):
        return False
    return all(s <= b for s, b in zip(sub_sorted, big_sorted))
