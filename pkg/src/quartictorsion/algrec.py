"""Reconstruct the minimal polynomial of an algebraic number from its
reductions modulo several primes.

Residue data (p_i, f_i) pins down the coefficient lattice

    L^d = { g in Z[x], deg g <= d : f_i divides (g mod p_i) for all i },

which we build by refining the integer coefficient lattice with one modular
kernel per prime and canonicalising with HNF, then search with LLL.  A
candidate is accepted once (2|f|)^(d+1) * safety_factor <= lcm(p_i), with
|f| the max-norm of the coefficients.

Coefficient vectors are in descending degree: (v_0, ..., v_d) stands for
v_0 x^d + ... + v_d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import DegreeCapExceeded
from .fields import Poly, prime_field
from .lattice import IntLattice, hnf, lll_reduce
from .linalg import Mat

DEFAULT_SAFETY_FACTOR = 2**10
DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class ResidueDatum:
    """A prime together with a monic integer lift of the minimal polynomial of
    the residue of the unknown algebraic number."""

    p: int
    f_p: tuple[int, ...]  # ascending coefficients, monic

    def __post_init__(self):
        f = tuple(int(c) % self.p for c in self.f_p[:-1]) + (1,)
        if len(f) < 2:
            raise ValueError("residue polynomial must have degree >= 1")
        if self.f_p[-1] % self.p != 1:
            raise ValueError("residue polynomial must be monic")
        object.__setattr__(self, "f_p", f)

    @property
    def degree(self) -> int:
        return len(self.f_p) - 1


@dataclass
class ReconstructionProblem:
    data: list[ResidueDatum]
    safety_factor: int = DEFAULT_SAFETY_FACTOR
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        if not self.data:
            raise ValueError("need at least one residue datum")
        primes = [d.p for d in self.data]
        if len(set(primes)) != len(primes):
            raise ValueError("primes must be pairwise distinct")

    @property
    def modulus(self) -> int:
        return math.prod(d.p for d in self.data)


def _desc_to_poly_mod_p(vec: Sequence[int], p: int) -> Poly:
    F = prime_field(p)
    return Poly(list(reversed(vec)), F)


def ideal_lattice_basis(problem: ReconstructionProblem, d: int) -> IntLattice:
    """Basis of L^d, starting from Z^(d+1) and intersecting the congruence
    kernel of each prime (CRT rows + HNF instead of a Grobner engine)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    basis = [[1 if i == j else 0 for j in range(d + 1)] for i in range(d + 1)]
    for datum in problem.data:
        basis = _refine_by_congruence(
            basis,
            datum.p,
            lambda vec, dat=datum: _remainder_coeffs(vec, dat),
        )
    return IntLattice(basis)


def _remainder_coeffs(vec: Sequence[int], datum: ResidueDatum) -> list[int]:
    F = prime_field(datum.p)
    g = _desc_to_poly_mod_p(vec, datum.p)
    f = Poly(datum.f_p, F)
    r = g % f
    return [r[i].value for i in range(datum.degree)]


def _refine_by_congruence(basis: list[list[int]], p: int, residue_map) -> list[list[int]]:
    """Replace the lattice spanned by ``basis`` with its sublattice of vectors
    whose residue_map image vanishes mod p."""
    F = prime_field(p)
    images = [residue_map(v) for v in basis]
    ncond = len(images[0])
    # combinations of basis vectors whose residues vanish: left kernel
    mat = Mat(F, [[images[i][r] for i in range(len(basis))] for r in range(ncond)])
    kernel = mat.kernel()
    rows: list[list[int]] = []
    for comb in kernel.basis_rows():
        coeffs = [c.value for c in comb]
        rows.append([sum(c * basis[i][j] for i, c in enumerate(coeffs)) for j in range(len(basis[0]))])
    for v in basis:
        rows.append([p * x for x in v])
    return hnf(rows)


def _is_zero_mod(vec: Sequence[int], p: int) -> bool:
    return all(v % p == 0 for v in vec)


def _normalise(vec: Sequence[int]) -> list[int]:
    content = 0
    for v in vec:
        content = math.gcd(content, v)
    out = [v // content for v in vec] if content > 1 else list(vec)
    lead = next((v for v in out if v != 0), 0)
    if lead < 0:
        out = [-v for v in out]
    return out


def reconstruct_min_poly(problem: ReconstructionProblem) -> Optional[list[int]]:
    """Iterate d = 1, 2, ...: build L^d, LLL-reduce, accept the shortest
    vector passing the size gate.

    Returns the accepted polynomial (descending coefficients, primitive,
    positive leading coefficient), or None when the available primes can
    never satisfy the gate (insufficient data).  Raises DegreeCapExceeded
    when the cap is hit while more data could still succeed.
    """
    modulus = problem.modulus
    safety = problem.safety_factor
    for d in range(1, problem.degree_cap + 1):
        if (2 ** (d + 1)) * safety > modulus:
            # even |f| = 1 could not pass now, and the gate only tightens
            return None
        lat = ideal_lattice_basis(problem, d)
        reduced = lll_reduce(lat.basis)
        ranked = sorted(reduced, key=lambda v: (sum(x * x for x in v), v))
        for vec in ranked:
            if any(_is_zero_mod(vec, datum.p) for datum in problem.data):
                continue
            for datum in problem.data:
                # soundness: the residue polynomial divides every lattice vector
                assert _is_zero_vec(_remainder_coeffs(vec, datum)), "lattice vector escaped the ideal"
            height = max(abs(x) for x in vec)
            if (2 * height) ** (d + 1) * safety <= modulus:
                return _normalise(vec)
            break  # only the shortest admissible vector is tested at this d
    raise DegreeCapExceeded(f"no acceptable polynomial up to degree {problem.degree_cap}")


def _is_zero_vec(v: Sequence[int]) -> bool:
    return all(x == 0 for x in v)


def residues_check(f_desc: Sequence[int], data: Sequence[ResidueDatum]) -> bool:
    """Oracle helper: does every residue polynomial divide f mod its prime?"""
    for datum in data:
        if not _is_zero_vec(_remainder_coeffs(f_desc, datum)):
            return False
    return True
