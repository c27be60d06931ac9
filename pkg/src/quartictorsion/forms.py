"""Homogeneous ternary forms as coefficient vectors.

Monomials of degree n in x, y, z are ordered lexicographically descending in
(deg_x, deg_y); for n = 4 this is exactly the fixed 15-coefficient order of
the curve input format.  Finite-field form vectors are numpy int64 arrays of
shape (dim, k); characteristic-zero vectors are plain lists of elements.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .linalg import Mat, ff_mul, is_finite_backend


@lru_cache(maxsize=None)
def mono_list(n: int) -> tuple[tuple[int, int, int], ...]:
    monos = [(a, b, n - a - b) for a in range(n + 1) for b in range(n - a + 1)]
    monos.sort(key=lambda m: (-m[0], -m[1]))
    return tuple(monos)


@lru_cache(maxsize=None)
def mono_index(n: int) -> dict[tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(mono_list(n))}


def dim_s(n: int) -> int:
    return (n + 1) * (n + 2) // 2 if n >= 0 else 0


@lru_cache(maxsize=None)
def mult_table(a: int, b: int) -> np.ndarray:
    """mult_table(a,b)[i,j] = index in S_{a+b} of mono_i(S_a) * mono_j(S_b)."""
    ma, mb = mono_list(a), mono_list(b)
    idx = mono_index(a + b)
    table = np.zeros((len(ma), len(mb)), dtype=np.int64)
    for i, u in enumerate(ma):
        for j, v in enumerate(mb):
            table[i, j] = idx[(u[0] + v[0], u[1] + v[1], u[2] + v[2])]
    return table


def zero_form(field, n: int):
    if is_finite_backend(field):
        return np.zeros((dim_s(n), field.degree), dtype=np.int64)
    return [field.zero() for _ in range(dim_s(n))]


def form_vector(field, n: int, coeff_map: dict[tuple[int, int, int], object]):
    """Build a form vector from a sparse {monomial: coefficient} map."""
    idx = mono_index(n)
    vec = zero_form(field, n)
    for mono, c in coeff_map.items():
        e = field.elem(c)
        if is_finite_backend(field):
            vec[idx[mono]] = np.array([e.value] if field.degree == 1 else list(e.coeffs), dtype=np.int64)
        else:
            vec[idx[mono]] = e
    return vec


def form_mul(field, va, a: int, vb, b: int):
    """Product of two forms, landing in S_{a+b}."""
    table = mult_table(a, b)
    if is_finite_backend(field):
        out = np.zeros((dim_s(a + b), field.degree), dtype=np.int64)
        prod = ff_mul(field, va[:, None, :], vb[None, :, :])
        np.add.at(out, table.ravel(), prod.reshape(-1, field.degree))
        return out % field.characteristic
    out = [field.zero()] * dim_s(a + b)
    for i, ci in enumerate(va):
        if not ci:
            continue
        for j, cj in enumerate(vb):
            if cj:
                t = table[i, j]
                out[t] = out[t] + ci * cj
    return out


def products_span(field, rows_a, a: int, rows_b, b: int) -> list:
    """All pairwise products of two lists of forms, as rows in S_{a+b}."""
    if (
        is_finite_backend(field)
        and rows_a
        and rows_b
        and all(isinstance(r, np.ndarray) for r in rows_a)
        and all(isinstance(r, np.ndarray) for r in rows_b)
    ):
        return _products_span_batched(field, np.stack(rows_a), a, np.stack(rows_b), b)
    out = []
    for va in rows_a:
        for vb in rows_b:
            out.append(form_mul(field, va, a, vb, b))
    return out


def _products_span_batched(field, A: np.ndarray, a: int, B: np.ndarray, b: int) -> list:
    p = field.characteristic
    k = field.degree
    table = mult_table(a, b)
    r1, r2 = A.shape[0], B.shape[0]
    dt = dim_s(a + b)
    conv = np.zeros((r1, r2, dt, 2 * k - 1), dtype=np.int64)
    idx = (slice(None), slice(None), table)
    for i in range(k):
        for j in range(k):
            outer = np.einsum("xa,yb->xyab", A[:, :, i], B[:, :, j])
            np.add.at(conv[..., i + j], idx, outer)
    conv %= p
    out = conv[..., :k].copy()
    if k > 1:
        red = np.array(field._red_rows, dtype=np.int64)
        for j in range(k - 1):
            out += conv[..., k + j : k + j + 1] * red[j]
        out %= p
    return list(out.reshape(r1 * r2, dt, k))


def monomial_basis_rows(field, n: int):
    """The monomial basis of S_n as form vectors."""
    rows = []
    d = dim_s(n)
    for i in range(d):
        if is_finite_backend(field):
            v = np.zeros((d, field.degree), dtype=np.int64)
            v[i, 0] = 1
        else:
            v = [field.zero()] * d
            v[i] = field.one()
        rows.append(v)
    return rows


def multiply_span_by_monomials(field, rows, a: int, c: int) -> list:
    """Products of every row with every monomial of degree c (span of S_c * W)."""
    return products_span(field, rows, a, monomial_basis_rows(field, c), c)


def form_eval(field, vec, n: int, point):
    """Evaluate at a projective point given as a 3-tuple of field elements."""
    x, y, z = (field.elem(t) for t in point)
    total = field.zero()
    for i, (a, b, c) in enumerate(mono_list(n)):
        co = _coeff(field, vec, i)
        if co:
            total = total + co * x**a * y**b * z**c
    return total


def _coeff(field, vec, i: int):
    if is_finite_backend(field):
        raw = vec[i]
        return field.elem(int(raw[0])) if field.degree == 1 else field.elem([int(t) for t in raw])
    return vec[i]


def coeff_elements(field, vec, n: int) -> list:
    return [_coeff(field, vec, i) for i in range(dim_s(n))]


def form_partials(field, vec, n: int):
    """The three partial derivatives as vectors in S_{n-1}."""
    idx = mono_index(n - 1)
    outs = [zero_form(field, n - 1) for _ in range(3)]
    for i, (a, b, c) in enumerate(mono_list(n)):
        co = _coeff(field, vec, i)
        if not co:
            continue
        for axis, (e, mono) in enumerate(
            [(a, (a - 1, b, c)), (b, (a, b - 1, c)), (c, (a, b, c - 1))]
        ):
            if e > 0:
                val = co * e
                j = idx[mono]
                if is_finite_backend(field):
                    ev = field.elem(val) if not hasattr(val, "coeffs") else val
                    outs[axis][j] = (outs[axis][j] + np.array([ev.value] if field.degree == 1 else list(ev.coeffs), dtype=np.int64)) % field.characteristic
                else:
                    outs[axis][j] = outs[axis][j] + val
    return outs


def dehomogenise(field, vec, n: int, chart: int) -> dict[tuple[int, int], object]:
    """Set coordinate ``chart`` to 1; returns {(i, j): coeff} in the two
    remaining variables, in their natural x<y<z order."""
    out: dict[tuple[int, int], object] = {}
    for i, (a, b, c) in enumerate(mono_list(n)):
        co = _coeff(field, vec, i)
        if not co:
            continue
        key = {0: (b, c), 1: (a, c), 2: (a, b)}[chart]
        out[key] = out.get(key, field.zero()) + co
    return {k: v for k, v in out.items() if v}


def homogenise(field, n: int, chart: int, coeff_map: dict[tuple[int, int], object]):
    """Inverse of dehomogenise for total degree <= n (pads with the chart var)."""
    out: dict[tuple[int, int, int], object] = {}
    for (i, j), c in coeff_map.items():
        rest = n - i - j
        if rest < 0:
            raise ValueError("total degree exceeds n")
        mono = {0: (rest, i, j), 1: (i, rest, j), 2: (i, j, rest)}[chart]
        out[mono] = c
    return form_vector(field, n, out)


def full_space(field, n: int) -> Mat:
    m = Mat(field, monomial_basis_rows(field, n))
    m._ensure()
    return m
