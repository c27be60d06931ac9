"""Dense exact linear algebra over the library's field objects.

Two backends share one interface:

* finite fields: matrices are numpy int64 arrays of shape (rows, cols, k)
  where k is the extension degree (k = 1 for prime fields); all row
  operations are vectorised,
* characteristic zero (Q, number fields): matrices are lists of lists of
  field elements and the code is the plain generic algorithm.

All spaces handed around the divisor machinery are stored as canonical
reduced row echelon bases, so subspace equality is literal equality of the
stored data.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import ExtField, PrimeField


def is_finite_backend(field) -> bool:
    return isinstance(field, (PrimeField, ExtField))


# ---------------------------------------------------------------------------
# numpy backend helpers (finite fields)


def _red_matrix(field) -> np.ndarray:
    """(k-1, k) table: row j expresses t^(k+j) in the power basis."""
    k = field.degree
    if k == 1:
        return np.zeros((0, 1), dtype=np.int64)
    return np.array(field._red_rows, dtype=np.int64)


def ff_mul(field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficient-vector product with broadcasting; last axis has length k."""
    p = field.characteristic
    k = field.degree
    if k == 1:
        return (a * b) % p
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    prod = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[..., i + j] += a[..., i] * b[..., j]
    prod %= p
    red = _red_matrix(field)
    out = prod[..., :k].copy()
    for j in range(k - 1):
        out += prod[..., k + j : k + j + 1] * red[j]
    return out % p


def ff_inv_scalar(field, a: np.ndarray):
    """Inverse of a single element given as a length-k int vector."""
    p = field.characteristic
    if field.degree == 1:
        return np.array([pow(int(a[0]), -1, p)], dtype=np.int64)
    elem = field.elem([int(v) for v in a])
    return np.array(elem.inverse().coeffs, dtype=np.int64)


def _as_ff_array(field, rows) -> np.ndarray:
    k = field.degree
    if isinstance(rows, np.ndarray):
        arr = rows.astype(np.int64, copy=True)
        if arr.ndim == 2:
            arr = arr[:, :, None] if k == 1 else arr
        return arr % field.characteristic
    rows = list(rows)
    if rows and all(isinstance(r, np.ndarray) for r in rows):
        return np.stack(rows).astype(np.int64) % field.characteristic
    data = []
    for row in rows:
        out_row = []
        for v in row:
            e = field.elem(v)
            out_row.append([e.value] if k == 1 else list(e.coeffs))
        data.append(out_row)
    if not data:
        return np.zeros((0, 0, k), dtype=np.int64)
    return np.array(data, dtype=np.int64)


def _ff_rref(field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    p = field.characteristic
    a = arr % p
    rows, cols = a.shape[0], a.shape[1]
    pivots: list[int] = []
    r = 0
    if field.degree == 1:
        flat = a[:, :, 0]
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(flat[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                flat[[r, i]] = flat[[i, r]]
            inv = pow(int(flat[r, c]), -1, p)
            if inv != 1:
                flat[r] = flat[r] * inv % p
            col = flat[:, c].copy()
            col[r] = 0
            hit = np.nonzero(col)[0]
            if hit.size:
                flat[hit] = (flat[hit] - col[hit, None] * flat[r]) % p
            pivots.append(c)
            r += 1
        return a[: len(pivots)], pivots
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(np.any(a[r:, c] != 0, axis=-1))[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = ff_inv_scalar(field, a[r, c])
        a[r] = ff_mul(field, a[r], inv[None, :])
        col_vals = a[:, c].copy()
        col_vals[r] = 0
        mask = np.any(col_vals != 0, axis=-1)
        if mask.any():
            a[mask] = (a[mask] - ff_mul(field, col_vals[mask][:, None, :], a[r][None, :, :])) % p
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def _ff_residual(field, rref: np.ndarray, pivots: list[int], vecs: np.ndarray) -> np.ndarray:
    # one-shot: RREF rows vanish at each other's pivots, so subtracting
    # sum_i v[piv_i] * row_i reduces v completely (p must stay < ~3e7 so the
    # int64 matmul cannot overflow; group-law fields are far smaller)
    p = field.characteristic
    out = vecs % p
    if not pivots:
        return out
    piv = np.array(pivots, dtype=np.int64)
    coef = out[:, piv, :]
    k = field.degree
    if k == 1:
        contrib = coef[:, :, 0] @ rref[:, :, 0]
        return (out - contrib[:, :, None]) % p
    conv = np.zeros((out.shape[0], out.shape[1], 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            conv[:, :, i + j] += coef[:, :, i] @ rref[:, :, j]
    conv %= p
    red = _red_matrix(field)
    contrib = conv[:, :, :k].copy()
    for j in range(k - 1):
        contrib += conv[:, :, k + j : k + j + 1] * red[j]
    return (out - contrib) % p


# ---------------------------------------------------------------------------
# generic backend (exact characteristic-zero fields)


def _gen_rref(field, rows) -> tuple[list[list], list[int]]:
    a = [[field.elem(v) for v in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = field.one() / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[: len(pivots)], pivots


def _gen_residual(field, rref, pivots, vecs):
    out = []
    for vec in vecs:
        v = [field.elem(x) for x in vec]
        for idx, c in enumerate(pivots):
            if v[c]:
                f = v[c]
                v = [u - f * w for u, w in zip(v, rref[idx])]
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# public interface


class Mat:
    """A matrix over a field, normalised to canonical RREF on demand."""

    __slots__ = ("field", "data", "_rref", "_pivots")

    def __init__(self, field, rows, _rref=None, _pivots=None):
        self.field = field
        if is_finite_backend(field):
            self.data = _as_ff_array(field, rows)
        else:
            self.data = [[field.elem(v) for v in row] for row in rows]
        self._rref = _rref
        self._pivots = _pivots

    # construction helpers
    @staticmethod
    def zeros(field, ncols: int) -> "Mat":
        if is_finite_backend(field):
            return Mat(field, np.zeros((0, ncols, field.degree), dtype=np.int64), _rref=np.zeros((0, ncols, field.degree), dtype=np.int64), _pivots=[])
        m = Mat(field, [])
        m.data = []
        m._rref, m._pivots = [], []
        return m

    @property
    def nrows(self) -> int:
        return len(self.data) if isinstance(self.data, list) else self.data.shape[0]

    @property
    def ncols(self) -> int:
        if isinstance(self.data, list):
            return len(self.data[0]) if self.data else 0
        return self.data.shape[1]

    def _ensure(self):
        if self._rref is None:
            if self.nrows == 0:
                self._rref, self._pivots = self.data, []
            elif is_finite_backend(self.field):
                self._rref, self._pivots = _ff_rref(self.field, self.data)
            else:
                self._rref, self._pivots = _gen_rref(self.field, self.data)

    @property
    def rref(self):
        self._ensure()
        return self._rref

    @property
    def pivots(self) -> list[int]:
        self._ensure()
        return self._pivots

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def residual(self, vectors):
        """Reduce row vectors modulo this row space."""
        self._ensure()
        if is_finite_backend(self.field):
            vecs = _as_ff_array(self.field, vectors)
            if vecs.shape[0] == 0:
                return vecs
            return _ff_residual(self.field, self._rref, self._pivots, vecs)
        return _gen_residual(self.field, self._rref, self._pivots, vectors)

    def contains(self, vector) -> bool:
        res = self.residual([vector])
        if is_finite_backend(self.field):
            return not np.any(res)
        return all(not v for v in res[0])

    def basis_rows(self):
        """Canonical basis as a list of plain row vectors (field elements)."""
        self._ensure()
        if is_finite_backend(self.field):
            k = self.field.degree
            out = []
            for row in self._rref:
                if k == 1:
                    out.append([self.field.elem(int(v[0])) for v in row])
                else:
                    out.append([self.field.elem([int(c) for c in v]) for v in row])
            return out
        return [list(r) for r in self._rref]

    def key(self):
        """Hashable canonical key of the row span."""
        self._ensure()
        if is_finite_backend(self.field):
            arr = np.ascontiguousarray(self._rref)
            return (arr.shape, arr.tobytes())
        return tuple(tuple(v for v in row) for row in self._rref)

    def kernel(self) -> "Mat":
        """Canonical basis of {v : self @ v = 0} as rows."""
        self._ensure()
        n = self.ncols
        piv = self._pivots
        free = [c for c in range(n) if c not in piv]
        if is_finite_backend(self.field):
            k = self.field.degree
            p = self.field.characteristic
            basis = np.zeros((len(free), n, k), dtype=np.int64)
            for bi, fc in enumerate(free):
                basis[bi, fc, 0] = 1
                for ri, pc in enumerate(piv):
                    basis[bi, pc] = (-self._rref[ri, fc]) % p
            m = Mat(self.field, basis)
            m._ensure()
            return m
        basis = []
        zero, one = self.field.zero(), self.field.one()
        for fc in free:
            v = [zero] * n
            v[fc] = one
            for ri, pc in enumerate(piv):
                v[pc] = -self._rref[ri][fc]
            basis.append(v)
        m = Mat(self.field, basis)
        m._ensure()
        return m

    def stack(self, other: "Mat") -> "Mat":
        if is_finite_backend(self.field):
            if self.nrows == 0:
                return Mat(self.field, other.data)
            if other.nrows == 0:
                return Mat(self.field, self.data)
            return Mat(self.field, np.concatenate([self.data, other.data], axis=0))
        return Mat(self.field, [list(r) for r in self.data] + [list(r) for r in other.data])

    def span_equals(self, other: "Mat") -> bool:
        return self.key() == other.key()
