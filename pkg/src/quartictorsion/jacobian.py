"""Exact divisor-class arithmetic on the Jacobian of a smooth plane quartic.

A degree-zero class is stored canonically as m*P + E with a fixed rational
base point P, m in {0,-1,-2,-3} and E effective of degree -m: m is the
largest nonpositive integer admitting such a representation, and at that m
the function space is one-dimensional, so the representative is unique and
class equality is literal equality of the stored data.

Effective divisors are carried by their spaces of vanishing cubics and
quartics (the form-space representation).  The Riemann-Roch engine reduces
[U - V] by interpolating a quartic form G0 through A = U + kP, cutting the
residual intersection R_A = div(G0) - A, solving for the forms through
R_A + V, and extracting the new residual E - the chord/cubic/conic residual
construction in its linear-algebra form, valid over any exact field.
Support points are only ever touched through closed-point models
(h(t) = 0, coordinates polynomial in t), never through root extraction, so
the same code runs over F_q, Q and number fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import forms
from .curve import CurvePoint, PlaneQuartic
from .errors import (
    DegenerateConfiguration,
    MaxIterations,
    SupportAtInfinity,
)
from .fields import Poly, factor_poly
from .groups import EnumeratedGroup, invariants_from_order_profile
from .linalg import Mat, is_finite_backend

SERIES_ORDER = 10  # branch expansions at the base point, enough for ord <= 9


# ---------------------------------------------------------------------------
# truncated power series (plain coefficient lists over a field)


def _ser_mul(field, a, b, order):
    out = [field.zero()] * order
    for i, ai in enumerate(a):
        if i >= order:
            break
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j >= order:
                break
            out[i + j] = out[i + j] + ai * bj
    return out


def _ser_pow(field, a, e, order):
    out = [field.one()] + [field.zero()] * (order - 1)
    for _ in range(e):
        out = _ser_mul(field, out, a, order)
    return out


# ---------------------------------------------------------------------------
# closed-point models

CHART_VARS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}  # chart -> the two affine axes


@dataclass(frozen=True)
class Model:
    """A closed subscheme of the curve inside one affine chart.

    With (s, w) the chart's two affine coordinates and t = s + lam*w
    (sep = 0) or t = w + lam*s (sep = 1), the scheme is cut out by
    h(t) = 0 together with w = u(t) resp. s = u(t).  deg h is the degree
    of the divisor; multiplicities live in repeated factors of h.
    """

    chart: int
    sep: int
    lam: int
    h: tuple  # ascending, monic
    u: tuple  # ascending, len < len(h)

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    def map_coeffs(self, func) -> "Model":
        return Model(self.chart, self.sep, self.lam, tuple(func(c) for c in self.h), tuple(func(c) for c in self.u))

    def param_coords(self, field):
        """(s(t), w(t)) as coefficient lists modulo h."""
        d = self.degree
        u = [field.elem(c) for c in self.u] + [field.zero()] * (d - len(self.u))
        t = [field.zero(), field.one()] + [field.zero()] * (d - 2) if d >= 2 else [field.elem(-self.h[0])]
        lam = self.lam
        other = u
        this = [ti - lam * ui for ti, ui in zip(t, other)] if lam else t
        if self.sep == 0:
            return this, other  # s = t - lam*u, w = u
        return other, this


# ---------------------------------------------------------------------------
# effective divisors


class EffectiveDivisor:
    """degree + vanishing spaces W3 (cubics) and W4 (quartics); models when
    the closed-point description is known, and the base-point multiplicity
    when the divisor is k*P."""

    __slots__ = ("curve", "degree", "W3", "W4", "models", "p_multiple")

    def __init__(self, curve, degree, W3: Mat, W4: Mat, models=None, p_multiple=None):
        self.curve = curve
        self.degree = degree
        self.W3 = W3
        self.W4 = W4
        self.models = models
        self.p_multiple = p_multiple

    def key(self):
        return (self.degree, self.W3.key())


# ---------------------------------------------------------------------------
# divisor classes


class DivisorClass:
    __slots__ = ("jac", "m", "E")

    def __init__(self, jac: "Jacobian", m: int, E: EffectiveDivisor):
        assert -3 <= m <= 0 and E.degree == -m
        self.jac = jac
        self.m = m
        self.E = E

    def key(self):
        return (self.m, self.E.W3.key())

    def is_identity(self) -> bool:
        return self.m == 0

    def __eq__(self, other):
        return (
            isinstance(other, DivisorClass)
            and self.jac is other.jac
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        return self.jac.add(self, other)

    def __neg__(self):
        return self.jac.negate(self)

    def __sub__(self, other):
        return self.jac.add(self, self.jac.negate(other))

    def __rmul__(self, n: int):
        return self.jac.scalar_mul(n, self)

    def __repr__(self):
        return f"DivisorClass(m={self.m}, deg E={self.E.degree})"


@dataclass
class RRSpace:
    """Basis of H^0(D) as rational functions numerator/denominator, both
    quartic forms on the curve."""

    dimension: int
    basis: list  # list of (numerator_vec, denominator_vec) in S_4
    field: object


# ---------------------------------------------------------------------------
# the engine


class Jacobian:
    """Curve + rational base point + caches; all operations are pure."""

    def __init__(self, curve: PlaneQuartic, base_point: CurvePoint):
        self.curve = curve
        self.field = curve.field
        self.base_point = base_point
        if not curve.contains(base_point.coords):
            raise ValueError("base point not on the curve")
        self._fvec = curve.vec()
        self._f_rows = {}  # n -> f * S_{n-4} rows
        self._mono_series = {}  # n -> list of branch series per monomial
        self._pmul = {}  # (n, k) -> Mat W_n(kP)
        self._base_div = {}  # k -> EffectiveDivisor kP
        self._chart_cache = {}  # chart -> f dehomogenised
        self._identity = None
        self._sylow = {}  # ell -> sylow data
        self._branch = self._branch_series(SERIES_ORDER)

    # -- generic small helpers -------------------------------------------
    def _raw_rows(self, mat: Mat):
        if is_finite_backend(self.field):
            return list(mat.rref)
        return [list(r) for r in mat.rref]

    def _f_times(self, n: int):
        """Rows spanning f * S_{n-4} inside S_n."""
        if n not in self._f_rows:
            if n < 4:
                self._f_rows[n] = []
            else:
                self._f_rows[n] = forms.multiply_span_by_monomials(self.field, [self._fvec], 4, n - 4)
        return self._f_rows[n]

    def chart_poly(self, chart: int) -> dict:
        if chart not in self._chart_cache:
            self._chart_cache[chart] = forms.dehomogenise(self.field, self._fvec, 4, chart)
        return self._chart_cache[chart]

    # -- branch expansion at the base point --------------------------------
    def _branch_series(self, order: int):
        field = self.field
        coords = [field.elem(c) for c in self.base_point.coords]
        chart = next(i for i, c in enumerate(coords) if c)
        assert coords[chart] == field.one()
        v0i, v1i = CHART_VARS[chart]
        s0, w0 = coords[v0i], coords[v1i]
        fc = self.chart_poly(chart)
        fs = self._chart_partial(fc, 0, (s0, w0))
        fw = self._chart_partial(fc, 1, (s0, w0))
        if fw:
            param_axis, fixed0, dval = 0, (s0, w0), fw
        elif fs:
            param_axis, fixed0, dval = 1, (s0, w0), fs
        else:
            raise DegenerateConfiguration("base point is singular")
        # series for (s(t), w(t)) with the chosen parameter axis
        zero, one = field.zero(), field.one()
        if param_axis == 0:
            sser = [s0, one] + [zero] * (order - 2)
            wser = [w0] + [zero] * (order - 1)
            solve_for = 1
        else:
            sser = [s0] + [zero] * (order - 1)
            wser = [w0, one] + [zero] * (order - 2)
            solve_for = 0
        for j in range(1, order):
            res = self._eval_chart_series(fc, sser, wser, j + 1)
            rho = res[j]
            if rho:
                corr = -rho / dval
                if solve_for == 1:
                    wser[j] = wser[j] + corr
                else:
                    sser[j] = sser[j] + corr
        res = self._eval_chart_series(fc, sser, wser, order)
        assert all(not c for c in res), "branch expansion failed"
        triple = [None, None, None]
        triple[chart] = [one] + [zero] * (order - 1)
        triple[v0i] = sser
        triple[v1i] = wser
        return triple

    def _chart_partial(self, fc: dict, axis: int, at):
        field = self.field
        total = field.zero()
        for (i, j), c in fc.items():
            e = (i, j)[axis]
            if e:
                ii, jj = (i - 1, j) if axis == 0 else (i, j - 1)
                total = total + c * e * at[0] ** ii * at[1] ** jj
        return total

    def _eval_chart_series(self, fc: dict, sser, wser, order):
        field = self.field
        out = [field.zero()] * order
        spow = {0: [field.one()] + [field.zero()] * (order - 1)}
        wpow = {0: [field.one()] + [field.zero()] * (order - 1)}
        for e in range(1, 5):
            spow[e] = _ser_mul(field, spow[e - 1], sser, order)
            wpow[e] = _ser_mul(field, wpow[e - 1], wser, order)
        for (i, j), c in fc.items():
            term = _ser_mul(field, spow[i], wpow[j], order)
            for idx in range(order):
                if term[idx]:
                    out[idx] = out[idx] + c * term[idx]
        return out

    def _monomial_series(self, n: int):
        if n not in self._mono_series:
            field = self.field
            xs, ys, zs = self._branch
            pows = []
            for ser in (xs, ys, zs):
                cur = {0: [field.one()] + [field.zero()] * (SERIES_ORDER - 1)}
                for e in range(1, n + 1):
                    cur[e] = _ser_mul(field, cur[e - 1], ser, SERIES_ORDER)
                pows.append(cur)
            rows = []
            for (a, b, c) in forms.mono_list(n):
                t = _ser_mul(field, pows[0][a], pows[1][b], SERIES_ORDER)
                t = _ser_mul(field, t, pows[2][c], SERIES_ORDER)
                rows.append(t)
            self._mono_series[n] = rows
        return self._mono_series[n]

    def _pmul_space(self, n: int, k: int) -> Mat:
        """W_n(kP) as a Mat."""
        if (n, k) not in self._pmul:
            if k == 0:
                self._pmul[(n, k)] = forms.full_space(self.field, n)
            else:
                series = self._monomial_series(n)
                cond = [[ser[j] for ser in series] for j in range(k)]
                mat = Mat(self.field, cond).kernel()
                assert mat.rank == forms.dim_s(n) - k, "unexpected W_n(kP) dimension"
                self._pmul[(n, k)] = mat
        return self._pmul[(n, k)]

    def base_multiple(self, k: int) -> EffectiveDivisor:
        if k not in self._base_div:
            self._base_div[k] = EffectiveDivisor(
                self.curve, k, self._pmul_space(3, k), self._pmul_space(4, k), models=None, p_multiple=k
            )
        return self._base_div[k]

    # -- divisors from closed-point models ---------------------------------
    def model_rows(self, model: Model, n: int):
        """Linear conditions on S_n imposing vanishing on the model's scheme."""
        field = self.field
        d = model.degree
        hp = Poly([field.elem(c) for c in model.h], field)
        sser, wser = model.param_coords(field)
        spoly = Poly(sser, field)
        wpoly = Poly(wser, field)
        spow = {0: Poly([field.one()], field)}
        wpow = {0: Poly([field.one()], field)}
        for e in range(1, n + 1):
            spow[e] = (spow[e - 1] * spoly) % hp
            wpow[e] = (wpow[e - 1] * wpoly) % hp
        v0i, v1i = CHART_VARS[model.chart]
        rows = [[field.zero()] * forms.dim_s(n) for _ in range(d)]
        for col, mono in enumerate(forms.mono_list(n)):
            i, j = mono[v0i], mono[v1i]
            prod = (spow[i] * wpow[j]) % hp
            for r in range(d):
                rows[r][col] = prod[r]
        return rows

    def model_on_curve(self, model: Model) -> bool:
        field = self.field
        hp = Poly([field.elem(c) for c in model.h], field)
        sser, wser = model.param_coords(field)
        spoly, wpoly = Poly(sser, field), Poly(wser, field)
        fc = self.chart_poly(model.chart)
        acc = Poly([], field)
        spow = {0: Poly([field.one()], field)}
        wpow = {0: Poly([field.one()], field)}
        for e in range(1, 5):
            spow[e] = (spow[e - 1] * spoly) % hp
            wpow[e] = (wpow[e - 1] * wpoly) % hp
        for (i, j), c in fc.items():
            acc = acc + ((spow[i] * wpow[j]) % hp) * c
        return (acc % hp).is_zero()

    def divisor_from_models(self, models: Sequence[Model]) -> EffectiveDivisor:
        d = sum(m.degree for m in models)
        if d == 0:
            return self.base_multiple(0)
        for m in models:
            if not self.model_on_curve(m):
                raise DegenerateConfiguration("model does not lie on the curve")
        rows3, rows4 = [], []
        for m in models:
            rows3.extend(self.model_rows(m, 3))
            rows4.extend(self.model_rows(m, 4))
        W3 = Mat(self.field, rows3).kernel()
        W4 = Mat(self.field, rows4).kernel()
        if W3.rank != forms.dim_s(3) - d or W4.rank != forms.dim_s(4) - d:
            raise DegenerateConfiguration("aliased models (shared support)")
        return EffectiveDivisor(self.curve, d, W3, W4, models=list(models))

    def divisor_from_form(self, vec, deg: int) -> EffectiveDivisor:
        """The intersection divisor div_C(g) of a nonzero form g of degree 1
        or 2 (degree 4*deg on the curve)."""
        field = self.field
        if deg not in (1, 2):
            raise ValueError("only linear and quadratic forms are supported")
        d = 4 * deg
        rows3 = forms.multiply_span_by_monomials(field, [vec], deg, 3 - deg)
        rows4 = forms.multiply_span_by_monomials(field, [vec], deg, 4 - deg) + self._f_times(4)
        W3 = Mat(self.field, rows3)
        W4 = Mat(self.field, rows4)
        assert W3.rank == forms.dim_s(3 - deg) and W4.rank == forms.dim_s(4 - deg) + 1
        return EffectiveDivisor(self.curve, d, W3, W4)

    # -- divisor sums -------------------------------------------------------
    def _branch_eval_rows(self, space: Mat, n: int, k: int):
        """t^0..t^(k-1) coefficients of each basis row along the base branch."""
        field = self.field
        series = self._monomial_series(n)
        out = []
        for row in self._raw_rows(space):
            elems = forms.coeff_elements(field, row, n) if is_finite_backend(field) else row
            vals = []
            for t in range(k):
                total = field.zero()
                for c, ser in zip(elems, series):
                    if c:
                        total = total + c * ser[t]
                vals.append(total)
            out.append(vals)
        return out

    def _sum_with_pmultiple(self, D: EffectiveDivisor, k: int) -> Optional[EffectiveDivisor]:
        """W_n(D + kP) = W_n(D) cap W_n(kP) when P avoids supp(D); detected
        by the dimension dropping by exactly k in both degrees."""
        spaces = []
        for n, W in ((3, D.W3), (4, D.W4)):
            evals = self._branch_eval_rows(W, n, k)
            comb = Mat(self.field, [[evals[i][t] for i in range(len(evals))] for t in range(k)]).kernel()
            rows = []
            basis = self._raw_rows(W)
            for coeffs in comb.basis_rows():
                acc = None
                for c, row in zip(coeffs, basis):
                    if not c:
                        continue
                    term = _scale_row(self.field, row, c, n)
                    acc = term if acc is None else _add_rows(self.field, acc, term)
                if acc is None:
                    continue
                rows.append(acc)
            if len(rows) != W.rank - k:
                return None
            mat = Mat(self.field, rows)
            if mat.rank != W.rank - k:
                return None
            spaces.append(mat)
        return EffectiveDivisor(self.curve, D.degree + k, spaces[0], spaces[1])

    def divisor_sum(self, D1: EffectiveDivisor, D2: EffectiveDivisor) -> EffectiveDivisor:
        if D1.degree == 0:
            return D2
        if D2.degree == 0:
            return D1
        if D1.p_multiple is not None and D2.p_multiple is not None:
            return self.base_multiple(D1.p_multiple + D2.p_multiple)
        if D2.p_multiple is not None:
            fast = self._sum_with_pmultiple(D1, D2.p_multiple)
            if fast is not None:
                return fast
        elif D1.p_multiple is not None:
            fast = self._sum_with_pmultiple(D2, D1.p_multiple)
            if fast is not None:
                return fast
        field = self.field
        d = D1.degree + D2.degree
        rows8 = forms.products_span(field, self._raw_rows(D1.W4), 4, self._raw_rows(D2.W4), 4)
        rows8 += self._f_times(8)
        W8 = Mat(field, rows8)
        if W8.rank != forms.dim_s(8) - d:
            raise DegenerateConfiguration("divisor sum: product span has wrong rank")
        W4 = self._filter_through(4, W8, 4)
        assert W4.rank == forms.dim_s(4) - d
        rows7 = forms.products_span(field, self._raw_rows(D1.W4), 4, self._raw_rows(D2.W3), 3)
        rows7 += self._f_times(7)
        W7 = Mat(field, rows7)
        if W7.rank != forms.dim_s(7) - d:
            raise DegenerateConfiguration("divisor sum: degree-7 span has wrong rank")
        W3 = self._filter_through(3, W7, 4)
        # h^1(O(3) - D) can be 1 once deg D >= 8, raising the dimension
        expect3 = forms.dim_s(3) - d
        assert W3.rank == expect3 or (d >= 8 and W3.rank == expect3 + 1)
        return EffectiveDivisor(self.curve, d, W3, W4)

    def _filter_through(self, n: int, W_target: Mat, a: int) -> Mat:
        """{G in S_n : G * v^a in W_target for v = x, y, z} - the pure powers
        have no common zero, so this is exact vanishing in degree n."""
        field = self.field
        pure = []
        idx = forms.mono_index(a)
        for mono in ((a, 0, 0), (0, a, 0), (0, 0, a)):
            v = forms.zero_form(field, a)
            if is_finite_backend(field):
                v[idx[mono], 0] = 1
            else:
                v[idx[mono]] = field.one()
            pure.append(v)
        conds = _product_condition_matrix(field, n, a, pure, W_target)
        return conds.kernel()

    # -- the reduction engine ------------------------------------------------
    def _h0_space(self, A: EffectiveDivisor, V: EffectiveDivisor) -> tuple[Mat, object]:
        """(X1, g0): g0 a nonzero cubic through A, and
        X1 = {G in S_3 : div_C(G) >= R_A + V} with R_A = div_C(g0) - A.
        G -> G/g0 identifies X1 with H^0(A - V), so dim H^0 = rank X1."""
        field = self.field
        g0 = self._raw_rows(A.W3)[0]
        t_rows = [forms.form_mul(field, g0, 3, b, 4) for b in self._raw_rows(V.W4)]
        t_rows += self._f_times(7)
        T = Mat(field, t_rows)
        conds = _product_condition_matrix(field, 3, 4, self._raw_rows(A.W4), T)
        return conds.kernel(), g0

    def _w6_of(self, D: EffectiveDivisor) -> Mat:
        """W_6(D) for deg D <= 6."""
        if D.p_multiple is not None:
            return self._pmul_space(6, D.p_multiple)
        field = self.field
        rows = forms.multiply_span_by_monomials(field, self._raw_rows(D.W3), 3, 3)
        rows += self._f_times(6)
        W6 = Mat(field, rows)
        assert W6.rank == forms.dim_s(6) - D.degree
        return W6

    def _extract_residual(self, A: EffectiveDivisor, V: EffectiveDivisor, g0, g) -> EffectiveDivisor:
        """E = div_C(g) - R_A - V, as an effective divisor with spaces."""
        field = self.field
        e = A.degree - V.degree
        w6v = self._w6_of(V)
        t2_rows = [forms.form_mul(field, g0, 3, b, 6) for b in self._raw_rows(w6v)]
        t2_rows += self._f_times(9)
        T2 = Mat(field, t2_rows)
        conds2 = _product_condition_matrix(field, 5, 4, self._raw_rows(A.W4), T2)
        WR = conds2.kernel()
        assert WR.rank == forms.dim_s(5) - (12 - A.degree + V.degree), "residual space dimension"
        g_s5 = forms.multiply_span_by_monomials(field, [g], 3, 5)
        T3 = Mat(field, g_s5 + self._f_times(8))
        conds3 = _product_condition_matrix(field, 3, 5, self._raw_rows(WR), T3)
        W3E = conds3.kernel()
        assert W3E.rank == forms.dim_s(3) - e, "extracted divisor W3 dimension"
        g_s6 = forms.multiply_span_by_monomials(field, [g], 3, 6)
        T4 = Mat(field, g_s6 + self._f_times(9))
        conds4 = _product_condition_matrix(field, 4, 5, self._raw_rows(WR), T4)
        W4E = conds4.kernel()
        assert W4E.rank == forms.dim_s(4) - e, "extracted divisor W4 dimension"
        return EffectiveDivisor(self.curve, e, W3E, W4E)

    def _ord_at_base(self, space: Mat, n: int, upto: int = 4) -> int:
        """Vanishing order at the base point of the base divisor of a
        complete vanishing space in S_n."""
        field = self.field
        series = self._monomial_series(n)
        for t in range(upto):
            for row in self._raw_rows(space):
                elems = forms.coeff_elements(field, row, n) if is_finite_backend(field) else row
                total = field.zero()
                for c, ser in zip(elems, series):
                    if c:
                        total = total + c * ser[t]
                if total:
                    return t
        return upto

    def reduce_class(self, U: EffectiveDivisor, V: EffectiveDivisor) -> DivisorClass:
        """Canonical representative of the class [U - V] (equal degrees)."""
        if U.degree != V.degree:
            raise ValueError("reduce_class needs equal degrees")
        # fast path: generic classes have m = -3 and E avoiding P, which is
        # certified by h^0(U - V + 3P) = 1 plus ord_P(E) = 0
        A3 = self.divisor_sum(U, self.base_multiple(3))
        X13, g03 = self._h0_space(A3, V)
        if X13.rank == 1:
            g = self._raw_rows(X13)[0]
            E = self._extract_residual(A3, V, g03, g)
            if self._ord_at_base(E.W3, 3) == 0:
                return DivisorClass(self, -3, E)
        for m in (0, -1, -2, -3):
            k = -m
            if k == 3:
                A, X1, g0 = A3, X13, g03
            else:
                A = self.divisor_sum(U, self.base_multiple(k)) if k else U
                X1, g0 = self._h0_space(A, V)
            if X1.rank == 0:
                continue
            assert X1.rank == 1, "degree-zero class with h^0 > 1 at the first admissible m"
            if k == 0:
                return self.identity()
            g = self._raw_rows(X1)[0]
            E = self._extract_residual(A, V, g0, g)
            return DivisorClass(self, m, E)
        raise DegenerateConfiguration("no representative with m >= -3; impossible for genus 3")

    def h0_dimension(self, pos: EffectiveDivisor, neg: EffectiveDivisor) -> int:
        X1, _ = self._h0_space(pos, neg)
        return X1.rank

    def rr_space(self, pos: EffectiveDivisor, neg: EffectiveDivisor) -> RRSpace:
        X1, g0 = self._h0_space(pos, neg)
        return RRSpace(X1.rank, [(row, g0) for row in self._raw_rows(X1)], self.field)

    # -- group operations ------------------------------------------------
    def identity(self) -> DivisorClass:
        if self._identity is None:
            self._identity = DivisorClass(self, 0, self.base_multiple(0))
        return self._identity

    def canonical_rep(self, D_plus: EffectiveDivisor, D_minus: EffectiveDivisor) -> DivisorClass:
        return self.reduce_class(D_plus, D_minus)

    def add(self, A: DivisorClass, B: DivisorClass) -> DivisorClass:
        if A.is_identity():
            return B
        if B.is_identity():
            return A
        U = self.divisor_sum(A.E, B.E)
        V = self.base_multiple(-A.m - B.m)
        return self.reduce_class(U, V)

    def negate(self, A: DivisorClass) -> DivisorClass:
        if A.is_identity():
            return A
        return self.reduce_class(self.base_multiple(-A.m), A.E)

    def scalar_mul(self, n: int, A: DivisorClass) -> DivisorClass:
        if n < 0:
            return self.scalar_mul(-n, self.negate(A))
        result = self.identity()
        base = A
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    # -- random points over finite fields ---------------------------------
    def random_point(self, rng) -> DivisorClass:
        field = self.field
        assert is_finite_backend(field), "random points need a finite base field"
        for _ in range(200):
            models = []
            seen = set()
            total = 0
            guard = 0
            while total < 3 and guard < 60:
                guard += 1
                x0 = field.random(rng)
                fiber = self._fiber_poly(x0)
                if fiber.degree < 1:
                    continue
                factors = [h for (h, _) in factor_poly(fiber)]
                rng.shuffle(factors)
                pick = next((h for h in factors if h.degree <= 3 - total), None)
                if pick is None:
                    continue
                sig = (_elem_key(x0), tuple(_elem_key(c) for c in pick.coeffs))
                if sig in seen:
                    continue
                seen.add(sig)
                models.append(Model(2, 1, 0, tuple(pick.coeffs), (x0,)))
                total += pick.degree
            if total != 3:
                continue
            try:
                D = self.divisor_from_models(models)
            except DegenerateConfiguration:
                continue
            return self.reduce_class(D, self.base_multiple(3))
        raise MaxIterations("could not draw a random point")

    def _fiber_poly(self, x0):
        field = self.field
        fc = self.chart_poly(2)  # z = 1, variables (x, y)
        coeffs = [field.zero()] * 5
        for (i, j), c in fc.items():
            coeffs[j] = coeffs[j] + c * x0**i
        return Poly(coeffs, field)

    # -- Sylow subgroups and division --------------------------------------
    def sylow_data(self, ell: int, group_order: int, rng, size_cap: int = 1 << 14, max_draws: int = 64):
        key = (ell, group_order)
        if key in self._sylow:
            return self._sylow[key]
        e = 0
        n = group_order
        while n % ell == 0:
            n //= ell
            e += 1
        target = ell**e
        if target > size_cap:
            raise MaxIterations(f"{ell}-Sylow of size {target} exceeds the enumeration cap")
        grp = EnumeratedGroup(self.identity(), lambda c: c.key(), self.add)
        draws = 0
        while len(grp) < target:
            if draws >= max_draws:
                raise MaxIterations("Sylow generation did not converge")
            draws += 1
            s = self.random_point(rng)
            t = self.scalar_mul(n, s)
            grp.extend(t, size_cap=size_cap)
        assert len(grp) == target, "Sylow enumeration overshot its target"
        mul_ell = {k: self.scalar_mul(ell, v).key() for k, v in grp.elements.items()}
        depth = grp.element_orders(lambda v: self.scalar_mul(ell, v))
        invariants = invariants_from_order_profile(depth.values(), ell)
        generators = self._pick_generators(grp, depth, ell)
        data = {
            "ell": ell,
            "exponent": e,
            "group": grp,
            "mul_ell": mul_ell,
            "depth": depth,
            "invariants": invariants,
            "generators": generators,
        }
        self._sylow[key] = data
        return data

    def _pick_generators(self, grp: EnumeratedGroup, depth: dict, ell: int) -> list:
        chosen = []
        span = EnumeratedGroup(self.identity(), lambda c: c.key(), self.add)
        for k, elem in sorted(grp.elements.items(), key=lambda kv: (-depth[kv[0]], kv[0])):
            if len(span) == len(grp):
                break
            if span.extend(elem):
                chosen.append(elem)
        return chosen

    def ell_power_subgroup(self, ell: int, group_order: int, rng, **kw):
        """Generators and elementary divisors of the ell-power torsion."""
        data = self.sylow_data(ell, group_order, rng, **kw)
        return data["generators"], data["invariants"]

    def divide_point(self, Q: DivisorClass, ell: int, group_order: int, rng) -> list[DivisorClass]:
        """All R in J(F_q) with ell*R = Q."""
        e = 0
        n = group_order
        while n % ell == 0:
            n //= ell
            e += 1
        m = n
        if e == 0:
            inv = pow(ell, -1, m)
            return [self.scalar_mul(inv, Q)]
        data = self.sylow_data(ell, group_order, rng)
        # split Q into its ell-part and prime-to-ell part
        if m == 1:
            q_ell, q_m = Q, self.identity()
        else:
            alpha = m * pow(m, -1, ell**e)
            q_ell = self.scalar_mul(alpha, Q)
            q_m = self.add(Q, self.negate(q_ell))
        r_m = self.scalar_mul(pow(ell, -1, m), q_m) if m > 1 else self.identity()
        target = q_ell.key()
        if target not in data["group"].elements:
            raise MaxIterations("ell-part of the target escaped the enumerated Sylow subgroup")
        sols = []
        for k, x in data["group"].elements.items():
            if data["mul_ell"][k] == target:
                sols.append(self.add(x, r_m))
        return sorted(sols, key=lambda c: c.key())

    # -- reduction of rational classes --------------------------------------
    def reduce_class_mod(self, cls: DivisorClass, target_jac: "Jacobian", coeff_map: Callable) -> tuple[DivisorClass, bool]:
        """Push a class through a coefficient reduction map (Q -> F_p, or a
        number field -> its residue field).  Returns (class, m_changed)."""
        if cls.is_identity():
            return target_jac.identity(), False
        models = self.class_models(cls)
        reduced = [mod.map_coeffs(coeff_map) for mod in models]
        E_red = target_jac.divisor_from_models(reduced)
        out = target_jac.reduce_class(E_red, target_jac.base_multiple(-cls.m))
        return out, out.m != cls.m

    # -- models / coordinates ------------------------------------------------
    def quotient_ops(self, E: EffectiveDivisor):
        """Multiplication operators by x, y, z on O_E, as e x e matrices in
        the quotient bases of S_3/W_3(E) -> S_4/W_4(E)."""
        field = self.field
        e = E.degree
        piv3, piv4 = E.W3.pivots, E.W4.pivots
        free3 = [i for i in range(forms.dim_s(3)) if i not in piv3]
        free4 = [i for i in range(forms.dim_s(4)) if i not in piv4]
        assert len(free3) == e and len(free4) == e
        ops = []
        idx4 = forms.mono_index(4)
        for axis in range(3):
            vecs = []
            for j in free3:
                a, b, c = forms.mono_list(3)[j]
                mono = (a + (axis == 0), b + (axis == 1), c + (axis == 2))
                v = forms.zero_form(field, 4)
                if is_finite_backend(field):
                    v[idx4[mono], 0] = 1
                else:
                    v[idx4[mono]] = field.one()
                vecs.append(v)
            res = E.W4.residual(vecs)
            mat = []
            for r in range(e):  # rows indexed by free4 coordinates
                row = []
                for jj in range(e):
                    if is_finite_backend(field):
                        raw = res[jj][free4[r]]
                        row.append(field.elem(int(raw[0])) if field.degree == 1 else field.elem([int(t) for t in raw]))
                    else:
                        row.append(res[jj][free4[r]])
                mat.append(row)
            ops.append(mat)
        return ops  # ops[axis][row][col]

    def class_models(self, cls: DivisorClass) -> list[Model]:
        if cls.E.models is None:
            cls.E.models = [self.extract_model(cls.E)]
        return cls.E.models

    def extract_model(self, E: EffectiveDivisor, options=None) -> Model:
        field = self.field
        e = E.degree
        assert e >= 1
        ops = self.quotient_ops(E)
        tried = options or _default_model_options()
        last_err = SupportAtInfinity("no chart contains the divisor support")
        for (chart, sep, lam) in tried:
            den = chart
            v0i, v1i = CHART_VARS[chart]
            den_inv = _mat_inverse(field, ops[den])
            if den_inv is None:
                last_err = SupportAtInfinity(f"support meets the line at infinity of chart {chart}")
                continue
            M0 = _mat_mul(field, den_inv, ops[v0i])
            M1 = _mat_mul(field, den_inv, ops[v1i])
            Mt = _mat_add(field, M0, _mat_scale(field, M1, lam)) if sep == 0 else _mat_add(field, M1, _mat_scale(field, M0, lam))
            Mw = M1 if sep == 0 else M0
            u = _express_in_powers(field, Mt, Mw)
            if u is None:
                last_err = DegenerateConfiguration("no separating coordinate among the tried options")
                continue
            h = _charpoly(field, Mt)
            model = Model(chart, sep, lam, tuple(h), tuple(u))
            if not self.model_on_curve(model):
                raise DegenerateConfiguration("extracted model not on the curve")
            return model
        raise last_err

    def mumford_coords(self, cls: DivisorClass, chart: Optional[int] = None):
        """(m, P_x, P_y, chart): products of (T - coordinate) over the support
        of E, computed as characteristic polynomials on O_E."""
        field = self.field
        if cls.is_identity():
            return 0, [field.one()], [field.one()], (chart if chart is not None else 2)
        E = cls.E
        ops = self.quotient_ops(E)
        charts = [chart] if chart is not None else [2, 1, 0]
        for ch in charts:
            den_inv = _mat_inverse(field, ops[ch])
            if den_inv is None:
                continue
            v0i, v1i = CHART_VARS[ch]
            px = _charpoly(field, _mat_mul(field, den_inv, ops[v0i]))
            py = _charpoly(field, _mat_mul(field, den_inv, ops[v1i]))
            return cls.m, px, py, ch
        raise SupportAtInfinity("divisor support meets every coordinate line")

    def class_from_parts(self, m: int, models: Sequence[Model], check: bool = True) -> DivisorClass:
        """Rebuild a class from serialized parts; verifies canonical form."""
        E = self.divisor_from_models(models)
        if E.degree != -m:
            raise ValueError("model degrees do not match m")
        if m == 0:
            return self.identity()
        cls = DivisorClass(self, m, E)
        if check:
            redone = self.reduce_class(E, self.base_multiple(-m))
            if redone.key() != cls.key():
                raise DegenerateConfiguration("supplied representation is not canonical")
        return cls


def _elem_key(e):
    return e.value if hasattr(e, "value") else (tuple(e.coeffs) if hasattr(e, "coeffs") else e)


def _scale_row(field, row, c, n):
    if is_finite_backend(field):
        import numpy as np

        from .linalg import ff_mul

        cv = np.array([c.value] if field.degree == 1 else list(c.coeffs), dtype=np.int64)
        return ff_mul(field, row, cv[None, :])
    return [v * c for v in row]


def _add_rows(field, r1, r2):
    if is_finite_backend(field):
        return (r1 + r2) % field.characteristic
    return [a + b for a, b in zip(r1, r2)]


def _default_model_options():
    opts = []
    for chart in (2, 1, 0):
        opts.append((chart, 0, 0))
        opts.append((chart, 1, 0))
    for lam in (1, 2, 3, 4):
        for chart in (2, 1, 0):
            opts.append((chart, 0, lam))
            opts.append((chart, 1, lam))
    return opts


# ---------------------------------------------------------------------------
# small dense matrix helpers over a generic field (e <= 3)


def _mat_mul(field, A, B):
    n = len(A)
    return [[sum((A[i][t] * B[t][j] for t in range(n)), field.zero()) for j in range(n)] for i in range(n)]


def _mat_add(field, A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_scale(field, A, c: int):
    if c == 0:
        n = len(A)
        return [[field.zero()] * n for _ in range(n)]
    return [[a * c for a in row] for row in A]


def _mat_inverse(field, A):
    n = len(A)
    aug = [[A[i][j] for j in range(n)] + [field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = field.one() / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [u - f * v for u, v in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _mat_pow_list(field, M, e):
    n = len(M)
    out = [[[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]]
    for _ in range(e - 1):
        out.append(_mat_mul(field, out[-1], M))
    return out


def _express_in_powers(field, Mt, Mw):
    """u with u(Mt) = Mw, when {I, Mt, ..., Mt^{e-1}} is independent."""
    e = len(Mt)
    powers = _mat_pow_list(field, Mt, e)
    rows = []
    rhs = []
    for i in range(e):
        for j in range(e):
            rows.append([powers[t][i][j] for t in range(e)])
            rhs.append(Mw[i][j])
    # solve least... exact: Gaussian elimination on the e^2 x (e+1) system
    aug = [row + [b] for row, b in zip(rows, rhs)]
    ncols = e
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.one() / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < ncols:
        return None  # derogatory: powers dependent
    for i in range(r, len(aug)):
        if aug[i][ncols]:
            return None  # inconsistent (cannot happen for commuting mults)
    sol = [field.zero()] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    while sol and not sol[-1]:
        sol.pop()
    return sol


def _charpoly(field, M) -> list:
    """Characteristic polynomial det(T*I - M), ascending coefficients."""
    e = len(M)
    one, zero = field.one(), field.zero()
    if e == 1:
        return [-M[0][0], one]
    if e == 2:
        tr = M[0][0] + M[1][1]
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        return [det, -tr, one]
    if e == 3:
        tr = M[0][0] + M[1][1] + M[2][2]
        c2 = (
            M[0][0] * M[1][1] - M[0][1] * M[1][0]
            + M[0][0] * M[2][2] - M[0][2] * M[2][0]
            + M[1][1] * M[2][2] - M[1][2] * M[2][1]
        )
        det = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        return [-det, c2, -tr, one]
    raise ValueError("charpoly only needed for e <= 3")


# ---------------------------------------------------------------------------
# condition assembly


def _product_condition_matrix(field, n: int, a: int, H_rows, T: Mat) -> Mat:
    """Conditions on G in S_n: for every H in H_rows (subset of S_a),
    the product G*H reduces to zero modulo the row space T in S_{n+a}."""
    import numpy as np

    table = forms.mult_table(n, a)
    dim_n = forms.dim_s(n)
    dim_t = forms.dim_s(n + a)
    if is_finite_backend(field):
        k = field.degree
        prods = np.zeros((len(H_rows) * dim_n, dim_t, k), dtype=np.int64)
        ar = np.arange(dim_n)
        for hi, H in enumerate(H_rows):
            block = prods[hi * dim_n : (hi + 1) * dim_n]
            block[ar[:, None], table, :] = np.broadcast_to(H[None, :, :], (dim_n, H.shape[0], k))
        res = T.residual(prods)
        # conditions: for each target coordinate, one row over the dim_n unknowns
        res = res.reshape(len(H_rows), dim_n, dim_t, k).transpose(0, 2, 1, 3).reshape(-1, dim_n, k)
        keep = np.any(res != 0, axis=(1, 2))
        rows = res[keep]
        if rows.shape[0] == 0:
            rows = np.zeros((1, dim_n, k), dtype=np.int64)
        return Mat(field, rows)
    rows_out = []
    zero = field.zero()
    for H in H_rows:
        prods = []
        for j in range(dim_n):
            vec = [zero] * dim_t
            for l, hl in enumerate(H):
                if hl:
                    vec[table[j, l]] = vec[table[j, l]] + hl
            prods.append(vec)
        res = T.residual(prods)
        for c in range(dim_t):
            row = [res[j][c] for j in range(dim_n)]
            if any(row):
                rows_out.append(row)
    if not rows_out:
        rows_out = [[zero] * dim_n]
    return Mat(field, rows_out)
