"""Polynomial coordinate changes: Berezinians, bracket symbol, transforms.

A chart map is a parity-preserving polynomial change x^a = x^a(x') with a
user-supplied polynomial inverse (verified on construction); one-directional
maps may omit the inverse, losing the operations that need it.  The scale
variable transforms as t = t' * Ber(dx/dx'), and expressions, derivations
and multivector fields transform by exact substitution.  All inversions of
ring elements go through units c * (1 + nilpotent), so every step stays
polynomial; infeasible powers raise instead of approximating.
"""

from __future__ import annotations

from fractions import Fraction

from .density import DensityElement, as_density
from .errors import (
    ChartMapError,
    DenalgError,
    NotInvertible,
    SingularMatrix,
)
from .expr import EVEN, ODD, GradedExpr
from .chart import anti_name
from .multivectors import (
    HatMultivector,
    MultivectorDensity,
    multivector_lift,
    restrict_multivector,
)
from .vectorfields import (
    HatVectorField,
    VectorDensity,
    lie_lift,
    restrict_to_functions,
)


class SuperMatrix:
    """Matrix over a graded ring with parity-graded rows and columns.

    Rows and columns carry parities with all even indices first; every entry
    must be parity-homogeneous of the row plus column parity.
    """

    __slots__ = ("universe", "entries", "row_parities", "col_parities")

    def __init__(self, universe, entries, row_parities, col_parities):
        entries = tuple(tuple(row) for row in entries)
        row_parities = tuple(row_parities)
        col_parities = tuple(col_parities)
        if list(row_parities) != sorted(row_parities):
            raise ValueError("rows must be ordered even block first")
        if list(col_parities) != sorted(col_parities):
            raise ValueError("columns must be ordered even block first")
        if len(entries) != len(row_parities):
            raise ValueError("row count does not match parities")
        for i, row in enumerate(entries):
            if len(row) != len(col_parities):
                raise ValueError("column count does not match parities")
            for j, e in enumerate(row):
                if e.universe != universe:
                    raise DenalgError("entry universe mismatch")
                want = (row_parities[i] + col_parities[j]) % 2
                if not e.is_parity_homogeneous(want):
                    raise DenalgError(
                        f"entry ({i},{j}) must have parity {want}"
                    )
        self.universe = universe
        self.entries = entries
        self.row_parities = row_parities
        self.col_parities = col_parities

    @classmethod
    def identity(cls, universe, parities):
        n = len(parities)
        one = GradedExpr.one(universe)
        zero = GradedExpr.zero(universe)
        return cls(
            universe,
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            parities,
            parities,
        )

    @property
    def is_square(self):
        return self.row_parities == self.col_parities

    def mul(self, other):
        if self.col_parities != other.row_parities:
            raise ValueError("shapes do not compose")
        rows = _matmul(self.universe, self.entries, other.entries)
        return SuperMatrix(
            self.universe, rows, self.row_parities, other.col_parities
        )

    def blocks(self):
        """(A, B, C, D) with A even-even and D odd-odd."""
        re = sum(1 for p in self.row_parities if p == EVEN)
        ce = sum(1 for p in self.col_parities if p == EVEN)
        a = [row[:ce] for row in self.entries[:re]]
        b = [row[ce:] for row in self.entries[:re]]
        c = [row[:ce] for row in self.entries[re:]]
        d = [row[ce:] for row in self.entries[re:]]
        return a, b, c, d


def _matmul(universe, x, y):
    rows = []
    for i in range(len(x)):
        row = []
        for j in range(len(y[0]) if y else 0):
            acc = GradedExpr.zero(universe)
            for k in range(len(y)):
                acc = acc + x[i][k] * y[k][j]
            row.append(acc)
        rows.append(row)
    return rows


def _matsub(x, y):
    return [
        [a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)
    ]


def _det(universe, rows):
    """Determinant of a square matrix with commuting (even) entries."""
    n = len(rows)
    if n == 0:
        return GradedExpr.one(universe)
    if n == 1:
        return rows[0][0]
    acc = GradedExpr.zero(universe)
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _det(universe, minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def _even_inverse(universe, rows):
    """Inverse of an even-entried matrix via adjugate over the unit det."""
    n = len(rows)
    det = _det(universe, rows)
    try:
        det_inv = det.invert_unit()
    except NotInvertible:
        raise SingularMatrix("determinant is not a unit") from None
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                row[:i] + row[i + 1:]
                for r, row in enumerate(rows)
                if r != j
            ]
            cof = _det(universe, minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * det_inv
    return out


def berezinian(m):
    """det(A - B D^{-1} C) * det(D)^{-1}; the determinant when purely even."""
    if not m.is_square:
        raise ValueError("Berezinian needs matching row and column parities")
    a, b, c, d = m.blocks()
    u = m.universe
    if not d:
        return _det(u, a)
    det_d = _det(u, d)
    try:
        det_d_inv = det_d.invert_unit()
    except NotInvertible:
        raise SingularMatrix(
            "odd-odd block has no invertible body"
        ) from None
    if not a:
        return det_d_inv
    d_inv = _even_inverse(u, d)
    core = _matsub(a, _matmul(u, _matmul(u, b, d_inv), c))
    return _det(u, core) * det_d_inv


def _is_unit(e):
    try:
        e.unit_decompose()
        return True
    except NotInvertible:
        return False


def bracket_symbol(m):
    """Rescaling factor of the volume symbol [e_1, ..| eps_1, ..] under m.

    Computed independently of the Berezinian formula, by reducing the change
    of basis to elementary transformations (factor 1), swaps (factor -1) and
    unit scalings (factor u for an even slot, u^{-1} for an odd one).
    """
    if not m.is_square:
        raise ValueError("bracket symbol needs a square change of basis")
    u = m.universe
    n = len(m.row_parities)
    w = [list(row) for row in m.entries]
    factor = GradedExpr.one(u)
    for i in range(n):
        pivot_col = None
        for j in range(i, n):
            if _is_unit(w[i][j]):
                pivot_col = j
                break
        if pivot_col is None:
            raise SingularMatrix(f"no unit pivot for row {i}")
        if pivot_col != i:
            for r in range(n):
                w[r][i], w[r][pivot_col] = w[r][pivot_col], w[r][i]
            factor = -factor
        pivot = w[i][i]
        pivot_inv = pivot.invert_unit()
        for r in range(n):
            w[r][i] = w[r][i] * pivot_inv
        factor = factor * (
            pivot if m.row_parities[i] == EVEN else pivot_inv
        )
        for j in range(n):
            if j == i:
                continue
            coef = w[i][j]
            if coef.is_zero:
                continue
            for r in range(n):
                w[r][j] = w[r][j] - w[r][i] * coef
    ident = SuperMatrix.identity(u, m.row_parities)
    for i in range(n):
        for j in range(n):
            if w[i][j] != ident.entries[i][j]:
                raise SingularMatrix("column reduction failed to terminate")
    return factor


class ChartMap:
    """Invertible polynomial coordinate change between charts of equal shape.

    ``forward`` maps each source coordinate name to its expression in the
    target coordinates; ``inverse`` (optional) maps target names back.  When
    the inverse is present both round trips are verified exactly on
    construction.  Operations that transform derivations or antimomenta
    require the inverse.
    """

    __slots__ = ("source", "target", "forward", "inverse", "_jac", "_ber")

    def __init__(self, source, target, forward, inverse=None):
        if (source.n, source.m) != (target.n, target.m):
            raise ChartMapError("charts have different dimension")
        self.source = source
        self.target = target
        self.forward = dict(forward)
        self.inverse = dict(inverse) if inverse is not None else None
        self._jac = None
        self._ber = None
        _check_component_map(self.forward, source, target)
        if self.inverse is not None:
            _check_component_map(self.inverse, target, source)
            for name in source.coord_names:
                back = self.forward[name].substitute(
                    self.inverse, source.universe
                )
                if back != source.var(name):
                    raise ChartMapError(
                        f"inverse fails round trip on {name}"
                    )
            for name in target.coord_names:
                back = self.inverse[name].substitute(
                    self.forward, target.universe
                )
                if back != target.var(name):
                    raise ChartMapError(
                        f"forward fails round trip on {name}"
                    )

    def inverse_map(self):
        if self.inverse is None:
            raise ChartMapError("chart map has no inverse component map")
        return ChartMap(self.target, self.source, self.inverse, self.forward)

    def jacobian(self):
        """Left-derivative matrix dx^a/dx'^{a'} over the target universe."""
        if self._jac is None:
            rows = [
                [
                    self.forward[a].partial(ap)
                    for ap in self.target.coord_names
                ]
                for a in self.source.coord_names
            ]
            self._jac = SuperMatrix(
                self.target.universe,
                rows,
                self.source.coord_parities,
                self.target.coord_parities,
            )
        return self._jac

    def ber(self):
        """Jacobian of the change: the Berezinian of the Jacobi matrix."""
        if self._ber is None:
            self._ber = berezinian(self.jacobian())
        return self._ber

    def density_bindings(self):
        bindings = dict(self.forward)
        bindings["t"] = self.target.t() * self.ber()
        return bindings

    def inverse_jacobian(self):
        """Entries dx'^{a'}/dx^a expressed in the target coordinates."""
        if self.inverse is None:
            raise ChartMapError(
                "transforming derivatives requires the inverse map"
            )
        out = {}
        for ap in self.target.coord_names:
            for a in self.source.coord_names:
                e = self.inverse[ap].partial(a)
                out[(ap, a)] = e.substitute(self.forward, self.target.universe)
        return out

    def log_jacobian_gradient(self):
        """d(ln J)/dx^a = sum_{a'} (dx'^{a'}/dx^a) J^{-1} dJ/dx'^{a'}."""
        j = self.ber()
        try:
            j_inv = j.invert_unit()
        except NotInvertible:
            raise ChartMapError(
                "Jacobian is not a unit; derivative transforms are infeasible"
            ) from None
        t_inv_jac = self.inverse_jacobian()
        out = {}
        for a in self.source.coord_names:
            acc = GradedExpr.zero(self.target.universe)
            for ap in self.target.coord_names:
                acc = acc + t_inv_jac[(ap, a)] * (j_inv * j.partial(ap))
            out[a] = acc
        return out


def _check_component_map(comps, src, dst):
    if set(comps) != set(src.coord_names):
        raise ChartMapError("component map must cover every coordinate")
    for name, e in comps.items():
        if not dst.is_function_expr(e):
            raise ChartMapError(
                f"image of {name} must be a polynomial in the coordinates"
            )
        if not e.is_parity_homogeneous(src.coord_parity(name)):
            raise ChartMapError(f"image of {name} has the wrong parity")


def transform_expr(cm, expr):
    """Transform an expression of (x, t) by substitution."""
    return expr.substitute(cm.density_bindings(), cm.target.universe)


def transform_density(cm, psi):
    psi = as_density(cm.source, psi)
    return DensityElement(cm.target, transform_expr(cm, psi.expr))


def transform_hat_vector(cm, x):
    """Push a derivation through the change of coordinates."""
    bindings = cm.density_bindings()
    t_inv_jac = cm.inverse_jacobian()
    dln = cm.log_jacobian_gradient()
    target = cm.target
    comps = {}
    vert = x.vert.substitute(bindings, target.universe)
    for a, e in x.comps.items():
        moved = e.substitute(bindings, target.universe)
        for ap in target.coord_names:
            c = moved * t_inv_jac[(ap, a)]
            if c.is_zero:
                continue
            comps[ap] = comps.get(ap, target.zero()) + c
        vert = vert + moved * dln[a]
    return HatVectorField(target, comps, vert, x.parity)


def transform_antimomenta(cm, p):
    """Push a multivector field through the change of coordinates."""
    bindings = cm.density_bindings()
    t_inv_jac = cm.inverse_jacobian()
    dln = cm.log_jacobian_gradient()
    target = cm.target
    j_inv = cm.ber().invert_unit()
    tts = target.t() * target.ts()
    for a in cm.source.coord_names:
        acc = GradedExpr.zero(target.universe)
        for ap in target.coord_names:
            acc = acc + t_inv_jac[(ap, a)] * target.anti(ap)
        bindings[anti_name(a)] = acc + dln[a] * tts
    bindings["ts"] = j_inv * target.ts()
    moved = p.full().substitute(bindings, target.universe)
    return HatMultivector.from_full(target, moved, p.parity)


def transform_vector_density(cm, xd):
    if xd.mu == 1:
        raise ChartMapError(
            "weight-1 vector densities transform outside this interface"
        )
    return restrict_to_functions(transform_hat_vector(cm, lie_lift(xd)))


def transform_multivector_density(cm, pd):
    return restrict_multivector(
        transform_antimomenta(cm, multivector_lift(pd)), pd.mu
    )


def extended_jacobian(cm):
    """Jacobi matrix of the extended map (x, t) -> (x', t'), t = t' J."""
    target = cm.target
    u = target.universe
    j = cm.ber()
    zero = GradedExpr.zero(u)
    even_src = [
        n for n, p in zip(cm.source.coord_names, cm.source.coord_parities)
        if p == EVEN
    ]
    odd_src = [
        n for n, p in zip(cm.source.coord_names, cm.source.coord_parities)
        if p == ODD
    ]
    even_dst = [
        n for n, p in zip(target.coord_names, target.coord_parities)
        if p == EVEN
    ]
    odd_dst = [
        n for n, p in zip(target.coord_names, target.coord_parities)
        if p == ODD
    ]

    def coord_row(a):
        fa = cm.forward[a]
        return (
            [fa.partial(ap) for ap in even_dst]
            + [zero]
            + [fa.partial(ap) for ap in odd_dst]
        )

    t_row = (
        [target.t() * j.partial(ap) for ap in even_dst]
        + [j]
        + [target.t() * j.partial(ap) for ap in odd_dst]
    )
    rows = [coord_row(a) for a in even_src] + [t_row]
    rows += [coord_row(a) for a in odd_src]
    parities = [EVEN] * (len(even_src) + 1) + [ODD] * len(odd_src)
    return SuperMatrix(u, rows, parities, parities)


def check_volume_invariance(cm):
    """True iff the extended Jacobian has Berezinian exactly J^2."""
    j = cm.ber()
    return berezinian(extended_jacobian(cm)) == j * j
