"""Vector fields on the antitangent bundle and the Nijenhuis bracket.

Forms on a chart are polynomials in the coordinates and their differentials
dx^a (parity opposite to x^a).  A vector field on the antitangent bundle is
X = X^a_0(x,dx) d/dx^a + X^a_1(x,dx) d/d(dx^a); the exterior differential is
the odd field d = dx^a d/dx^a.  Fields commuting with d are exactly the
lifts X^a d/dx^a + (-1)^{|X|} dX^a d/d(dx^a) of form-valued vector fields,
and the commutator of two lifts restricts to the Nijenhuis bracket.
"""

from __future__ import annotations

from .chart import diff_name
from .errors import DenalgError, NotParityHomogeneous
from .expr import EVEN, GradedExpr


class FormValuedVectorField:
    """X = X^a(x, dx) d/dx^a with form coefficients."""

    __slots__ = ("chart", "comps", "parity")

    def __init__(self, chart, comps, parity=EVEN):
        self.chart = chart
        self.parity = parity
        self.comps = {}
        for name, e in comps.items():
            if name not in chart.coord_names:
                raise DenalgError(f"{name!r} is not a coordinate")
            if not chart.is_form_expr(e):
                raise DenalgError("components must be forms in (x, dx)")
            want = (parity + chart.coord_parity(name)) % 2
            if not e.is_parity_homogeneous(want):
                raise NotParityHomogeneous(
                    f"component at {name} must have parity {want}"
                )
            if not e.is_zero:
                self.comps[name] = e

    def comp(self, name):
        return self.comps.get(name, self.chart.zero())

    def __eq__(self, other):
        return (
            isinstance(other, FormValuedVectorField)
            and self.chart == other.chart
            and self.comps == other.comps
        )

    @property
    def is_zero(self):
        return not self.comps


class PiTMVectorField:
    """X^a_0(x,dx) d/dx^a + X^a_1(x,dx) d/d(dx^a)."""

    __slots__ = ("chart", "comps0", "comps1", "parity")

    def __init__(self, chart, comps0, comps1, parity=EVEN):
        self.chart = chart
        self.parity = parity
        self.comps0 = {}
        self.comps1 = {}
        for store, comps, shift in (
            (self.comps0, comps0, 0),
            (self.comps1, comps1, 1),
        ):
            for name, e in comps.items():
                if name not in chart.coord_names:
                    raise DenalgError(f"{name!r} is not a coordinate")
                if not chart.is_form_expr(e):
                    raise DenalgError("components must be forms in (x, dx)")
                want = (parity + chart.coord_parity(name) + shift) % 2
                if not e.is_parity_homogeneous(want):
                    raise NotParityHomogeneous(
                        f"component at {name} must have parity {want}"
                    )
                if not e.is_zero:
                    store[name] = e

    def comp0(self, name):
        return self.comps0.get(name, self.chart.zero())

    def comp1(self, name):
        return self.comps1.get(name, self.chart.zero())

    def __eq__(self, other):
        return (
            isinstance(other, PiTMVectorField)
            and self.chart == other.chart
            and self.comps0 == other.comps0
            and self.comps1 == other.comps1
        )

    @property
    def is_zero(self):
        return not self.comps0 and not self.comps1

    def apply(self, omega):
        """Derivation action on a form."""
        if not self.chart.is_form_expr(omega):
            raise DenalgError("operand must be a form in (x, dx)")
        out = GradedExpr.zero(self.chart.universe)
        for name, e in self.comps0.items():
            out = out + e * omega.partial(name)
        for name, e in self.comps1.items():
            out = out + e * omega.partial(diff_name(name))
        return out


def exterior_d(chart):
    """The exterior differential d = dx^a d/dx^a as an odd field."""
    return PiTMVectorField(
        chart,
        {name: chart.diff(name) for name in chart.coord_names},
        {},
        parity=1,
    )


def d_of(chart, omega):
    """d applied to a form."""
    return exterior_d(chart).apply(omega)


def interior(x):
    """Interior product i_X = (-1)^{|X|} X^a d/d(dx^a); vertical, odd shift."""
    sign = -1 if x.parity else 1
    return PiTMVectorField(
        x.chart,
        {},
        {name: e.scale(sign) for name, e in x.comps.items()},
        parity=(x.parity + 1) % 2,
    )


def fn_lift(x):
    """The unique d-commuting field restricting to x on functions."""
    chart = x.chart
    sign = -1 if x.parity else 1
    comps1 = {
        name: d_of(chart, e).scale(sign) for name, e in x.comps.items()
    }
    return PiTMVectorField(chart, dict(x.comps), comps1, x.parity)


def pitm_commutator(x, y):
    """Graded commutator of fields on the antitangent bundle."""
    sign = -1 if x.parity and y.parity else 1
    comps0 = {}
    comps1 = {}
    for name in x.chart.coord_names:
        c0 = x.apply(y.comp0(name)) - y.apply(x.comp0(name)).scale(sign)
        c1 = x.apply(y.comp1(name)) - y.apply(x.comp1(name)).scale(sign)
        if not c0.is_zero:
            comps0[name] = c0
        if not c1.is_zero:
            comps1[name] = c1
    return PiTMVectorField(
        x.chart, comps0, comps1, (x.parity + y.parity) % 2
    )


def restrict_to_base(x):
    """Restriction onto functions of x: keep the d/dx^a components."""
    return FormValuedVectorField(x.chart, dict(x.comps0), x.parity)


def nijenhuis_bracket(x, y):
    """Bracket of form-valued vector fields via the lifted commutator formula."""
    chart = x.chart
    lx = fn_lift(x)
    ly = fn_lift(y)
    sign = -1 if x.parity and y.parity else 1
    comps = {}
    for name in chart.coord_names:
        c = lx.apply(y.comp(name)) - ly.apply(x.comp(name)).scale(sign)
        if not c.is_zero:
            comps[name] = c
    return FormValuedVectorField(
        chart, comps, (x.parity + y.parity) % 2
    )
