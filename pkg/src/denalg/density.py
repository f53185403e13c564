"""Densities on a chart and the scalar-product integrand.

A density element is a pseudo-polynomial in the scale variable t with
polynomial coefficients in the coordinates: psi(x, t) = sum psi_w(x) t^w.
The weight-w component is the t^w part.  The scalar product of two densities
pairs weights summing to one; on a chart only its integrand f(x) of the
weight-1 part f(x) t is extracted (the residue at zero in t after dividing
by t^2), integration itself being out of scope.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DenalgError
from .expr import GradedExpr, render_expr


class DensityElement:
    """Element of the density algebra of a chart: an expression in (x, t)."""

    __slots__ = ("chart", "expr")

    def __init__(self, chart, expr):
        if not chart.is_density_expr(expr):
            raise DenalgError(
                "density element must be an expression in coordinates and t"
            )
        self.chart = chart
        self.expr = expr

    @classmethod
    def from_const(cls, chart, value):
        return cls(chart, chart.const(value))

    def __eq__(self, other):
        return (
            isinstance(other, DensityElement)
            and self.chart == other.chart
            and self.expr == other.expr
        )

    def __hash__(self):
        return hash(self.expr)

    def __add__(self, other):
        other = as_density(self.chart, other)
        return DensityElement(self.chart, self.expr + other.expr)

    def __sub__(self, other):
        other = as_density(self.chart, other)
        return DensityElement(self.chart, self.expr - other.expr)

    def __neg__(self):
        return DensityElement(self.chart, -self.expr)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DensityElement(self.chart, self.expr.scale(other))
        other = as_density(self.chart, other)
        return DensityElement(self.chart, self.expr * other.expr)

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return self.expr.is_zero

    def parity(self):
        return self.expr.parity()

    def weight(self):
        return self.expr.weight()

    def weight_decompose(self):
        return [
            (w, DensityElement(self.chart, e))
            for w, e in self.expr.weight_decompose()
        ]

    def __repr__(self):
        return f"DensityElement({render_expr(self.expr)})"


def as_density(chart, value):
    if isinstance(value, DensityElement):
        return value
    if isinstance(value, GradedExpr):
        return DensityElement(chart, value)
    return DensityElement.from_const(chart, value)


def weight_operator(psi):
    """t d/dt; multiplies each weight-w component by w."""
    psi = _element(psi)
    return DensityElement(
        psi.chart, psi.chart.t() * psi.expr.partial("t")
    )


def formal_integrand(psi):
    """Coefficient of t^1: the integrand f(x) of the weight-1 part f(x) t."""
    psi = _element(psi)
    return psi.expr.coeff_of_even_power("t", 1)


def scalar_product_integrand(psi, chi):
    """Integrand of the invariant pairing: weight-1 part of psi * chi."""
    psi = _element(psi)
    chi = as_density(psi.chart, chi)
    return formal_integrand(psi * chi)


def _element(psi):
    if isinstance(psi, DensityElement):
        return psi
    raise TypeError("expected a DensityElement")


def exactness_witness(chart, expr):
    """Potentials g_a with expr = sum_a d(g_a)/dx^a, or None if not exact.

    ``expr`` must be a function of the coordinates alone.  On a chart with at
    least one even coordinate every polynomial is exact (antidifferentiate in
    the first even coordinate).  On a purely odd chart the coefficient of the
    top monomial xi_1 ... xi_m is the obstruction.
    """
    if not chart.is_function_expr(expr):
        raise DenalgError("witness construction needs an x-only expression")
    u = chart.universe
    if chart.n > 0:
        name = chart.coord_names[0]
        i = u.index(name)
        pot = {}
        for mono, c in expr.terms.items():
            nm = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
            pot[nm] = c * Fraction(1, mono[i] + 1)
        g = GradedExpr(u, pot)
        if g.partial(name) != expr:
            return None
        return [(name, g)]
    # purely odd chart: peel off monomials missing some coordinate
    witnesses = []
    rest = expr
    for name in chart.coord_names:
        i = u.index(name)
        picked = {
            m: c for m, c in rest.terms.items() if not m[i]
        }
        if not picked:
            continue
        part = GradedExpr(u, picked)
        g = chart.var(name) * part
        witnesses.append((name, g))
        rest = rest - g.partial(name)
    if not rest.is_zero:
        return None
    return witnesses
