"""Coordinate charts and the variable universe they generate.

A chart of dimension n|m owns one master universe holding, in canonical
order: the coordinates (even first, then odd), their differentials, their
antimomenta, the scale variable t and its odd antimomentum ts.  Every value
attached to the chart lives in that universe; individual object types
restrict which kinds may occur.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnknownVariable
from .expr import (
    ANTI,
    COORD,
    DIFF,
    EVEN,
    ODD,
    SCALE,
    GradedExpr,
    Universe,
    Variable,
    scale_antimomentum,
    scale_variable,
)


def diff_name(coord):
    return "d" + coord


def anti_name(coord):
    # x1 -> xs1, xi2 -> xsi2
    return "xs" + coord[1:] if coord.startswith("x") else "xs_" + coord


class Chart:
    """A local chart R^{n|m} with named even and odd coordinates."""

    def __init__(self, n, m=0, even_names=None, odd_names=None):
        if even_names is None:
            even_names = [f"x{i}" for i in range(1, n + 1)]
        if odd_names is None:
            odd_names = [f"xi{i}" for i in range(1, m + 1)]
        if len(even_names) != n or len(odd_names) != m:
            raise ValueError("coordinate name lists do not match dimension")
        self.n = n
        self.m = m
        self.coord_names = tuple(even_names) + tuple(odd_names)
        self.coord_parities = (EVEN,) * n + (ODD,) * m
        variables = [
            Variable(name, COORD, p, Fraction(0))
            for name, p in zip(self.coord_names, self.coord_parities)
        ]
        variables += [
            Variable(diff_name(name), DIFF, 1 - p, Fraction(0))
            for name, p in zip(self.coord_names, self.coord_parities)
        ]
        variables += [
            Variable(anti_name(name), ANTI, 1 - p, Fraction(0))
            for name, p in zip(self.coord_names, self.coord_parities)
        ]
        variables.append(scale_variable("t"))
        variables.append(scale_antimomentum("ts"))
        self.universe = Universe(variables)

    @property
    def dim(self):
        return f"{self.n}|{self.m}"

    def __repr__(self):
        return f"Chart({self.dim}: {', '.join(self.coord_names)})"

    def __eq__(self, other):
        return isinstance(other, Chart) and self.universe == other.universe

    def __hash__(self):
        return hash(self.universe)

    def coord_parity(self, name):
        try:
            return self.coord_parities[self.coord_names.index(name)]
        except ValueError:
            raise UnknownVariable(f"{name!r} is not a coordinate") from None

    # -- expression builders -------------------------------------------------

    def var(self, name, power=1):
        return GradedExpr.variable(self.universe, name, power)

    def const(self, value):
        return GradedExpr.const(self.universe, value)

    def zero(self):
        return GradedExpr.zero(self.universe)

    def one(self):
        return GradedExpr.one(self.universe)

    def t(self, power=1):
        return self.var("t", Fraction(power))

    def ts(self):
        return self.var("ts")

    def anti(self, coord):
        return self.var(anti_name(coord))

    def diff(self, coord):
        return self.var(diff_name(coord))

    # -- support checks ------------------------------------------------------

    def is_density_expr(self, e):
        return e.universe == self.universe and e.support_kinds() <= {
            COORD,
            SCALE,
        }

    def is_multivector_expr(self, e):
        return e.universe == self.universe and e.support_kinds() <= {
            COORD,
            SCALE,
            ANTI,
        }

    def is_form_expr(self, e):
        return e.universe == self.universe and e.support_kinds() <= {
            COORD,
            DIFF,
        }

    def is_function_expr(self, e):
        return e.universe == self.universe and e.support_kinds() <= {COORD}
