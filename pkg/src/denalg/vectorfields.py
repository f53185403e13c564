"""Derivations of the density algebra: vector fields on the extended chart.

A derivation has the normal form  X = X^a(x, t) d/dx^a + X^0(x, t) w  with
w = t d/dt.  The invariant scalar product on densities induces a canonical
divergence div X = -(X + X*), computed here in closed form; the same value
arises as the ordinary divergence with respect to the volume density t^{-2}
on the variables (x, t).  Divergence-free fields of weight mu != 1
correspond one-to-one to vector densities |Dx|^mu X^a(x) d/dx^a on the
base chart (generalized Lie derivatives), giving a weighted bracket on
vector densities.
"""

from __future__ import annotations

from fractions import Fraction

from .density import DensityElement
from .errors import (
    DenalgError,
    NotInvertible,
    NotParityHomogeneous,
    NotWeightHomogeneous,
    WeightOneSingular,
)
from .expr import COORD, EVEN, ODD, SCALE, GradedExpr
from .operators import DiffOperator, render_operator


class HatVectorField:
    """Derivation X^a(x,t) d/dx^a + X^0(x,t) w of the density algebra."""

    __slots__ = ("chart", "comps", "vert", "parity")

    def __init__(self, chart, comps, vert=None, parity=EVEN):
        if vert is None:
            vert = chart.zero()
        self.chart = chart
        self.comps = {}
        for name, e in comps.items():
            if name not in chart.coord_names:
                raise DenalgError(f"{name!r} is not a coordinate")
            if not chart.is_density_expr(e):
                raise DenalgError("components must be expressions in (x, t)")
            want = (parity + chart.coord_parity(name)) % 2
            if not e.is_parity_homogeneous(want):
                raise NotParityHomogeneous(
                    f"component at {name} must have parity {want}"
                )
            if not e.is_zero:
                self.comps[name] = e
        if not chart.is_density_expr(vert):
            raise DenalgError("vertical part must be an expression in (x, t)")
        if not vert.is_parity_homogeneous(parity):
            raise NotParityHomogeneous(
                f"vertical part must have parity {parity}"
            )
        self.vert = vert
        self.parity = parity

    @classmethod
    def zero(cls, chart, parity=EVEN):
        return cls(chart, {}, None, parity)

    @classmethod
    def vertical(cls, chart, coeff, parity=EVEN):
        return cls(chart, {}, coeff, parity)

    def comp(self, name):
        return self.comps.get(name, self.chart.zero())

    def __eq__(self, other):
        return (
            isinstance(other, HatVectorField)
            and self.chart == other.chart
            and self.comps == other.comps
            and self.vert == other.vert
        )

    @property
    def is_zero(self):
        return not self.comps and self.vert.is_zero

    def __add__(self, other):
        if self.parity != other.parity and not (self.is_zero or other.is_zero):
            raise NotParityHomogeneous("cannot add fields of opposite parity")
        comps = dict(self.comps)
        for name, e in other.comps.items():
            comps[name] = comps.get(name, self.chart.zero()) + e
        parity = other.parity if self.is_zero else self.parity
        return HatVectorField(
            self.chart, comps, self.vert + other.vert, parity
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return HatVectorField(
            self.chart,
            {name: e.scale(factor) for name, e in self.comps.items()},
            self.vert.scale(factor),
            self.parity,
        )

    def apply(self, psi):
        """Derivation action on a density (or raw (x,t) expression)."""
        wrap = isinstance(psi, DensityElement)
        expr = psi.expr if wrap else psi
        out = GradedExpr.zero(self.chart.universe)
        for name, e in self.comps.items():
            out = out + e * expr.partial(name)
        out = out + self.vert * (self.chart.t() * expr.partial("t"))
        return DensityElement(self.chart, out) if wrap else out

    def as_operator(self):
        chart = self.chart
        dim = len(chart.coord_names)
        terms = {}
        for name, e in self.comps.items():
            i = chart.coord_names.index(name)
            alpha = tuple(1 if j == i else 0 for j in range(dim))
            terms[(alpha, 0)] = e
        if not self.vert.is_zero:
            terms[((0,) * dim, 1)] = self.vert
        return DiffOperator(chart, terms)

    def weights(self):
        ws = set()
        for e in list(self.comps.values()) + [self.vert]:
            ws.update(w for w, _ in e.weight_decompose())
        return ws

    def weight(self):
        ws = self.weights()
        if len(ws) == 1:
            return next(iter(ws))
        return None if ws else Fraction(0)

    def __repr__(self):
        return f"HatVectorField({render_operator(self.as_operator())})"


def commutator(x, y):
    """Graded commutator of derivations, back in normal form."""
    sign = -1 if x.parity and y.parity else 1
    comps = {}
    for name in x.chart.coord_names:
        c = x.apply(y.comp(name)) - y.apply(x.comp(name)).scale(sign)
        if not c.is_zero:
            comps[name] = c
    vert = x.apply(y.vert) - y.apply(x.vert).scale(sign)
    return HatVectorField(
        x.chart, comps, vert, (x.parity + y.parity) % 2
    )


def divergence(x):
    """Canonical divergence: sum (-1)^{a(X+1)} dX^a/dx^a + (w - 1) X^0."""
    chart = x.chart
    out = GradedExpr.zero(chart.universe)
    for name, e in x.comps.items():
        a_par = chart.coord_parity(name)
        sign = -1 if a_par and (x.parity + 1) % 2 else 1
        out = out + e.partial(name).scale(sign)
    out = out + chart.t() * x.vert.partial("t") - x.vert
    return DensityElement(chart, out)


class VolumeElement:
    """A volume density rho(x) |Dx| with invertible rho."""

    __slots__ = ("chart", "rho")

    def __init__(self, chart, rho):
        if not chart.is_function_expr(rho):
            raise DenalgError("volume coefficient must depend on x only")
        try:
            rho.invert_unit()
        except NotInvertible:
            raise DenalgError(
                "volume coefficient must be a unit (constant body)"
            ) from None
        self.chart = chart
        self.rho = rho

    def divergence(self, comps, parity=EVEN):
        """Divergence of X^a d/dx^a with respect to rho(x)."""
        return _div_with_rho(self.chart, self.rho, comps, parity)


def _div_with_rho(chart, rho, comps, parity):
    u = chart.universe
    out = GradedExpr.zero(u)
    for name, e in comps.items():
        a_par = u.var(name).parity
        sign = -1 if a_par and (parity + 1) % 2 else 1
        out = out + (rho * e).partial(name).scale(sign)
    return rho.invert_unit() * out


def divergence_via_volume(x):
    """Divergence via the invariant volume t^{-2} over the variables (x, t)."""
    chart = x.chart
    rho = chart.t(-2)
    comps = dict(x.comps)
    comps["t"] = chart.t() * x.vert
    return DensityElement(
        chart, _div_with_rho(chart, rho, comps, x.parity)
    )


class VectorDensity:
    """|Dx|^mu X^a(x) d/dx^a on the base chart."""

    __slots__ = ("chart", "mu", "comps", "parity")

    def __init__(self, chart, mu, comps, parity=EVEN):
        self.chart = chart
        self.mu = Fraction(mu)
        self.parity = parity
        self.comps = {}
        for name, e in comps.items():
            if name not in chart.coord_names:
                raise DenalgError(f"{name!r} is not a coordinate")
            if not chart.is_function_expr(e):
                raise DenalgError("components must depend on x only")
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
            isinstance(other, VectorDensity)
            and self.chart == other.chart
            and self.mu == other.mu
            and self.comps == other.comps
        )

    @property
    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        if self.mu != other.mu:
            raise DenalgError("cannot add vector densities of unequal weight")
        if self.parity != other.parity and not (self.is_zero or other.is_zero):
            raise NotParityHomogeneous(
                "cannot add vector densities of opposite parity"
            )
        comps = dict(self.comps)
        for name, e in other.comps.items():
            comps[name] = comps.get(name, self.chart.zero()) + e
        parity = other.parity if self.is_zero else self.parity
        return VectorDensity(self.chart, self.mu, comps, parity)

    def scale(self, factor):
        return VectorDensity(
            self.chart,
            self.mu,
            {name: e.scale(factor) for name, e in self.comps.items()},
            self.parity,
        )

    def __repr__(self):
        inner = render_operator(
            DiffOperator(
                self.chart,
                {
                    (
                        tuple(
                            1 if j == self.chart.coord_names.index(name) else 0
                            for j in range(len(self.chart.coord_names))
                        ),
                        0,
                    ): e
                    for name, e in self.comps.items()
                },
            )
        )
        return f"VectorDensity(|Dx|^{self.mu} * ({inner}))"


def div_vector_density(xd):
    """Chart divergence sum (-1)^{a(X+1)} dX^a/dx^a of a vector density.

    For weight 1 this is the only invariant left; it is exposed for all
    weights and feeds the lifting formula.
    """
    chart = xd.chart
    out = GradedExpr.zero(chart.universe)
    for name, e in xd.comps.items():
        a_par = chart.coord_parity(name)
        sign = -1 if a_par and (xd.parity + 1) % 2 else 1
        out = out + e.partial(name).scale(sign)
    return out


def lie_lift(xd):
    """The unique divergence-free derivation restricting to xd (mu != 1)."""
    if xd.mu == 1:
        raise WeightOneSingular("no canonical lift at weight 1")
    chart = xd.chart
    tmu = chart.t(xd.mu)
    comps = {name: tmu * e for name, e in xd.comps.items()}
    vert = (tmu * div_vector_density(xd)).scale(
        Fraction(-1) / (xd.mu - 1)
    )
    return HatVectorField(chart, comps, vert, xd.parity)


def restrict_to_functions(x):
    """Restriction of a weight-homogeneous field to weight-0 functions."""
    chart = x.chart
    mu = x.weight()
    if mu is None:
        raise NotWeightHomogeneous(
            "restriction needs a weight-homogeneous field"
        )
    tmu_inv = chart.t(-mu)
    comps = {}
    for name, e in x.comps.items():
        f = tmu_inv * e
        if f.uses("t"):
            raise NotWeightHomogeneous(
                f"component at {name} is not t^mu times a function of x"
            )
        comps[name] = f
    return VectorDensity(chart, mu, comps, x.parity)


def decompose(x):
    """Split X = X' + X'' into divergence-free plus vertical (no weight 1)."""
    if Fraction(1) in x.weights():
        raise WeightOneSingular(
            "decomposition undefined on weight-1 components"
        )
    chart = x.chart
    d = divergence(x).expr
    vert = GradedExpr.zero(chart.universe)
    for w, component in d.weight_decompose():
        vert = vert + component.scale(Fraction(1) / (w - 1))
    second = HatVectorField(chart, {}, vert, x.parity)
    first = x - second
    return first, second


def density_bracket(xd, yd):
    """Weighted Lie bracket of vector densities, weight mu + nu."""
    if xd.mu == 1 or yd.mu == 1:
        raise WeightOneSingular("bracket undefined at weight 1")
    chart = xd.chart
    sign = -1 if xd.parity and yd.parity else 1
    dx = div_vector_density(xd)
    dy = div_vector_density(yd)
    cx = Fraction(yd.mu) / (xd.mu - 1)
    cy = Fraction(xd.mu) / (yd.mu - 1)
    comps = {}
    for name in chart.coord_names:
        yb = yd.comp(name)
        xb = xd.comp(name)
        term1 = GradedExpr.zero(chart.universe)
        for a, e in xd.comps.items():
            term1 = term1 + e * yb.partial(a)
        term1 = term1 - (dx * yb).scale(cx)
        term2 = GradedExpr.zero(chart.universe)
        for a, e in yd.comps.items():
            term2 = term2 + e * xb.partial(a)
        term2 = term2 - (dy * xb).scale(cy)
        c = term1 - term2.scale(sign)
        if not c.is_zero:
            comps[name] = c
    return VectorDensity(
        chart, xd.mu + yd.mu, comps, (xd.parity + yd.parity) % 2
    )


def first_order_pencil(x, lam):
    """Restrict a weight-homogeneous first-order field to one weight: w -> lam."""
    if x.weight() is None:
        raise NotWeightHomogeneous("pencil needs a weight-homogeneous field")
    chart = x.chart
    dim = len(chart.coord_names)
    terms = {}
    for name, e in x.comps.items():
        i = chart.coord_names.index(name)
        alpha = tuple(1 if j == i else 0 for j in range(dim))
        terms[(alpha, 0)] = e
    if not x.vert.is_zero:
        terms[((0,) * dim, 0)] = x.vert.scale(Fraction(lam))
    return DiffOperator(chart, terms)
