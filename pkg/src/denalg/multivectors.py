"""Multivector fields on the extended chart: odd Laplacians and brackets.

Multivector fields are functions of (x, t, x*, t*) and are stored as
P = P0(x, t, x*) + t t* P1(x, t, x*), the factored t t* making the
restriction t* = 0 structural.  The flat odd Laplacian is
delta0 = d/dx^a d/dx*_a; the canonical one adds the scale direction and
acts on the pair as (P0, P1) -> (delta0 P0 - (1 - w) P1, -delta0 P1).
The Schouten bracket is defined through the Leibniz defect of the odd
Laplacian, which pins every sign to the definition of the Laplacian
itself:

    delta(PQ) = delta P Q + (-1)^{|P|} P delta Q + (-1)^{|P|+1} [P, Q].

Divergence-free multivector fields of weight mu != 1 are classified by
their t* = 0 part, a multivector density on the base chart; the induced
odd bracket on multivector densities and the canonical Poisson lift
follow.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import anti_name
from .density import DensityElement
from .errors import (
    DenalgError,
    NotParityHomogeneous,
    WeightOneSingular,
)
from .expr import EVEN, ODD, GradedExpr, render_expr


def delta0(chart, expr):
    """Flat odd Laplacian over the coordinate/antimomentum pairs.

    The sign convention is fixed so that on an even bivector
    (1/2) P^{ab}(x) x*_b x*_a the value is + dP^{ab}/dx^a x*_b, which is the
    normalization the canonical bivector lift requires.
    """
    out = GradedExpr.zero(chart.universe)
    for name in chart.coord_names:
        out = out - expr.partial(anti_name(name)).partial(name)
    return out


class HatMultivector:
    """P0(x,t,x*) + t t* P1(x,t,x*), parity-homogeneous."""

    __slots__ = ("chart", "p0", "p1", "parity")

    def __init__(self, chart, p0, p1=None, parity=None):
        if p1 is None:
            p1 = chart.zero()
        for part in (p0, p1):
            if not chart.is_multivector_expr(part):
                raise DenalgError(
                    "multivector parts must be expressions in (x, t, x*)"
                )
        if parity is None:
            parity = p0.parity()
            if parity is None:
                p1p = p1.parity()
                parity = EVEN if p1p is None else (p1p + 1) % 2
        if not p0.is_parity_homogeneous(parity):
            raise NotParityHomogeneous("p0 must have the stated parity")
        if not p1.is_parity_homogeneous((parity + 1) % 2):
            raise NotParityHomogeneous("p1 must have the opposite parity")
        self.chart = chart
        self.p0 = p0
        self.p1 = p1
        self.parity = parity

    @classmethod
    def zero(cls, chart, parity=EVEN):
        return cls(chart, chart.zero(), None, parity)

    @classmethod
    def from_density(cls, psi):
        parity = psi.expr.parity()
        return cls(
            psi.chart, psi.expr, None, EVEN if parity is None else parity
        )

    @classmethod
    def from_full(cls, chart, expr, parity=None):
        """Split an expression of (x, t, x*, t*) into the (P0, P1) pair."""
        if not (
            expr.universe == chart.universe
            and expr.support_kinds()
            <= {"coord", "scale", "anti", "scale-anti"}
        ):
            raise DenalgError("expected an expression in (x, t, x*, t*)")
        p0 = expr.set_to_zero("ts")
        p1 = chart.t(-1) * expr.partial("ts")
        return cls(chart, p0, p1, parity)

    def full(self):
        return self.p0 + self.chart.t() * self.chart.ts() * self.p1

    def __eq__(self, other):
        return (
            isinstance(other, HatMultivector)
            and self.chart == other.chart
            and self.p0 == other.p0
            and self.p1 == other.p1
        )

    @property
    def is_zero(self):
        return self.p0.is_zero and self.p1.is_zero

    def __add__(self, other):
        if self.parity != other.parity and not (
            self.is_zero or other.is_zero
        ):
            raise NotParityHomogeneous(
                "cannot add multivectors of opposite parity"
            )
        parity = other.parity if self.is_zero else self.parity
        return HatMultivector(
            self.chart, self.p0 + other.p0, self.p1 + other.p1, parity
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return HatMultivector(
            self.chart,
            self.p0.scale(factor),
            self.p1.scale(factor),
            self.parity,
        )

    def __mul__(self, other):
        """Graded product; (t t*)^2 = 0 keeps the pair form closed."""
        sign = -1 if self.parity else 1
        return HatMultivector(
            self.chart,
            self.p0 * other.p0,
            self.p1 * other.p0 + (self.p0 * other.p1).scale(sign),
            (self.parity + other.parity) % 2,
        )

    def __repr__(self):
        return f"HatMultivector({render_expr(self.full())})"


def delta_hat(p):
    """Canonical odd Laplacian on the extended chart."""
    chart = p.chart
    new_p0 = delta0(chart, p.p0) - (
        p.p1 - chart.t() * p.p1.partial("t")
    )
    new_p1 = -delta0(chart, p.p1)
    return HatMultivector(chart, new_p0, new_p1, (p.parity + 1) % 2)


def schouten(p, q):
    """Odd bracket from the Leibniz defect of the canonical Laplacian."""
    sp = -1 if p.parity else 1
    defect = (
        delta_hat(p * q)
        - delta_hat(p) * q
        - (p * delta_hat(q)).scale(sp)
    )
    return defect.scale(-sp)


def schouten0(chart, p, q, p_parity):
    """Chart-level Schouten bracket on expressions of (x, x*)."""
    sp = -1 if p_parity else 1
    defect = (
        delta0(chart, p * q)
        - delta0(chart, p) * q
        - (p * delta0(chart, q)).scale(sp)
    )
    return defect.scale(-sp)


class MultivectorDensity:
    """|Dx|^mu P(x, x*) on the base chart."""

    __slots__ = ("chart", "mu", "expr", "parity")

    def __init__(self, chart, mu, expr, parity=None):
        if not (
            expr.universe == chart.universe
            and expr.support_kinds() <= {"coord", "anti"}
        ):
            raise DenalgError(
                "multivector density needs an expression in (x, x*)"
            )
        if parity is None:
            parity = expr.parity()
            parity = EVEN if parity is None else parity
        if not expr.is_parity_homogeneous(parity):
            raise NotParityHomogeneous("expression must have the stated parity")
        self.chart = chart
        self.mu = Fraction(mu)
        self.expr = expr
        self.parity = parity

    def __eq__(self, other):
        return (
            isinstance(other, MultivectorDensity)
            and self.chart == other.chart
            and self.mu == other.mu
            and self.expr == other.expr
        )

    @property
    def is_zero(self):
        return self.expr.is_zero

    def __repr__(self):
        return f"MultivectorDensity(|Dx|^{self.mu} * ({render_expr(self.expr)}))"


def multivector_lift(pd):
    """The unique Laplacian-closed extension of a multivector density."""
    if pd.mu == 1:
        raise WeightOneSingular("no canonical lift at weight 1")
    chart = pd.chart
    tmu = chart.t(pd.mu)
    return HatMultivector(
        chart,
        tmu * pd.expr,
        (tmu * delta0(chart, pd.expr)).scale(Fraction(1) / (1 - pd.mu)),
        pd.parity,
    )


def restrict_multivector(p, mu):
    """Inverse of the lift: strip t^mu from the t* = 0 part."""
    chart = p.chart
    expr = chart.t(-Fraction(mu)) * p.p0
    if expr.uses("t"):
        raise DenalgError("t* = 0 part is not t^mu times a chart multivector")
    return MultivectorDensity(chart, mu, expr, p.parity)


def induced_odd_bracket(pd, qd):
    """Odd bracket on multivector densities, weight mu + nu."""
    if pd.mu == 1 or qd.mu == 1:
        raise WeightOneSingular("bracket undefined at weight 1")
    chart = pd.chart
    sp = -1 if pd.parity else 1
    base = schouten0(chart, pd.expr, qd.expr, pd.parity)
    corr1 = (delta0(chart, pd.expr) * qd.expr).scale(
        Fraction(qd.mu) / (1 - pd.mu) * (-sp)
    )
    corr2 = (pd.expr * delta0(chart, qd.expr)).scale(
        Fraction(pd.mu) / (1 - qd.mu)
    )
    return MultivectorDensity(
        chart,
        pd.mu + qd.mu,
        base + corr1 - corr2,
        (pd.parity + qd.parity + 1) % 2,
    )


class PoissonTensor:
    """Even bivector P = (1/2) P^{ab}(x) x*_b x*_a with graded antisymmetry."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart, comps, check_master=False):
        self.chart = chart
        full = {}
        for (a, b), e in comps.items():
            if a not in chart.coord_names or b not in chart.coord_names:
                raise DenalgError("component indices must be coordinates")
            if not chart.is_function_expr(e):
                raise DenalgError("components must depend on x only")
            pa, pb = chart.coord_parity(a), chart.coord_parity(b)
            if not e.is_parity_homogeneous((pa + pb) % 2):
                raise NotParityHomogeneous(
                    f"component ({a},{b}) must have parity {(pa + pb) % 2}"
                )
            if e.is_zero:
                continue
            full[(a, b)] = e
        comps = dict(full)
        for (a, b), e in list(comps.items()):
            pa, pb = chart.coord_parity(a), chart.coord_parity(b)
            sign = -1 if (pa and pb) else 1
            mirror = e.scale(-sign)
            if a == b:
                if e != mirror:
                    raise DenalgError(
                        f"diagonal component ({a},{a}) violates antisymmetry"
                    )
                continue
            if (b, a) in comps:
                if comps[(b, a)] != mirror:
                    raise DenalgError(
                        f"components ({a},{b}) and ({b},{a}) are inconsistent"
                    )
            else:
                comps[(b, a)] = mirror
        self.comps = comps
        if check_master:
            defect = self.master_defect()
            if not defect.is_zero:
                raise DenalgError("master equation [P, P] = 0 fails")

    def comp(self, a, b):
        return self.comps.get((a, b), self.chart.zero())

    def bivector(self):
        out = GradedExpr.zero(self.chart.universe)
        for (a, b), e in self.comps.items():
            out = out + e * self.chart.anti(b) * self.chart.anti(a)
        return out.scale(Fraction(1, 2))

    def master_defect(self):
        biv = self.bivector()
        return schouten0(self.chart, biv, biv, EVEN)

    def __repr__(self):
        return f"PoissonTensor({render_expr(self.bivector())})"


def poisson_lift(p):
    """Canonical weight-0 lift of an even bivector to the extended chart."""
    return multivector_lift(
        MultivectorDensity(p.chart, 0, p.bivector(), EVEN)
    )


def poisson_bracket(phat, psi, chi):
    """Derived bracket { psi, chi } = [[psi, P], chi] for a lifted bivector."""
    if phat.parity != EVEN:
        raise DenalgError("lifted bivector must be even")
    chart = phat.chart
    step = schouten(HatMultivector.from_density(psi), phat)
    out = schouten(step, HatMultivector.from_density(chi))
    if not out.p1.is_zero:
        raise DenalgError("bracket of densities failed to close")
    if not chart.is_density_expr(out.p0):
        raise DenalgError("bracket of densities failed to close")
    return DensityElement(chart, out.p0)
