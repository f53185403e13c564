"""Self-adjoint second-order operator pencils and first-order classification.

A second-order operator on densities that is self-adjoint for the invariant
scalar product and kills constants is determined by a symmetric principal
symbol S^{ab}, an upper connection gamma^a and a scalar theta.  Restricting
to one weight replaces w by the weight; anti-self-adjoint first-order
operators are exactly the lifted vector densities.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DenalgError,
    NotAntiSelfAdjoint,
    NotParityHomogeneous,
    NotWeightHomogeneous,
    OrderViolation,
    WeightOneSingular,
)
from .expr import EVEN, ODD, GradedExpr
from .operators import DiffOperator
from .vectorfields import VectorDensity


class PencilData:
    """Symbol data (S, gamma, theta) of a self-adjoint second-order pencil."""

    __slots__ = ("chart", "mu", "eps", "s", "gamma", "theta")

    def __init__(self, chart, mu, eps, s, gamma, theta):
        self.chart = chart
        self.mu = Fraction(mu)
        self.eps = eps
        full = {}
        for (a, b), e in s.items():
            if a not in chart.coord_names or b not in chart.coord_names:
                raise DenalgError("symbol indices must be coordinates")
            if not chart.is_function_expr(e):
                raise DenalgError("symbol entries depend on x only")
            pa, pb = chart.coord_parity(a), chart.coord_parity(b)
            if not e.is_parity_homogeneous((eps + pa + pb) % 2):
                raise NotParityHomogeneous(
                    f"symbol entry ({a},{b}) has the wrong parity"
                )
            if not e.is_zero:
                full[(a, b)] = e
        for (a, b), e in list(full.items()):
            pa, pb = chart.coord_parity(a), chart.coord_parity(b)
            sign = -1 if (pa and pb) else 1
            mirror = e.scale(sign)
            if a == b:
                if e != mirror:
                    raise DenalgError(
                        f"diagonal symbol entry ({a},{a}) must vanish"
                    )
                continue
            if (b, a) in full:
                if full[(b, a)] != mirror:
                    raise DenalgError(
                        f"symbol entries ({a},{b}) and ({b},{a}) break symmetry"
                    )
            else:
                full[(b, a)] = mirror
        self.s = full
        self.gamma = {}
        for a, e in gamma.items():
            if not chart.is_function_expr(e):
                raise DenalgError("connection entries depend on x only")
            if not e.is_parity_homogeneous((eps + chart.coord_parity(a)) % 2):
                raise NotParityHomogeneous(
                    f"connection entry {a} has the wrong parity"
                )
            if not e.is_zero:
                self.gamma[a] = e
        if not chart.is_function_expr(theta):
            raise DenalgError("theta depends on x only")
        if not theta.is_parity_homogeneous(eps):
            raise NotParityHomogeneous("theta has the wrong parity")
        self.theta = theta

    def s_entry(self, a, b):
        return self.s.get((a, b), self.chart.zero())

    def gamma_entry(self, a):
        return self.gamma.get(a, self.chart.zero())

    def __eq__(self, other):
        return (
            isinstance(other, PencilData)
            and self.chart == other.chart
            and (self.mu, self.eps) == (other.mu, other.eps)
            and self.s == other.s
            and self.gamma == other.gamma
            and self.theta == other.theta
        )


def build_second_order(data):
    """Assemble the normal-form operator of a pencil datum.

    Restriction to weight lam reproduces
    (1/2) t^mu ( S^{ab} d_b d_a
                + (d_b S^{ba} (-1)^{b(eps+1)} + (2 lam + mu - 1) gamma^a) d_a
                + lam d_a gamma^a (-1)^{a(eps+1)} + lam (lam + mu - 1) theta ).
    """
    chart = data.chart
    dim = len(chart.coord_names)
    half = Fraction(1, 2)
    tmu = chart.t(data.mu)
    terms = {}

    def put(alpha, k, coeff):
        if coeff.is_zero:
            return
        key = (alpha, k)
        terms[key] = terms.get(key, chart.zero()) + coeff

    def unit(a):
        i = chart.coord_names.index(a)
        return tuple(1 if j == i else 0 for j in range(dim))

    for (a, b), s_ab in data.s.items():
        ia, ib = chart.coord_names.index(a), chart.coord_names.index(b)
        alpha = tuple(x + y for x, y in zip(unit(a), unit(b)))
        coeff = (tmu * s_ab).scale(half)
        if ib > ia:
            # d_b d_a with the outer index larger: reorder to canonical form
            if chart.coord_parities[ia] and chart.coord_parities[ib]:
                coeff = -coeff
        put(alpha, 0, coeff)
    for a in chart.coord_names:
        pa = chart.coord_parity(a)
        first = chart.zero()
        for b in chart.coord_names:
            pb = chart.coord_parity(b)
            sign = -1 if pb and (data.eps + 1) % 2 else 1
            first = first + data.s_entry(b, a).partial(b).scale(sign)
        first = first + data.gamma_entry(a).scale(data.mu - 1)
        put(unit(a), 0, (tmu * first).scale(half))
        put(unit(a), 1, tmu * data.gamma_entry(a))
    zero_alpha = (0,) * dim
    vert = chart.zero()
    for a in chart.coord_names:
        pa = chart.coord_parity(a)
        sign = -1 if pa and (data.eps + 1) % 2 else 1
        vert = vert + data.gamma_entry(a).partial(a).scale(sign)
    vert = vert + data.theta.scale(data.mu - 1)
    put(zero_alpha, 1, (tmu * vert).scale(half))
    put(zero_alpha, 2, (tmu * data.theta).scale(half))
    return DiffOperator(chart, terms)


def restrict_pencil(op, lam):
    """Replace every power of w by the number lam."""
    lam = Fraction(lam)
    chart = op.chart
    terms = {}
    for (alpha, k), coeff in op.terms.items():
        c = coeff.scale(lam ** k)
        key = (alpha, 0)
        terms[key] = terms.get(key, chart.zero()) + c
    return DiffOperator(chart, terms)


def classify_first_order(op):
    """Recover the vector density whose lift an anti-self-adjoint L is."""
    if op.order > 1:
        raise OrderViolation("classification needs an operator of order <= 1")
    if not (op.adjoint() + op).is_zero:
        raise NotAntiSelfAdjoint("operator is not anti-self-adjoint")
    mu = op.op_weight()
    if mu is None:
        raise NotWeightHomogeneous("operator is not weight-homogeneous")
    if mu == 1:
        raise WeightOneSingular("weight-1 operators are not lifts")
    chart = op.chart
    eps = op.parity()
    if eps is None:
        raise NotParityHomogeneous("operator is not parity-homogeneous")
    tneg = chart.t(-mu)
    comps = {}
    dim = len(chart.coord_names)
    for (alpha, k), coeff in op.terms.items():
        if k == 0 and sum(alpha) == 1:
            i = alpha.index(1)
            f = tneg * coeff
            if f.uses("t"):
                raise NotWeightHomogeneous(
                    "coefficient is not t^mu times a function of x"
                )
            comps[chart.coord_names[i]] = f
        elif k == 0 and sum(alpha) == 0 and not coeff.is_zero:
            raise NotAntiSelfAdjoint("operator does not annihilate constants")
    return VectorDensity(chart, mu, comps, eps)


def extract_pencil_data(op, eps=None):
    """Invert build_second_order: read (S, gamma, theta) off the normal form."""
    chart = op.chart
    mu = op.op_weight()
    if mu is None:
        raise NotWeightHomogeneous("operator is not weight-homogeneous")
    if eps is None:
        eps = op.parity()
        if eps is None:
            raise NotParityHomogeneous("operator is not parity-homogeneous")
    tneg = chart.t(-mu)

    def strip(coeff):
        f = tneg * coeff
        if f.uses("t"):
            raise NotWeightHomogeneous(
                "coefficient is not t^mu times a function of x"
            )
        return f

    s = {}
    gamma = {}
    theta = chart.zero()
    dim = len(chart.coord_names)
    for (alpha, k), coeff in op.terms.items():
        total = sum(alpha)
        if k == 2 and total == 0:
            theta = strip(coeff).scale(2)
        elif k == 1 and total == 1:
            i = alpha.index(1)
            gamma[chart.coord_names[i]] = strip(coeff)
        elif k == 0 and total == 2:
            hot = [i for i, e in enumerate(alpha) if e]
            if len(hot) == 1:
                a = chart.coord_names[hot[0]]
                s[(a, a)] = strip(coeff).scale(2)
            else:
                ia, ib = hot
                a, b = chart.coord_names[ia], chart.coord_names[ib]
                sign = -1 if (
                    chart.coord_parities[ia] and chart.coord_parities[ib]
                ) else 1
                val = strip(coeff).scale(sign)
                s[(a, b)] = val
                s[(b, a)] = val.scale(sign)
    return PencilData(chart, mu, eps, s, gamma, theta)
