"""Normal-form differential operators on the density algebra of a chart.

An operator is stored as a finite sum of terms  coeff(x, t) * d^alpha * w^k
with all coefficients leftmost, coordinate derivatives next and powers of
the weight operator w = t d/dt rightmost.  w commutes with the coordinate
derivatives but not with coefficients: composing pushes everything back
into normal form via  w o f = f w + t df/dt  and the graded Leibniz rule
for d/dx^a.

The adjoint is taken with respect to the invariant scalar product on
densities and is computed algebraically from the generator rules
(d/dx^a)* = -d/dx^a,  w* = 1 - w,  (mult f)* = mult f,  and
(A B)* = (-1)^{|A||B|} B* A*.
"""

from __future__ import annotations

from fractions import Fraction

from .density import DensityElement
from .errors import DenalgError, OrderViolation
from .expr import (
    COORD,
    EVEN,
    ODD,
    SCALE,
    GradedExpr,
    expr_from_json,
    expr_to_json,
    render_expr,
)


class DiffOperator:
    """Sum of terms coeff * d^alpha * w^k in normal form."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms):
        self.chart = chart
        dim = len(chart.coord_names)
        clean = {}
        for (alpha, k), coeff in terms.items():
            if coeff.universe != chart.universe:
                raise DenalgError("coefficient universe does not match chart")
            if coeff.is_zero:
                continue
            if len(alpha) != dim or not isinstance(k, int) or k < 0:
                raise ValueError("malformed operator term key")
            for i, e in enumerate(alpha):
                if not isinstance(e, int) or e < 0:
                    raise ValueError("multi-index entries are integers >= 0")
                if chart.coord_parities[i] == ODD and e > 1:
                    raise ValueError("odd derivative squared")
            key = (tuple(alpha), k)
            clean[key] = clean.get(key, chart.zero()) + coeff
        self.terms = {key: c for key, c in clean.items() if not c.is_zero}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, chart):
        return cls(chart, {})

    @classmethod
    def identity(cls, chart):
        return cls.multiplication(chart, chart.one())

    @classmethod
    def multiplication(cls, chart, expr):
        alpha = (0,) * len(chart.coord_names)
        return cls(chart, {(alpha, 0): expr})

    @classmethod
    def coordinate_derivative(cls, chart, name):
        i = chart.coord_names.index(name)
        alpha = tuple(
            1 if j == i else 0 for j in range(len(chart.coord_names))
        )
        return cls(chart, {(alpha, 0): chart.one()})

    @classmethod
    def weight(cls, chart):
        alpha = (0,) * len(chart.coord_names)
        return cls(chart, {(alpha, 1): chart.one()})

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        if self.chart != other.chart:
            raise DenalgError("operators on different charts")
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, self.chart.zero()) + c
        return DiffOperator(self.chart, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        return DiffOperator(
            self.chart, {key: c.scale(factor) for key, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    @property
    def is_zero(self):
        return not self.terms

    @property
    def order(self):
        return max((sum(a) + k for a, k in self.terms), default=0)

    def __repr__(self):
        return f"DiffOperator({render_operator(self)})"

    # -- grading ---------------------------------------------------------------

    def term_parity(self, key):
        alpha, _ = key
        p = sum(
            e for e, q in zip(alpha, self.chart.coord_parities) if q == ODD
        ) % 2
        cp = self.terms[key].parity()
        return None if cp is None else (cp + p) % 2

    def parity(self):
        p = None
        for key in self.terms:
            q = self.term_parity(key)
            if q is None:
                return None
            if p is None:
                p = q
            elif p != q:
                return None
        return p

    def parity_parts(self):
        even = {}
        odd = {}
        for (alpha, k), coeff in self.terms.items():
            p = sum(
                e for e, q in zip(alpha, self.chart.coord_parities) if q == ODD
            ) % 2
            ce = coeff.parity_part((EVEN + p) % 2)
            co = coeff.parity_part((ODD + p) % 2)
            if not ce.is_zero:
                even[(alpha, k)] = ce
            if not co.is_zero:
                odd[(alpha, k)] = co
        return DiffOperator(self.chart, even), DiffOperator(self.chart, odd)

    def op_weight(self):
        w = None
        for coeff in self.terms.values():
            q = coeff.weight()
            if q is None:
                return None
            if w is None:
                w = q
            elif w != q:
                return None
        return w if w is not None else Fraction(0)

    # -- action ------------------------------------------------------------------

    def apply(self, psi):
        wrap = isinstance(psi, DensityElement)
        expr = psi.expr if wrap else psi
        if expr.universe != self.chart.universe:
            raise DenalgError("operand universe does not match chart")
        t = self.chart.t()
        out = GradedExpr.zero(self.chart.universe)
        for (alpha, k), coeff in self.terms.items():
            phi = expr
            for _ in range(k):
                phi = t * phi.partial("t")
            for i in reversed(range(len(alpha))):
                for _ in range(alpha[i]):
                    phi = phi.partial(self.chart.coord_names[i])
            out = out + coeff * phi
        return DensityElement(self.chart, out) if wrap else out

    # -- composition ---------------------------------------------------------------

    def compose(self, other):
        """Normal form of self o other."""
        if not isinstance(other, DiffOperator):
            raise TypeError("compose expects a DiffOperator")
        if self.chart != other.chart:
            raise DenalgError("operators on different charts")
        chart = self.chart
        out = {}
        for (alpha, k), a in self.terms.items():
            current = dict(other.terms)
            for _ in range(k):
                current = _weight_through(chart, current)
            for i in reversed(range(len(alpha))):
                for _ in range(alpha[i]):
                    current = _derivative_through(chart, i, current)
            for key, b in current.items():
                c = a * b
                if c.is_zero:
                    continue
                out[key] = out.get(key, chart.zero()) + c
        return DiffOperator(chart, out)

    def __matmul__(self, other):
        return self.compose(other)

    # -- adjoint ---------------------------------------------------------------------

    def adjoint(self):
        """Adjoint with respect to the invariant scalar product."""
        chart = self.chart
        for coeff in self.terms.values():
            if not coeff.support_kinds() <= {COORD, SCALE}:
                raise DenalgError(
                    "adjoint requires density-algebra coefficients (x, t)"
                )
        deriv_ops = {
            name: DiffOperator.coordinate_derivative(chart, name).scale(-1)
            for name in chart.coord_names
        }
        w_star = DiffOperator.identity(chart) - DiffOperator.weight(chart)
        out = DiffOperator.zero(chart)
        for (alpha, k), coeff in self.terms.items():
            for part in (coeff.parity_part(EVEN), coeff.parity_part(ODD)):
                if part.is_zero:
                    continue
                parities = [part.parity()]
                names = []
                for i, e in enumerate(alpha):
                    for _ in range(e):
                        names.append(chart.coord_names[i])
                        parities.append(chart.coord_parities[i])
                parities.extend([EVEN] * k)
                n_odd = sum(parities)
                sign = -1 if (n_odd * (n_odd - 1) // 2) % 2 else 1
                acc = None
                for _ in range(k):
                    acc = w_star if acc is None else acc.compose(w_star)
                for name in reversed(names):
                    step = deriv_ops[name]
                    acc = step if acc is None else acc.compose(step)
                mult = DiffOperator.multiplication(chart, part)
                acc = mult if acc is None else acc.compose(mult)
                out = out + acc.scale(sign)
        return out

    # -- conversions ------------------------------------------------------------------

    def as_multiplication(self):
        """The order-0 operator as the expression it multiplies by."""
        alpha0 = (0,) * len(self.chart.coord_names)
        expr = self.chart.zero()
        for (alpha, k), coeff in self.terms.items():
            if alpha != alpha0 or k != 0:
                raise DenalgError("operator has positive-order terms")
            expr = expr + coeff
        return expr

    def to_json(self):
        items = []
        for (alpha, k) in sorted(
            self.terms, key=lambda key: (sum(key[0]) + key[1], key[0], key[1]),
            reverse=True,
        ):
            items.append(
                {
                    "alpha": {
                        self.chart.coord_names[i]: e
                        for i, e in enumerate(alpha)
                        if e
                    },
                    "k": k,
                    "coeff": expr_to_json(self.terms[(alpha, k)]),
                }
            )
        return {"terms": items}

    @classmethod
    def from_json(cls, chart, doc):
        terms = {}
        for item in doc["terms"]:
            alpha = [0] * len(chart.coord_names)
            for name, e in item["alpha"].items():
                alpha[chart.coord_names.index(name)] = int(e)
            key = (tuple(alpha), int(item["k"]))
            coeff = expr_from_json(chart.universe, item["coeff"])
            terms[key] = terms.get(key, chart.zero()) + coeff
        return cls(chart, terms)


def _weight_through(chart, terms):
    """Normal form of w o (sum coeff d^beta w^l)."""
    t = chart.t()
    out = {}

    def put(key, c):
        if c.is_zero:
            return
        out[key] = out.get(key, chart.zero()) + c

    for (beta, l), b in terms.items():
        put((beta, l), t * b.partial("t"))
        put((beta, l + 1), b)
    return out


def _derivative_through(chart, i, terms):
    """Normal form of d/dx^i o (sum coeff d^beta w^l)."""
    name = chart.coord_names[i]
    parity = chart.coord_parities[i]
    out = {}

    def put(key, c):
        if c.is_zero:
            return
        out[key] = out.get(key, chart.zero()) + c

    for (beta, l), b in terms.items():
        put((beta, l), b.partial(name))
        if parity == ODD and beta[i] == 1:
            continue
        if parity == ODD:
            passed = b.parity_part(EVEN) - b.parity_part(ODD)
            crossings = sum(
                e
                for e, q in zip(beta[:i], chart.coord_parities[:i])
                if q == ODD
            )
            if crossings % 2:
                passed = -passed
        else:
            passed = b
        nb = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
        put((nb, l), passed)
    return out


def commutator(a, b):
    """Graded commutator [A, B] = A B - (-1)^{|A||B|} B A."""
    parts = []
    for pa, xa in zip((EVEN, ODD), a.parity_parts()):
        for pb, xb in zip((EVEN, ODD), b.parity_parts()):
            if xa.is_zero or xb.is_zero:
                continue
            sign = -1 if (pa and pb) else 1
            parts.append(xa.compose(xb) - xb.compose(xa).scale(sign))
    out = DiffOperator.zero(a.chart)
    for p in parts:
        out = out + p
    return out


def div_operator(op, k):
    """div L = -(L - (-1)^k L*) for an operator of order <= k; lowers order."""
    if op.order > k:
        raise OrderViolation(
            f"operator has order {op.order}, stated bound {k}"
        )
    star = op.adjoint()
    return star.scale(1 if k % 2 == 0 else -1) - op


def render_operator(op):
    """Deterministic text form using d/dx^a and w tokens."""
    if op.is_zero:
        return "0"
    chunks = []
    for (alpha, k) in sorted(
        op.terms, key=lambda key: (sum(key[0]) + key[1], key[0], key[1]),
        reverse=True,
    ):
        coeff = op.terms[(alpha, k)]
        factors = []
        for i, e in enumerate(alpha):
            if not e:
                continue
            name = f"d/d{op.chart.coord_names[i]}"
            factors.append(name if e == 1 else f"{name}^{e}")
        if k:
            factors.append("w" if k == 1 else f"w^{k}")
        body = "*".join(factors)
        text = render_expr(coeff)
        negated = False
        if not factors:
            chunk = text
        elif text == "1":
            chunk = body
        elif text == "-1":
            chunk = body
            negated = True
        elif len(coeff.terms) == 1:
            if text.startswith("-"):
                negated = True
                text = text[1:]
            chunk = f"{text}*{body}"
        else:
            chunk = f"({text})*{body}"
        if not chunks:
            chunks.append(("-" if negated else "") + chunk)
        else:
            chunks.append((" - " if negated else " + ") + chunk)
    return "".join(chunks)
