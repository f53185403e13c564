"""Exact graded-commutative expression engine.

Expressions are finite linear combinations, with rational coefficients, of
monomials in a fixed ordered variable universe.  Even variables carry
non-negative integer exponents, odd variables exponents 0 or 1, and the
distinguished scale variable (kind ``scale``) admits arbitrary rational
exponents, negative included (pseudo-polynomials).  Multiplication follows
the Koszul sign rule; partial derivatives act from the left.

Everything here is immutable and pure: all operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotInvertible,
    ParityMismatch,
    SubstitutionInfeasible,
    UniverseMismatch,
    UnknownVariable,
)

EVEN = 0
ODD = 1

# variable kinds
COORD = "coord"          # chart coordinate x^a
DIFF = "diff"            # differential dx^a
ANTI = "anti"            # antimomentum conjugate to x^a
SCALE = "scale"          # invertible scale variable t (stands for |Dx|)
SCALE_ANTI = "scale-anti"  # odd antimomentum conjugate to t

_KINDS = (COORD, DIFF, ANTI, SCALE, SCALE_ANTI)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class Variable:
    """A named generator with parity, weight and exponent discipline."""

    name: str
    kind: str
    parity: int
    weight: Fraction
    pseudo_invertible: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.parity not in (EVEN, ODD):
            raise ValueError("parity must be 0 or 1")
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.parity == ODD and self.pseudo_invertible:
            raise ValueError("odd variables are never pseudo-invertible")

    def __repr__(self):
        return f"Variable({self.name!r}, {self.kind}, parity={self.parity})"


def scale_variable(name="t"):
    return Variable(name, SCALE, EVEN, Fraction(1), pseudo_invertible=True)


def scale_antimomentum(name="ts"):
    return Variable(name, SCALE_ANTI, ODD, Fraction(-1))


class Universe:
    """An ordered tuple of variables fixing the canonical monomial order."""

    __slots__ = ("variables", "_index", "parities", "weights", "odd_indices")

    def __init__(self, variables):
        self.variables = tuple(variables)
        self._index = {}
        for i, v in enumerate(self.variables):
            if v.name in self._index:
                raise ValueError(f"duplicate variable name {v.name!r}")
            self._index[v.name] = i
        self.parities = tuple(v.parity for v in self.variables)
        self.weights = tuple(v.weight for v in self.variables)
        self.odd_indices = tuple(
            i for i, v in enumerate(self.variables) if v.parity == ODD
        )

    def __len__(self):
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, Universe) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return "Universe(" + ", ".join(v.name for v in self.variables) + ")"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def var(self, name):
        return self.variables[self.index(name)]

    def zero_mono(self):
        return (0,) * len(self.variables)

    def check_mono(self, mono):
        if len(mono) != len(self.variables):
            raise ValueError("monomial length does not match universe")
        for i, e in enumerate(mono):
            v = self.variables[i]
            if v.kind == SCALE:
                continue
            if not isinstance(e, int) or e < 0:
                raise ValueError(
                    f"exponent of {v.name} must be a non-negative integer"
                )
            if v.parity == ODD and e > 1:
                raise ValueError(f"odd variable {v.name} squared")

    def mono_mul(self, m1, m2):
        """Product of canonical monomials: (sign, monomial), or None if zero."""
        odd1 = [i for i in self.odd_indices if m1[i]]
        if odd1:
            inversions = 0
            for j in self.odd_indices:
                if not m2[j]:
                    continue
                if m1[j]:
                    return None
                for i in odd1:
                    if i > j:
                        inversions += 1
            sign = -1 if inversions % 2 else 1
        else:
            sign = 1
        return sign, tuple(a + b for a, b in zip(m1, m2))

    def mono_parity(self, mono):
        p = 0
        for i in self.odd_indices:
            p ^= mono[i] & 1
        return p

    def mono_weight(self, mono):
        w = _F0
        for i, e in enumerate(mono):
            if e and self.weights[i]:
                w += self.weights[i] * e
        return w


class GradedExpr:
    """Canonical-form element of the graded-commutative ring of a universe.

    The canonical form is a map from monomials (dense exponent tuples in the
    universe order) to nonzero rational coefficients.  Equality is syntactic
    equality of canonical forms; construction canonicalizes.
    """

    __slots__ = ("universe", "terms")

    def __init__(self, universe, terms):
        self.universe = universe
        clean = {}
        for mono, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            universe.check_mono(mono)
            clean[mono] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, universe):
        return cls(universe, {})

    @classmethod
    def const(cls, universe, value):
        return cls(universe, {universe.zero_mono(): Fraction(value)})

    @classmethod
    def one(cls, universe):
        return cls.const(universe, 1)

    @classmethod
    def variable(cls, universe, name, power=1):
        i = universe.index(name)
        v = universe.variables[i]
        if v.kind == SCALE:
            power = Fraction(power)
        mono = tuple(
            power if j == i else 0 for j in range(len(universe.variables))
        )
        return cls(universe, {mono: _F1})

    # -- basic predicates ---------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedExpr):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    def _check_universe(self, other):
        if self.universe != other.universe:
            raise UniverseMismatch("operands live in different universes")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedExpr.const(self.universe, other)
        if not isinstance(other, GradedExpr):
            return NotImplemented
        self._check_universe(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, _F0) + c
        return GradedExpr(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedExpr(
            self.universe, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedExpr.const(self.universe, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return GradedExpr.zero(self.universe)
        return GradedExpr(
            self.universe, {m: factor * c for m, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GradedExpr):
            return NotImplemented
        self._check_universe(other)
        out = {}
        u = self.universe
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = u.mono_mul(m1, m2)
                if hit is None:
                    continue
                sign, m = hit
                out[m] = out.get(m, _F0) + sign * c1 * c2
        return GradedExpr(u, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n):
        if isinstance(n, Fraction) and n.denominator == 1:
            n = int(n)
        if not isinstance(n, int):
            # fractional powers only for a single pseudo-invertible monomial
            return self._mono_power(Fraction(n))
        if n < 0:
            return self._mono_power(Fraction(n))
        out = GradedExpr.one(self.universe)
        for _ in range(n):
            out = out * self
        return out

    def _mono_power(self, lam):
        u = self.universe
        if len(self.terms) != 1:
            raise SubstitutionInfeasible(
                "fractional or negative power of a non-monomial expression"
            )
        (mono, c), = self.terms.items()
        if c != 1:
            raise SubstitutionInfeasible(
                "fractional or negative power of a non-unit coefficient"
            )
        new = []
        for i, e in enumerate(mono):
            if not e:
                new.append(0)
                continue
            if not u.variables[i].pseudo_invertible:
                raise SubstitutionInfeasible(
                    f"variable {u.variables[i].name} has no rational powers"
                )
            new.append(e * lam)
        return GradedExpr(u, {tuple(new): _F1})

    # -- grading ------------------------------------------------------------

    def parity(self):
        """Common parity of all monomials, or None if zero or mixed."""
        p = None
        for mono in self.terms:
            q = self.universe.mono_parity(mono)
            if p is None:
                p = q
            elif p != q:
                return None
        return p

    def is_parity_homogeneous(self, parity):
        return all(
            self.universe.mono_parity(m) == parity for m in self.terms
        )

    def parity_part(self, parity):
        return GradedExpr(
            self.universe,
            {
                m: c
                for m, c in self.terms.items()
                if self.universe.mono_parity(m) == parity
            },
        )

    def weight(self):
        """Common weight of all monomials, or None if zero or mixed."""
        w = None
        for mono in self.terms:
            q = self.universe.mono_weight(mono)
            if w is None:
                w = q
            elif w != q:
                return None
        return w

    def weight_decompose(self):
        """Homogeneous components as a list of (weight, expr), heaviest first."""
        buckets = {}
        for mono, c in self.terms.items():
            buckets.setdefault(self.universe.mono_weight(mono), {})[mono] = c
        return [
            (w, GradedExpr(self.universe, ts))
            for w, ts in sorted(buckets.items(), key=lambda kv: kv[0], reverse=True)
        ]

    def weight_part(self, w):
        w = Fraction(w)
        return GradedExpr(
            self.universe,
            {
                m: c
                for m, c in self.terms.items()
                if self.universe.mono_weight(m) == w
            },
        )

    # -- calculus -----------------------------------------------------------

    def partial(self, name):
        """Left partial derivative with respect to the named variable."""
        u = self.universe
        i = u.index(name)
        v = u.variables[i]
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if not e:
                continue
            if v.parity == ODD:
                prefix = 0
                for j in u.odd_indices:
                    if j >= i:
                        break
                    prefix ^= mono[j] & 1
                coeff = -c if prefix else c
                nm = mono[:i] + (0,) + mono[i + 1:]
            else:
                coeff = c * e
                nm = mono[:i] + (e - 1,) + mono[i + 1:]
            out[nm] = out.get(nm, _F0) + coeff
        return GradedExpr(u, out)

    def right_partial(self, name):
        """Right partial derivative: the sign counts factors passed from the right."""
        u = self.universe
        i = u.index(name)
        v = u.variables[i]
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if not e:
                continue
            if v.parity == ODD:
                suffix = 0
                for j in u.odd_indices:
                    if j > i:
                        suffix ^= mono[j] & 1
                coeff = -c if suffix else c
                nm = mono[:i] + (0,) + mono[i + 1:]
            else:
                coeff = c * e
                nm = mono[:i] + (e - 1,) + mono[i + 1:]
            out[nm] = out.get(nm, _F0) + coeff
        return GradedExpr(u, out)

    def degree_in(self, name):
        i = self.universe.index(name)
        return max((m[i] for m in self.terms), default=0)

    def uses(self, name):
        i = self.universe.index(name)
        return any(m[i] for m in self.terms)

    def support_kinds(self):
        kinds = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    kinds.add(self.universe.variables[i].kind)
        return kinds

    def set_to_zero(self, name):
        """Drop all monomials in which the named variable occurs."""
        i = self.universe.index(name)
        return GradedExpr(
            self.universe, {m: c for m, c in self.terms.items() if not m[i]}
        )

    def coeff_of_even_power(self, name, power):
        """Coefficient of name**power, the variable stripped (even vars only)."""
        u = self.universe
        i = u.index(name)
        if u.variables[i].parity != EVEN:
            raise ValueError("coeff_of_even_power needs an even variable")
        power = Fraction(power)
        out = {}
        for mono, c in self.terms.items():
            if Fraction(mono[i]) == power:
                out[mono[:i] + (0,) + mono[i + 1:]] = c
        return GradedExpr(u, out)

    # -- substitution -------------------------------------------------------

    def substitute(self, bindings, universe=None):
        """Simultaneous substitution followed by canonicalization.

        ``bindings`` maps variable names to expressions in one common target
        universe (default: the universe of this expression).  Unmapped
        variables must exist in the target universe under the same name with
        identical kind, parity and weight.  Pseudo-powers of the scale
        variable expand when the binding is a unit monomial times
        1 + nilpotent, with a rational scale root; otherwise the substitution
        raises.
        """
        u = self.universe
        if universe is None:
            universe = next(
                (b.universe for b in bindings.values()), u
            )
        for name, b in bindings.items():
            v = u.var(name)
            if b.universe != universe:
                raise UniverseMismatch("bindings live in different universes")
            if not b.is_parity_homogeneous(v.parity):
                raise ParityMismatch(
                    f"binding for {name} is not parity-homogeneous of parity "
                    f"{v.parity}"
                )
        identity = {}

        def image(i):
            v = u.variables[i]
            if v.name in bindings:
                return bindings[v.name]
            if i not in identity:
                w = universe.var(v.name) if v.name in universe else None
                if w is None or (w.kind, w.parity, w.weight) != (
                    v.kind,
                    v.parity,
                    v.weight,
                ):
                    raise UniverseMismatch(
                        f"variable {v.name} has no binding and no counterpart "
                        "in the target universe"
                    )
                identity[i] = GradedExpr.variable(universe, v.name)
            return identity[i]

        result = GradedExpr.zero(universe)
        for mono, c in self.terms.items():
            acc = GradedExpr.const(universe, c)
            for i, e in enumerate(mono):
                if not e:
                    continue
                v = u.variables[i]
                base = image(i)
                e = Fraction(e)
                if e.denominator == 1 and e > 0:
                    factor = base ** int(e)
                else:
                    factor = unit_power(base, e)
                acc = acc * factor
            result = result + acc
        return result

    # -- units and pseudo-powers ---------------------------------------------

    def nilpotent(self):
        """True if every monomial contains an odd variable (some power is 0)."""
        return all(
            any(m[i] for i in self.universe.odd_indices) for m in self.terms
        )

    def unit_decompose(self):
        """Write the expression as c * t-monomial * (1 + nilpotent).

        Returns (c, scale_mono_expr, nilpotent_expr).  Raises NotInvertible
        when no such factorization exists.
        """
        u = self.universe
        body = []
        for mono, c in self.terms.items():
            if all(
                not e or u.variables[i].pseudo_invertible
                for i, e in enumerate(mono)
            ):
                body.append((mono, c))
        if len(body) != 1:
            raise NotInvertible(
                "unit must have a single scale-monomial body term"
            )
        (mono0, c0), = body
        lead = GradedExpr(u, {mono0: _F1})
        lead_inv = lead ** Fraction(-1) if any(mono0) else GradedExpr.one(u)
        rest = (self - lead.scale(c0)) * lead_inv
        rest = rest.scale(Fraction(1, 1) / c0)
        if not rest.nilpotent():
            raise NotInvertible("non-nilpotent part beyond the body term")
        return c0, lead, rest

    def invert_unit(self):
        """Exact inverse of a unit: finite geometric series."""
        c, lead, n = self.unit_decompose()
        u = self.universe
        series = GradedExpr.one(u)
        power = GradedExpr.one(u)
        while True:
            power = power * (-n)
            if power.is_zero:
                break
            series = series + power
        inv_lead = lead ** Fraction(-1) if not lead == GradedExpr.one(u) else lead
        return inv_lead.scale(Fraction(1, 1) / c) * series


def unit_power(expr, lam):
    """Exact rational power of a unit, by finite binomial series.

    Integer powers work for any expression; otherwise the expression must be
    a unit c * t-monomial * (1 + nilpotent) with c a perfect power matching
    the denominator of ``lam``.
    """
    lam = Fraction(lam)
    if lam.denominator == 1:
        n = int(lam)
        if n >= 0:
            return expr ** n
        inv = expr.invert_unit()
        return inv ** (-n)
    c, lead, nil = expr.unit_decompose()
    root = rational_power(c, lam)
    u = expr.universe
    series = GradedExpr.one(u)
    power = GradedExpr.one(u)
    k = 0
    while True:
        k += 1
        power = power * nil
        if power.is_zero:
            break
        series = series + power.scale(_binomial(lam, k))
    lead_pow = lead ** lam if not lead == GradedExpr.one(u) else lead
    return lead_pow.scale(root) * series


def _binomial(lam, k):
    num = _F1
    for j in range(k):
        num *= lam - j
    den = 1
    for j in range(2, k + 1):
        den *= j
    return num / den


def _int_nth_root(x, n):
    if x < 0:
        return None
    if x in (0, 1):
        return x
    r = round(x ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == x:
            return cand
    return None


def rational_power(c, lam):
    """c**lam as an exact Fraction, or raise SubstitutionInfeasible."""
    c = Fraction(c)
    lam = Fraction(lam)
    if lam.denominator == 1:
        if c == 0 and lam < 0:
            raise SubstitutionInfeasible("zero has no negative powers")
        return c ** int(lam)
    if c <= 0:
        raise SubstitutionInfeasible(
            "fractional powers need a positive rational scale factor"
        )
    q = lam.denominator
    rn = _int_nth_root(c.numerator, q)
    rd = _int_nth_root(c.denominator, q)
    if rn is None or rd is None:
        raise SubstitutionInfeasible(
            f"{c} is not a perfect {q}-th power of a rational"
        )
    return Fraction(rn, rd) ** lam.numerator


# -- rendering and JSON -------------------------------------------------------


def _fmt_fraction(q):
    return str(q)


def _fmt_exponent(e):
    e = Fraction(e)
    if e == 1:
        return ""
    if e.denominator == 1 and e >= 0:
        return f"^{e.numerator}"
    return f"^({e})"


def render_expr(expr):
    """Deterministic, whitespace-normalized text form (parser-compatible)."""
    if expr.is_zero:
        return "0"
    u = expr.universe
    parts = []
    for mono in sorted(expr.terms, reverse=True):
        c = expr.terms[mono]
        factors = [
            u.variables[i].name + _fmt_exponent(e)
            for i, e in enumerate(mono)
            if e
        ]
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = _fmt_fraction(mag) + "*" + "*".join(factors)
        else:
            body = _fmt_fraction(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def expr_to_json(expr):
    u = expr.universe
    items = []
    for mono in sorted(expr.terms, reverse=True):
        items.append(
            {
                "coeff": str(expr.terms[mono]),
                "exps": {
                    u.variables[i].name: str(Fraction(e))
                    for i, e in enumerate(mono)
                    if e
                },
            }
        )
    return {"terms": items}


def expr_from_json(universe, doc):
    out = GradedExpr.zero(universe)
    for item in doc["terms"]:
        mono = [0] * len(universe.variables)
        for name, e in item["exps"].items():
            i = universe.index(name)
            e = Fraction(e)
            if universe.variables[i].kind != SCALE:
                if e.denominator != 1:
                    raise ValueError(f"non-integer exponent on {name}")
                e = int(e)
            mono[i] = e
        out = out + GradedExpr(
            universe, {tuple(mono): Fraction(item["coeff"])}
        )
    return out
