"""Seeded random generators for expressions, fields, operators and maps.

Everything takes an explicit random.Random so the property suites and the
command-line check runner are reproducible from a seed.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import anti_name, diff_name
from .chartmaps import ChartMap, SuperMatrix
from .expr import EVEN, ODD, GradedExpr
from .multivectors import HatMultivector, MultivectorDensity
from .nijenhuis import FormValuedVectorField, PiTMVectorField
from .operators import DiffOperator
from .pencils import PencilData
from .vectorfields import HatVectorField, VectorDensity


def rand_coeff(rng):
    c = 0
    while c == 0:
        c = rng.randint(-3, 3)
    if rng.random() < 0.2:
        return Fraction(c, 2)
    return Fraction(c)


def _random_coord_mono(rng, chart, degree):
    u = chart.universe
    mono = [0] * len(u.variables)
    budget = rng.randint(0, degree)
    for _ in range(budget):
        name = rng.choice(chart.coord_names)
        i = u.index(name)
        if u.variables[i].parity == ODD and mono[i] >= 1:
            continue
        mono[i] += 1
    return tuple(mono)


def random_function(rng, chart, parity=None, degree=2, terms=2):
    """Random polynomial in the coordinates, optionally parity-homogeneous."""
    u = chart.universe
    out = GradedExpr.zero(u)
    attempts = 0
    produced = 0
    while produced < terms and attempts < 12 * terms:
        attempts += 1
        mono = _random_coord_mono(rng, chart, degree)
        if parity is not None and u.mono_parity(mono) != parity:
            continue
        out = out + GradedExpr(u, {mono: rand_coeff(rng)})
        produced += 1
    return out


def random_density_expr(rng, chart, weights, parity=None, degree=2, terms=2):
    """Random pseudo-polynomial sum of t^w * f_w(x) over the given weights."""
    out = GradedExpr.zero(chart.universe)
    for w in weights:
        f = random_function(rng, chart, parity, degree, terms)
        out = out + chart.t(Fraction(w)) * f
    return out


def random_hat_field(rng, chart, weight, parity, degree=2):
    """Weight-homogeneous derivation with the stated parity."""
    tmu = chart.t(Fraction(weight))
    comps = {}
    for name in chart.coord_names:
        want = (parity + chart.coord_parity(name)) % 2
        f = random_function(rng, chart, want, degree, 2)
        if not f.is_zero:
            comps[name] = tmu * f
    vert = tmu * random_function(rng, chart, parity, degree, 2)
    return HatVectorField(chart, comps, vert, parity)


def random_vector_density(rng, chart, mu, parity, degree=2):
    comps = {}
    for name in chart.coord_names:
        want = (parity + chart.coord_parity(name)) % 2
        f = random_function(rng, chart, want, degree, 2)
        if not f.is_zero:
            comps[name] = f
    return VectorDensity(chart, Fraction(mu), comps, parity)


def random_operator(rng, chart, parity, max_order=2, weights=(0, 1, -1, 2),
                    degree=2):
    """Parity-homogeneous operator of order <= max_order."""
    dim = len(chart.coord_names)
    keys = []
    for total in range(max_order + 1):
        for k in range(total + 1):
            a_total = total - k
            for combo in _alphas(chart, a_total):
                keys.append((combo, k))
    rng.shuffle(keys)
    terms = {}
    for key in keys[: rng.randint(2, 4)]:
        alpha, k = key
        alpha_par = sum(
            e for e, q in zip(alpha, chart.coord_parities) if q == ODD
        ) % 2
        want = (parity + alpha_par) % 2
        w = Fraction(rng.choice(list(weights)))
        f = random_function(rng, chart, want, degree, 2)
        if f.is_zero:
            continue
        coeff = chart.t(w) * f
        terms[key] = terms.get(key, chart.zero()) + coeff
    return DiffOperator(chart, terms)


def _alphas(chart, total):
    dim = len(chart.coord_names)
    if total == 0:
        return [(0,) * dim]
    out = set()

    def rec(prefix, remaining, start):
        if remaining == 0:
            out.add(tuple(prefix))
            return
        for i in range(start, dim):
            cap = 1 if chart.coord_parities[i] == ODD else remaining
            for e in range(1, cap + 1):
                p = list(prefix)
                p[i] += e
                rec(p, remaining - e, i + 1)
    rec([0] * dim, total, 0)
    return sorted(out)


def random_multivector_expr(rng, chart, parity=None, degree=2, anti_degree=2,
                            terms=3):
    """Random polynomial in (x, x*) with bounded antimomentum degree."""
    u = chart.universe
    out = GradedExpr.zero(u)
    attempts = 0
    produced = 0
    while produced < terms and attempts < 15 * terms:
        attempts += 1
        mono = list(_random_coord_mono(rng, chart, degree))
        for _ in range(rng.randint(0, anti_degree)):
            name = anti_name(rng.choice(chart.coord_names))
            i = u.index(name)
            if u.variables[i].parity == ODD and mono[i] >= 1:
                continue
            mono[i] += 1
        mono = tuple(mono)
        if parity is not None and u.mono_parity(mono) != parity:
            continue
        out = out + GradedExpr(u, {mono: rand_coeff(rng)})
        produced += 1
    return out


def random_multivector_density(rng, chart, mu, parity, degree=2,
                               anti_degree=2):
    expr = random_multivector_expr(rng, chart, parity, degree, anti_degree)
    return MultivectorDensity(chart, Fraction(mu), expr, parity)


def random_hat_multivector(rng, chart, weight, parity, degree=2,
                           anti_degree=2):
    tmu = chart.t(Fraction(weight))
    p0 = tmu * random_multivector_expr(rng, chart, parity, degree, anti_degree)
    p1 = tmu * random_multivector_expr(
        rng, chart, (parity + 1) % 2, degree, anti_degree
    )
    return HatMultivector(chart, p0, p1, parity)


def random_form_expr(rng, chart, parity=None, degree=2, dx_degree=2,
                     terms=2):
    u = chart.universe
    out = GradedExpr.zero(u)
    attempts = 0
    produced = 0
    while produced < terms and attempts < 15 * terms:
        attempts += 1
        mono = list(_random_coord_mono(rng, chart, degree))
        for _ in range(rng.randint(0, dx_degree)):
            name = diff_name(rng.choice(chart.coord_names))
            i = u.index(name)
            if u.variables[i].parity == ODD and mono[i] >= 1:
                continue
            mono[i] += 1
        mono = tuple(mono)
        if parity is not None and u.mono_parity(mono) != parity:
            continue
        out = out + GradedExpr(u, {mono: rand_coeff(rng)})
        produced += 1
    return out


def random_form_vector(rng, chart, parity, degree=2, dx_degree=2):
    comps = {}
    for name in chart.coord_names:
        want = (parity + chart.coord_parity(name)) % 2
        f = random_form_expr(rng, chart, want, degree, dx_degree)
        if not f.is_zero:
            comps[name] = f
    return FormValuedVectorField(chart, comps, parity)


def random_pitm_field(rng, chart, parity, degree=2, dx_degree=2):
    comps0 = {}
    comps1 = {}
    for name in chart.coord_names:
        want0 = (parity + chart.coord_parity(name)) % 2
        want1 = (want0 + 1) % 2
        f0 = random_form_expr(rng, chart, want0, degree, dx_degree)
        f1 = random_form_expr(rng, chart, want1, degree, dx_degree)
        if not f0.is_zero:
            comps0[name] = f0
        if not f1.is_zero:
            comps1[name] = f1
    return PiTMVectorField(chart, comps0, comps1, parity)


def random_pencil_data(rng, chart, mu, eps, degree=2):
    s = {}
    names = chart.coord_names
    for i, a in enumerate(names):
        for b in names[i:]:
            pa, pb = chart.coord_parity(a), chart.coord_parity(b)
            if a == b and pa == ODD:
                continue
            f = random_function(rng, chart, (eps + pa + pb) % 2, degree, 1)
            if not f.is_zero:
                s[(a, b)] = f
    gamma = {}
    for a in names:
        f = random_function(
            rng, chart, (eps + chart.coord_parity(a)) % 2, degree, 1
        )
        if not f.is_zero:
            gamma[a] = f
    theta = random_function(rng, chart, eps, degree, 1)
    return PencilData(chart, Fraction(mu), eps, s, gamma, theta)


# -- matrices and chart maps ---------------------------------------------------


def _random_invertible_rational(rng, n):
    while True:
        rows = [
            [Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)
        ]
        if _rat_det(rows) != 0:
            return rows


def _rat_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    acc = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _rat_det(minor)
        acc += term if j % 2 == 0 else -term
    return acc


def _nilpotent_even(rng, chart):
    odd = [n for n, p in zip(chart.coord_names, chart.coord_parities) if p]
    if len(odd) < 2:
        return chart.zero()
    a, b = rng.sample(odd, 2)
    return (chart.var(a) * chart.var(b)).scale(rng.randint(-1, 1))


def _odd_entry(rng, chart):
    odd = [n for n, p in zip(chart.coord_names, chart.coord_parities) if p]
    if not odd:
        return chart.zero()
    name = rng.choice(odd)
    return chart.var(name).scale(rng.randint(-1, 1))


def random_supermatrix(rng, chart):
    """Berezinian-feasible square supermatrix over the chart's universe."""
    ne, no = chart.n, chart.m
    u = chart.universe
    a0 = _random_invertible_rational(rng, ne)
    d0 = _random_invertible_rational(rng, no)
    rows = []
    for i in range(ne):
        row = [
            chart.const(a0[i][j]) + _nilpotent_even(rng, chart)
            for j in range(ne)
        ]
        row += [_odd_entry(rng, chart) for _ in range(no)]
        rows.append(row)
    for i in range(no):
        row = [_odd_entry(rng, chart) for _ in range(ne)]
        row += [
            chart.const(d0[i][j]) + _nilpotent_even(rng, chart)
            for j in range(no)
        ]
        rows.append(row)
    parities = (EVEN,) * ne + (ODD,) * no
    return SuperMatrix(u, rows, parities, parities)


def identity_chart_map(chart):
    comps = {name: chart.var(name) for name in chart.coord_names}
    return ChartMap(chart, chart, dict(comps), dict(comps))


def compose_chart_maps(outer, inner):
    """Map with forward x = F_outer(F_inner(x''))."""
    forward = {
        a: outer.forward[a].substitute(inner.forward, inner.target.universe)
        for a in outer.source.coord_names
    }
    inverse = None
    if outer.inverse is not None and inner.inverse is not None:
        inverse = {
            a: inner.inverse[a].substitute(
                outer.inverse, outer.source.universe
            )
            for a in inner.target.coord_names
        }
    return ChartMap(outer.source, inner.target, forward, inverse)


def _scaling_map(rng, chart):
    comps_f = {}
    comps_i = {}
    for name in chart.coord_names:
        # positive factors keep the Jacobian body positive (orientation)
        if chart.coord_parity(name) == EVEN:
            c = Fraction(rng.choice([1, 1, 2, 3, Fraction(1, 2)]))
        else:
            c = Fraction(rng.choice([1, 1, 2, 3]))
        comps_f[name] = chart.var(name).scale(c)
        comps_i[name] = chart.var(name).scale(Fraction(1) / c)
    return ChartMap(chart, chart, comps_f, comps_i)


def _shear_map(rng, chart):
    names = list(chart.coord_names)
    target = rng.choice(names)
    others = [n for n in names if n != target]
    if not others:
        return identity_chart_map(chart)
    want = chart.coord_parity(target)
    source = rng.choice(others)
    sp = chart.coord_parity(source)
    if sp == want:
        k = 1 if sp == ODD else rng.randint(1, 2)
        f = chart.var(source) ** k
    elif want == EVEN:
        odd_others = [n for n in others if chart.coord_parity(n) == ODD]
        if sp == ODD and len(odd_others) >= 2:
            a, b = odd_others[0], odd_others[1]
            f = chart.var(a) * chart.var(b)
        else:
            return identity_chart_map(chart)
    else:
        odd_others = [n for n in others if chart.coord_parity(n) == ODD]
        even_others = [n for n in others if chart.coord_parity(n) == EVEN]
        if odd_others and even_others:
            f = chart.var(even_others[0]) * chart.var(odd_others[0])
        else:
            return identity_chart_map(chart)
    f = f.scale(rand_coeff(rng))
    comps_f = {name: chart.var(name) for name in chart.coord_names}
    comps_i = dict(comps_f)
    comps_f[target] = chart.var(target) + f
    comps_i[target] = chart.var(target) - f
    return ChartMap(chart, chart, comps_f, comps_i)


def _super_twist_map(rng, chart):
    """x -> x + g(x) xi_i xi_j twist; Jacobian is 1 + nilpotent."""
    odd = [n for n, p in zip(chart.coord_names, chart.coord_parities) if p]
    even = [n for n, p in zip(chart.coord_names, chart.coord_parities) if not p]
    if len(odd) < 2 or not even:
        return identity_chart_map(chart)
    target = rng.choice(even)
    a, b = rng.sample(odd, 2)
    g = chart.var(target) ** rng.randint(1, 2)
    f = (g * chart.var(a) * chart.var(b)).scale(rand_coeff(rng))
    comps_f = {name: chart.var(name) for name in chart.coord_names}
    comps_i = dict(comps_f)
    comps_f[target] = chart.var(target) + f
    # exact inverse: the odd pair makes the correction square to zero
    comps_i[target] = chart.var(target) - f
    return ChartMap(chart, chart, comps_f, comps_i)


def random_chart_map(rng, chart, steps=2, allow_super=True):
    makers = [_scaling_map, _shear_map]
    if allow_super:
        makers.append(_super_twist_map)
    out = identity_chart_map(chart)
    for _ in range(steps):
        out = compose_chart_maps(rng.choice(makers)(rng, chart), out)
    return out
