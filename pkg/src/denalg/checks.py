"""Seeded property suites for every identity and classification statement.

Each suite takes (seed, trials), draws reproducible random instances and
verifies exact identities, raising CheckFailure with a counterexample
description on the first violation.  The command-line ``check`` command and
the acceptance tests both dispatch here.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .chart import Chart
from .chartmaps import (
    berezinian,
    bracket_symbol,
    check_volume_invariance,
    transform_antimomenta,
    transform_density,
    transform_hat_vector,
    transform_multivector_density,
    transform_vector_density,
)
from .density import DensityElement
from .errors import DenalgError, WeightOneSingular
from .expr import EVEN, ODD, GradedExpr
from .multivectors import (
    MultivectorDensity,
    PoissonTensor,
    delta0,
    delta_hat,
    induced_odd_bracket,
    multivector_lift,
    poisson_bracket,
    poisson_lift,
    restrict_multivector,
    schouten,
    schouten0,
)
from .nijenhuis import (
    d_of,
    exterior_d,
    fn_lift,
    interior,
    nijenhuis_bracket,
    pitm_commutator,
    restrict_to_base,
)
from .operators import DiffOperator, commutator as op_commutator, div_operator
from .pencils import (
    build_second_order,
    classify_first_order,
    extract_pencil_data,
    restrict_pencil,
)
from .randgen import (
    _scaling_map,
    identity_chart_map,
    random_chart_map,
    random_density_expr,
    random_form_expr,
    random_form_vector,
    random_function,
    random_hat_field,
    random_hat_multivector,
    random_multivector_density,
    random_multivector_expr,
    random_operator,
    random_pencil_data,
    random_pitm_field,
    random_supermatrix,
    random_vector_density,
)
from .vectorfields import (
    HatVectorField,
    commutator as vf_commutator,
    decompose,
    density_bracket,
    divergence,
    divergence_via_volume,
    lie_lift,
    restrict_to_functions,
)


class CheckFailure(DenalgError):
    """A property suite found a counterexample."""


WEIGHTS = (Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2),
           Fraction(2), Fraction(3))
JACOBI_WEIGHTS = (Fraction(0), Fraction(2), Fraction(4))


def _charts_small():
    return [Chart(1, 0), Chart(2, 0), Chart(0, 1), Chart(1, 1), Chart(2, 1)]


def _charts_wide():
    return [Chart(1, 0), Chart(2, 0), Chart(1, 1), Chart(2, 1), Chart(1, 2),
            Chart(2, 2)]


def _parity(rng, chart):
    return rng.choice((EVEN, ODD)) if chart.m else EVEN


def _fail(name, detail):
    raise CheckFailure(f"{name}: {detail}")


def check_div_consistency(seed, trials):
    """divergence = -(X + X*) = divergence w.r.t. the volume t^{-2}."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        x = random_hat_field(
            rng, chart, rng.choice(WEIGHTS), _parity(rng, chart), degree=3
        )
        d1 = divergence(x).expr
        op = x.as_operator()
        d2 = (op + op.adjoint()).scale(-1).as_multiplication()
        d3 = divergence_via_volume(x).expr
        if d1 != d2:
            _fail("div-consistency", f"explicit formula vs adjoint at {x!r}")
        if d1 != d3:
            _fail("div-consistency", f"explicit formula vs volume at {x!r}")
    return trials


def check_div_lie(seed, trials):
    """Lifted vector densities (and Lie derivatives) are divergence-free."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        parity = _parity(rng, chart)
        mu = Fraction(0) if i % 2 == 0 else rng.choice(
            [w for w in WEIGHTS if w != 1]
        )
        xd = random_vector_density(rng, chart, mu, parity, degree=3)
        if not divergence(lie_lift(xd)).is_zero:
            _fail("div-lie", f"div L_X != 0 for {xd!r}")
        w = rng.choice(WEIGHTS)
        f = random_function(rng, chart, parity)
        vert = HatVectorField(chart, {}, chart.t(w) * f, parity)
        got = divergence(vert).expr
        want = (chart.t(w) * f).scale(w - 1)
        if got != want:
            _fail("div-lie", f"vertical divergence wrong at weight {w}")
    return trials


def check_class_roundtrip(seed, trials):
    """Lift/restrict are mutually inverse; decomposition is unique."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        parity = _parity(rng, chart)
        mu = rng.choice([w for w in WEIGHTS if w != 1])
        xd = random_vector_density(rng, chart, mu, parity)
        lifted = lie_lift(xd)
        if restrict_to_functions(lifted) != xd:
            _fail("class-roundtrip", f"restrict(lift) != id at {xd!r}")
        if lie_lift(restrict_to_functions(lifted)) != lifted:
            _fail("class-roundtrip", f"lift(restrict) != id at {xd!r}")
        w = rng.choice([v for v in WEIGHTS if v != 1])
        vert = HatVectorField(
            chart, {}, chart.t(w) * random_function(rng, chart, parity),
            parity,
        )
        total = lifted + vert
        first, second = decompose(total)
        if first != lifted or second != vert:
            _fail("class-roundtrip", f"decomposition not unique at {xd!r}")
        if not divergence(first).is_zero:
            _fail("class-roundtrip", "divergence-free part is not")
        bad = random_vector_density(rng, chart, Fraction(1), parity)
        if not bad.is_zero:
            try:
                lie_lift(bad)
            except WeightOneSingular:
                pass
            else:
                _fail("class-roundtrip", "weight-1 lift did not raise")
        one_part = HatVectorField(
            chart, {}, chart.t(1) * chart.one(), EVEN
        )
        try:
            decompose(one_part)
        except WeightOneSingular:
            pass
        else:
            _fail("class-roundtrip", "weight-1 decomposition did not raise")
    return trials


def check_div_operator(seed, trials):
    """div on operators: the bracket identity, div^2 = 0, and Leibniz on fields."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        p1 = _parity(rng, chart)
        p2 = _parity(rng, chart)
        d1 = random_operator(rng, chart, p1, max_order=2)
        d2 = random_operator(rng, chart, p2, max_order=2)
        lhs = div_operator(op_commutator(d1, d2), 3)
        rhs = (
            op_commutator(div_operator(d1, 2), d2)
            + op_commutator(d1, div_operator(d2, 2))
            + op_commutator(div_operator(d1, 2), div_operator(d2, 2))
        )
        if lhs != rhs:
            _fail("div-operator", f"bracket identity fails at {d1!r}, {d2!r}")
        if not div_operator(div_operator(d1, 2), 1).is_zero:
            _fail("div-operator", f"div^2 != 0 at {d1!r}")
        x = random_hat_field(rng, chart, rng.choice(WEIGHTS), p1)
        y = random_hat_field(rng, chart, rng.choice(WEIGHTS), p2)
        sign = -1 if x.parity and y.parity else 1
        lhs_f = divergence(vf_commutator(x, y)).expr
        rhs_f = x.apply(divergence(y).expr) - y.apply(
            divergence(x).expr
        ).scale(sign)
        if lhs_f != rhs_f:
            _fail("div-operator", f"Leibniz div[X,Y] fails at {x!r}, {y!r}")
        if not divergence(vf_commutator(lie_lift(
            random_vector_density(rng, chart, Fraction(2), p1)
        ), lie_lift(
            random_vector_density(rng, chart, Fraction(-2), p2)
        ))).is_zero:
            _fail("div-operator", "commutator of lifts is not divergence-free")
    return trials


def check_bracket_vd(seed, trials):
    """Weighted bracket equals restricted lift commutator; Lie superalgebra."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        px, py = _parity(rng, chart), _parity(rng, chart)
        mu = rng.choice([w for w in WEIGHTS if w != 1])
        nu = rng.choice([w for w in WEIGHTS if w != 1])
        xd = random_vector_density(rng, chart, mu, px)
        yd = random_vector_density(rng, chart, nu, py)
        direct = density_bracket(xd, yd)
        via = restrict_to_functions(
            vf_commutator(lie_lift(xd), lie_lift(yd))
        )
        if direct != via:
            _fail("bracket-vd", f"formula vs lift commutator at {xd!r}, {yd!r}")
        sign = -1 if px and py else 1
        mirror = density_bracket(yd, xd).scale(-sign)
        if direct != mirror:
            _fail("bracket-vd", f"antisymmetry fails at {xd!r}, {yd!r}")
        pz = _parity(rng, chart)
        rho = rng.choice(JACOBI_WEIGHTS)
        zd = random_vector_density(
            rng, chart, rng.choice(JACOBI_WEIGHTS), pz, degree=1
        )
        xj = random_vector_density(
            rng, chart, rng.choice(JACOBI_WEIGHTS), px, degree=1
        )
        yj = random_vector_density(rng, chart, rho, py, degree=1)
        sxy = -1 if px and py else 1
        lhs = density_bracket(xj, density_bracket(yj, zd))
        rhs = density_bracket(density_bracket(xj, yj), zd) + density_bracket(
            yj, density_bracket(xj, zd)
        ).scale(sxy)
        if lhs != rhs:
            _fail("bracket-vd", f"Jacobi fails at {xj!r}, {yj!r}, {zd!r}")
    return trials


def check_multivector(seed, trials):
    """Odd Laplacians square to zero; lifts are closed; brackets agree."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        parity = _parity(rng, chart)
        e = random_multivector_expr(rng, chart, degree=3)
        if not delta0(chart, delta0(chart, e)).is_zero:
            _fail("multivector", "delta0^2 != 0")
        p = random_hat_multivector(
            rng, chart, rng.choice(WEIGHTS), parity
        )
        if not delta_hat(delta_hat(p)).is_zero:
            _fail("multivector", "delta^2 != 0")
        mu = rng.choice([w for w in WEIGHTS if w != 1])
        nu = rng.choice([w for w in WEIGHTS if w != 1])
        pd = random_multivector_density(rng, chart, mu, parity)
        qd = random_multivector_density(rng, chart, nu, _parity(rng, chart))
        lifted = multivector_lift(pd)
        if not delta_hat(lifted).is_zero:
            _fail("multivector", f"lift is not closed at {pd!r}")
        if restrict_multivector(lifted, mu) != pd:
            _fail("multivector", f"lift round trip fails at {pd!r}")
        bracket = induced_odd_bracket(pd, qd)
        via = schouten(lifted, multivector_lift(qd))
        want_p0 = chart.t(mu + nu) * bracket.expr
        if via.p0 != want_p0:
            _fail(
                "multivector",
                f"induced bracket vs lift bracket at {pd!r}, {qd!r}",
            )
        pd0 = random_multivector_density(rng, chart, 0, parity)
        qd0 = random_multivector_density(rng, chart, 0, _parity(rng, chart))
        red = induced_odd_bracket(pd0, qd0).expr
        if red != schouten0(chart, pd0.expr, qd0.expr, pd0.parity):
            _fail("multivector", "weight-0 reduction is not the flat bracket")
        bad = MultivectorDensity(chart, 1, chart.anti(chart.coord_names[0]))
        try:
            multivector_lift(bad)
        except WeightOneSingular:
            pass
        else:
            _fail("multivector", "weight-1 lift did not raise")
    return trials


def check_schouten_jacobi(seed, trials):
    """Odd bracket axioms pinned by the Laplacian's Leibniz defect."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        pp, pq, pr = (_parity(rng, chart) for _ in range(3))
        weights = [rng.choice((0, 1, 2, -1)) for _ in range(3)]
        p = random_hat_multivector(rng, chart, weights[0], pp, degree=1)
        q = random_hat_multivector(rng, chart, weights[1], pq, degree=1)
        r = random_hat_multivector(rng, chart, weights[2], pr, degree=1)
        anti = -1 if ((pp + 1) % 2) and ((pq + 1) % 2) else 1
        if schouten(p, q) != schouten(q, p).scale(-anti):
            _fail("schouten-jacobi", f"antisymmetry fails at {p!r}, {q!r}")
        lhs = schouten(p, schouten(q, r))
        rhs = schouten(schouten(p, q), r) + schouten(
            q, schouten(p, r)
        ).scale(anti)
        if lhs != rhs:
            _fail("schouten-jacobi", f"Jacobi fails at {p!r}, {q!r}, {r!r}")
        sgn = -1 if ((pp + 1) % 2) and pq else 1
        lhs_l = schouten(p, q * r)
        rhs_l = schouten(p, q) * r + (q * schouten(p, r)).scale(sgn)
        if lhs_l != rhs_l:
            _fail("schouten-jacobi", f"Leibniz fails at {p!r}, {q!r}, {r!r}")
        der_sign = -1 if (pp + 1) % 2 else 1
        lhs_d = delta_hat(schouten(p, q))
        rhs_d = schouten(delta_hat(p), q) + schouten(
            p, delta_hat(q)
        ).scale(der_sign)
        if lhs_d != rhs_d:
            _fail("schouten-jacobi", "Laplacian is not a bracket derivation")
        mu = rng.choice([w for w in WEIGHTS if w != 1])
        nu = rng.choice([w for w in WEIGHTS if w != 1])
        cp = multivector_lift(
            random_multivector_density(rng, chart, mu, pp)
        )
        cq = multivector_lift(
            random_multivector_density(rng, chart, nu, pq)
        )
        exact = delta_hat(cp * cq).scale(-1 if pp else 1)
        if schouten(cp, cq) != exact:
            _fail("schouten-jacobi", "bracket of closed fields is not exact")
    return trials


def _poisson_cases():
    c2 = Chart(2, 0)
    c11 = Chart(1, 1)
    return [
        (c2, {("x1", "x2"): c2.one()}),
        (c2, {("x1", "x2"): c2.var("x1")}),
        (c11, {("xi1", "xi1"): c11.one()}),
        (c11, {("xi1", "xi1"): c11.var("x1")}),
    ]


def check_poisson(seed, trials):
    """Poisson lifting: brackets with t, Jacobi, and closure of the lift."""
    del seed
    count = 0
    for chart, comps in _poisson_cases():
        tensor = PoissonTensor(chart, comps, check_master=True)
        lifted = poisson_lift(tensor)
        if not schouten(lifted, lifted).is_zero:
            _fail("poisson", f"[P^, P^] != 0 for {tensor!r}")
        names = chart.coord_names

        def density(expr):
            return DensityElement(chart, expr)

        for a in names:
            for b in names:
                got = poisson_bracket(
                    lifted, density(chart.var(a)), density(chart.var(b))
                ).expr
                sign = -1 if chart.coord_parity(a) else 1
                want = tensor.comp(a, b).scale(sign)
                if got != want:
                    _fail("poisson", f"{{ {a}, {b} }} wrong for {tensor!r}")
            got_t = poisson_bracket(
                lifted, density(chart.t()), density(chart.var(a))
            ).expr
            want_t = GradedExpr.zero(chart.universe)
            for b in names:
                want_t = want_t + tensor.comp(b, a).partial(b)
            want_t = (chart.t() * want_t).scale(-1)
            if got_t != want_t:
                _fail("poisson", f"{{ t, {a} }} wrong for {tensor!r}")
        if not poisson_bracket(
            lifted, density(chart.t()), density(chart.t())
        ).is_zero:
            _fail("poisson", f"{{ t, t }} != 0 for {tensor!r}")
        if not poisson_bracket(
            lifted, density(chart.one()), density(chart.t())
        ).is_zero:
            _fail("poisson", "bracket with a constant is nonzero")
        gens = [chart.var(n) for n in names] + [chart.t()]
        gen_parities = [chart.coord_parity(n) for n in names] + [EVEN]
        for i, f in enumerate(gens):
            for j, g in enumerate(gens):
                for k, h in enumerate(gens):
                    pf, pg, ph = (
                        gen_parities[i], gen_parities[j], gen_parities[k]
                    )

                    def br(u, v):
                        return poisson_bracket(
                            lifted, density(u), density(v)
                        ).expr

                    jac = (
                        br(f, br(g, h)).scale(-1 if pf and ph else 1)
                        + br(g, br(h, f)).scale(-1 if pg and pf else 1)
                        + br(h, br(f, g)).scale(-1 if ph and pg else 1)
                    )
                    if not jac.is_zero:
                        _fail(
                            "poisson",
                            f"Jacobiator != 0 on generators for {tensor!r}",
                        )
                    count += 1
    return count


def check_nijenhuis(seed, trials):
    """Exterior differential, interior products, lifts and the bracket."""
    rng = random.Random(seed)
    charts = _charts_small()
    for i in range(trials):
        chart = rng.choice(charts)
        d = exterior_d(chart)
        if not pitm_commutator(d, d).is_zero:
            _fail("nijenhuis", "[d, d] != 0")
        omega = random_form_expr(rng, chart, degree=3, dx_degree=2)
        if not d_of(chart, d_of(chart, omega)).is_zero:
            _fail("nijenhuis", "d^2 != 0 on forms")
        parity = _parity(rng, chart)
        x = random_form_vector(rng, chart, parity)
        y = random_form_vector(rng, chart, _parity(rng, chart))
        lifted = fn_lift(x)
        if not pitm_commutator(d, lifted).is_zero:
            _fail("nijenhuis", f"[d, lift] != 0 at {x.comps!r}")
        if fn_lift(restrict_to_base(lifted)) != lifted:
            _fail("nijenhuis", "lift round trip fails")
        z = random_pitm_field(rng, chart, parity)
        bracket_dz = pitm_commutator(d, z)
        want0 = {}
        want1 = {}
        sgn = -1 if z.parity else 1
        for name in chart.coord_names:
            c0 = d_of(chart, z.comp0(name)) - z.comp1(name).scale(sgn)
            c1 = d_of(chart, z.comp1(name))
            if not c0.is_zero:
                want0[name] = c0
            if not c1.is_zero:
                want1[name] = c1
        if bracket_dz.comps0 != want0 or bracket_dz.comps1 != want1:
            _fail("nijenhuis", "[d, X] has the wrong components")
        if pitm_commutator(d, interior(x)) != lifted:
            _fail("nijenhuis", "L_X != [d, i_X]")
        nb = nijenhuis_bracket(x, y)
        via = restrict_to_base(pitm_commutator(fn_lift(x), fn_lift(y)))
        if nb != via:
            _fail("nijenhuis", "bracket != restricted commutator")
        w = random_form_vector(rng, chart, _parity(rng, chart), degree=1,
                               dx_degree=1)
        px, py, pw = x.parity, y.parity, w.parity
        sxy = -1 if px and py else 1
        lhs = nijenhuis_bracket(x, nijenhuis_bracket(y, w))
        rhs_a = nijenhuis_bracket(nijenhuis_bracket(x, y), w)
        rhs_b = nijenhuis_bracket(y, nijenhuis_bracket(x, w))
        rhs_comps = {}
        for name in chart.coord_names:
            c = rhs_a.comp(name) + rhs_b.comp(name).scale(sxy)
            if not c.is_zero:
                rhs_comps[name] = c
        if lhs.comps != rhs_comps:
            _fail("nijenhuis", "graded Jacobi fails")
    return trials


def check_charts(seed, trials):
    """Berezinians, bracket symbol, volume invariance, naturality."""
    rng = random.Random(seed)
    charts = _charts_wide()
    for i in range(trials):
        chart = rng.choice(charts)
        m1 = random_supermatrix(rng, chart)
        m2 = random_supermatrix(rng, chart)
        b1, b2 = berezinian(m1), berezinian(m2)
        if berezinian(m1.mul(m2)) != b1 * b2:
            _fail("charts", "Berezinian is not multiplicative")
        if bracket_symbol(m1) != b1:
            _fail("charts", "bracket symbol differs from the Berezinian")
        cm = random_chart_map(rng, chart)
        if not check_volume_invariance(cm):
            _fail("charts", "extended volume factor is not J^2")
        if not check_volume_invariance(identity_chart_map(chart)):
            _fail("charts", "volume invariance fails on the identity")
        parity = _parity(rng, chart)
        w = rng.choice([v for v in WEIGHTS if v.denominator == 1])
        psi = DensityElement(
            chart, random_density_expr(rng, chart, [w, Fraction(0)])
        )
        back = transform_density(cm.inverse_map(), transform_density(cm, psi))
        if back != psi:
            _fail("charts", "density transform does not invert")
        x = random_hat_field(rng, chart, w, parity)
        tx = transform_hat_vector(cm, x)
        if transform_hat_vector(cm.inverse_map(), tx) != x:
            _fail("charts", "field transform does not invert")
        if divergence(tx) != transform_density(cm, divergence(x)):
            _fail("charts", "divergence does not commute with transforms")
        p = random_hat_multivector(rng, chart, w, parity, degree=1)
        tp = transform_antimomenta(cm, p)
        if transform_antimomenta(cm.inverse_map(), tp) != p:
            _fail("charts", "multivector transform does not invert")
        if delta_hat(tp) != transform_antimomenta(cm, delta_hat(p)):
            _fail("charts", "Laplacian does not commute with transforms")
        affine = _scaling_map(rng, chart)
        mu = rng.choice([v for v in WEIGHTS if v != 1 and v.denominator == 1])
        nu = rng.choice([v for v in WEIGHTS if v != 1 and v.denominator == 1])
        xd = random_vector_density(rng, chart, mu, parity)
        yd = random_vector_density(rng, chart, nu, _parity(rng, chart))
        if transform_vector_density(
            affine, density_bracket(xd, yd)
        ) != density_bracket(
            transform_vector_density(affine, xd),
            transform_vector_density(affine, yd),
        ):
            _fail("charts", "vector-density bracket is not natural (affine)")
        pd = random_multivector_density(rng, chart, mu, parity, degree=1)
        qd = random_multivector_density(
            rng, chart, nu, _parity(rng, chart), degree=1
        )
        if transform_multivector_density(
            affine, induced_odd_bracket(pd, qd)
        ) != induced_odd_bracket(
            transform_multivector_density(affine, pd),
            transform_multivector_density(affine, qd),
        ):
            _fail("charts", "induced odd bracket is not natural (affine)")
    return trials


def check_pencil(seed, trials):
    """Second-order self-adjoint pencils and first-order classification."""
    rng = random.Random(seed)
    charts = [Chart(1, 0), Chart(2, 0), Chart(1, 1), Chart(0, 2)]
    for i in range(trials):
        chart = rng.choice(charts)
        eps = _parity(rng, chart)
        mu = rng.choice(WEIGHTS)
        data = random_pencil_data(rng, chart, mu, eps)
        op = build_second_order(data)
        if op.adjoint() != op:
            _fail("pencil", f"L* != L for {data.s!r}, {data.gamma!r}")
        if not op.apply(DensityElement(chart, chart.one())).is_zero:
            _fail("pencil", "L(1) != 0")
        if extract_pencil_data(op, eps) != data:
            _fail("pencil", "symbol extraction is not injective")
        r0 = restrict_pencil(op, 0)
        r1 = restrict_pencil(op, 1)
        rm = restrict_pencil(op, -1)
        half = Fraction(1, 2)
        l0 = r0
        l1 = (r1 - rm).scale(half)
        l2 = (r1 + rm).scale(half) - r0
        direct = {0: {}, 1: {}, 2: {}}
        for (alpha, k), coeff in op.terms.items():
            direct[k][(alpha, 0)] = coeff
        for k, got in ((0, l0), (1, l1), (2, l2)):
            if got != DiffOperator(chart, direct[k]):
                _fail("pencil", f"pencil coefficient L^({k}) interpolation")
        parity = _parity(rng, chart)
        nu = rng.choice([w for w in WEIGHTS if w != 1])
        xd = random_vector_density(rng, chart, nu, parity)
        lifted = lie_lift(xd).as_operator()
        if classify_first_order(lifted) != xd:
            _fail("pencil", f"classification does not invert the lift: {xd!r}")
        try:
            classify_first_order(DiffOperator.weight(chart))
            _fail("pencil", "w classified despite w* = 1 - w")
        except DenalgError:
            pass
    return trials


SUITES = {
    "div-consistency": check_div_consistency,
    "div-lie": check_div_lie,
    "class-roundtrip": check_class_roundtrip,
    "div-operator": check_div_operator,
    "bracket-vd": check_bracket_vd,
    "multivector": check_multivector,
    "schouten-jacobi": check_schouten_jacobi,
    "poisson": check_poisson,
    "nijenhuis": check_nijenhuis,
    "charts": check_charts,
    "pencil": check_pencil,
}


def run_suite(name, seed, trials):
    if name not in SUITES:
        raise DenalgError(
            f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}"
        )
    return SUITES[name](seed, trials)
