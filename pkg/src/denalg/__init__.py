"""Exact symbolic algebra of densities on charts of (super)manifolds.

Densities f(x) |Dx|^w multiply with weights adding; replacing |Dx| by an
invertible scale variable t turns them into pseudo-polynomial functions on
an extended chart with one more even coordinate.  This package implements
that algebra exactly over the rationals, together with its derivations and
canonical divergence, differential operators and adjoints, multivector
fields with odd Laplacians and Schouten brackets, the induced brackets on
vector and multivector densities, canonical Poisson lifting, Berezinians
and polynomial chart transforms, self-adjoint operator pencils, and the
parallel Nijenhuis-bracket picture on the antitangent bundle.

See README.md for an overview and demos/ for worked examples.
"""

from .chart import Chart, anti_name, diff_name
from .chartmaps import (
    ChartMap,
    SuperMatrix,
    berezinian,
    bracket_symbol,
    check_volume_invariance,
    extended_jacobian,
    transform_antimomenta,
    transform_density,
    transform_expr,
    transform_hat_vector,
    transform_multivector_density,
    transform_vector_density,
)
from .checks import SUITES, CheckFailure, run_suite
from .density import (
    DensityElement,
    exactness_witness,
    formal_integrand,
    scalar_product_integrand,
    weight_operator,
)
from . import errors
from .errors import (
    DenalgError,
    ParityMismatch,
    ParseError,
    SubstitutionInfeasible,
    UniverseMismatch,
    WeightOneSingular,
)
from .expr import (
    EVEN,
    ODD,
    GradedExpr,
    Universe,
    Variable,
    expr_from_json,
    expr_to_json,
    rational_power,
    render_expr,
    unit_power,
)
from .multivectors import (
    HatMultivector,
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
    FormValuedVectorField,
    PiTMVectorField,
    d_of,
    exterior_d,
    fn_lift,
    interior,
    nijenhuis_bracket,
    pitm_commutator,
    restrict_to_base,
)
from .operators import DiffOperator, commutator, div_operator, render_operator
from .parser import parse_expr, parse_operator
from .pencils import (
    PencilData,
    build_second_order,
    classify_first_order,
    extract_pencil_data,
    restrict_pencil,
)
from .vectorfields import (
    HatVectorField,
    VectorDensity,
    VolumeElement,
    decompose,
    density_bracket,
    div_vector_density,
    divergence,
    divergence_via_volume,
    first_order_pencil,
    lie_lift,
    restrict_to_functions,
)
from .vectorfields import commutator as field_commutator

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
