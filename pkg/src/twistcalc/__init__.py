"""twistcalc: exact Drinfel'd-twist deformation engine.

Builds cocycle twists on enveloping algebras of coordinate symmetries,
the induced star products and twisted differential calculus on R^n, and
the twisted Riemannian geometry of a family of quadric surfaces, all in
exact rational arithmetic.
"""

from .scalars import GaussianRational, Scalar, ScalarRing
from .calculus import (CalcElement, CalcMonomial, CalculusAlgebra, Frame,
                       cartesian_frame, weight_frame)
from .errors import ConfigurationError, ReductionError, TwistcalcError
from .hopf import LieAlgebraSpec, UEAElement, UEATensor
from .twists import TwistSeries, build_exponential_twist, build_raising_twist
from .star import (StarContext, braided_commutativity_check, star_bracket,
                   star_dual_frame, star_involution, star_mul, star_pairing)
from .submanifold import (QuadricSpec, SubmanifoldIdeal, hyperboloid_family,
                          translation_algebra, weight_quadric_function,
                          weight_symmetry_algebra)
from .geometry import (GeometryContext, MetricSpec, TensorField, curvature,
                       first_fundamental_form_check, gauss_equation_check,
                       killing_check, metric_compatibility_check, project,
                       ricci, scalar_curvature, second_fundamental_form,
                       torsion, twisted_covariant_derivative, twisted_metric)
from .expressions import ExpressionParser, render_element, render_scalar
from .verify import (AGGREGATE_SUITES, HyperboloidSession, available_suites,
                     load_fixture_records, run_fixture_records, run_suites,
                     verify_relation_suite)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational", "Scalar", "ScalarRing",
    "CalcElement", "CalcMonomial", "CalculusAlgebra", "Frame",
    "cartesian_frame", "weight_frame",
    "ConfigurationError", "ReductionError", "TwistcalcError",
    "LieAlgebraSpec", "UEAElement", "UEATensor",
    "TwistSeries", "build_raising_twist", "build_exponential_twist",
    "StarContext", "star_mul", "star_bracket", "star_pairing",
    "star_dual_frame", "star_involution", "braided_commutativity_check",
    "QuadricSpec", "SubmanifoldIdeal", "hyperboloid_family",
    "translation_algebra", "weight_quadric_function",
    "weight_symmetry_algebra",
    "MetricSpec", "TensorField", "GeometryContext", "killing_check",
    "twisted_metric", "project", "twisted_covariant_derivative", "torsion",
    "curvature", "ricci", "second_fundamental_form", "gauss_equation_check",
    "first_fundamental_form_check", "metric_compatibility_check",
    "scalar_curvature",
    "ExpressionParser", "render_element", "render_scalar",
    "HyperboloidSession", "verify_relation_suite", "run_suites",
    "available_suites", "load_fixture_records", "run_fixture_records",
    "AGGREGATE_SUITES",
    "__version__",
]
