"""Closed-form inverse Z-transforms of rational functions.

The main pipeline factors the denominator over the reals, expands into
partial fractions, and maps each term to an explicit sequence formula.
Independent series oracles (long division, complex partial fractions of
X(z)/z, the recursive-coefficient scheme, and residue sums) cross-validate
every result.
"""

from .closedform import (
    ClosedFormExpr,
    Impulse,
    QuadPole,
    RealPole,
    SequenceTable,
    eval_sequence,
    invert,
    invert_expression,
    quad_seq0,
    quad_seq1,
    real_pole_seq,
    render,
)
from .errors import (
    ConjugateSymmetryError,
    FactorizationError,
    ParseError,
    RootFindingError,
    ZinvError,
)
from .factorize import (
    FactoredDenominator,
    LinearFactor,
    QuadraticFactor,
    cluster_and_pair,
    complex_pole_multiplicities,
    factor_denominator,
    find_roots,
)
from .identities import (
    binomial_general,
    falling_factorial,
    internal_summation_holds,
    pair_convolution_series,
    surjection_count,
)
from .oracles import (
    ComparisonReport,
    JuricCoefficients,
    compare_methods,
    juric_coefficients,
    juric_series,
    longdiv_series,
    moreira_series,
    residue_value,
)
from .parser import batch_expressions, format_rational, parse_rational_expr
from .pfe import (
    ComplexPartialFraction,
    RationalFunction,
    RealPartialFraction,
    complex_pfe_over_z,
    real_pfe,
    recombine,
)
from .polynomial import Polynomial

__version__ = "0.1.0"

__all__ = [
    "ClosedFormExpr",
    "ComparisonReport",
    "ComplexPartialFraction",
    "ConjugateSymmetryError",
    "FactoredDenominator",
    "FactorizationError",
    "Impulse",
    "JuricCoefficients",
    "LinearFactor",
    "ParseError",
    "Polynomial",
    "QuadPole",
    "QuadraticFactor",
    "RationalFunction",
    "RealPartialFraction",
    "RealPole",
    "RootFindingError",
    "SequenceTable",
    "ZinvError",
    "batch_expressions",
    "binomial_general",
    "cluster_and_pair",
    "compare_methods",
    "complex_pfe_over_z",
    "complex_pole_multiplicities",
    "eval_sequence",
    "factor_denominator",
    "falling_factorial",
    "find_roots",
    "format_rational",
    "internal_summation_holds",
    "invert",
    "invert_expression",
    "juric_coefficients",
    "juric_series",
    "longdiv_series",
    "moreira_series",
    "pair_convolution_series",
    "parse_rational_expr",
    "quad_seq0",
    "quad_seq1",
    "real_pfe",
    "real_pole_seq",
    "recombine",
    "render",
    "residue_value",
    "surjection_count",
    "__version__",
]
