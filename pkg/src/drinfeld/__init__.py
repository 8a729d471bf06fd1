"""Exact arithmetic for Drinfeld F_q[T]-modules: twisted polynomials,
torsion, isogenies and kernel quotients, heights over F_q(T), an
explicit Lambert-W irreducibility threshold engine, and an empirical
Frobenius-based irreducibility probe."""

from .bounds import (
    BoundParams,
    BoundReport,
    dd_log_degree_bound,
    ineq1_holds,
    ineq2_holds,
    irreducibility_threshold,
    lambert_w_m1,
    lemma_threshold,
    n_d,
    omega_phi,
)
from .errors import (
    DrinfeldError,
    InternalInvariantError,
    MathPreconditionError,
    ParseError,
)
from .extension import ExtElem, ExtField, ext_field, roots_in_extension
from .fields import (
    FunctionField,
    RationalFunc,
    ResidueElem,
    ResidueField,
    function_field,
)
from .fq import FqContext, FqElement, fq_make
from .heights import (
    HeightDatum,
    HeightReport,
    Place,
    bp_drift_bound,
    check_height_ineq,
    coefficient_height,
    graded_height,
    height_report,
    heights_from_table,
    naive_height,
    valuations_of,
)
from .modules import (
    DrinfeldModule,
    Isogeny,
    KernelSubmodule,
    dual_isogeny,
    is_morphism,
    isogeny_degree,
    make_module,
    quotient_by_kernel,
    quotient_by_kernel_poly,
    reduce_at_place,
)
from .polys import (
    Poly,
    factor,
    factor_degrees,
    is_irreducible,
    iter_monic_irreducibles,
)
from .parsing import (
    ModuleFile,
    load_height_table,
    load_module_file,
    module_file_text,
    parse_poly,
    parse_rational,
    parse_twisted,
)
from .probe import (
    FrobeniusData,
    TorsionBasis,
    Verdict,
    certify_irreducible,
    frobenius_matrix,
    invariant_dim_set,
    torsion_basis_mod_p,
)
from .twisted import QPolynomial, TwistedPoly

__version__ = "0.1.0"
