"""Exact blowup-algebra diagnostics for m-primary ideals in localized
polynomial rings: reduction numbers, mixed multiplicities, fiber-cone Hilbert
series, integral closure of monomial ideals, and certified depth verdicts for
the Rees ring, the associated graded ring, and the fiber cone."""

from .depth import DepthFacts, DepthVerdict, depth_infer
from .exact import QQ, PrimeField, Rational
from .ideals import IdealHandle, buchberger, normal_form
from .invariants import (
    BhattacharyaForm,
    HilbertNumerator,
    LengthTable,
    bhattacharya_fit,
    bhattacharya_fit_search,
    fiber_hilbert,
    length,
    length_table,
    mu,
    adic_order,
    param_multiplicity,
)
from .monomials import MonomialIdeal, minimalize
from .parse import parse_poly
from .reductions import (
    ReductionCertificate,
    colon_power_check,
    contracted_check_2d,
    find_joint_reduction,
    find_minimal_reduction,
    h1_vanishing_check,
    joint_reduction_verify,
    mmm_check,
    reduction_number,
    vv_check,
)
from .rings import GREVLEX, LEX, Block, GrevLex, Lex, Polynomial, RingSpec

__version__ = "0.1.0"
