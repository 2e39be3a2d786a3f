"""Walsh spectra of Boolean functions: five-valued constructions and 4-bent decompositions."""

from .core import (
    AnfPolynomial,
    BooleanFunction,
    SpectralClass,
    WalshSpectrum,
    algebraic_degree,
    anf_to_truth_table,
    classify,
    classify_function,
    correlation,
    hadamard_transform,
    hamming_distance,
    inverse_wht,
    is_bent,
    is_plateaued,
    is_semi_bent,
    resiliency_order,
    truth_table_to_anf,
    variables,
    wht,
    wht_many,
)
from .decomp import (
    Decomposition,
    concatenate_4,
    four_decompose,
    verify_5valued_quadruple,
)
from .errors import *  # noqa: F401,F403
from .expr import parse_expression
from .gmm import GmmSpec, build_gmm, gmm_default_maps, gmm_resiliency_bound, random_gmm_spec
from .io import (
    emit_spectrum_csv,
    emit_truth_table_hex,
    load_fixture,
    parse_spectrum_csv,
    parse_truth_table_hex,
)
from .spectral import (
    DisjointPair,
    assemble_five_valued,
    certify_totally_disjoint,
    construct_plateaued,
    construction_one,
)
from .support import (
    DualFunction,
    OrderedSupport,
    bent_distance_to_profile,
    dual,
    five_valued_profile,
    sequence_profile,
)
from .anfcon import (
    CompositeForm,
    SplitSupport,
    cf_wht,
    construct_c1,
    construct_c2_quadruple,
    construct_c3,
    construct_c3_quadruple,
    construct_c4,
    split_wht,
)

__version__ = "0.1.0"
