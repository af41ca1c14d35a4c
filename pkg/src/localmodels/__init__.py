"""Local models of type-A Shimura varieties at desk scale: admissible
alcove combinatorics, explicit chart equations, and exact verification
of flatness, dimensions and reducedness certificates."""

from .alcoves import (
    AffinePermutation,
    Alcove,
    StrataPoset,
    act,
    alcove_from_profile,
    alcove_from_relative_position,
    base_alcove,
    bruhat_leq,
    dual_alcove,
    enumerate_admissible,
    extreme_alcoves,
    is_minuscule,
    length,
    profile_of,
    relative_position,
    simple_reflection,
    size,
    strata_poset,
    tau_alcove,
)
from .charts import (
    ChartPresentation,
    GeneralizedModelDatum,
    MatrixTemplate,
    PolyIdealSpec,
    TypeProfile,
    UnramifiedFactor,
    alcove_datum,
    chart_presentation,
    check_condition,
    decompose_unramified,
    dualize,
    equations_U_tau,
    equations_from_presentation,
    equations_generic_tuple,
    equations_parahoric_pair,
    parahoric_datum,
    parahoric_profile,
    reduce_lemma1,
    reduce_lemma2,
    reduce_lemma3,
    standard_chain_datum,
    tau_profile,
)
from .errors import ChartTimeout, ComputationError, DomainError, MalformedAlcove
from .groebner import (
    GroebnerBasis,
    buchberger,
    eliminate,
    flatness_check,
    ideal_quotient,
    ideals_equal,
    krull_dimension,
    normal_form,
    radical_certificate,
    saturate_pi,
    specialize_pi,
    verification_report,
)
from .polynomials import (
    DEFAULT_PRIME,
    DEGREVLEX,
    LEX,
    PI_NAME,
    MonomialOrder,
    Poly,
    PrimeField,
    QQ,
    ZZ,
    elimination_order,
    field_from_tag,
    prime_field,
)
from .verify import run_verification, select_charts

__version__ = "0.1.0"
