"""Equilibrium prices of two-good exchange economies with HARA/CRRA
impatience types: the aggregate excess demand is reduced to a sparse
polynomial whose positive roots are counted and certified exactly
(Descartes bound, Sturm chains over the rationals), and every answer is
cross-checked by an independent sign-scan oracle on the demand itself.
"""

from .certify import (Certificate, CrraSymmetricSpec, certify,
                      certify_gamma_range, certify_two_type_hara,
                      classify_crra_symmetric)
from .econfile import dump_economy, load_economy, loads_economy
from .errors import HaraEqError
from .model import (ConsumerType, Economy, HaraParams, demand,
                    excess_demand_x, excess_demand_y)
from .oracle import agree, scan
from .reduction import (RationalExponent, SparsePolynomial,
                        approximate_epsilon, ladder_is_ordered,
                        reduce_to_polynomial)
from .roots import (RootReport, cubic_discriminant, descartes_sign_changes,
                    isolate_positive_roots, prices_from_roots)
from .sympoly import (PolyCoefficients, SigmaTables, build_coefficients,
                      build_sigma_tables, endowment_sigma_sum)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CrraSymmetricSpec", "ConsumerType", "Economy",
    "HaraEqError", "HaraParams", "PolyCoefficients", "RationalExponent",
    "RootReport", "SigmaTables", "SparsePolynomial",
    "agree", "approximate_epsilon", "build_coefficients",
    "build_sigma_tables", "certify", "certify_gamma_range",
    "certify_two_type_hara", "classify_crra_symmetric",
    "cubic_discriminant", "demand", "descartes_sign_changes",
    "dump_economy", "endowment_sigma_sum", "excess_demand_x",
    "excess_demand_y", "isolate_positive_roots", "ladder_is_ordered",
    "load_economy", "loads_economy", "prices_from_roots",
    "reduce_to_polynomial", "scan",
]
