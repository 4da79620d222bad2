from .poly import Poly, PolyRing, RingMap, RingMismatch
from .parse import poly_parse, poly_str, PolySyntaxError, UnknownVariable
from .ideal import (Ideal, buchberger, membership, equal, contained, ideal_sum, product,
                    power, quotient, quotient_by_poly, saturate, eliminate, intersect,
                    preimage, ideal_ops, minimal_generators, SaturationCapExceeded)
from .groebner import GroebnerLimitError
from .hilbert import (dimension_degree, dimension_degree_mod, monomial_dimension_degree,
                      hilbert_numerator, UnitIdealError)
from .module import (PresentedModule, ModuleMap, MapDiagnostics, SubmoduleGB, syzygies, lift,
                     module_gb, map_diagnostics, kernel_vectors, conormal_module)
