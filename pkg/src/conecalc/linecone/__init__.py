"""Linear spaces, two-term complexes, cones and the going up/down calculus."""

from .spaces import (LinearSpace, LinSpaceHom, NotAHomomorphism, free_space, linspace_from_module,
                     fresh_coords, direct_sum, identity, zero_hom, hstack, vstack, block_diag)
from .cones import (Cone, EConeAction, DescendResult, NotEpimorphism, NotHomogeneous, zero_cone,
                    full_cone, normal_cone, tangent_action, is_econe, descend_check,
                    substitution_map, pushforward_ideal)
from .complexes import (TwoTermComplex, ComplexSquare, ComplexDiagnostics, SquareDoesNotCommute,
                        NotApplicable, CertificateFailure, LemmaViolation, complex_diagnostics,
                        cohomology_flags, exactness_flags, is_quasi_iso, applicability, going_up,
                        going_down, going_down_full, GoingDownResult, DerivedMorphism,
                        going_down_derived)
from .randgen import InstanceGenerator, Flags
